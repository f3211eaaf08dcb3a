use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = dir.join("include").join("twisted_geom.h");
    let config = match cbindgen::Config::from_file(dir.join("cbindgen.toml")) {
        Ok(c) => c,
        Err(e) => {
            println!("cargo:warning=cbindgen config unreadable ({e}); keeping checked-in header");
            return;
        }
    };
    match cbindgen::Builder::new().with_crate(&dir).with_config(config).generate() {
        // write_to_file leaves the file untouched when the contents are unchanged
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(e) => println!("cargo:warning=cbindgen failed ({e}); keeping checked-in header"),
    }
}
