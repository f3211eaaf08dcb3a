fn main() {
    std::process::exit(twisted_geom::cli::main());
}
