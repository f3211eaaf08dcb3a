//! Command-line front end: `build`, `export` and `verify`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::design::Design;
use crate::error::{Error, Result};
use crate::export;
use crate::geometry::{self, Instance};
use crate::gf::Field;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::verify::{self, Check, CheckReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twisted-geom", version, about = "Twisted Grassmann graphs and Jungnickel-Tonchev designs over GF(q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a graph or design and write it to a file.
    Build(BuildArgs),
    /// Convert a JSON graph or design written by `build` to another format.
    Export(ExportArgs),
    /// Run a verification check and print its JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Grassmann,
    Twisted,
    PgDesign,
    JtDesign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    DimacsEdges,
    Json,
    IncidenceCsv,
}

impl Format {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    fn extension(self) -> &'static str {
        match self {
            Format::Graph6 => "g6",
            Format::DimacsEdges => "dimacs",
            Format::Json => "json",
            Format::IncidenceCsv => "csv",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 2)]
    pub e: usize,
    /// JSON list of rows giving the Gram matrix of the polarity on H.
    #[arg(long)]
    pub gram: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    pub kind: Kind,
    #[command(flatten)]
    pub common: Common,
    /// Ambient dimension for `grassmann` (default 2e+1).
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace dimension for `grassmann` (default e).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output path (default: `<kind>-q<q>-e<e>.<ext>` in the working directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    /// JSON graph (`vertices`, `edges`) or design (`v`, `blocks`).
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Output path (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of thm1, drg, design, spectrum, aut-sample, aut-exhaustive, prank, all.
    pub check: String,
    #[command(flatten)]
    pub common: Common,
    /// Random stabilizer elements for aut-sample.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Sampled pairs for thm1 on large instances.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure tagged with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn config(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_CONFIG, message: e.to_string() }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INTERNAL, message: e.to_string() }
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn run(cli: Cli) -> std::result::Result<i32, Failure> {
    match cli.command {
        Command::Build(a) => build(a),
        Command::Export(a) => export_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn configure_threads(jobs: Option<usize>) -> std::result::Result<(), Failure> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(config("--jobs must be positive"));
        }
        // A second initialisation in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    Ok(())
}

/// Reads a Gram matrix given as a JSON list of rows of element values.
pub fn read_gram(path: &Path, field: &Field) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<Vec<u32>> = serde_json::from_str(&text)?;
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(field, cols, &rows)
}

fn field_and_gram(c: &Common) -> std::result::Result<(Field, Option<Matrix>), Failure> {
    let field = Field::with_order(c.q).map_err(config)?;
    let gram = match &c.gram {
        Some(p) => Some(read_gram(p, &field).map_err(|e| config(format!("{}: {e}", p.display())))?),
        None => None,
    };
    Ok((field, gram))
}

fn require_twisted_e(e: usize) -> std::result::Result<(), Failure> {
    if e < 2 {
        Err(config("e must be ≥ 2"))
    } else {
        Ok(())
    }
}

enum Object {
    Graph(Graph),
    Design(Design),
}

fn render(obj: &Object, format: Format) -> std::result::Result<String, Failure> {
    let unsupported = |what: &str| config(format!("format '{}' is not available for {what}", format.name()));
    match (obj, format) {
        (Object::Graph(g), Format::Graph6) => Ok(export::to_graph6(g) + "\n"),
        (Object::Graph(g), Format::DimacsEdges) => Ok(export::to_dimacs(g)),
        (Object::Graph(g), Format::Json) => Ok(export::graph_to_json(g).map_err(internal)? + "\n"),
        (Object::Graph(_), Format::IncidenceCsv) => Err(unsupported("graphs")),
        (Object::Design(d), Format::Json) => Ok(export::design_to_json(d).map_err(internal)? + "\n"),
        (Object::Design(d), Format::IncidenceCsv) => Ok(export::to_incidence_csv(d)),
        (Object::Design(_), _) => Err(unsupported("designs")),
    }
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn summary(obj: &Object) -> String {
    match obj {
        Object::Graph(g) => {
            let mut s = format!("vertices={} edges={}", g.vertex_count(), g.edge_count());
            match g.regular_degree() {
                Some(k) => write!(s, " degree={k}").unwrap(),
                None => s.push_str(" degree=irregular"),
            }
            s
        }
        Object::Design(d) => {
            let k = d.blocks().first().map_or(0, Vec::len);
            let uniform = d.blocks().iter().all(|b| b.len() == k);
            let mut s = format!("points={} blocks={}", d.point_count(), d.block_count());
            if uniform {
                write!(s, " block_size={k}").unwrap();
            }
            s
        }
    }
}

fn build(a: BuildArgs) -> std::result::Result<i32, Failure> {
    configure_threads(a.common.jobs)?;
    let (field, gram) = field_and_gram(&a.common)?;
    let e = a.common.e;
    let obj = match a.kind {
        Kind::Grassmann => {
            let n = a.n.unwrap_or(2 * e + 1);
            let k = a.k.unwrap_or(e);
            if k > n {
                return Err(config("k must not exceed n"));
            }
            Object::Graph(geometry::grassmann_graph(&field, n, k).map_err(config)?)
        }
        Kind::PgDesign => {
            if e < 1 {
                return Err(config("e must be ≥ 1"));
            }
            Object::Design(geometry::pg_design(&field, e).map_err(config)?)
        }
        Kind::Twisted | Kind::JtDesign => {
            require_twisted_e(e)?;
            let inst = Instance::new(&field, e, gram).map_err(config)?;
            if a.kind == Kind::Twisted {
                Object::Graph(inst.twisted_graph().map_err(internal)?)
            } else {
                Object::Design(inst.jt_design().map_err(internal)?)
            }
        }
    };
    let text = render(&obj, a.format)?;
    let kind = a.kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let out = a
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{kind}-q{}-e{e}.{}", a.common.q, a.format.extension())));
    write_atomic(&out, text.as_bytes()).map_err(internal)?;
    println!("{} file={}", summary(&obj), out.display());
    Ok(EXIT_OK)
}

fn export_cmd(a: ExportArgs) -> std::result::Result<i32, Failure> {
    let text = std::fs::read_to_string(&a.input).map_err(|e| config(format!("{}: {e}", a.input.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(config)?;
    let obj = if value.get("blocks").is_some() {
        Object::Design(export::design_from_json(&text).map_err(config)?)
    } else if value.get("edges").is_some() {
        Object::Graph(export::graph_from_json(&text).map_err(config)?)
    } else {
        return Err(config("input is neither a graph nor a design"));
    };
    let out = render(&obj, a.format)?;
    match a.out {
        Some(p) => {
            write_atomic(&p, out.as_bytes()).map_err(internal)?;
            eprintln!("{}", summary(&obj));
        }
        None => print!("{out}"),
    }
    Ok(EXIT_OK)
}

fn verify_cmd(a: VerifyArgs) -> std::result::Result<i32, Failure> {
    configure_threads(a.common.jobs)?;
    let check = match a.check.as_str() {
        "all" => None,
        s => Some(Check::parse(s).ok_or_else(|| config(format!("unknown check '{s}'")))?),
    };
    let (_, gram) = field_and_gram(&a.common)?;
    require_twisted_e(a.common.e)?;
    let cfg = VerifyConfig {
        q: a.common.q,
        e: a.common.e,
        gram,
        seed: a.common.seed,
        samples: a.samples,
        pairs: a.pairs,
    };
    if check == Some(Check::AutExhaustive) && (cfg.q != 2 || cfg.e != 2) {
        return Err(config("aut-exhaustive is limited to q = 2, e = 2"));
    }
    cfg.instance().map_err(config)?;
    let progress = |msg: &str| eprintln!("{msg}");
    let report: CheckReport = match check {
        Some(c) => verify::run_check(c, &cfg, &progress),
        None => verify::run_all(&cfg, &progress),
    }
    .map_err(internal)?;
    let text = serde_json::to_string_pretty(&report).map_err(internal)? + "\n";
    if let Some(p) = &a.out {
        write_atomic(p, text.as_bytes()).map_err(internal)?;
    }
    print!("{text}");
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("twisted-geom").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let Command::Build(b) = parse(&["build", "twisted"]).command else { panic!() };
        assert_eq!((b.common.q, b.common.e, b.common.seed), (2, 2, 0));
        assert_eq!(b.format, Format::Json);
        assert_eq!(Format::DimacsEdges.name(), "dimacs-edges");
    }

    #[test]
    fn config_errors() {
        let code = |args: &[&str]| run(parse(args)).err().map(|f| f.code);
        assert_eq!(code(&["build", "twisted", "--e", "1"]), Some(EXIT_CONFIG));
        assert_eq!(code(&["build", "pg-design", "--e", "0"]), Some(EXIT_CONFIG));
        assert_eq!(code(&["build", "grassmann", "--n", "3", "--k", "4"]), Some(EXIT_CONFIG));
        assert_eq!(code(&["verify", "thm2"]), Some(EXIT_CONFIG));
        assert_eq!(code(&["build", "twisted", "--jobs", "0"]), Some(EXIT_CONFIG));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn render_combinations() {
        let k = Field::with_order(2).unwrap();
        let d = Object::Design(geometry::pg_design(&k, 1).unwrap());
        assert!(render(&d, Format::Graph6).is_err());
        assert_eq!(render(&d, Format::IncidenceCsv).unwrap().lines().count(), 7);
        let g = Object::Graph(Graph::unlabeled(2, [(0, 1)]).unwrap());
        assert_eq!(render(&g, Format::DimacsEdges).unwrap(), "p edge 2 1\ne 1 2\n");
        assert!(render(&g, Format::IncidenceCsv).is_err());
        assert_eq!(summary(&g), "vertices=2 edges=1 degree=1");
    }
}
