use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use netforge::constructions::{Constructed, ConstructionSpec};
use netforge::cyclotomic::{self, GcdVerdict};
use netforge::field::Field;
use netforge::io::{self, NetFile, SCHEMA};
use netforge::net::{self, KNet};
use netforge::search::{self, SearchCertificate, SearchOptions};
use netforge::Error;

#[derive(Parser)]
#[command(name = "netforge", version, about = "Embedded k-nets in finite projective planes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit with status 1 when a certificate refutes existence.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for verification and search.
    #[arg(long, global = true, env = "NETFORGE_JOBS")]
    jobs: Option<usize>,
    /// Report errors as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Classical,
    Char3,
    Subplane,
    Lunardon,
    LunardonExt,
}

#[derive(Subcommand)]
enum Command {
    /// Build a net from a named family and write it as net JSON.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Subfield degree for the subplane family.
        #[arg(long)]
        h: Option<u32>,
        /// Number of components for the subplane family.
        #[arg(long)]
        k: Option<usize>,
        /// Order of the base field F_r for the Lunardon families.
        #[arg(long)]
        base_r: Option<u64>,
        /// Extension degree s, so that q = r^s.
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the net axioms; exit status 1 if they fail.
    Verify { input: PathBuf },
    /// Cross-ratio of a 4-net, direct and via pencils, with the constraint battery.
    Analyze { input: PathBuf },
    /// Resultant bound on the characteristics of 4-nets of order n.
    Bound {
        #[arg(long)]
        n: u64,
        /// Trial division limit for factoring the resultant.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
    /// gcd criterion for 4-nets of order n in PG(2, q).
    GcdCert {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Enumerate 4-nets of order 3 up to projectivity.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 3)]
        order: u64,
        #[command(flatten)]
        caps: Caps,
    },
    /// Enumerate all one-component extensions of a net.
    Extend {
        input: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Attempt to extend a 4-net to a 5-net.
    Refute {
        input: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args)]
struct Caps {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_time_ms: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_solutions: Option<u64>,
    /// Largest field order accepted by the from-scratch search.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
    q_cap: u64,
    /// Directory that receives one net JSON file per solution.
    #[arg(long)]
    emit: Option<PathBuf>,
}

impl Caps {
    fn options(&self, parallel: bool) -> SearchOptions {
        SearchOptions {
            max_nodes: self.max_nodes,
            max_time: self.max_time_ms.map(Duration::from_millis),
            max_solutions: self.max_solutions.map(|m| m as usize),
            parallel,
            q_cap: self.q_cap,
        }
    }
}

enum Failure {
    Usage(String),
    Run(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Run(_) => "input",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Run(e) => e.to_string(),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn read_net_file(path: &Path) -> Result<NetFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    NetFile::parse(&text).map_err(|e| Failure::Run(e.into()))
}

fn read_constructed(path: &Path) -> Result<Constructed, Failure> {
    read_net_file(path)?.into_constructed().map_err(|e| Failure::Run(e.into()))
}

/// Reads a net; dual nets are dualized first.
fn read_net(path: &Path) -> Result<KNet, Failure> {
    match read_constructed(path)? {
        Constructed::Net(n) => Ok(n),
        Constructed::Dual(d) => net::dualize(&d).map_err(|e| Failure::Run(e.into())),
    }
}

fn compact(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > 72 {
        let head: String = s.chars().take(69).collect();
        format!("{head}...")
    } else {
        s
    }
}

fn render_table(v: &Value) -> String {
    let Value::Object(map) = v else { return compact(v) };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    map.iter().map(|(k, v)| format!("{k:<width$}  {}\n", compact(v))).collect()
}

/// Writes to stdout. A closed downstream pipe ends the process quietly.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => write_stdout(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))),
        Format::Table => write_stdout(&render_table(v)),
    }
}

fn write_solutions(dir: &Path, cert: &SearchCertificate) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for (i, s) in cert.solutions.iter().enumerate() {
        let path = dir.join(format!("solution-{i:04}.json"));
        fs::write(&path, s.to_json()).map_err(|e| io_err(&path, e))?;
    }
    Ok(())
}

fn require<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for family {family}")))
}

fn construction(
    family: Family,
    p: Option<u64>,
    r: u32,
    h: Option<u32>,
    k: Option<usize>,
    base_r: Option<u64>,
    s: Option<u32>,
) -> Result<ConstructionSpec, Failure> {
    Ok(match family {
        Family::Classical => ConstructionSpec::Classical { p: require(p, "p", "classical")?, r },
        Family::Char3 => {
            if p.is_some_and(|p| p != 3) {
                return Err(Failure::Usage("family char3 requires --p 3".into()));
            }
            ConstructionSpec::Char3 { r }
        }
        Family::Subplane => ConstructionSpec::Subplane {
            p: require(p, "p", "subplane")?,
            r,
            h: require(h, "h", "subplane")?,
            k: require(k, "k", "subplane")?,
        },
        Family::Lunardon => ConstructionSpec::Lunardon {
            base: require(base_r, "base-r", "lunardon")?,
            s: require(s, "s", "lunardon")?,
        },
        Family::LunardonExt => ConstructionSpec::LunardonExtended {
            base: require(base_r, "base-r", "lunardon-ext")?,
            s: require(s, "s", "lunardon-ext")?,
        },
    })
}

fn certificate_exit(strict: bool, cert: &SearchCertificate) -> ExitCode {
    if strict && cert.refutes() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    let parallel = g.jobs != Some(1);
    match cli.command {
        Command::Construct { family, p, r, h, k, base_r, s, out } => {
            let spec = construction(family, p, r, h, k, base_r, s)?;
            let built = spec.build().map_err(Error::from)?;
            let file = NetFile::from_constructed(&built);
            match out {
                Some(path) => {
                    fs::write(&path, file.to_json()).map_err(|e| io_err(&path, e))?;
                    let (k, n) = match &built {
                        Constructed::Net(n) => (n.k(), n.order()),
                        Constructed::Dual(d) => (d.k(), d.order()),
                    };
                    emit(
                        g.format,
                        &json!({
                            "schema": SCHEMA,
                            "construction": spec,
                            "kind": file.kind,
                            "field": file.field,
                            "k": k,
                            "n": n,
                            "path": path.display().to_string(),
                            "sha256": file.digest(),
                        }),
                    );
                }
                None => write_stdout(&format!("{}\n", file.to_json())),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => {
            let report = match read_constructed(&input)? {
                Constructed::Net(n) => n.verify(),
                Constructed::Dual(d) => d.verify(),
            };
            emit(g.format, &io::tagged(&report));
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Analyze { input } => {
            let net = read_net(&input)?;
            let report = net::constant_cross_ratio(&net).map_err(Error::from)?;
            let pencil = net::cross_ratio_via_pencil(&net).map_err(Error::from)?;
            let f = net.field();
            let mut v = io::cross_ratio_json(f, &report, Some(pencil));
            v["lemma_minus_kappa"] = match net::lemma_minus_kappa_check(f, report.kappa) {
                Ok(b) => json!(b),
                Err(_) => Value::Null,
            };
            emit(g.format, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { n, cap } => {
            let report = cyclotomic::bound_report(n, cap, g.strict).map_err(Error::from)?;
            emit(g.format, &io::tagged(&report));
            Ok(ExitCode::SUCCESS)
        }
        Command::GcdCert { n, q } => {
            let cert = cyclotomic::gcd_certificate(n, q).map_err(Error::from)?;
            emit(g.format, &io::tagged(&cert));
            Ok(if g.strict && cert.verdict == GcdVerdict::Refuted { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Search { p, r, order, caps } => {
            if order != 3 {
                return Err(Failure::Usage(format!("from-scratch search supports --order 3 only, got {order}")));
            }
            let f = Field::new(p, r, None).map_err(Error::from)?;
            let cert = search::search_4nets_order3(&f, &caps.options(parallel)).map_err(Error::from)?;
            finish_search(g, &caps, &cert)
        }
        Command::Extend { input, caps } => {
            let net = read_net(&input)?;
            let cert = search::extend_net(&net, &caps.options(parallel)).map_err(Error::from)?;
            finish_search(g, &caps, &cert)
        }
        Command::Refute { input, caps } => {
            let net = read_net(&input)?;
            let cert = search::refute_5net(&net, &caps.options(parallel)).map_err(Error::from)?;
            finish_search(g, &caps, &cert)
        }
    }
}

fn finish_search(g: &Global, caps: &Caps, cert: &SearchCertificate) -> Result<ExitCode, Failure> {
    if let Some(dir) = &caps.emit {
        write_solutions(dir, cert)?;
    }
    let v = serde_json::to_value(cert).expect("serializable");
    emit(g.format, &v);
    Ok(certificate_exit(g.strict, cert))
}

fn report_error(json_errors: bool, kind: &str, message: &str) {
    if json_errors {
        eprintln!("{}", json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } }));
    } else {
        eprintln!("error: {message}");
    }
}

fn main() -> ExitCode {
    let json_errors = std::env::args().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if json_errors {
                report_error(true, "usage", e.to_string().trim());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    if let Some(j) = cli.global.jobs {
        if j == 0 {
            report_error(json_errors, "usage", "--jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let json_errors = cli.global.json_errors;
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            report_error(json_errors, f.kind(), &f.message());
            ExitCode::from(2)
        }
    }
}
