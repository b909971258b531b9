//! Command-line front end.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dore::catalog::{fixture_names, get_fixture, verify_all, verify_fixtures, Fixture};
use dore::dcv::Scope;
use dore::report::{ToReport, Value};

use crate::commands::{run_spec, Command, RunConfig, RunError, SearchRequest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_SPEC_ERROR: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Scalars,
    Generators,
    Basis,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Scalars => Scope::Scalars,
            ScopeArg::Generators => Scope::Generators,
            ScopeArg::Basis => Scope::Basis,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dore", version, about = "Checks on right double Ore extensions and dcv-matrices")]
struct Cli {
    /// Degree bound for every bounded check.
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    /// Ring elements on which dcv commutation rules are checked.
    #[arg(long, global = true, value_enum, default_value_t = ScopeArg::Basis)]
    scope: ScopeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; the report does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct SpecArg {
    /// Spec file, or `-` for standard input.
    spec: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Compatibility identities and associativity of each extension.
    CheckExtension(SpecArg),
    /// Certificates for each dcv candidate.
    CheckDcv(SpecArg),
    /// Iterated presentations of extensions, or their translation for dcv candidates.
    ToIterated(SpecArg),
    /// Exhaustive search for dcv-matrices with coefficients from a pool.
    SearchDcv {
        #[command(flatten)]
        spec: SpecArg,
        /// Total degree bound of the candidates (at most 2).
        #[arg(long)]
        degree: u32,
        /// Comma-separated scalars; every field element when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        pool: Vec<String>,
        /// Candidate whose source data are searched for.
        #[arg(long)]
        dcv: Option<String>,
        #[arg(long)]
        target: Option<String>,
        /// Source parameters solved for each candidate.
        #[arg(long, value_delimiter = ',')]
        unknown: Vec<String>,
    },
    /// The associated graded algebra of each extension.
    Graded(SpecArg),
    /// The normalizing change of generators of each extension.
    ChangeBasis(SpecArg),
    /// The built-in catalog of algebras and dcv-matrices.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Replays every fixture and compares with its recorded verdicts.
    Verify {
        /// Restrict to these fixtures.
        #[arg(long)]
        fixture: Vec<String>,
    },
    /// Lists fixture names.
    List,
}

/// Runs the program on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_SPEC_ERROR,
            };
            let _ = if code == EXIT_OK { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let pool = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(p) => Some(p),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot start {n} threads: {e}");
                return EXIT_CAP;
            }
        },
        None => None,
    };
    let input = match spec_path(&cli.command) {
        Some(path) => match read_spec(path, stdin) {
            Ok(t) => Some(t),
            Err(Failure::Spec(msg) | Failure::Cap(msg)) => {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_SPEC_ERROR;
            }
        },
        None => None,
    };
    let work = || execute(&cli, input.as_deref().unwrap_or_default());
    let result = match &pool {
        Some(p) => p.install(work),
        None => work(),
    };
    match result {
        Ok((report, passed)) => {
            let text = match cli.format {
                Format::Text => report.render_text(),
                Format::Structured => report.render_json(),
            };
            let written = match &cli.out {
                Some(path) => write_atomic(path, text.as_bytes()),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return EXIT_SPEC_ERROR;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure::Spec(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_SPEC_ERROR
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_CAP
        }
    }
}

enum Failure {
    Spec(String),
    Cap(String),
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Spec(s) => Failure::Spec(s.to_string()),
            RunError::Cap(s) => Failure::Cap(s),
        }
    }
}

fn read_spec(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Spec(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn spec_path(sub: &Sub) -> Option<&Path> {
    match sub {
        Sub::CheckExtension(s) | Sub::CheckDcv(s) | Sub::ToIterated(s) | Sub::Graded(s) | Sub::ChangeBasis(s) => Some(&s.spec),
        Sub::SearchDcv { spec, .. } => Some(&spec.spec),
        Sub::Catalog { .. } => None,
    }
}

fn execute(cli: &Cli, text: &str) -> Result<(Value, bool), Failure> {
    let cfg = RunConfig { max_degree: cli.max_degree, scope: cli.scope.into() };
    let cmd = match &cli.command {
        Sub::CheckExtension(_) => Command::CheckExtension,
        Sub::CheckDcv(_) => Command::CheckDcv,
        Sub::ToIterated(_) => Command::ToIterated,
        Sub::Graded(_) => Command::Graded,
        Sub::ChangeBasis(_) => Command::ChangeBasis,
        Sub::SearchDcv { degree, pool, dcv, target, unknown, .. } => Command::SearchDcv(SearchRequest {
            degree: *degree,
            pool: pool.clone(),
            dcv: dcv.clone(),
            target: target.clone(),
            unknown: unknown.clone(),
        }),
        Sub::Catalog { action } => return catalog(action, cli.max_degree),
    };
    let out = run_spec(text, &cmd, cfg)?;
    Ok((out.report, out.passed))
}

fn catalog(action: &CatalogAction, max_degree: usize) -> Result<(Value, bool), Failure> {
    match action {
        CatalogAction::List => {
            let names: Vec<&str> = fixture_names();
            Ok((Value::from(names.into_iter().map(String::from).collect::<Vec<_>>()), true))
        }
        CatalogAction::Verify { fixture } => {
            let report = if fixture.is_empty() {
                verify_all(max_degree).map_err(|e| Failure::Spec(e.to_string()))?
            } else {
                let list: Vec<Fixture> =
                    fixture.iter().map(|n| get_fixture(n).map_err(|e| Failure::Spec(e.to_string()))).collect::<Result<_, _>>()?;
                verify_fixtures(&list, max_degree)
            };
            let passed = report.passed();
            Ok((report.to_report().into(), passed))
        }
    }
}

/// Writes through a temporary file in the destination directory, then renames it.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
