//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or no counterexample,
//! 2 usage or parse error, 3 domain error, 4 basis cap exceeded. Errors are
//! written to stderr as one line of JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, ErrorKind, Result};
use crate::operators::{GradedOperator, OperatorMatrix};
use crate::pathspace::{chain_from_json, chain_to_json, Basis, Space, VertexSet};
use crate::verifier::{self, find_counterexample, IdentityId, SearchOutcome, Suite, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "pathcalc", version, about = "Exact path algebra on finite vertex sets")]
pub struct Cli {
    /// Worker threads for matrix evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest basis any command may enumerate.
    #[arg(long, global = true, env = "PATHCALC_BASIS_CAP", default_value_t = crate::DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Full,
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of the full and regular path spaces by degree.
    Dims {
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Applies an operator to a chain.
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
    },
    /// Exports the matrix of an operator at one source degree.
    Matrix {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `regular` on a full-space operator exports the induced map on
        /// regular paths.
        #[arg(long, value_enum, default_value_t = SpaceArg::Full)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
    },
    /// Runs verification suites and prints the report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restricts every suite to this vertex set.
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Searches for a witness against a regular identity.
    Counterexample {
        #[arg(long)]
        identity: String,
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        vertices: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

/// What a command produced: text for stdout and the exit code.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn vertex_set(labels: &[String]) -> Result<Arc<VertexSet>> {
    VertexSet::new(labels.iter().map(|l| l.trim().to_owned())).map(Arc::new)
}

/// An operator file is either a bare descriptor or
/// `{"vertices": [...], "operator": {...}}`.
fn load_operator(path: &Path, given: Option<Arc<VertexSet>>) -> Result<GradedOperator> {
    let doc = read_json(path)?;
    let (own, desc) = match doc.get("operator") {
        Some(op) => {
            let labels: Option<Vec<String>> = match doc.get("vertices") {
                Some(v) => Some(
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("invalid vertex list: {e}")))?,
                ),
                None => None,
            };
            (labels.map(|l| vertex_set(&l)).transpose()?, op.clone())
        }
        None => (None, doc),
    };
    let vs = match (own, given) {
        (Some(a), Some(b)) if *a != *b => {
            return Err(Error::Parse(format!(
                "vertex set conflict: operator file declares {:?}, command line gives {:?}",
                a.labels(),
                b.labels()
            )))
        }
        (_, Some(b)) => b,
        (Some(a), None) => a,
        (None, None) => return Err(Error::Parse("no vertex set: pass --vertices".into())),
    };
    GradedOperator::from_descriptor(&desc, vs)
}

fn dims(labels: &[String], max_degree: usize, format: Format, cap: usize) -> Result<Output> {
    let vs = vertex_set(labels)?;
    let mut lambda = Vec::new();
    let mut regular = Vec::new();
    for n in 0..=max_degree {
        lambda.push(Basis::new(vs.len(), n as i64, Space::Full, cap)?.len());
        regular.push(Basis::new(vs.len(), n as i64, Space::Regular, cap)?.len());
    }
    Ok(Output::ok(match format {
        Format::Json => pretty(&json!({
            "vertices": vs.labels(),
            "max_degree": max_degree,
            "lambda": lambda,
            "regular": regular,
        })),
        Format::Csv => {
            let mut s = String::from("degree,lambda,regular\n");
            for n in 0..=max_degree {
                s.push_str(&format!("{n},{},{}\n", lambda[n], regular[n]));
            }
            s
        }
        Format::Human => {
            let mut s = format!("{:>6} {:>12} {:>12}\n", "degree", "lambda", "regular");
            for n in 0..=max_degree {
                s.push_str(&format!("{n:>6} {:>12} {:>12}\n", lambda[n], regular[n]));
            }
            s
        }
    }))
}

fn apply(op: &Path, chain: &Path, labels: Option<&[String]>) -> Result<Output> {
    let given = labels.map(vertex_set).transpose()?;
    let (xi, _) = chain_from_json(&read_json(chain)?, given)?;
    let op = load_operator(op, Some(xi.vertices().clone()))?;
    let out = op.apply(&xi)?;
    Ok(Output::ok(pretty(&chain_to_json(&out, op.codomain()))))
}

fn matrix(
    op: &Path,
    degree: usize,
    space: SpaceArg,
    format: Format,
    labels: Option<&[String]>,
    cap: usize,
) -> Result<Output> {
    let given = labels.map(vertex_set).transpose()?;
    let op = load_operator(op, given)?;
    let op = match (space, op.domain(), op.codomain()) {
        (SpaceArg::Full, Space::Full, Space::Full) | (SpaceArg::Regular, Space::Regular, Space::Regular) => op,
        (SpaceArg::Regular, Space::Full, Space::Full) => op.induced_regular()?,
        _ => {
            return Err(Error::SpaceMismatch(format!(
                "operator maps {} to {}, which has no {} matrix",
                op.domain().as_str(),
                op.codomain().as_str(),
                match space {
                    SpaceArg::Full => "full-space",
                    SpaceArg::Regular => "regular-space",
                }
            )))
        }
    };
    let m = OperatorMatrix::materialize(&op, degree, cap)?;
    Ok(Output::ok(match format {
        Format::Csv => m.to_csv(),
        Format::Json => pretty(&m.to_json(op.vertices())),
        Format::Human => {
            let vs = op.vertices();
            let mut s = format!("{} x {}, {} nonzero\n", m.nrows(), m.ncols(), m.nnz());
            for (r, c, v) in m.entries() {
                s.push_str(&format!(
                    "{} <- {}: {v}\n",
                    m.rows().path_at(r).render(vs),
                    m.cols().path_at(c).render(vs)
                ));
            }
            s
        }
    }))
}

fn verify(
    suite: &str,
    labels: Option<&[String]>,
    max_degree: usize,
    seed: u64,
    trials: usize,
    cap: usize,
) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let cfg = VerifyConfig {
        seed,
        trials,
        basis_cap: cap,
        max_degree,
        anticomm_max_degree: max_degree.min(3),
        vertices: labels.map(vertex_set).transpose()?,
        ..VerifyConfig::default()
    };
    let report = verifier::run(suite, &cfg)?;
    Ok(Output {
        stdout: report.render(),
        code: if report.ok() { 0 } else { 1 },
    })
}

fn counterexample(identity: &str, labels: &[String], max_degree: usize, cap: usize) -> Result<Output> {
    let id: IdentityId = identity.parse()?;
    let vs = vertex_set(labels)?;
    let outcome = find_counterexample(id, &vs, max_degree, cap)?;
    let code = match outcome {
        SearchOutcome::Found(_) => 0,
        SearchOutcome::NotFound { .. } => 1,
    };
    Ok(Output {
        stdout: pretty(&outcome.to_json()),
        code,
    })
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output> {
    let cap = cli.basis_cap;
    match &cli.command {
        Command::Dims {
            vertices,
            max_degree,
            format,
        } => dims(vertices, *max_degree, *format, cap),
        Command::Apply { op, chain, vertices } => apply(op, chain, vertices.as_deref()),
        Command::Matrix {
            op,
            degree,
            space,
            format,
            vertices,
        } => matrix(op, *degree, *space, *format, vertices.as_deref(), cap),
        Command::Verify {
            suite,
            vertices,
            max_degree,
            seed,
            trials,
        } => verify(suite, vertices.as_deref(), *max_degree, *seed, *trials, cap),
        Command::Counterexample {
            identity,
            vertices,
            max_degree,
        } => counterexample(identity, vertices, *max_degree, cap),
    }
}

/// Single-line JSON error for stderr.
pub fn error_line(kind: &str, message: &str, code: i32) -> String {
    json!({"error": kind, "message": message, "code": code}).to_string()
}

pub fn describe(e: &Error) -> String {
    let kind = match e.kind() {
        ErrorKind::Parse => "parse",
        ErrorKind::Domain => "domain",
        ErrorKind::Resource => "resource",
    };
    error_line(kind, &e.to_string(), e.exit_code())
}

/// Parses arguments, runs the command, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            eprintln!("{}", error_line("usage", first, 2));
            return 2;
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", error_line("usage", &e.to_string(), 2));
            return 2;
        }
    }
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("{}", describe(&e));
            e.exit_code()
        }
    }
}
