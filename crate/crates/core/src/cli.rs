//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{multinomial, rational_string};
use crate::basis::Composition;
use crate::corpus::{default_corpus, load_corpus};
use crate::crosscheck::run_crosscheck;
use crate::error::{Error, Result};
use crate::eulerian::{mixed_eulerian, Algorithm, EulerianEngine};
use crate::invariants::men_vector;
use crate::matroid::json::MatroidSpec;
use crate::matroid::Matroid;
use crate::poly::{monomial_name, MultiPoly};

pub const MEN_MAX_N: usize = 8;
pub const TABLE_MAX_N: usize = 7;
pub const CROSSCHECK_MAX_ELEMENTS: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "eulab", version, about = "Mixed Eulerian numbers and matroid invariants in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mixed Eulerian number of a composition.
    Men {
        /// Composition such as `1,0,2`.
        #[arg(long, value_name = "A")]
        a: String,
        /// Expected dimension; defaults to the number of entries.
        #[arg(long)]
        n: Option<usize>,
        /// Also evaluate every matroidal algorithm on the boolean matroid.
        #[arg(long)]
        all_algorithms: bool,
        #[arg(long)]
        json: bool,
    },
    /// Invariants of a matroid given as a JSON file.
    Matroid {
        file: PathBuf,
        #[arg(long, value_enum)]
        invariant: InvariantKind,
        /// Composition for `--invariant men`.
        #[arg(long, value_name = "A")]
        a: Option<String>,
        #[arg(long)]
        all_algorithms: bool,
    },
    /// Run the theorem suite over a corpus.
    Crosscheck {
        #[arg(long, default_value_t = 5)]
        max_elements: usize,
        /// JSON array of matroid descriptions; the shipped corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Omit runtimes so the report is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// CSV of every `A(a)` for one `n`.
    Table {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantKind {
    Men,
    MenVector,
    Tutte,
    Charpoly,
    Ginv,
    Catenary,
}

/// Result of one command: text for stdout and the process exit status.
pub struct Outcome {
    pub stdout: String,
    pub status: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, status: 0 }
    }
}

/// Two-space indented JSON, the format of every JSON document the CLI prints.
pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn parse_composition(text: &str) -> Result<Composition> {
    text.parse()
}

fn composition_json(a: &Composition) -> Value {
    json!(a.entries.iter().map(u32::to_string).collect::<Vec<_>>())
}

fn boolean_values(a: &Composition) -> Result<BTreeMap<&'static str, String>> {
    let boolean = Matroid::uniform(a.len() + 1, a.len() + 1)?;
    let mut engine = EulerianEngine::new();
    let mut out = BTreeMap::new();
    for alg in Algorithm::ALL {
        out.insert(alg.name(), engine.matroidal(alg, &boolean, a)?.to_string());
    }
    Ok(out)
}

fn cmd_men(a: &str, n: Option<usize>, all_algorithms: bool, as_json: bool) -> Result<Outcome> {
    let a = parse_composition(a)?;
    let n = n.unwrap_or(a.len());
    if n == 0 {
        return Err(Error::params("composition must have at least one entry"));
    }
    a.expect_shape(n, n as u32)?;
    if n > MEN_MAX_N {
        return Err(Error::SizeLimit(format!("men is limited to n <= {MEN_MAX_N}")));
    }
    let value = mixed_eulerian(&a)?;
    if !all_algorithms && !as_json {
        return Ok(Outcome::ok(format!("{value}\n")));
    }
    let mut out = json!({"a": composition_json(&a), "value": value.to_string()});
    let mut status = 0;
    if all_algorithms {
        let values = boolean_values(&a)?;
        if values.values().any(|v| *v != value.to_string()) {
            status = 1;
        }
        out["algorithms"] = json!(values);
    }
    Ok(Outcome { stdout: pretty(&out) + "\n", status })
}

fn poly_json(p: &MultiPoly, names: &[&str]) -> Value {
    let map: BTreeMap<String, String> = p
        .terms()
        .map(|(e, c)| {
            let name = monomial_name(e, names);
            (if name.is_empty() { "1".to_string() } else { name }, rational_string(c))
        })
        .collect();
    json!(map)
}

fn matroid_men(m: &Matroid, a: Option<&Composition>, all_algorithms: bool) -> Result<Value> {
    let a = a.ok_or_else(|| Error::params("--invariant men needs --a"))?;
    if m.rank() == 0 {
        return Err(Error::params("matroidal mixed Eulerian numbers need positive rank"));
    }
    a.expect_shape(m.num_elements() - 1, m.rank() as u32 - 1)?;
    let mut engine = EulerianEngine::new();
    let value = engine.matroidal_closed(m, a)?;
    let mut out = json!({"a": composition_json(a), "value": value.to_string()});
    if all_algorithms {
        let mut values = BTreeMap::new();
        for alg in Algorithm::ALL {
            values.insert(alg.name(), engine.matroidal(alg, m, a)?.to_string());
        }
        out["algorithms"] = json!(values);
    }
    Ok(out)
}

fn men_vector_json(m: &Matroid) -> Result<Value> {
    let values: Vec<Value> = men_vector(m)?
        .iter()
        .map(|(a, v)| json!({"a": composition_json(a), "value": v.to_string()}))
        .collect();
    Ok(json!({"loopless": m.is_loopless(), "values": values}))
}

/// The JSON document printed by `eulab matroid`; `a` is required for [`InvariantKind::Men`].
pub fn invariant_json(m: &Matroid, invariant: InvariantKind, a: Option<&Composition>, all_algorithms: bool) -> Result<Value> {
    Ok(match invariant {
        InvariantKind::Men => matroid_men(m, a, all_algorithms)?,
        InvariantKind::MenVector => men_vector_json(m)?,
        InvariantKind::Tutte => poly_json(&m.tutte(), &["x", "y"]),
        InvariantKind::Charpoly => poly_json(&m.reduced_char_poly()?, &["q"]),
        InvariantKind::Ginv => {
            let map: BTreeMap<String, String> = m
                .g_invariant()?
                .multiplicities
                .iter()
                .map(|(k, v)| (k.iter().map(u8::to_string).collect::<String>(), v.to_string()))
                .collect();
            json!(map)
        }
        InvariantKind::Catenary => {
            let map: BTreeMap<String, String> = m
                .catenary()
                .counts
                .iter()
                .map(|(k, v)| (k.iter().map(usize::to_string).collect::<Vec<_>>().join(","), v.to_string()))
                .collect();
            json!(map)
        }
    })
}

fn cmd_matroid(file: &PathBuf, invariant: InvariantKind, a: Option<&str>, all_algorithms: bool) -> Result<Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::params(format!("cannot read {}: {e}", file.display())))?;
    let m = MatroidSpec::parse(&text)?.build()?;
    let a = a.map(parse_composition).transpose()?;
    Ok(Outcome::ok(pretty(&invariant_json(&m, invariant, a.as_ref(), all_algorithms)?) + "\n"))
}

fn cmd_crosscheck(max_elements: usize, corpus: Option<&PathBuf>, no_timing: bool) -> Result<Outcome> {
    if max_elements > CROSSCHECK_MAX_ELEMENTS {
        return Err(Error::params(format!("--max-elements is limited to {CROSSCHECK_MAX_ELEMENTS}")));
    }
    let corpus = match corpus {
        Some(path) => load_corpus(path)?,
        None => default_corpus(),
    };
    let report = run_crosscheck(&corpus, max_elements, !no_timing)?;
    Ok(Outcome { stdout: report.to_json() + "\n", status: if report.passed { 0 } else { 1 } })
}

fn cmd_table(n: usize) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::params("n must be positive"));
    }
    if n > TABLE_MAX_N {
        return Err(Error::SizeLimit(format!("table is limited to n <= {TABLE_MAX_N}")));
    }
    let mut out = String::new();
    let header: Vec<String> = (1..=n).map(|i| format!("a{i}")).chain(["A".into(), "multinomial".into(), "P".into()]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for a in Composition::all(n, n as u32) {
        let value = mixed_eulerian(&a)?;
        let parts: Vec<i64> = a.entries.iter().map(|&x| i64::from(x)).collect();
        let weight: BigInt = multinomial(&parts);
        let row: Vec<String> = a.entries.iter().map(u32::to_string).chain([value.to_string(), weight.to_string(), (&weight * &value).to_string()]).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Men { a, n, all_algorithms, json } => cmd_men(a, *n, *all_algorithms, *json),
        Command::Matroid { file, invariant, a, all_algorithms } => cmd_matroid(file, *invariant, a.as_deref(), *all_algorithms),
        Command::Crosscheck { max_elements, corpus, no_timing } => cmd_crosscheck(*max_elements, corpus.as_ref(), *no_timing),
        Command::Table { n } => cmd_table(*n),
    }
}

/// Applies `EULAB_THREADS` to the global worker pool.
pub fn configure_threads(value: Option<&str>) -> Result<()> {
    let Some(value) = value else { return Ok(()) };
    let threads: usize = value.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| Error::params(format!("EULAB_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

/// Parses arguments, runs the command and returns the exit status.
pub fn main_with(args: impl IntoIterator<Item = String>, stdout: &mut impl Write, stderr: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let result = configure_threads(std::env::var("EULAB_THREADS").ok().as_deref()).and_then(|()| execute(&cli));
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.describe());
            e.exit_code()
        }
    }
}
