//! Command-line front end: JSON in, canonical JSON (or CSV) out.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::archimedean::{
    constant_term_constants, f0_quadrature, f0_special, f1_rank1_coeff, intertwiner_data, kbessel,
    poly_identity_check, whittaker, WhittakerQuery,
};
use crate::coefficients::{
    a_theta, e6_pullback_coeff, e7_pullback_coeff, fdelta_coeff, kim_coeff, kim_theta_identity_with, ramanujan_tau,
    sigma,
};
use crate::composition::{count_norm, enumerate_norm, AlgebraKind, CompositionElement};
use crate::enumeration::{Cache, EnumerationTask, PairingClass};
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::jordan::JordanElement;
use crate::rational::{self, Q};
use crate::suite::{self, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "freudenthal", version, about = "Exact arithmetic on integral octonions, Albert algebras and Freudenthal spaces")]
struct Cli {
    /// Cache directory for enumeration results.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Height bound for enumerations and pullback sums.
    #[arg(long, global = true, value_name = "H")]
    height: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized sample sets.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Composition-algebra arithmetic.
    Oct {
        #[command(subcommand)]
        op: OctOp,
    },
    /// Albert-algebra operations.
    Jordan {
        #[command(subcommand)]
        op: JordanOp,
    },
    /// Freudenthal-space operations.
    W {
        #[command(subcommand)]
        op: WOp,
    },
    /// Rank-one enumerations.
    Enum {
        #[command(subcommand)]
        op: EnumOp,
    },
    /// Enumeration cache management.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
    /// Fourier coefficients.
    Coeff {
        #[command(subcommand)]
        op: CoeffOp,
    },
    /// Finite identities between coefficients.
    Identity {
        #[command(subcommand)]
        op: IdentityOp,
    },
    /// Archimedean special functions and constants.
    Arch {
        #[command(subcommand)]
        op: ArchOp,
    },
    /// Acceptance checks.
    Suite {
        #[command(subcommand)]
        op: SuiteOp,
    },
}

/// An element as inline JSON, a file path, or `-` for stdin.
#[derive(Args, Debug)]
struct Input {
    input: String,
    #[arg(long, default_value = "theta0")]
    algebra: String,
}

#[derive(Args, Debug)]
struct Pair {
    x: String,
    y: String,
    #[arg(long, default_value = "theta0")]
    algebra: String,
}

#[derive(Subcommand, Debug)]
enum OctOp {
    Mul(Pair),
    Norm(Input),
    Conj(Input),
    Trace(Input),
    /// Elements of the order with norm `m`.
    EnumNorm {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "theta0")]
        algebra: String,
        /// List elements only when there are at most this many.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
}

#[derive(Subcommand, Debug)]
enum JordanOp {
    Norm(Input),
    Adjoint(Input),
    Rank(Input),
    Psd(Input),
    Content(Input),
    Pair(Pair),
    Cross(Pair),
}

#[derive(Subcommand, Debug)]
enum WOp {
    Rank(Input),
    Quartic(Input),
    Flat(Input),
    Content(Input),
    Symp(Pair),
}

#[derive(Subcommand, Debug)]
enum EnumOp {
    /// Rank-one PSD `T ∈ J₀` with `(T, K) = n`.
    #[command(name = "rank1-psd")]
    Rank1Psd {
        #[arg(long, value_name = "I|E")]
        pairing: String,
        #[arg(long)]
        value: u64,
    },
    /// Rank-one `ω` over `J₀` with prescribed contractions `ω₀`.
    Fiber {
        #[arg(long, value_name = "I|E")]
        class: String,
        #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_hyphen_values = true)]
        omega0: Vec<String>,
    },
    /// All rank-one integral elements up to the height bound.
    Sweep {
        #[arg(long, default_value = "rat")]
        lattice: String,
    },
}

#[derive(Subcommand, Debug)]
enum CacheOp {
    Clear,
    Path,
}

#[derive(Subcommand, Debug)]
enum CoeffOp {
    /// `a_θ(ω)` of the minimal modular form.
    Theta(Input),
    /// Kim's coefficient at `T ∈ J₀`.
    Kim(Input),
    /// The theta-lift coefficient at `ω₀`.
    Fdelta {
        #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_hyphen_values = true)]
        omega0: Vec<String>,
    },
    /// E₇ pullback coefficient over `H₃(B)`.
    E7 {
        input: String,
        #[arg(long)]
        witnesses: bool,
    },
    /// E₆ pullback coefficient over `H₃(ℚ(i))`.
    E6 {
        input: String,
        #[arg(long)]
        witnesses: bool,
    },
    Tau {
        #[arg(long)]
        n: u64,
    },
    Sigma {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum IdentityOp {
    #[command(name = "kim-theta")]
    KimTheta {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ArchOp {
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Input: `{omega, n, v, g: {lambda, t}}`.
    Whittaker { input: String },
    F0 {
        #[arg(long)]
        n: u32,
    },
    #[command(name = "poly-id")]
    PolyId {
        #[arg(long)]
        n: u32,
    },
    Intertwiner {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    Constants {
        #[arg(long)]
        n: u32,
    },
    #[command(name = "rank1")]
    Rank1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteOp {
    Acceptance {
        /// Reduced bounds.
        #[arg(long)]
        fast: bool,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

/// Exit status and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok((value, code)) => match render(&value, format) {
            Ok(stdout) => Outcome { code, stdout, stderr: String::new() },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: error_json(&e) },
        },
        Err(e) => Outcome { code: if e.is_usage() { 2 } else { 1 }, stdout: String::new(), stderr: error_json(&e) },
    }
}

fn error_json(e: &Error) -> String {
    let kind = if e.is_usage() { "usage" } else { "domain" };
    format!("{}\n", json!({ "error": e.to_string(), "kind": kind }))
}

fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{v}\n")),
        Format::Csv => to_csv(v),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.insert(prefix.to_string(), Value::String(a.iter().map(cell).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        _ => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One row per element of a top-level array, else a single row; nested keys are dotted.
fn to_csv(v: &Value) -> Result<String> {
    let rows: Vec<Map<String, Value>> = match v {
        Value::Array(a) => a
            .iter()
            .map(|x| {
                let mut m = Map::new();
                flatten(if x.is_object() { "" } else { "value" }, x, &mut m);
                m
            })
            .collect(),
        other => {
            let mut m = Map::new();
            flatten(if other.is_object() { "" } else { "value" }, other, &mut m);
            vec![m]
        }
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&header).map_err(io)?;
    for r in &rows {
        w.write_record(header.iter().map(|k| r.get(k).map(cell).unwrap_or_default())).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Inline JSON, `-` for stdin, or a path to a JSON file.
fn read_json(src: &str) -> Result<Value> {
    if let Ok(v) = serde_json::from_str(src) {
        return Ok(v);
    }
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: not JSON and not a readable file ({e})")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

fn kind(name: &str) -> Result<AlgebraKind> {
    AlgebraKind::from_name(name)
}

fn oct(src: &str, k: AlgebraKind) -> Result<CompositionElement> {
    CompositionElement::from_json(&read_json(src)?, k)
}

fn jordan(src: &str, k: AlgebraKind) -> Result<JordanElement> {
    JordanElement::from_json(&read_json(src)?, k)
}

fn w(src: &str, k: AlgebraKind) -> Result<FreudenthalElement> {
    FreudenthalElement::from_json(&read_json(src)?, k)
}

fn q_json(x: &Q) -> Value {
    rational::to_json(x)
}

fn parse_omega0(v: &[String]) -> Result<[Q; 4]> {
    if v.len() != 4 {
        return Err(Error::Parse("--omega0 takes four rationals".into()));
    }
    Ok([rational::parse(&v[0])?, rational::parse(&v[1])?, rational::parse(&v[2])?, rational::parse(&v[3])?])
}

fn cache(cli: &Cli) -> Cache {
    Cache::new(cli.cache_dir.clone().unwrap_or_else(Cache::default_dir))
}

fn execute(cli: &Cli) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, 0));
    match &cli.command {
        Command::Oct { op } => match op {
            OctOp::Mul(p) => {
                let k = kind(&p.algebra)?;
                ok(oct(&p.x, k)?.mul(&oct(&p.y, k)?)?.to_json())
            }
            OctOp::Norm(i) => ok(json!({ "norm": q_json(&oct(&i.input, kind(&i.algebra)?)?.norm()) })),
            OctOp::Conj(i) => ok(oct(&i.input, kind(&i.algebra)?)?.conj().to_json()),
            OctOp::Trace(i) => ok(json!({ "trace": q_json(&oct(&i.input, kind(&i.algebra)?)?.trace()) })),
            OctOp::EnumNorm { m, algebra, limit } => {
                let k = kind(algebra)?;
                let count = count_norm(k, *m);
                let elements = if count <= *limit { Value::Array(enumerate_norm(k, *m).iter().map(CompositionElement::to_json).collect()) } else { Value::Null };
                ok(json!({ "algebra": k.name(), "m": m, "count": count, "elements": elements }))
            }
        },
        Command::Jordan { op } => match op {
            JordanOp::Norm(i) => ok(json!({ "norm": q_json(&jordan(&i.input, kind(&i.algebra)?)?.norm()) })),
            JordanOp::Adjoint(i) => ok(jordan(&i.input, kind(&i.algebra)?)?.adjoint().to_json()),
            JordanOp::Rank(i) => ok(json!({ "rank": jordan(&i.input, kind(&i.algebra)?)?.rank() })),
            JordanOp::Psd(i) => ok(json!({ "psd": jordan(&i.input, kind(&i.algebra)?)?.is_psd() })),
            JordanOp::Content(i) => ok(json!({ "content": jordan(&i.input, kind(&i.algebra)?)?.content()? })),
            JordanOp::Pair(p) => {
                let k = kind(&p.algebra)?;
                ok(json!({ "pair": q_json(&jordan(&p.x, k)?.try_pair(&jordan(&p.y, k)?)?) }))
            }
            JordanOp::Cross(p) => {
                let k = kind(&p.algebra)?;
                let (x, y) = (jordan(&p.x, k)?, jordan(&p.y, k)?);
                if x.kind() != y.kind() {
                    return Err(Error::AlgebraMismatch(x.kind(), y.kind()));
                }
                ok(x.cross(&y).to_json())
            }
        },
        Command::W { op } => match op {
            WOp::Rank(i) => ok(json!({ "rank": w(&i.input, kind(&i.algebra)?)?.rank() })),
            WOp::Quartic(i) => ok(json!({ "quartic": q_json(&w(&i.input, kind(&i.algebra)?)?.quartic()) })),
            WOp::Flat(i) => ok(w(&i.input, kind(&i.algebra)?)?.wflat().to_json()),
            WOp::Content(i) => ok(json!({ "content": w(&i.input, kind(&i.algebra)?)?.content()? })),
            WOp::Symp(p) => {
                let k = kind(&p.algebra)?;
                ok(json!({ "symp": q_json(&w(&p.x, k)?.symp(&w(&p.y, k)?)?) }))
            }
        },
        Command::Enum { op } => {
            let task = match op {
                EnumOp::Rank1Psd { pairing, value } => {
                    EnumerationTask::JordanRank1PsdPairing { pairing: PairingClass::from_name(pairing)?, value: *value }
                }
                EnumOp::Fiber { class, omega0 } => EnumerationTask::omega_fiber(
                    PairingClass::from_name(class)?,
                    &parse_omega0(omega0)?,
                    cli.height.unwrap_or(suite::FIBER_HEIGHT),
                ),
                EnumOp::Sweep { lattice } => {
                    EnumerationTask::Rank1Sweep { lattice: kind(lattice)?.name().into(), height: cli.height.unwrap_or(1) }
                }
            };
            ok(cache(cli).run(&task)?.to_json())
        }
        Command::Cache { op } => {
            let c = cache(cli);
            match op {
                CacheOp::Clear => ok(json!({ "removed": c.clear()?, "dir": c.dir().display().to_string() })),
                CacheOp::Path => ok(json!({ "dir": c.dir().display().to_string() })),
            }
        }
        Command::Coeff { op } => {
            let height = cli.height.unwrap_or(suite::PULLBACK_HEIGHT);
            match op {
                CoeffOp::Theta(i) => ok(json!({ "value": a_theta(&w(&i.input, kind(&i.algebra)?)?)? })),
                CoeffOp::Kim(i) => ok(json!({ "value": q_json(&kim_coeff(&jordan(&i.input, kind(&i.algebra)?)?)?) })),
                CoeffOp::Fdelta { omega0 } => {
                    let v = fdelta_coeff(&parse_omega0(omega0)?, cli.height.unwrap_or(suite::FIBER_HEIGHT))?;
                    ok(serde_json::to_value(v).expect("values serialize"))
                }
                CoeffOp::E7 { input, witnesses } => {
                    ok(e7_pullback_coeff(&w(input, AlgebraKind::Hurwitz)?, height)?.to_json(*witnesses))
                }
                CoeffOp::E6 { input, witnesses } => {
                    ok(e6_pullback_coeff(&w(input, AlgebraKind::Gauss)?, height)?.to_json(*witnesses))
                }
                CoeffOp::Tau { n } => ok(json!({ "n": n, "tau": ramanujan_tau(*n)? })),
                CoeffOp::Sigma { k, n } => {
                    if *n == 0 {
                        return Err(Error::InvalidParameter("σ_k(n) needs n ≥ 1".into()));
                    }
                    ok(json!({ "k": k, "n": n, "sigma": sigma(*k, *n) }))
                }
            }
        }
        Command::Identity { op: IdentityOp::KimTheta { n } } => {
            let c = cache(cli);
            let r = kim_theta_identity_with(*n, |t| c.run(t))?;
            ok(serde_json::to_value(&r).expect("records serialize"))
        }
        Command::Arch { op } => match op {
            ArchOp::Bessel { v, y } => ok(json!({ "v": v, "y": y, "value": kbessel(*v, *y)? })),
            ArchOp::Whittaker { input } => {
                let query = WhittakerQuery::from_json(&read_json(input)?)?;
                ok(serde_json::to_value(whittaker(&query)?).expect("values serialize"))
            }
            ArchOp::F0 { n } => {
                let f = f0_special(*n)?;
                let mut v = f.to_json();
                v["quadrature"] = json!(f0_quadrature(*n)?);
                ok(v)
            }
            ArchOp::PolyId { n } => ok(json!({ "n": n, "holds": poly_identity_check(*n)? })),
            ArchOp::Intertwiner { s } => ok(intertwiner_data(&rational::parse(s)?)?.to_json()),
            ArchOp::Constants { n } => ok(constant_term_constants(*n)?.to_json()),
            ArchOp::Rank1 { n, a } => ok(json!({ "n": n, "a": a, "value": q_json(&f1_rank1_coeff(*n, *a)?) })),
        },
        Command::Suite { op: SuiteOp::Acceptance { fast, only } } => {
            let opts = SuiteOptions {
                fast: *fast,
                seed: cli.seed.unwrap_or(suite::DEFAULT_SEED),
                cache: cli.cache_dir.clone().map(Cache::new),
            };
            let reports = match only {
                Some(id) => vec![suite::run_criterion(*id, &opts)
                    .ok_or_else(|| Error::Parse(format!("no criterion {id}")))?],
                None => suite::run_acceptance(&opts),
            };
            let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
            Ok((Value::Array(reports.iter().map(|r| r.to_json()).collect()), code))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("freudenthal").chain(args.iter().copied()))
    }

    #[test]
    fn rank_of_base_point() {
        let o = go(&["w", "rank", r#"{"a":0,"b":0,"c":0,"d":1}"#]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "{\"rank\":1}\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["w", "rank", "{not json"]).code, 2);
        assert_eq!(go(&["arch", "bessel", "--v", "0", "--y", "-1"]).code, 1);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn csv_output() {
        let o = go(&["--format", "csv", "coeff", "sigma", "--k", "3", "--n", "2"]);
        assert_eq!(o.stdout, "k,n,sigma\n3,2,9\n");
    }
}
