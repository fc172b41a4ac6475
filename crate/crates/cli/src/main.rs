//! `blowsphere`: command-line front end.
//!
//! Exit codes:
//! - 0: success (for `classify`: equivalent)
//! - 1: `classify` found the germs not equivalent, `oracle` disagreed with the
//!   symbolic counts, or a `selftest` criterion failed
//! - 2: unreadable or malformed input, invalid arguments
//! - 3: non-reduced germ
//! - 4: missing corpus file (`selftest --corpus`)
//! - 5: numerical or other internal failure
//!
//! JSON goes to stdout only, and only with exit codes 0 and 1. Diagnostics
//! and the `--pretty` summaries go to stderr.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blowsphere::classify::{self, EquivalenceDecision};
use blowsphere::dschecks::{self, FamilyReport};
use blowsphere::germ::{self, AnalyzeOptions, GermInput, GermReport};
use blowsphere::oracle;
use blowsphere::puiseux::DEFAULT_TERMS;
use blowsphere::{acceptance, corpus, Error};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

mod schema;

#[derive(Parser)]
#[command(
    name = "blowsphere",
    version,
    about = "Invariants and blow-spherical equivalence of complex curve germs"
)]
struct Cli {
    /// Print the JSON schemas of all reports and exit.
    #[arg(long)]
    json_schema: bool,

    /// Also write a human-readable summary to stderr.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report of one germ.
    Analyze(AnalyzeArgs),
    /// Decide blow-spherical equivalence of two curve germs.
    Classify(ClassifyArgs),
    /// Numerical spherical blow-up: sheet counts over each tangent line.
    Oracle(OracleArgs),
    /// Equimultiplicity of a one-parameter family.
    Family(FamilyArgs),
    /// Multiplicity candidates from the Descartes polynomial.
    Descartes(DescartesArgs),
    /// Multiplicity candidates from the Lê-number equation.
    Le(LeArgs),
    /// The `descartes`, `le` and `family` checks under one verb.
    #[command(subcommand)]
    Dschecks(DsCommand),
    /// Run the acceptance criteria.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum DsCommand {
    Descartes(DescartesArgs),
    Le(LeArgs),
    Family(FamilyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Germ file (`-` for stdin).
    file: PathBuf,
    /// Puiseux terms per branch.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    x: PathBuf,
    y: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: usize,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    /// Comma-separated, strictly decreasing radii in (0, 1).
    #[arg(long, value_delimiter = ',', default_values_t = oracle::DEFAULT_RADII.to_vec())]
    radii: Vec<f64>,
    #[arg(long, default_value_t = oracle::DEFAULT_PER_RADIUS)]
    per_radius: usize,
    /// Defaults to BLOWSPHERE_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = oracle::DEFAULT_DELTA)]
    delta: f64,
    /// Write the sampled point cloud to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: usize,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family file: a polynomial in the z-variables and `t`.
    #[arg(long = "file")]
    file: PathBuf,
    #[arg(long, default_value_t = 101)]
    t_samples: usize,
}

#[derive(Args)]
struct DescartesArgs {
    #[arg(long)]
    n: u32,
    /// The input datum mu'.
    #[arg(long)]
    mu: u64,
}

#[derive(Args)]
struct LeArgs {
    #[arg(long)]
    n: u32,
    /// Lê numbers lambda^0, lambda^1, ...
    #[arg(long, value_delimiter = ',', required = true)]
    lambdas: Vec<u64>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Corpus file; defaults to the embedded corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

/// A failed command: exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::ZeroDenominator { .. }
            | Error::ZeroPolynomial
            | Error::NotVanishing
            | Error::VariableCount { .. }
            | Error::EmptyBranches
            | Error::Invalid(_)
            | Error::Io(_) => 2,
            Error::NonReduced(_) => 3,
            _ => 5,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = std::result::Result<(u8, Value), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        emit(&serde_json::to_string_pretty(&schema::all()).expect("serializable"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    let outcome = match command {
        Command::Analyze(a) => analyze(&a, cli.pretty),
        Command::Classify(a) => classify_cmd(&a, cli.pretty),
        Command::Oracle(a) => oracle_cmd(&a, cli.pretty),
        Command::Family(a) | Command::Dschecks(DsCommand::Family(a)) => family(&a, cli.pretty),
        Command::Descartes(a) | Command::Dschecks(DsCommand::Descartes(a)) => {
            descartes(&a, cli.pretty)
        }
        Command::Le(a) | Command::Dschecks(DsCommand::Le(a)) => le(&a, cli.pretty),
        Command::Selftest(a) => selftest(&a),
    };
    match outcome {
        Ok((code, value)) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            };
            emit(&text.expect("serializable"));
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

/// Write a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_germ(path: &Path, terms: usize) -> std::result::Result<GermReport, Failure> {
    let text = read_input(path)?;
    let input = GermInput::parse(&text).map_err(|e| with_path(path, e))?;
    let mut report =
        germ::analyze(&input, &AnalyzeOptions { terms }).map_err(|e| with_path(path, e))?;
    report.source = path.display().to_string();
    Ok(report)
}

fn with_path(path: &Path, e: Error) -> Failure {
    let Failure(code, msg) = Failure::from(e);
    Failure(code, format!("{}: {msg}", path.display()))
}

fn seed_or_env(seed: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("BLOWSPHERE_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(2, format!("BLOWSPHERE_SEED is not an integer: {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn analyze(a: &AnalyzeArgs, pretty: bool) -> Outcome {
    let report = load_germ(&a.file, a.terms)?;
    if pretty {
        eprintln!("{}", summary(&report));
    }
    Ok((0, germ::report_json(&report)))
}

fn summary(r: &GermReport) -> String {
    let mut s = format!(
        "{}: {} in {} variables, multiplicity {}",
        r.source,
        r.kind.as_str(),
        r.nvars(),
        r.multiplicity
    );
    if let Some(cone) = r.lines() {
        s += &format!(
            ", {} tangent line(s), k = {:?}",
            cone.lines.len(),
            cone.relative_mult
        );
    }
    if !r.branches.is_empty() {
        let mults: Vec<u32> = r.branches.iter().map(|b| b.multiplicity).collect();
        s += &format!(", branch multiplicities {mults:?}");
    }
    s + &format!(", {}", r.regularity.as_str())
}

fn classify_cmd(a: &ClassifyArgs, pretty: bool) -> Outcome {
    let x = load_germ(&a.x, a.terms)?;
    let y = load_germ(&a.y, a.terms)?;
    let d: EquivalenceDecision = classify::equivalent(&x, &y)?;
    if pretty {
        let verdict = if d.equivalent {
            "equivalent"
        } else {
            "not equivalent"
        };
        eprintln!("{} vs {}: {verdict}", x.source, y.source);
        eprintln!(
            "  signatures {} and {}",
            classify::signature(&x),
            classify::signature(&y)
        );
        if let Some(c) = &d.certificate {
            eprintln!("  {c}");
        }
    }
    let mut v = classify::decision_json(&d);
    v["x"] = json!({"source": x.source, "signature": classify::signature(&x).to_string()});
    v["y"] = json!({"source": y.source, "signature": classify::signature(&y).to_string()});
    Ok((if d.equivalent { 0 } else { 1 }, v))
}

fn oracle_cmd(a: &OracleArgs, pretty: bool) -> Outcome {
    let seed = seed_or_env(a.seed)?;
    let report = load_germ(&a.file, a.terms)?;
    let cone = report
        .lines()
        .ok_or_else(|| Failure(2, "the oracle needs a curve germ".into()))?
        .clone();
    let sample = oracle::sample_strict_transform(&report.branches, &a.radii, a.per_radius, seed)?;
    let est = oracle::estimate_boundary(&sample, &cone, a.delta)?;
    if let Some(path) = &a.csv {
        std::fs::write(path, oracle::to_csv(&sample))
            .map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    }
    let agree = est.sheet_counts == cone.relative_mult;
    let lines: Vec<Value> = cone
        .lines
        .iter()
        .zip(&cone.relative_mult)
        .zip(&est.sheet_counts)
        .map(|((l, k), e)| {
            let dir: Vec<Value> = l
                .direction
                .iter()
                .flat_map(|z| [json!(z.re), json!(z.im)])
                .collect();
            json!({"direction": dir, "k_symbolic": k, "k_oracle": e})
        })
        .collect();
    let deviation: Vec<Value> = oracle::cone_deviation(&sample, &cone)
        .into_iter()
        .map(|(r, d)| json!({"r": r, "max_distance": d}))
        .collect();
    if pretty {
        eprintln!(
            "{}: oracle {:?}, symbolic {:?}",
            report.source, est.sheet_counts, cone.relative_mult
        );
    }
    let v = json!({
        "source": report.source,
        "radii": a.radii,
        "per_radius": a.per_radius,
        "seed": seed,
        "delta": a.delta,
        "lines": lines,
        "cone_deviation": deviation,
        "agree": agree,
    });
    Ok((if agree { 0 } else { 1 }, v))
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn family_json(r: &FamilyReport) -> Value {
    let exceptional: Vec<Value> = r
        .exceptional_t
        .iter()
        .map(|p| json!({"exact": p.exact.as_ref().map(rational_text), "approx": p.approx, "order": p.order}))
        .collect();
    let sampled: Vec<Value> = r
        .sampled
        .iter()
        .map(|(t, m)| json!([rational_text(t), m]))
        .collect();
    json!({
        "generic_m": r.generic_m,
        "exceptional_t": exceptional,
        "equimultiple": r.equimultiple,
        "sampled": sampled,
    })
}

fn family(a: &FamilyArgs, pretty: bool) -> Outcome {
    let text = read_input(&a.file)?;
    let f = dschecks::parse_family(&text).map_err(|e| with_path(&a.file, e))?;
    let report = dschecks::family_equimultiplicity(&f, a.t_samples)?;
    if pretty {
        let ts: Vec<String> = report
            .exceptional_t
            .iter()
            .map(|p| format!("{:.6}", p.approx))
            .collect();
        eprintln!(
            "generic multiplicity {}, {}, exceptional t: [{}]",
            report.generic_m,
            if report.equimultiple {
                "equimultiple"
            } else {
                "not equimultiple"
            },
            ts.join(", ")
        );
    }
    let mut v = family_json(&report);
    v["source"] = json!(a.file.display().to_string());
    Ok((0, v))
}

fn polynomial_json(p: &blowsphere::polycore::UniPoly<BigRational>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(rational_text(c))).collect())
}

fn descartes(a: &DescartesArgs, pretty: bool) -> Outcome {
    let degrees = dschecks::descartes_multiplicity(a.n, a.mu)?;
    let p = dschecks::descartes_polynomial(a.n, a.mu);
    if pretty {
        eprintln!("n = {}, mu' = {}: d in {:?}", a.n, a.mu, degrees);
    }
    Ok((
        0,
        json!({
            "n": a.n,
            "mu_prime": a.mu,
            "polynomial": polynomial_json(&p),
            "positive_roots": dschecks::positive_root_count(&p),
            "degrees": degrees,
        }),
    ))
}

fn le(a: &LeArgs, pretty: bool) -> Outcome {
    let degrees = dschecks::le_multiplicity(a.n, &a.lambdas)?;
    let p = dschecks::le_polynomial(a.n, &a.lambdas);
    if pretty {
        eprintln!("n = {}, lambdas = {:?}: d in {:?}", a.n, a.lambdas, degrees);
    }
    Ok((
        0,
        json!({
            "n": a.n,
            "lambdas": a.lambdas,
            "polynomial": polynomial_json(&p),
            "positive_roots": dschecks::positive_root_count(&p),
            "degrees": degrees,
        }),
    ))
}

fn selftest(a: &SelftestArgs) -> Outcome {
    let seed = seed_or_env(a.seed)?;
    let germs = match &a.corpus {
        Some(path) if !path.exists() => {
            return Err(Failure(
                4,
                format!("corpus file not found: {}", path.display()),
            ))
        }
        Some(path) => corpus::load(path).map_err(|e| with_path(path, e))?,
        None => corpus::embedded(),
    };
    let results = acceptance::run_all(&germs, seed);
    let mut failed = Vec::new();
    for r in &results {
        eprintln!("{r}");
        if !r.passed {
            failed.push(r.name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing: {}", failed.join(", "));
    }
    let criteria: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "seconds": r.elapsed.as_secs_f64(),
                "detail": r.detail,
            })
        })
        .collect();
    let passed = failed.is_empty();
    Ok((
        if passed { 0 } else { 1 },
        json!({"passed": passed, "seed": seed, "criteria": criteria}),
    ))
}
