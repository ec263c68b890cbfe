//! Command-line surface over the weighted-radius library: compute scalar
//! quantities for a pair, evaluate and verify bound reports, generate fuzz
//! corpora, run the inequality suite, and recompute the reference table.
//!
//! Inputs are JSON pair files (`{"A": matrix, "S": matrix}` with each
//! matrix as `{"dim": n, "entries": [[[re, im], ...], ...]}`). Summaries
//! are JSON on stdout; row-level data goes to CSV via `--out`. All floats
//! are printed with 17 significant digits so output replays exactly.
//!
//! Exit codes: 0 success; 1 a check failed; 2 argument, file, or JSON
//! problems; 3 invalid weights or operators outside the adjoint domain;
//! 4 non-converged search (partial output is still printed).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use semihilbert::bounds::bound_report;
use semihilbert::error::Error as CoreError;
use semihilbert::fuzz::{run_bound_corpus, run_lemma_suite, run_triple_suite, FuzzConfig};
use semihilbert::io::{MatrixJson, PairFile};
use semihilbert::mat::max_abs;
use semihilbert::operator::Operator;
use semihilbert::radii::{
    a_crawford, a_dw_radius, a_min_modulus, a_numerical_radius, a_op_norm, OptimizerConfig,
};
use semihilbert::reproduce::run_reproduce;
use semihilbert::semi::a_adjoint;
use semihilbert::weight::HermitianPsd;
use serde::Deserialize;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "semihilbert", version, about = "Weighted operator radii, bounds, and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute seminorm, radii, and the weighted adjoint for one pair file.
    Compute(ComputeArgs),
    /// Evaluate every bound on one pair file and report slacks.
    Bounds(BoundsArgs),
    /// Check adjoint identities, radius ordering, and bound enclosure for one pair file.
    Verify(ComputeArgs),
    /// Generate a seeded corpus and run the bound, equality, and inequality suites.
    Fuzz(FuzzArgs),
    /// Run the scalar and vector inequality suite on seeded samples.
    Lemmas(LemmasArgs),
    /// Recompute the built-in reference comparisons and print them as CSV.
    Reproduce(ReproduceArgs),
}

/// Optimizer knobs shared by every subcommand. A config file provides
/// defaults; each flag overrides its field individually.
#[derive(Debug, Args)]
struct OptimizerArgs {
    /// JSON config file with optional `optimizer` and `fuzz` sections.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Random restarts per sphere search.
    #[arg(long)]
    restarts: Option<usize>,
    /// Angle-scan grid resolution.
    #[arg(long)]
    theta_grid: Option<usize>,
    /// Mixture-scan grid resolution.
    #[arg(long)]
    alpha_grid: Option<usize>,
    /// Golden-section refinement tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Master seed for generation and restart draws.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Pair file with matrices `A` and `S`.
    pair: PathBuf,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Pair file with matrices `A` and `S`.
    pair: PathBuf,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// CSV destination for the per-bound rows.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Number of generated pairs.
    #[arg(long)]
    count: Option<usize>,
    /// Ambient dimensions to cycle through, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Kernel dimensions to cycle through, comma separated.
    #[arg(long, value_delimiter = ',')]
    rank_deficit: Option<Vec<usize>>,
    /// Entry scale for generated operators.
    #[arg(long)]
    magnitude: Option<f64>,
    /// CSV destination for the per-bound rows.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LemmasArgs {
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Samples per inequality.
    #[arg(long)]
    count: Option<usize>,
    /// CSV destination for the per-inequality summary rows.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// CSV destination in addition to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Config-file shape: both sections optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    optimizer: OptimizerConfig,
    fuzz: FuzzConfig,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Maps the failure onto the documented process exit codes.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Csv(_) => 2,
            CliError::Core(core) => match core {
                CoreError::NotHermitian { .. }
                | CoreError::NotPsd { .. }
                | CoreError::ZeroWeight
                | CoreError::NotInBa
                | CoreError::NotAPositive
                | CoreError::NotAUnitary
                | CoreError::NotUnitVector { .. } => 3,
                CoreError::ToleranceFailure { .. } => 4,
                _ => 2,
            },
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Fuzz(args) => cmd_fuzz(&args),
        Command::Lemmas(args) => cmd_lemmas(&args),
        Command::Reproduce(args) => cmd_reproduce(&args),
    }
}

impl OptimizerArgs {
    /// Loads the config file (or defaults) and applies flag overrides.
    fn load(&self) -> Result<(OptimizerConfig, FuzzConfig), CliError> {
        let mut file = ConfigFile::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            file = serde_json::from_str(&text).map_err(|source| CliError::Parse {
                path: path.clone(),
                source,
            })?;
        }
        let mut optimizer = file.optimizer;
        let mut fuzz = file.fuzz;
        if let Some(v) = self.restarts {
            optimizer.restarts = v;
        }
        if let Some(v) = self.theta_grid {
            optimizer.theta_grid = v;
        }
        if let Some(v) = self.alpha_grid {
            optimizer.alpha_grid = v;
        }
        if let Some(v) = self.tol {
            optimizer.refine_tol = v;
        }
        if let Some(v) = self.seed {
            optimizer.seed = v;
            fuzz.seed = v;
        }
        optimizer.validate()?;
        Ok((optimizer, fuzz))
    }
}

fn read_pair(path: &Path) -> Result<(HermitianPsd, Operator), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: PairFile = serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(file.into_parts()?)
}

fn pair_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "pair".to_string())
}

/// JSON formatter that prints every float with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn print_json(value: &serde_json::Value) {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    serde::Serialize::serialize(value, &mut ser).expect("json serialization cannot fail");
    buf.push(b'\n');
    std::io::stdout()
        .write_all(&buf)
        .expect("stdout write failed");
}

fn write_csv<T: serde::Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32, CliError> {
    let (optimizer, _) = args.optimizer.load()?;
    let (a, s) = read_pair(&args.pair)?;
    let adjoint = a_adjoint(&a, &s)?;
    let dw = a_dw_radius(&a, &s, &optimizer)?;
    let out = json!({
        "pair": pair_label(&args.pair),
        "op_norm": a_op_norm(&a, &s)?,
        "omega": a_numerical_radius(&a, &s, &optimizer)?,
        "crawford": a_crawford(&a, &s, &optimizer)?,
        "min_modulus": a_min_modulus(&a, &s)?,
        "dw": {
            "value": dw.value,
            "upper_cap": dw.upper_cap,
            "restarts_used": dw.restarts_used,
            "converged": dw.converged,
        },
        "adjoint": serde_json::to_value(MatrixJson::from_matrix(adjoint.matrix()))
            .expect("matrix serialization cannot fail"),
    });
    print_json(&out);
    Ok(if dw.converged { 0 } else { 4 })
}

fn cmd_bounds(args: &BoundsArgs) -> Result<i32, CliError> {
    let (optimizer, _) = args.optimizer.load()?;
    let (a, s) = read_pair(&args.pair)?;
    let report = bound_report(&a, &s, &optimizer)?;
    if let Some(path) = &args.out {
        write_csv(path, &report.csv_rows(&pair_label(&args.pair)))?;
    }
    print_json(&report.to_json());
    Ok(if report.violations() == 0 { 0 } else { 1 })
}

fn cmd_verify(args: &ComputeArgs) -> Result<i32, CliError> {
    let (optimizer, _) = args.optimizer.load()?;
    let (a, s) = read_pair(&args.pair)?;
    let adjoint = a_adjoint(&a, &s)?;

    // Defining equation of the weighted adjoint, relative to operand scale.
    let lhs = &a.matrix * adjoint.matrix();
    let rhs = s.matrix().adjoint() * &a.matrix;
    let scale = max_abs(&lhs).max(max_abs(&rhs)).max(1.0);
    let defining_gap = max_abs(&(lhs - rhs)) / scale;

    let omega = a_numerical_radius(&a, &s, &optimizer)?;
    let omega_adj = a_numerical_radius(&a, &adjoint, &optimizer)?;
    let dw = a_dw_radius(&a, &s, &optimizer)?;
    let norm = a_op_norm(&a, &s)?;
    let floor_gap = (omega.max(norm * norm) - dw.value).max(0.0);
    let cap_gap = (dw.value - dw.upper_cap).max(0.0);

    let report = bound_report(&a, &s, &optimizer)?;

    let checks = [
        ("adjoint_defining_equation", defining_gap, 1e-10),
        ("radius_of_adjoint", (omega - omega_adj).abs(), 1e-8),
        ("sandwich_floor", floor_gap, 1e-8),
        ("sandwich_cap", cap_gap, 1e-8),
        ("bound_report", report.violations() as f64, 0.0),
    ];
    let ok = checks.iter().all(|(_, gap, tol)| gap <= tol);
    let out = json!({
        "pair": pair_label(&args.pair),
        "checks": checks
            .iter()
            .map(|(id, gap, tol)| json!({"check_id": id, "gap": gap, "tol": tol, "ok": gap <= tol}))
            .collect::<Vec<_>>(),
        "ok": ok,
    });
    print_json(&out);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_fuzz(args: &FuzzArgs) -> Result<i32, CliError> {
    let (optimizer, mut fuzz) = args.optimizer.load()?;
    if let Some(v) = args.count {
        fuzz.count = v;
    }
    if let Some(v) = &args.dims {
        fuzz.dims = v.clone();
    }
    if let Some(v) = &args.rank_deficit {
        fuzz.rank_deficit = v.clone();
    }
    if let Some(v) = args.magnitude {
        fuzz.magnitude = v;
    }
    fuzz.validate()?;

    let corpus = run_bound_corpus(&fuzz, &optimizer)?;
    let mut triple_cfg = fuzz.clone();
    triple_cfg.count = (fuzz.count / 2).max(1);
    let triples = run_triple_suite(&triple_cfg, &optimizer)?;
    let lemmas = run_lemma_suite(fuzz.seed, fuzz.count)?;

    if let Some(path) = &args.out {
        write_csv(path, &corpus.rows)?;
    }

    let lemma_violations: usize = lemmas.iter().map(|r| r.violations).sum();
    let ok = corpus.violations.is_empty() && triples.violations.is_empty() && lemma_violations == 0;
    let out = json!({
        "pairs": fuzz.count,
        "rows": corpus.rows.len(),
        "escalated_items": corpus.escalated_items,
        "bound_violations": serde_json::to_value(&corpus.violations)
            .expect("violation serialization cannot fail"),
        "triples": {
            "items": triples.items,
            "max_equality_gap": triples.max_equality_gap,
            "max_identity_gap": triples.max_identity_gap,
            "max_adjoint_gap": triples.max_adjoint_gap,
            "min_dominance_margin": triples.min_dominance_margin,
            "violations": serde_json::to_value(&triples.violations)
                .expect("violation serialization cannot fail"),
        },
        "lemmas": serde_json::to_value(&lemmas).expect("lemma serialization cannot fail"),
        "ok": ok,
    });
    print_json(&out);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_lemmas(args: &LemmasArgs) -> Result<i32, CliError> {
    let (_, fuzz) = args.optimizer.load()?;
    let samples = args.count.unwrap_or(fuzz.count);
    let results = run_lemma_suite(fuzz.seed, samples)?;
    if let Some(path) = &args.out {
        write_csv(path, &results)?;
    }
    let violations: usize = results.iter().map(|r| r.violations).sum();
    let out = json!({
        "samples": samples,
        "results": serde_json::to_value(&results).expect("lemma serialization cannot fail"),
        "ok": violations == 0,
    });
    print_json(&out);
    Ok(if violations == 0 { 0 } else { 1 })
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<i32, CliError> {
    let (optimizer, _) = args.optimizer.load()?;
    let (rows, ok) = run_reproduce(&optimizer)?;

    let stdout = std::io::stdout();
    let mut writer = csv::Writer::from_writer(stdout.lock());
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|source| CliError::Io {
        path: PathBuf::from("stdout"),
        source,
    })?;
    drop(writer);

    if let Some(path) = &args.out {
        write_csv(path, &rows)?;
    }
    for row in rows.iter().filter(|r| r.verdict == "mismatch") {
        eprintln!(
            "mismatch {}: competing {} vs ours {} with radius column {}",
            row.remark_id, row.paper_bound_value, row.our_bound_value, row.dw_lower
        );
    }
    Ok(if ok { 0 } else { 1 })
}
