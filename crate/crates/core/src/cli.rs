//! `onecircuit` command line: gradients, compare, shot-stats, resources.
//!
//! Exit codes: 0 success, 1 I/O or data errors, 2 usage errors, 3 failed
//! runtime assertions (impossible shots, oracle mismatches, empty buckets).

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;

use crate::data::{
    generate_random_dataset, load_idx_images, load_report, persist_report, Dataset, ReportFile,
};
use crate::error::{Error, Result};
use crate::grad::{
    build_classical_control_circuit, build_improved_circuit, classical_control_run,
    conventional_gradients, exact_gradients, improved_run, statistical_tolerance, GradientMode,
    GradientReport, ImprovedRun, ShiftRule, ShotPlan,
};
use crate::resources::model_resources;
use crate::rng::seeded;
use crate::stats::{
    chi_square_uniform, count_summary, pooled_chi_square, ChiSquareTest, CountSummary,
};
use crate::vqc::{
    build_base_vqc, default_feature_map_depth, num_params, AnsatzConfig, EncodedInput,
};

const THETA_TAG: u64 = 0x7e7a;

#[derive(Debug, Parser)]
#[command(
    name = "onecircuit",
    version,
    about = "Parameter-shift gradients from a single circuit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute all gradients with one estimator and write a JSON report.
    Gradients(GradientsArgs),
    /// Compare conventional and single-circuit estimates against the exact values (CSV).
    Compare(CompareArgs),
    /// Per-input, per-index shot counts of a single-circuit run (CSV); summary on stderr.
    ShotStats(ShotStatsArgs),
    /// Modeled and measured circuit resources (JSON).
    Resources(ResourcesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Conventional,
    Improved,
    ClassicalCtrl,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SingleCircuitMode {
    Improved,
    ClassicalCtrl,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Data qubits Q.
    #[arg(long, default_value_t = 3)]
    pub qubits: usize,
    /// Ansatz repetitions r.
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// `random` or `idx:<images>,<labels>`.
    #[arg(long, default_value = "random")]
    pub data: String,
    /// Number of inputs m.
    #[arg(long, default_value_t = 20)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// JSON array of n angles; default is uniform in [0, π) from --seed.
    #[arg(long)]
    pub theta_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GradientsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Shots per cost function (average, for single-circuit modes).
    #[arg(long, default_value_t = 500)]
    pub shots: u64,
    /// Report path; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 4000)]
    pub shots: u64,
    /// Compare two saved reports (conventional, then single-circuit) instead of running.
    #[arg(long, num_args = 2, value_names = ["CONVENTIONAL", "IMPROVED"])]
    pub reports: Option<Vec<PathBuf>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShotStatsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value = "improved")]
    pub mode: SingleCircuitMode,
    #[arg(long, default_value_t = 500)]
    pub shots: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    #[arg(long, default_value_t = 3)]
    pub qubits: usize,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Feature-map depth; default 2^Q − 1.
    #[arg(long)]
    pub feature_depth: Option<usize>,
}

/// Informational timings; never used as pass/fail criteria.
#[derive(Clone, Debug, Serialize)]
pub struct RunMetrics {
    pub build_time: f64,
    pub run_time: f64,
    pub total_time: f64,
    pub shots: u64,
    pub circuits: usize,
}

#[derive(Serialize)]
struct ShotStatsSummary {
    mode: String,
    inputs: usize,
    indices: usize,
    planned_per_input: u64,
    counts: CountSummary,
    theoretical_std_over_mean: f64,
    /// Uniformity of the index totals summed over inputs.
    chi_square: ChiSquareTest,
    /// Per-input uniformity tests pooled.
    pooled_chi_square: ChiSquareTest,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_)
        | Error::ZeroShots
        | Error::DimensionMismatch { .. }
        | Error::InvalidConfig(_) => 2,
        Error::MultipleActivations { .. }
        | Error::OracleMismatch(_)
        | Error::InsufficientShots(_)
        | Error::Unnormalizable { .. } => 3,
        _ => 1,
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Gradients(a) => cmd_gradients(a, out, err),
        Command::Compare(a) => cmd_compare(a, out),
        Command::ShotStats(a) => cmd_shot_stats(a, out, err),
        Command::Resources(a) => cmd_resources(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load_dataset(problem: &ProblemArgs) -> Result<Dataset> {
    if problem.m == 0 {
        return Err(Error::Usage("--m must be at least 1".into()));
    }
    let dataset = if problem.data == "random" {
        generate_random_dataset(problem.m, 1 << problem.qubits, problem.seed)?
    } else if let Some(paths) = problem.data.strip_prefix("idx:") {
        let (images, labels) = paths
            .split_once(',')
            .ok_or_else(|| Error::Usage("--data idx:<images>,<labels>".into()))?;
        load_idx_images(images, labels, problem.m)?
    } else {
        return Err(Error::Usage(format!(
            "unknown --data source {:?}",
            problem.data
        )));
    };
    let dim = dataset.dimension().next_power_of_two().max(2);
    if dim != 1 << problem.qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << problem.qubits,
            found: dim,
            num_qubits: problem.qubits,
        });
    }
    Ok(dataset)
}

fn load_config(problem: &ProblemArgs) -> Result<AnsatzConfig> {
    if problem.qubits == 0 {
        return Err(Error::Usage("--qubits must be at least 1".into()));
    }
    let n = num_params(problem.qubits, problem.reps);
    let theta = match &problem.theta_file {
        Some(path) => {
            let theta: Vec<f64> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if theta.len() != n {
                return Err(Error::Usage(format!(
                    "{} holds {} angles, n = {n}",
                    path.display(),
                    theta.len()
                )));
            }
            theta
        }
        None => {
            let mut rng = seeded(problem.seed, &[THETA_TAG]);
            (0..n).map(|_| rng.random::<f64>() * PI).collect()
        }
    };
    AnsatzConfig::new(problem.qubits, problem.reps, theta)
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn count_circuits(
    dataset: &Dataset,
    config: &AnsatzConfig,
    mode: ModeArg,
    rule: &ShiftRule,
) -> Result<usize> {
    let per_input = match mode {
        ModeArg::Conventional | ModeArg::Exact => 2 * config.num_params() + 1,
        _ => 1,
    };
    for x in &dataset.inputs {
        let input = EncodedInput::new(x)?;
        match mode {
            ModeArg::Improved => drop(build_improved_circuit(&input, config, rule)?),
            ModeArg::ClassicalCtrl => drop(build_classical_control_circuit(&input, config, rule)?),
            _ => drop(build_base_vqc(&input, config)?),
        }
    }
    Ok(per_input * dataset.len())
}

fn run_mode(
    mode: ModeArg,
    dataset: &Dataset,
    config: &AnsatzConfig,
    shots: u64,
    seed: u64,
) -> Result<(GradientReport, Option<ImprovedRun>)> {
    let rule = ShiftRule::default();
    if mode != ModeArg::Exact && shots == 0 {
        return Err(Error::Usage("--shots must be positive".into()));
    }
    Ok(match mode {
        ModeArg::Exact => (exact_gradients(dataset, config, &rule)?, None),
        ModeArg::Conventional => (
            conventional_gradients(dataset, config, &rule, shots, seed)?,
            None,
        ),
        ModeArg::Improved | ModeArg::ClassicalCtrl => {
            let plan = ShotPlan::new(shots, config.num_params())?;
            let run = if mode == ModeArg::Improved {
                improved_run(dataset, config, &rule, &plan, seed)?
            } else {
                classical_control_run(dataset, config, &rule, &plan, seed)?
            };
            (run.report.clone(), Some(run))
        }
    })
}

pub fn cmd_gradients(args: &GradientsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let start = Instant::now();
    let dataset = load_dataset(&args.problem)?;
    let config = load_config(&args.problem)?;
    let circuits = count_circuits(&dataset, &config, args.mode, &ShiftRule::default())?;
    let built = Instant::now();
    let (report, _) = run_mode(args.mode, &dataset, &config, args.shots, args.problem.seed)?;
    let done = Instant::now();

    match &args.out {
        Some(path) => persist_report(&report, path)?,
        None => writeln!(out, "{}", report.to_json()?)?,
    }
    let build_time = (built - start).as_secs_f64();
    let run_time = (done - built).as_secs_f64();
    let metrics = RunMetrics {
        build_time,
        run_time,
        total_time: build_time + run_time,
        shots: report.shots_planned,
        circuits,
    };
    writeln!(err, "{}", serde_json::to_string(&metrics)?)?;
    Ok(())
}

#[derive(Serialize)]
struct CompareRow {
    param: usize,
    exact: f64,
    conventional: f64,
    improved: f64,
    conventional_error: f64,
    improved_error: f64,
    conventional_tolerance: f64,
    improved_tolerance: f64,
    status: &'static str,
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let dataset = load_dataset(&args.problem)?;
    let (conventional, improved, conv_tol, impr_tol) = match &args.reports {
        Some(paths) => {
            let conventional = load_report(&paths[0])?;
            let improved = load_report(&paths[1])?;
            if ReportFile::from(&conventional).config != ReportFile::from(&improved).config {
                return Err(Error::Usage(
                    "reports were computed for different ansatz configurations or angles".into(),
                ));
            }
            if conventional.mode != GradientMode::Conventional {
                return Err(Error::Usage(format!(
                    "first report has mode {}, expected conventional",
                    conventional.mode
                )));
            }
            let m = dataset.len() as u64;
            let conv_shots = conventional.shots_planned
                / (m * (2 * conventional.config.num_params() as u64 + 1));
            let counts = improved
                .per_index_shots
                .clone()
                .ok_or_else(|| Error::Usage("second report has no per-index shot counts".into()))?;
            let impr_tol = (0..improved.gradients.len())
                .map(|i| statistical_tolerance(counts[2 * i + 1].min(counts[2 * i + 2]) / m))
                .collect();
            let n = conventional.gradients.len();
            (
                conventional,
                improved,
                vec![statistical_tolerance(conv_shots); n],
                impr_tol,
            )
        }
        None => {
            let config = load_config(&args.problem)?;
            let (conventional, _) = run_mode(
                ModeArg::Conventional,
                &dataset,
                &config,
                args.shots,
                args.problem.seed,
            )?;
            let (improved, run) = run_mode(
                ModeArg::Improved,
                &dataset,
                &config,
                args.shots,
                args.problem.seed,
            )?;
            let n = config.num_params();
            let impr_tol = run.expect("single-circuit run").tolerances();
            (
                conventional,
                improved,
                vec![statistical_tolerance(args.shots); n],
                impr_tol,
            )
        }
    };
    let exact = exact_gradients(&dataset, &conventional.config, &ShiftRule::default())?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    for i in 0..exact.gradients.len() {
        let conventional_error = (conventional.gradients[i] - exact.gradients[i]).abs();
        let improved_error = (improved.gradients[i] - exact.gradients[i]).abs();
        let pass = conventional_error <= conv_tol[i] && improved_error <= impr_tol[i];
        writer.serialize(CompareRow {
            param: i + 1,
            exact: exact.gradients[i],
            conventional: conventional.gradients[i],
            improved: improved.gradients[i],
            conventional_error,
            improved_error,
            conventional_tolerance: conv_tol[i],
            improved_tolerance: impr_tol[i],
            status: if pass { "PASS" } else { "FAIL" },
        })?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    write_output(args.out.as_deref(), &String::from_utf8_lossy(&bytes), out)
}

pub fn cmd_shot_stats(
    args: &ShotStatsArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let dataset = load_dataset(&args.problem)?;
    let config = load_config(&args.problem)?;
    let mode = match args.mode {
        SingleCircuitMode::Improved => ModeArg::Improved,
        SingleCircuitMode::ClassicalCtrl => ModeArg::ClassicalCtrl,
    };
    let (report, run) = run_mode(mode, &dataset, &config, args.shots, args.problem.seed)?;
    let run = run.expect("single-circuit run");

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["input", "index", "count"])?;
    for (x, counts) in run.per_input_counts.iter().enumerate() {
        for (k, c) in counts.iter().enumerate() {
            writer.write_record([x.to_string(), k.to_string(), c.to_string()])?;
        }
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    write_output(args.out.as_deref(), &String::from_utf8_lossy(&bytes), out)?;

    let all: Vec<u64> = run.per_input_counts.concat();
    let big_n = 2 * config.num_params() + 1;
    let totals = report.per_index_shots.clone().unwrap_or_default();
    let summary = ShotStatsSummary {
        mode: report.mode.to_string(),
        inputs: run.per_input_counts.len(),
        indices: big_n,
        planned_per_input: args.shots * big_n as u64,
        counts: count_summary(&all),
        theoretical_std_over_mean: ((1.0 - 1.0 / big_n as f64) / args.shots as f64).sqrt(),
        chi_square: chi_square_uniform(&totals),
        pooled_chi_square: pooled_chi_square(
            &run.per_input_counts
                .iter()
                .map(|c| chi_square_uniform(c))
                .collect::<Vec<_>>(),
        ),
    };
    writeln!(err, "{}", serde_json::to_string(&summary)?)?;
    Ok(())
}

pub fn cmd_resources(args: &ResourcesArgs, out: &mut dyn Write) -> Result<()> {
    if args.qubits == 0 {
        return Err(Error::Usage("--qubits must be at least 1".into()));
    }
    let config = AnsatzConfig::new(
        args.qubits,
        args.reps,
        vec![0.0; num_params(args.qubits, args.reps)],
    )?;
    let depth = args
        .feature_depth
        .unwrap_or_else(|| default_feature_map_depth(args.qubits));
    let report = model_resources(&config, depth)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}
