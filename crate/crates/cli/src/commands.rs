use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use qlem_core::deutsch::{reference_deutsch_outcome, probability_a_zero, BinaryFunction, Label};
use qlem_core::lab::{
    fit_exponential_survival, fit_power_law, memory_sweep, run_ensemble, summarize,
    survival_curve, trial_product_score, trial_seed, RELIABLE_HALT_FRACTION,
};
use qlem_core::learning::Learner;

use crate::config::{ConfigError, Overrides, RunConfiguration};
use crate::csv::{self, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<qlem_core::Error> for CliError {
    fn from(e: qlem_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.0)
    }
}

#[derive(Debug, Parser)]
#[command(name = "qlem", version, about = "Quantum learning machine experiments on Deutsch's task")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a single learning trial, optionally writing a per-iteration trace.
    Run(RunArgs),
    /// Run an ensemble of trials and write the learning/survival curve.
    Mc(ExperimentArgs),
    /// Run one ensemble per memory size and write the sweep table.
    Sweep(ExperimentArgs),
    /// Fit a curve CSV (exponential) or sweep CSV (power law).
    Analyze(AnalyzeArgs),
    /// Check the textbook Deutsch circuit on all four functions.
    DeutschCheck,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Config file with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Memory size N.
    #[arg(long = "memory")]
    memory_size: Option<usize>,
    #[arg(long)]
    step_scale: Option<f64>,
    #[arg(long)]
    init_half_range: Option<f64>,
    #[arg(long)]
    max_iterations: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed.
    #[arg(long = "seed")]
    master_seed: Option<u64>,
    /// Comma-separated memory sizes for `sweep`.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// Output CSV path.
    #[arg(long = "out")]
    out_path: Option<PathBuf>,
    /// Re-draw all parameters on failure instead of the memory-scaled step.
    #[arg(long = "baseline")]
    baseline_mode: bool,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    threads: Option<usize>,
}

impl ExperimentArgs {
    fn resolve(&self) -> Result<RunConfiguration, CliError> {
        let overrides = Overrides {
            memory_size: self.memory_size,
            step_scale: self.step_scale,
            init_half_range: self.init_half_range,
            max_iterations: self.max_iterations,
            trials: self.trials,
            master_seed: self.master_seed,
            n_list: self.n_list.clone(),
            out_path: self.out_path.clone(),
            baseline_mode: self.baseline_mode,
            threads: self.threads,
        };
        Ok(RunConfiguration::resolve(self.config.as_deref(), &overrides)?)
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    common: ExperimentArgs,
    /// Write the per-iteration trace CSV to the output path.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Curve or sweep CSV to fit.
    #[arg(long)]
    input: PathBuf,
    #[arg(long = "out")]
    out_path: Option<PathBuf>,
}

/// Parses `argv` and runs the command, returning the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => cmd_run(&args),
        Command::Mc(args) => cmd_mc(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::DeutschCheck => cmd_deutsch_check(),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    csv::write_atomic(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn out_or(cfg: &RunConfiguration, default: &str) -> PathBuf {
    cfg.out_path.clone().unwrap_or_else(|| PathBuf::from(default))
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let cfg = args.common.resolve()?;
    let seed = trial_seed(cfg.master_seed, 0);
    let learner = Learner::new(&cfg.machine(), seed)?;
    let mut trace = format!("{}\n", csv::TRACE_HEADER);
    let result = if args.trace {
        learner.run_observed(|rec| {
            trace.push_str(&csv::trace_row(rec));
            trace.push('\n');
        })?
    } else {
        learner.run()?
    };
    if args.trace {
        let path = out_or(&cfg, "trace.csv");
        write(&path, &trace)?;
        println!("trace written to {}", path.display());
    }
    match result.halt_iteration {
        Some(n) => println!("halted at iteration {n}"),
        None => println!("censored after {} iterations", result.iterations_used),
    }
    println!("fidelities: {:?}", result.fidelities);
    println!("mean fidelity: {:.12}", result.mean_fidelity);
    println!("U1 product score: {:.12}", trial_product_score(&result)?);
    println!("p1: {:?}", result.final_p1.components());
    println!("p3: {:?}", result.final_p3.components());
    Ok(())
}

fn cmd_mc(args: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let ens = run_ensemble(&cfg.machine(), cfg.trials, cfg.master_seed, cfg.threads)?;
    let curve = survival_curve(&ens);
    let path = out_or(&cfg, "curve.csv");
    write(&path, &csv::curve_csv(&curve))?;
    let row = summarize(&ens)?;
    println!(
        "N = {}: {} trials, halt fraction {:.4}",
        row.memory_size, row.trials, row.halt_fraction
    );
    if let Some(f) = row.fidelity {
        println!("fidelity {:.6} ± {:.6} (std)", f.mean, f.std_dev);
    }
    match fit_exponential_survival(&curve) {
        Ok(fit) => println!("n_c = {:.6} (R² = {:.6})", fit.param1, fit.r_squared),
        Err(e) => println!("no exponential fit: {e}"),
    }
    println!("curve written to {}", path.display());
    Ok(())
}

fn cmd_sweep(args: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let sweep = memory_sweep(
        &cfg.machine(),
        &cfg.n_list,
        cfg.trials,
        cfg.master_seed,
        cfg.threads,
    )?;
    let path = out_or(&cfg, "sweep.csv");
    write(&path, &csv::sweep_csv(&sweep))?;
    for row in &sweep.rows {
        println!(
            "N = {:>4}: halt {:.3}, fidelity {}, n_c {}",
            row.memory_size,
            row.halt_fraction,
            row.fidelity.map_or("-".into(), |f| format!("{:.6}", f.mean)),
            row.n_c()
                .filter(|_| row.is_reliable())
                .map_or("unreliable".into(), |n| format!("{n:.3}")),
        );
    }
    match sweep.fit_power_law() {
        Ok(fit) => println!("n_c = {:.6}·N^{:.6} (R² = {:.6})", fit.param1, fit.param2, fit.r_squared),
        Err(e) => println!("no power-law fit: {e}"),
    }
    println!("sweep written to {}", path.display());
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let table = csv::parse_table(&text).map_err(|e| CliError::Validation(e.0))?;
    let fit = match table {
        Table::Curve(curve) => fit_exponential_survival(&curve)?,
        Table::Sweep(rows) => {
            let points: Vec<(f64, f64)> = rows
                .into_iter()
                .filter(|&(_, halt, nc)| halt >= RELIABLE_HALT_FRACTION && nc.is_finite())
                .map(|(n, _, nc)| (n as f64, nc))
                .collect();
            fit_power_law(&points)?
        }
    };
    let path = args.out_path.clone().unwrap_or_else(|| PathBuf::from("fit.csv"));
    write(&path, &csv::fit_csv(&[fit]))?;
    println!(
        "{}: param1 = {}, param2 = {}, R² = {:.6}, {} points",
        fit.kind.name(),
        csv::real(fit.param1),
        csv::real(fit.param2),
        fit.r_squared,
        fit.points_used
    );
    Ok(())
}

/// Probability of the reference circuit's expected outcome for `f`.
pub fn reference_success_probability(f: BinaryFunction) -> f64 {
    let (_, state) = reference_deutsch_outcome(f);
    let p0 = probability_a_zero(&state);
    match f.label() {
        Label::Constant => p0,
        Label::Balanced => 1.0 - p0,
    }
}

fn cmd_deutsch_check() -> Result<(), CliError> {
    let mut failed = Vec::new();
    for f in BinaryFunction::ALL {
        let (outcome, _) = reference_deutsch_outcome(f);
        let expected = u8::from(f.label() == Label::Balanced);
        let p = reference_success_probability(f);
        let pass = outcome == expected && p >= 1.0 - 1e-12;
        let label = match f.label() {
            Label::Constant => "constant",
            Label::Balanced => "balanced",
        };
        println!(
            "{} {f} {label}: outcome {outcome}, P = {}",
            if pass { "PASS" } else { "FAIL" },
            csv::real(p)
        );
        if !pass {
            failed.push(f);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "reference circuit failed for {failed:?}"
        )))
    }
}
