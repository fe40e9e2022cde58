use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdeform::report::{serialize, to_json_bytes};
use qdeform::states::{run_infer, run_states};
use qdeform::{run_sweep_with, CheckSet, ConfigError, Execution, OutputFormat, SweepConfig};
use qdeform_core::jsqubit::{NormRatioLaw, MEASURED_NORM_RATIO_LAW};
use qdeform_core::FunctionFamily;

const EXIT_UNEXPECTED_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "qdeform", version, about = "q-deformed oscillator qubits: algebra audits, gate checks and sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deformed oscillator algebra checks.
    Audit(GridArgs),
    /// Gate realizability conditions and the CNOT truth table.
    Gates(GridArgs),
    /// Case I / Case II tables and norm ratios (JSON only).
    States(GridArgs),
    /// Infer psi from a norm ratio and classify its signature.
    Infer(InferArgs),
    /// Every check at every grid point.
    Sweep(GridArgs),
}

#[derive(Args)]
struct GridArgs {
    /// JSON sweep config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Single deformation exponent.
    #[arg(long = "s", conflicts_with = "s_grid")]
    s: Option<f64>,
    /// Comma separated, strictly increasing exponents in (0, 1].
    #[arg(long = "s-grid", value_delimiter = ',')]
    s_grid: Option<Vec<f64>>,
    #[arg(long)]
    cutoff: Option<usize>,
    /// Control function family: `1` or `q^<exponent>`.
    #[arg(long)]
    psi: Option<FunctionFamily>,
    /// Target function family: `1` or `q^<exponent>`.
    #[arg(long)]
    beta: Option<FunctionFamily>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GridArgs {
    fn config(&self) -> Result<SweepConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_json_file(path)?,
            None => SweepConfig::default(),
        };
        if let Some(s) = self.s {
            cfg.s_grid = vec![s];
        }
        if let Some(grid) = &self.s_grid {
            cfg.s_grid = grid.clone();
        }
        if let Some(cutoff) = self.cutoff {
            cfg.cutoff = cutoff;
        }
        if let Some(psi) = self.psi {
            cfg.psi_family = psi;
        }
        if let Some(beta) = self.beta {
            cfg.beta_family = beta;
        }
        if let Some(tol) = self.tol {
            cfg.tolerance = tol;
        }
        if let Some(format) = self.format {
            cfg.output_format = format;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct InferArgs {
    #[arg(long = "s")]
    s: f64,
    /// Measured Case II / Case I norm ratio.
    #[arg(long, required_unless_present = "psi_value", conflicts_with = "psi_value")]
    ratio: Option<f64>,
    /// Generate the ratio from this psi with the chosen law instead.
    #[arg(long = "psi-value")]
    psi_value: Option<f64>,
    #[arg(long = "beta-value", default_value_t = 1.0)]
    beta_value: f64,
    /// Undeformed occupation of the control oscillator.
    #[arg(long = "n-hat", default_value_t = 1)]
    n_hat: u32,
    /// `product` (measured by the state construction) or `sqrt_product`.
    #[arg(long, default_value = MEASURED_NORM_RATIO_LAW.name())]
    law: NormRatioLaw,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("qdeform: {message}");
    ExitCode::from(code)
}

fn run_checks(args: &GridArgs, set: CheckSet) -> ExitCode {
    let cfg = match args.config() {
        Ok(cfg) => cfg,
        Err(err) => return fail(EXIT_CONFIG, err),
    };
    let report = match run_sweep_with(&cfg, set, Execution::Parallel) {
        Ok(report) => report,
        Err(err) => return fail(EXIT_CONFIG, err),
    };
    let bytes = match serialize(&report, cfg.output_format) {
        Ok(bytes) => bytes,
        Err(err) => return fail(EXIT_CONFIG, err),
    };
    if let Err(err) = emit(&bytes, args.out.as_ref()) {
        return fail(EXIT_CONFIG, err);
    }
    if report.summary.unexpected_failures > 0 {
        eprintln!(
            "qdeform: {} unexpected failure(s) out of {} entries",
            report.summary.unexpected_failures,
            report.entries.len()
        );
        ExitCode::from(EXIT_UNEXPECTED_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_states_command(args: &GridArgs) -> ExitCode {
    let cfg = match args.config() {
        Ok(cfg) => cfg,
        Err(err) => return fail(EXIT_CONFIG, err),
    };
    if cfg.output_format != OutputFormat::Json {
        return fail(EXIT_CONFIG, "states output is JSON only");
    }
    let result = run_states(&cfg)
        .map_err(|e| e.to_string())
        .and_then(|r| to_json_bytes(&r).map_err(|e| e.to_string()))
        .and_then(|b| emit(&b, args.out.as_ref()).map_err(|e| e.to_string()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => fail(EXIT_CONFIG, err),
    }
}

fn run_infer_command(args: &InferArgs) -> ExitCode {
    let ratio = match (args.ratio, args.psi_value) {
        (Some(ratio), _) => ratio,
        (None, Some(psi)) => args.law.forward(psi, args.beta_value),
        (None, None) => unreachable!("clap requires one of them"),
    };
    let result = run_infer(args.s, ratio, args.beta_value, args.n_hat, args.law)
        .map_err(|e| e.to_string())
        .and_then(|r| to_json_bytes(&r).map_err(|e| e.to_string()))
        .and_then(|b| emit(&b, args.out.as_ref()).map_err(|e| e.to_string()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => fail(EXIT_CONFIG, err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Audit(args) => run_checks(args, CheckSet::Algebra),
        Command::Gates(args) => run_checks(args, CheckSet::Gates),
        Command::States(args) => run_states_command(args),
        Command::Infer(args) => run_infer_command(args),
        Command::Sweep(args) => run_checks(args, CheckSet::All),
    }
}
