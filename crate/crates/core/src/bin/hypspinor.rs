use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hypspinor::config::{Format, RunConfig};
use hypspinor::emit::{self, BlockRow, BoundaryRecord, IndicialTable, RadialTable};
use hypspinor::moduli::{bland_project, classify_sweep, tangent_project, DeformationSpectrum};
use hypspinor::radial::{integrate_with, IntegrationOptions};
use hypspinor::special_fn::boundary_value;
use hypspinor::verify::{self, Fault, Suite};
use hypspinor::{BlockLabel, Error};

#[derive(Parser)]
#[command(
    name = "hypspinor",
    version,
    about = "Harmonic spinors on CH2 and CR deformations of S3, block by block"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "json")]
    format: Format,
    /// Relative tolerance of the radial integrator.
    #[arg(long)]
    tol: Option<f64>,
    /// Absolute tolerance of the radial integrator.
    #[arg(long = "abs-tol")]
    abs_tol: Option<f64>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Block {
    #[arg(long = "K", allow_hyphen_values = true)]
    k: i64,
    #[arg(long = "L")]
    l: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long = "Lmax", default_value_t = 12)]
        l_max: i64,
        #[arg(long = "rmax", default_value_t = 12.0)]
        r_max: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: Option<Fault>,
        /// Print one line per check instead of a JSON/CSV report.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions, kernel dimensions and tags of every block up to `--Lmax`.
    Blocks {
        #[arg(long = "Lmax", default_value_t = 12)]
        l_max: i64,
        /// Largest |K| listed; defaults to Lmax + 6.
        #[arg(long = "Kmax")]
        k_max: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate the radial system of one block.
    Radial {
        #[command(flatten)]
        block: Block,
        #[arg(long = "rmax", default_value_t = 12.0)]
        r_max: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long = "A4", default_value_t = 1.0, allow_hyphen_values = true)]
        a4: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Boundary coefficient of one block, exact and numeric.
    Boundary {
        #[command(flatten)]
        block: Block,
        #[command(flatten)]
        common: Common,
    },
    /// Indicial data: the order-zero spectrum, critical weights and exponents.
    Indicial {
        #[arg(long = "Lmax", default_value_t = 12)]
        l_max: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Keep the fillable part (|K| <= L) of a deformation spectrum.
    Bland {
        /// JSON spectrum file; `-` reads standard input.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Keep the self-dual tangent part (|K| = L+2, L+4) of a spectrum.
    Tangent {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Usage and input errors exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn config(common: &Common, l_max: i64, r_max: f64, samples: usize) -> Result<RunConfig, Failure> {
    let d = RunConfig::default();
    Ok(RunConfig {
        rel_tol: common.tol.unwrap_or(d.rel_tol),
        abs_tol: common.abs_tol.unwrap_or(d.abs_tol),
        format: common.format,
        r_max,
        samples,
        l_max,
    }
    .validate()?)
}

fn write_out(common: &Common, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn read_spectrum(path: &PathBuf) -> Result<DeformationSpectrum, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(Error::from)?;
    } else {
        text = std::fs::read_to_string(path).map_err(Error::from)?;
    }
    Ok(DeformationSpectrum::from_json(&text)?)
}

fn label(b: Block) -> Result<BlockLabel, Failure> {
    if b.l < 0 {
        return Err(Failure::Usage(format!("L = {} must be >= 0", b.l)));
    }
    Ok(BlockLabel::new(b.k, b.l))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            suite,
            l_max,
            r_max,
            samples,
            inject_fault,
            text,
            common,
        } => {
            let cfg = config(&common, l_max, r_max, samples)?;
            let report = verify::run(suite, &cfg, inject_fault);
            let body = if text {
                report.to_string()
            } else {
                emit::render_report(&report, cfg.format)?
            };
            write_out(&common, &body)?;
            for c in report.failures() {
                eprintln!("{c}");
            }
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::Blocks { l_max, k_max, common } => {
            let cfg = config(&common, l_max, 12.0, 2)?;
            let rows: Vec<BlockRow> = classify_sweep(l_max, k_max.unwrap_or(l_max + 6))
                .iter()
                .map(BlockRow::from)
                .collect();
            write_out(&common, &emit::render_blocks(&rows, cfg.format)?)?;
        }
        Command::Radial {
            block,
            r_max,
            samples,
            a4,
            common,
        } => {
            let cfg = config(&common, 4, r_max, samples)?;
            let label = label(block)?;
            let opts = IntegrationOptions {
                r_max,
                samples,
                amplitude: a4,
                tol: cfg.tolerances(),
                ..IntegrationOptions::default()
            };
            let profile = integrate_with(label, &opts)?;
            let table = RadialTable::new(&profile, a4)?;
            write_out(&common, &emit::render_radial(&table, cfg.format)?)?;
        }
        Command::Boundary { block, common } => {
            let v = boundary_value(label(block)?, 1.0)?;
            write_out(
                &common,
                &emit::render_boundary(&BoundaryRecord::new(&v)?, common.format)?,
            )?;
        }
        Command::Indicial { l_max, common } => {
            let cfg = config(&common, l_max, 12.0, 2)?;
            write_out(
                &common,
                &emit::render_indicial(&IndicialTable::new(l_max)?, cfg.format)?,
            )?;
        }
        Command::Bland { input, common } => {
            let s = bland_project(&read_spectrum(&input)?);
            write_out(&common, &emit::render_spectrum(&s, common.format)?)?;
        }
        Command::Tangent { input, common } => {
            let s = tangent_project(&read_spectrum(&input)?);
            write_out(&common, &emit::render_spectrum(&s, common.format)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("HYPSPINOR_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                // Only fails if a pool already exists, which cannot happen here.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: HYPSPINOR_THREADS must be a positive integer, got `{n}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
