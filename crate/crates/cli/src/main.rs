//! `ohara`: curve generation, energies, α-sweeps and consistency checks.
//!
//! Results are printed as `key=value` lines. Failures print
//! `error=<kind>` and exit with 2 (invalid input), 3 (numerical domain)
//! or 4 (configuration); a failed `elcheck` exits with 1.

mod commands;
mod config;
mod source;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ohara::ErrorClass;

use config::Config;

#[derive(Debug)]
pub enum CliError {
    Lib(ohara::Error),
    Config(String),
}

impl From<ohara::Error> for CliError {
    fn from(e: ohara::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Config(_) => "config",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e.class() {
                ErrorClass::InvalidInput => 2,
                ErrorClass::Numerical => 3,
                ErrorClass::Config => 4,
            },
            CliError::Config(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Config(m) => m.clone(),
        }
    }
}

#[derive(Parser)]
#[command(name = "ohara", version, about = "O'hara knot energies on closed polygons")]
struct Cli {
    /// Flat key=value file; its keys mirror the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct CurveArgs {
    /// circle, square, stadion, wavy(k,amp), inverted-<kind>, or a file.
    pub source: String,
    /// Vertices for generated curves [default: 1000].
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated curve as `x y` rows.
    Generate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete O'hara energy of a curve.
    Energy {
        #[command(flatten)]
        curve: CurveArgs,
        /// [default: 2]
        #[arg(long)]
        alpha: Option<f64>,
        /// [default: 4/alpha]
        #[arg(long)]
        p: Option<f64>,
        /// Also evaluate the cancellation-free log-β form (needs αp = 4).
        #[arg(long)]
        stable: bool,
    },
    /// Scaled energies over a grid of α, written as CSV.
    Sweep {
        /// `id=source` entries, comma separated.
        #[arg(long)]
        curves: Option<String>,
        /// Comma separated α values.
        #[arg(long)]
        alphas: Option<String>,
        /// `start:end:count`, evenly spaced.
        #[arg(long = "alpha-grid")]
        alpha_grid: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// CSV path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Gnuplot script path.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Discrete Gromov distortion.
    Distortion {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Inversion in the sphere of radius `r` about `(cx, cy, cz)`.
    Invert {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        cx: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        cy: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        cz: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First variation of the tangent-map energy at the circle against
    /// finite differences.
    Elcheck {
        /// [default: 500]
        #[arg(long)]
        n: Option<usize>,
        /// [default: 2]
        #[arg(long)]
        alpha: Option<f64>,
        /// [default: 4/alpha]
        #[arg(long)]
        p: Option<f64>,
        /// [default: 10]
        #[arg(long)]
        trials: Option<usize>,
        /// [default: 0]
        #[arg(long)]
        seed: Option<u64>,
        /// Trigonometric degree of the random fields [default: 3].
        #[arg(long)]
        degree: Option<usize>,
        /// `random`, or `u` to test with the map itself.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Gagliardo and bracket seminorms of a sampled map.
    Seminorm {
        /// Map file with 1 to 3 columns, or `suite` for the built-in maps.
        source: String,
        /// [default: 1/p]
        #[arg(long)]
        beta: Option<f64>,
        /// [default: 2]
        #[arg(long)]
        p: Option<f64>,
        /// Samples for `suite` [default: 512].
        #[arg(long)]
        n: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(t) = cfg.pick_opt(cli.threads, "threads")? {
        if t == 0 {
            return Err(CliError::Config("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let out = std::io::stdout();
    let mut out = out.lock();
    match cli.command {
        Command::Generate { curve, out: path } => commands::generate(&cfg, &curve, path, &mut out),
        Command::Energy { curve, alpha, p, stable } => {
            commands::energy(&cfg, &curve, alpha, p, stable, &mut out)
        }
        Command::Sweep { curves, alphas, alpha_grid, n, out: path, plot } => commands::sweep(
            &cfg,
            commands::SweepArgs { curves, alphas, alpha_grid, n, out: path, plot },
            &mut out,
        ),
        Command::Distortion { curve } => commands::distortion(&cfg, &curve, &mut out),
        Command::Invert { curve, cx, cy, cz, r, out: path } => {
            commands::invert(&cfg, &curve, [cx, cy, cz], r, path, &mut out)
        }
        Command::Elcheck { n, alpha, p, trials, seed, degree, phi } => commands::elcheck(
            &cfg,
            commands::ElcheckArgs { n, alpha, p, trials, seed, degree, phi },
            &mut out,
        ),
        Command::Seminorm { source, beta, p, n } => commands::seminorm(&cfg, &source, beta, p, n, &mut out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Lib(ohara::Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stdout(), "error={}", e.kind());
            eprintln!("ohara: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
