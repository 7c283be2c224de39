use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flexmove::config::{BeamSource, Settings};
use flexmove::{commands, CliError};

/// Plan, simulate and analyse residual-vibration-free moves of flexible payloads.
#[derive(Debug, Parser)]
#[command(name = "flexmove", version)]
struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the `t,s,v,a` setpoint table of the motion law.
    Plan {
        #[command(flatten)]
        motion: MotionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the relative oscillation and report the end-of-move residual as JSON.
    Simulate {
        #[command(flatten)]
        motion: MotionArgs,
        /// RK4 step [s] (default t1/20000).
        #[arg(long)]
        dt: Option<f64>,
        /// Absolute quiescence tolerance [m] (default 1e-6·L).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Write the emulated accelerometer trace `t,a_tip` instead of `t,x_r,v_r,a_r`.
        #[arg(long)]
        tip: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual amplitude and energy over a range of period multiples.
    Sweep {
        #[command(flatten)]
        motion: MotionArgs,
        #[arg(long = "n-from")]
        n_from: Option<f64>,
        #[arg(long = "n-to")]
        n_to: Option<f64>,
        /// Increment in n.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-phase Butterworth lowpass of a `t,<value>` trace.
    Filter {
        #[arg(long)]
        input: PathBuf,
        /// Value column to filter (default: the first one after `t`).
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long = "cutoff-hz")]
        cutoff_hz: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matched vs. unmatched residual amplitude table per tip mass.
    Report {
        #[command(flatten)]
        motion: MotionArgs,
        /// Comma-separated tip masses [kg].
        #[arg(long, value_delimiter = ',')]
        masses: Option<Vec<f64>>,
        /// Non-integer multiple used for the unmatched row.
        #[arg(long = "unmatched-n")]
        unmatched_n: Option<f64>,
        /// Emit CSV instead of an aligned text table.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct MotionArgs {
    /// Overall displacement [m].
    #[arg(long = "L")]
    length: Option<f64>,
    /// Natural frequency [rad/s].
    #[arg(long)]
    k: Option<f64>,
    /// Beam description (JSON with keys l,b,h,E,m_tip), as an alternative to --k.
    #[arg(long)]
    beam: Option<PathBuf>,
    /// Payload (tip) mass [kg].
    #[arg(long, alias = "m")]
    mass: Option<f64>,
    /// Period multiple n = t1/tc.
    #[arg(long)]
    n: Option<f64>,
    /// Accept non-integer n; such plans are never reported quiescent.
    #[arg(long)]
    exploratory: bool,
    /// Sample rate [Hz].
    #[arg(long)]
    rate: Option<f64>,
}

impl MotionArgs {
    fn settings(self) -> Settings {
        Settings {
            length: self.length,
            k: self.k,
            beam: self.beam.map(BeamSource::File),
            mass: self.mass,
            n: self.n,
            exploratory: self.exploratory.then_some(true),
            rate: self.rate,
            ..Settings::default()
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let base = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let mut stderr = io::stderr();
    match cli.command {
        Command::Plan { motion, out } => {
            let settings = motion.settings().over(base);
            commands::plan(&settings, out.as_deref(), &mut stdout, &mut stderr)
        }
        Command::Simulate {
            motion,
            dt,
            tolerance,
            tip,
            out,
        } => {
            let settings = Settings {
                dt,
                tolerance,
                ..motion.settings()
            }
            .over(base);
            commands::simulate(&settings, tip, out.as_deref(), &mut stdout)
        }
        Command::Sweep {
            motion,
            n_from,
            n_to,
            step,
            out,
        } => {
            let settings = Settings {
                n_from,
                n_to,
                step,
                ..motion.settings()
            }
            .over(base);
            commands::sweep(&settings, out.as_deref(), &mut stdout)
        }
        Command::Filter {
            input,
            column,
            order,
            cutoff_hz,
            out,
        } => {
            let settings = Settings {
                order,
                cutoff_hz,
                ..Settings::default()
            }
            .over(base);
            commands::filter(
                &settings,
                &input,
                column.as_deref(),
                out.as_deref(),
                &mut stdout,
            )
        }
        Command::Report {
            motion,
            masses,
            unmatched_n,
            csv,
            out,
        } => {
            let settings = Settings {
                masses,
                unmatched_n,
                ..motion.settings()
            }
            .over(base);
            commands::report(&settings, csv, out.as_deref(), &mut stdout)
        }
    }?;
    stdout.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
