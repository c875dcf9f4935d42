//! `esebound` command-line front end.
//!
//! Exit status: 0 on success, 1 when `validate` finds a check outside its
//! tolerance, 2 on input, parse, data or i/o errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use esebound_core::catalog::DeltaFInterpretation;
use esebound_core::sweep::SweepParam;
use esebound_core::AModeCoefficient;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DeltaFArg {
    Primary,
    Alternate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AModeArg {
    Standard,
    #[value(name = "paper_factor2", alias = "paper-factor2")]
    PaperFactor2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepParamArg {
    Frequency,
    Radius,
    Bandwidth,
}

#[derive(Debug, Parser)]
#[command(
    name = "esebound",
    version,
    about = "Chu-Harrington bounds for electrically small emitters"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Which recorded bandwidth to use for emitters that carry two.
    #[arg(long, global = true, value_enum, default_value = "primary")]
    delta_f_interpretation: DeltaFArg,

    /// Prefactor convention for the Einstein A coefficient.
    #[arg(long, global = true, value_enum, default_value = "standard")]
    a_mode: AModeArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute a reference table (1, 2 or 3) next to its printed values.
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Table 3 only: add the RMS radius solved from the model potential.
        #[arg(long)]
        solve_radii: bool,
    },
    /// Evaluate an emitter description file.
    Eval { file: PathBuf },
    /// Lifetime and dipole bounds for an atomic state.
    Atomic {
        /// H, Rb87 (or Rb) or Cs.
        element: String,
        n: u32,
        l: u32,
        j: f64,
        /// Chu radius in bohr; solved from the radial equation when absent.
        #[arg(long)]
        radius: Option<f64>,
        /// Transition wavelength in meters, for states without a catalog transition.
        #[arg(long)]
        wavelength_m: Option<f64>,
    },
    /// Efficiency bound and power-density limit over a parameter grid.
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParamArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid points, at least 2.
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        log: bool,
        #[arg(long)]
        frequency_hz: Option<f64>,
        #[arg(long)]
        bandwidth_hz: Option<f64>,
        #[arg(long)]
        radius_m: Option<f64>,
    },
    /// Run every reproduction check.
    Validate {
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
    },
}

pub struct Settings {
    pub format: Format,
    pub interp: DeltaFInterpretation,
    pub a_mode: AModeCoefficient,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        format: cli.format,
        interp: match cli.delta_f_interpretation {
            DeltaFArg::Primary => DeltaFInterpretation::Primary,
            DeltaFArg::Alternate => DeltaFInterpretation::Alternate,
        },
        a_mode: match cli.a_mode {
            AModeArg::Standard => AModeCoefficient::Standard,
            AModeArg::PaperFactor2 => AModeCoefficient::PaperFactor2,
        },
    };
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Tables { which, solve_radii } => {
            commands::tables(&settings, which, solve_radii, &mut out)
        }
        Command::Eval { file } => commands::eval(&settings, &file, &mut out),
        Command::Atomic {
            element,
            n,
            l,
            j,
            radius,
            wavelength_m,
        } => commands::atomic(&settings, &element, n, l, j, radius, wavelength_m, &mut out),
        Command::Sweep {
            param,
            from,
            to,
            steps,
            log,
            frequency_hz,
            bandwidth_hz,
            radius_m,
        } => {
            let param = match param {
                SweepParamArg::Frequency => SweepParam::Frequency,
                SweepParamArg::Radius => SweepParam::Radius,
                SweepParamArg::Bandwidth => SweepParam::Bandwidth,
            };
            let fixed = commands::Fixed {
                frequency_hz,
                bandwidth_hz,
                radius_m,
            };
            commands::sweep(&settings, param, from, to, steps, log, fixed, &mut out)
        }
        Command::Validate { json } => {
            let format = if json { Format::Json } else { settings.format };
            commands::validate(&Settings { format, ..settings }, &mut out)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
