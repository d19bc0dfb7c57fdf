use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tightframe::catalog::{builtin_frame, builtin_state};
use tightframe::coherence::frame_coherence;
use tightframe::frames::verify_tight;
use tightframe::naimark::{naimark_extend, verify_extension};
use tightframe::sweep::{
    SweepSpec, DEFAULT_INTERPOLATE_STEPS, DEFAULT_N_MAX_COMPOSITE, DEFAULT_N_MAX_QUBIT, DEFAULT_SURFACE_STEPS,
};
use tightframe::Error;

const FRAME_HELP: &str = "Frame: canonical:D, fourier:D, polygon:N, triangle, tetra, ico, rotated:LAMBDA, \
coherent:D, split3, a JSON file, or parts joined by '+' (each scaled by 1/sqrt(k))";
const STATE_HELP: &str = "State: rho0, rho1, rho2, rho3, qutrit136, bell1..bell4, qubit:A,B,THETA, or a JSON file";

#[derive(Parser)]
#[command(name = "tightframe", version, about = "Frame coherence of finite-dimensional quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    PolygonN,
    InterpolateT,
    CompositePolygonN,
    SurfaceAb,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a frame resolves the identity. Exit 0 if tight, 1 if not.
    Check {
        #[arg(long, help = FRAME_HELP)]
        frame: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the frame coherence of a state.
    Coherence {
        #[arg(long, help = FRAME_HELP)]
        frame: String,
        #[arg(long, help = STATE_HELP)]
        state: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit CSV coherence data over a frame family or state grid.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, help = STATE_HELP)]
        state: Option<String>,
        /// Frame for the surface family.
        #[arg(long, default_value = "triangle")]
        frame: String,
        /// Start frame for the interpolation family.
        #[arg(long)]
        from: Option<String>,
        /// End frame for the interpolation family.
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        /// Defaults to 50 for qubit polygons and 30 for two-qubit products.
        #[arg(long)]
        n_max: Option<usize>,
        /// Grid points per axis (interpolation and surface families).
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of the coherence along the interpolation between two orthonormal bases.
    Interpolate {
        #[arg(long, help = FRAME_HELP)]
        from: String,
        #[arg(long, help = FRAME_HELP)]
        to: String,
        #[arg(long, help = STATE_HELP)]
        state: String,
        #[arg(long, default_value_t = DEFAULT_INTERPOLATE_STEPS)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Naimark extension of a tight frame and verify it on a state.
    /// Exit 0 when every identity holds, 1 on a violation.
    Naimark {
        #[arg(long, help = FRAME_HELP)]
        frame: String,
        #[arg(long, help = STATE_HELP)]
        state: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Check { frame, format } => {
            let report = verify_tight(&builtin_frame(&frame)?);
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report)?),
                Format::Text => {
                    println!("residual: {:e}", report.residual);
                    println!("{}", if report.tight { "tight" } else { "not tight" });
                }
            }
            Ok(if report.tight { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Coherence { frame, state, format } => {
            let report = frame_coherence(&builtin_frame(&frame)?, &builtin_state(&state)?)?;
            match format {
                Format::Json => println!("{}", report.to_json_string()),
                Format::Text => println!("{:.12}", report.value),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { family, state, frame, from, to, n_min, n_max, steps, theta, out } => {
            let state = || {
                state
                    .as_deref()
                    .ok_or_else(|| Error::BadParameter("this family needs --state".into()))
                    .and_then(builtin_state)
            };
            let spec = match family {
                Family::PolygonN => SweepSpec::polygon(state()?, n_min, n_max.unwrap_or(DEFAULT_N_MAX_QUBIT))?,
                Family::CompositePolygonN => {
                    SweepSpec::composite_polygon(state()?, n_min, n_max.unwrap_or(DEFAULT_N_MAX_COMPOSITE))?
                }
                Family::InterpolateT => {
                    let (Some(from), Some(to)) = (from, to) else {
                        return Err(Error::BadParameter("interpolate-t needs --from and --to".into()));
                    };
                    SweepSpec::interpolate(
                        builtin_frame(&from)?,
                        builtin_frame(&to)?,
                        state()?,
                        steps.unwrap_or(DEFAULT_INTERPOLATE_STEPS),
                    )?
                }
                Family::SurfaceAb => {
                    SweepSpec::surface(builtin_frame(&frame)?, theta, steps.unwrap_or(DEFAULT_SURFACE_STEPS))?
                }
            };
            emit(&spec.to_csv()?, out)
        }
        Command::Interpolate { from, to, state, steps, out } => {
            let spec = SweepSpec::interpolate(builtin_frame(&from)?, builtin_frame(&to)?, builtin_state(&state)?, steps)?;
            emit(&spec.to_csv()?, out)
        }
        Command::Naimark { frame, state, format } => {
            let ext = naimark_extend(&builtin_frame(&frame)?)?;
            let report = verify_extension(&ext, &builtin_state(&state)?)?;
            let verdict = report.check();
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report)?),
                Format::Text => {
                    println!("extended dimension: {}", report.extended_dim);
                    println!("max element error: {:e}", report.max_element_error);
                    println!("max probability error: {:e}", report.max_probability_error);
                    println!("coherence (frame): {:.12}", report.frame_coherence);
                    println!("coherence (extension): {:.12}", report.extended_coherence);
                    match &verdict {
                        Ok(()) => println!("identities hold"),
                        Err(e) => println!("violated: {e}"),
                    }
                }
            }
            Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn emit(csv: &str, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
