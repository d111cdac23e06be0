use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bell::{standard_settings, AnalyzerSettings};
use crate::phase::{Angle, FractionalCharge};

use super::CliError;

/// Largest accepted number of plate sections.
pub const MAX_SECTIONS: u32 = 4096;
/// Largest accepted scan length.
pub const MAX_POINTS: usize = 1_000_000;
/// Largest accepted α/β grid for the verification sweep (its cost is cubic).
pub const MAX_VERIFY_POINTS: usize = 128;
/// Largest accepted number of modes in one decomposition.
pub const MAX_MODE_SPAN: u64 = 200_001;
/// Largest accepted |M|; beyond this the phase ramps lose all precision.
pub const MAX_CHARGE: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Which state construction a subcommand uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionChoice {
    /// Closed form for fringes; rotational sum unless it is degenerate.
    Auto,
    Superposition,
    Sector,
}

/// Inclusive integer range written `MIN:MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeRange {
    pub min: i64,
    pub max: i64,
}

impl fmt::Display for ModeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

impl FromStr for ModeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_mode_range(s)
    }
}

/// Parses `MIN:MAX` with `MIN ≤ MAX` and at most [`MAX_MODE_SPAN`] modes.
pub fn parse_mode_range(s: &str) -> Result<ModeRange, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("mode range `{s}` must be written MIN:MAX"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("mode range bound `{t}`: {e}"))
    };
    let (min, max) = (parse(lo)?, parse(hi)?);
    if min > max {
        return Err(format!("mode range {min}:{max} is empty"));
    }
    let span = max.abs_diff(min).saturating_add(1);
    if span > MAX_MODE_SPAN {
        return Err(format!(
            "mode range {min}:{max} has {span} modes, more than {MAX_MODE_SPAN}"
        ));
    }
    Ok(ModeRange { min, max })
}

#[derive(Debug, Parser)]
#[command(
    name = "sppn",
    version,
    about = "Fractional OAM overlaps, n-section phase plate fringes and CHSH values"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Args)]
struct Plate {
    /// Number of plate sections.
    #[arg(long)]
    n: u32,
    /// Step index M of the plate.
    #[arg(long, allow_negative_numbers = true)]
    charge: f64,
}

#[derive(Debug, Args)]
struct Sink {
    /// Output file (default: standard output).
    #[arg(long = "out", value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Overlap probability over a uniform grid of relative angles.
    Fringe {
        #[command(flatten)]
        plate: Plate,
        #[arg(long, default_value_t = 721)]
        points: usize,
        #[arg(long, value_enum, default_value_t = ConstructionChoice::Auto)]
        construction: ConstructionChoice,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        sink: Sink,
    },
    /// CHSH correlations and parameter.
    Bell {
        #[command(flatten)]
        plate: Plate,
        #[arg(long, allow_negative_numbers = true)]
        alpha_s: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha_s_prime: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha_i: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha_i_prime: Option<f64>,
        /// Which orthogonal partner angle α + π(2t − 1)/n to use.
        #[arg(long, default_value_t = 1)]
        t_perp: u32,
        /// Read angles in degrees.
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        sink: Sink,
    },
    /// Integer-OAM spectrum of a plate state.
    Decompose {
        #[command(flatten)]
        plate: Plate,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        degrees: bool,
        #[arg(long, allow_hyphen_values = true, default_value = "-50:50")]
        range: ModeRange,
        #[arg(long, value_enum, default_value_t = ConstructionChoice::Auto)]
        construction: ConstructionChoice,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        sink: Sink,
    },
    /// Largest deviation of a plate state from its own 2πt/n rotations.
    Symmetry {
        #[command(flatten)]
        plate: Plate,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value_t = ConstructionChoice::Auto)]
        construction: ConstructionChoice,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        sink: Sink,
    },
    /// Closed forms against exact integration over a parameter grid.
    Verify {
        /// Grid size for α and for each β.
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// Emit every case, not only failures.
        #[arg(long)]
        all_records: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        sink: Sink,
    },
    /// Binomially sampled coincidence counts.
    Sample {
        #[command(flatten)]
        plate: Plate,
        #[arg(long, default_value_t = 721)]
        points: usize,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        sink: Sink,
    },
}

/// A validated plate: section count and step index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSpec {
    pub n: u32,
    pub charge: FractionalCharge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Fringe {
        plate: PlateSpec,
        points: usize,
        construction: ConstructionChoice,
    },
    Bell {
        plate: PlateSpec,
        settings: AnalyzerSettings,
    },
    Decompose {
        plate: PlateSpec,
        alpha: Angle,
        range: ModeRange,
        construction: ConstructionChoice,
    },
    Symmetry {
        plate: PlateSpec,
        alpha: Angle,
        construction: ConstructionChoice,
    },
    Verify {
        points: usize,
        all_records: bool,
        inject_fault: bool,
    },
    Sample {
        plate: PlateSpec,
        points: usize,
        shots: u64,
        seed: u64,
    },
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

/// Result of parsing: a run, or text (help, version) to print and exit 0.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Run(RunConfig),
    Print(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn plate(p: Plate) -> Result<PlateSpec, CliError> {
    if p.n == 0 || p.n > MAX_SECTIONS {
        return Err(usage(format!(
            "--n must be in 1..={MAX_SECTIONS}, got {}",
            p.n
        )));
    }
    if !p.charge.is_finite() || p.charge.abs() > MAX_CHARGE {
        return Err(usage(format!(
            "--charge must be finite with |M| <= {MAX_CHARGE:e}, got {}",
            p.charge
        )));
    }
    Ok(PlateSpec {
        n: p.n,
        charge: FractionalCharge::new(p.charge),
    })
}

fn points(p: usize, max: usize) -> Result<usize, CliError> {
    if (2..=max).contains(&p) {
        Ok(p)
    } else {
        Err(usage(format!("--points must be in 2..={max}, got {p}")))
    }
}

fn angle(name: &str, value: f64, degrees: bool) -> Result<Angle, CliError> {
    if !value.is_finite() {
        return Err(usage(format!("--{name} must be finite, got {value}")));
    }
    Ok(if degrees {
        Angle::from_degrees(value)
    } else {
        Angle::new(value)
    })
}

fn validate(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, format, sink) = match cli.command {
        Cmd::Fringe {
            plate: p,
            points: k,
            construction,
            format,
            sink,
        } => (
            Command::Fringe {
                plate: plate(p)?,
                points: points(k, MAX_POINTS)?,
                construction,
            },
            format,
            sink,
        ),
        Cmd::Bell {
            plate: p,
            alpha_s,
            alpha_s_prime,
            alpha_i,
            alpha_i_prime,
            t_perp,
            degrees,
            format,
            sink,
        } => {
            let plate = plate(p)?;
            let std = standard_settings(plate.n).map_err(|e| usage(e.to_string()))?;
            let pick = |name: &str, given: Option<f64>, default: Angle| match given {
                Some(v) => angle(name, v, degrees),
                None => Ok(default),
            };
            let angles = [
                pick("alpha-s", alpha_s, std.alpha_s)?,
                pick("alpha-s-prime", alpha_s_prime, std.alpha_s_prime)?,
                pick("alpha-i", alpha_i, std.alpha_i)?,
                pick("alpha-i-prime", alpha_i_prime, std.alpha_i_prime)?,
            ];
            let settings =
                AnalyzerSettings::new(plate.n, angles, t_perp).map_err(|e| usage(e.to_string()))?;
            (Command::Bell { plate, settings }, format, sink)
        }
        Cmd::Decompose {
            plate: p,
            alpha,
            degrees,
            range,
            construction,
            format,
            sink,
        } => (
            Command::Decompose {
                plate: plate(p)?,
                alpha: angle("alpha", alpha, degrees)?,
                range,
                construction,
            },
            format,
            sink,
        ),
        Cmd::Symmetry {
            plate: p,
            alpha,
            degrees,
            construction,
            format,
            sink,
        } => (
            Command::Symmetry {
                plate: plate(p)?,
                alpha: angle("alpha", alpha, degrees)?,
                construction,
            },
            format,
            sink,
        ),
        Cmd::Verify {
            points: k,
            all_records,
            inject_fault,
            sink,
        } => (
            Command::Verify {
                points: points(k, MAX_VERIFY_POINTS)?,
                all_records,
                inject_fault,
            },
            Format::Json,
            sink,
        ),
        Cmd::Sample {
            plate: p,
            points: k,
            shots,
            seed,
            format,
            sink,
        } => (
            Command::Sample {
                plate: plate(p)?,
                points: points(k, MAX_POINTS)?,
                shots,
                seed,
            },
            format,
            sink,
        ),
    };
    Ok(RunConfig {
        command,
        format,
        output: sink.out,
    })
}

/// Parses and validates a full argument list (program name first).
pub fn parse_args<I, T>(args: I) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => validate(cli).map(Parsed::Run),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Ok(Parsed::Print(e.render().to_string()))
            }
            clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Err(usage(
                "a subcommand is required; see `sppn --help`".to_string(),
            )),
            _ => {
                let text = e.render().to_string();
                let line = text
                    .lines()
                    .map(str::trim)
                    .find(|l| !l.is_empty())
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ")
                    .to_string();
                Err(usage(line))
            }
        },
    }
}
