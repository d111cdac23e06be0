//! The `sppn` command-line front end.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 usage error, 3 I/O
//! error, 4 degenerate construction. Every failure is reported as one line
//! on standard error.

mod args;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::bell::{
    chsh_parameter, fringe_scan, fringe_scan_oracle, sample_fringe, FringeTable, RNG_ALGORITHM,
};
use crate::phase::Angle;
use crate::superposition::{
    build_spp_profile, build_superposed, decompose_superposed, symmetry_residual, Construction,
    SuperposedState,
};
use crate::Error;

pub use args::{
    parse_args, parse_mode_range, Command, ConstructionChoice, Format, ModeRange, Parsed,
    PlateSpec, RunConfig, MAX_CHARGE, MAX_MODE_SPAN, MAX_POINTS, MAX_SECTIONS, MAX_VERIFY_POINTS,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}; try --construction sector")]
    Degenerate(String),
    #[error("verification failed: {failures} of {cases} cases, max abs error {max_abs_err:e}")]
    VerificationFailed {
        failures: u64,
        cases: u64,
        max_abs_err: f64,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Degenerate(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateSuperposition { .. } => CliError::Degenerate(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Round-trip float formatting for CSV cells (17 significant digits).
fn cell(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

/// Route used to produce overlap values, recorded in JSON metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Route {
    ClosedForm,
    Superposition,
    Sector,
}

impl From<Construction> for Route {
    fn from(c: Construction) -> Self {
        match c {
            Construction::EqOneSuperposition => Route::Superposition,
            Construction::SectorProfile => Route::Sector,
        }
    }
}

/// Builds the state with the requested construction. `Auto` tries the
/// rotational sum and falls back to the sector profile when it vanishes.
fn build_state(
    plate: PlateSpec,
    alpha: Angle,
    choice: ConstructionChoice,
) -> Result<SuperposedState, CliError> {
    let PlateSpec { n, charge } = plate;
    Ok(match choice {
        ConstructionChoice::Superposition => build_superposed(n, charge, alpha)?,
        ConstructionChoice::Sector => build_spp_profile(n, charge, alpha)?,
        ConstructionChoice::Auto => match build_superposed(n, charge, alpha) {
            Err(Error::DegenerateSuperposition { .. }) => build_spp_profile(n, charge, alpha)?,
            other => other?,
        },
    })
}

#[derive(Serialize)]
struct FringeJsonRow {
    alpha_rad: f64,
    probability: f64,
}

#[derive(Serialize)]
struct FringeJson {
    n: u32,
    #[serde(rename = "M")]
    charge: f64,
    points: usize,
    route: Route,
    rows: Vec<FringeJsonRow>,
}

fn render_fringe(
    plate: PlateSpec,
    points: usize,
    choice: ConstructionChoice,
    format: Format,
) -> Result<String, CliError> {
    let PlateSpec { n, charge } = plate;
    let (table, route) = match choice {
        ConstructionChoice::Auto => (fringe_scan(n, charge, points)?, Route::ClosedForm),
        ConstructionChoice::Superposition => (
            fringe_scan_oracle(n, charge, points, Construction::EqOneSuperposition)?,
            Route::Superposition,
        ),
        ConstructionChoice::Sector => (
            fringe_scan_oracle(n, charge, points, Construction::SectorProfile)?,
            Route::Sector,
        ),
    };
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("alpha_rad,probability\n");
            for r in &table.rows {
                let _ = writeln!(out, "{},{}", cell(r.alpha.radians()), cell(r.probability));
            }
            out
        }
        Format::Json => to_json(&FringeJson {
            n,
            charge: charge.value(),
            points,
            route,
            rows: table
                .rows
                .iter()
                .map(|r| FringeJsonRow {
                    alpha_rad: r.alpha.radians(),
                    probability: r.probability,
                })
                .collect(),
        }),
    })
}

#[derive(Serialize)]
struct SettingsJson {
    alpha_s: f64,
    alpha_s_prime: f64,
    alpha_i: f64,
    alpha_i_prime: f64,
    t_perp: u32,
}

#[derive(Serialize)]
struct BellJson {
    n: u32,
    #[serde(rename = "M")]
    charge: f64,
    settings: SettingsJson,
    #[serde(rename = "E")]
    correlations: [f64; 4],
    #[serde(rename = "S")]
    s: f64,
    in_orthogonal_class: bool,
}

fn render_bell(
    plate: PlateSpec,
    settings: &crate::bell::AnalyzerSettings,
    format: Format,
) -> Result<String, CliError> {
    let r = chsh_parameter(plate.n, plate.charge, settings)?;
    let doc = BellJson {
        n: plate.n,
        charge: plate.charge.value(),
        settings: SettingsJson {
            alpha_s: settings.alpha_s.radians(),
            alpha_s_prime: settings.alpha_s_prime.radians(),
            alpha_i: settings.alpha_i.radians(),
            alpha_i_prime: settings.alpha_i_prime.radians(),
            t_perp: settings.t_perp,
        },
        correlations: r.correlations,
        s: r.s,
        in_orthogonal_class: r.in_orthogonal_class,
    };
    Ok(match format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut out = String::from(
                "n,M,alpha_s,alpha_s_prime,alpha_i,alpha_i_prime,t_perp,E1,E2,E3,E4,S,in_orthogonal_class\n",
            );
            let st = &doc.settings;
            let _ = write!(
                out,
                "{},{},{},{},{},{},{}",
                doc.n,
                cell(doc.charge),
                cell(st.alpha_s),
                cell(st.alpha_s_prime),
                cell(st.alpha_i),
                cell(st.alpha_i_prime),
                st.t_perp
            );
            for e in doc.correlations {
                let _ = write!(out, ",{}", cell(e));
            }
            let _ = writeln!(out, ",{},{}", cell(doc.s), doc.in_orthogonal_class);
            out
        }
    })
}

#[derive(Serialize)]
struct ModeJson {
    m_prime: i64,
    re: f64,
    im: f64,
    weight: f64,
}

#[derive(Serialize)]
struct DecomposeJson {
    n: u32,
    #[serde(rename = "M")]
    charge: f64,
    alpha: f64,
    route: Route,
    m_min: i64,
    m_max: i64,
    total_weight: f64,
    modes: Vec<ModeJson>,
}

fn render_decompose(
    plate: PlateSpec,
    alpha: Angle,
    range: ModeRange,
    choice: ConstructionChoice,
    format: Format,
) -> Result<String, CliError> {
    let state = build_state(plate, alpha, choice)?;
    let spectrum = decompose_superposed(&state, range.min, range.max)?;
    let modes: Vec<ModeJson> = spectrum
        .coefficients
        .iter()
        .map(|(&m_prime, c)| ModeJson {
            m_prime,
            re: c.re,
            im: c.im,
            weight: c.norm_sqr(),
        })
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("m_prime,re,im,weight\n");
            for m in &modes {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    m.m_prime,
                    cell(m.re),
                    cell(m.im),
                    cell(m.weight)
                );
            }
            out
        }
        Format::Json => to_json(&DecomposeJson {
            n: plate.n,
            charge: plate.charge.value(),
            alpha: alpha.radians(),
            route: state.construction.into(),
            m_min: range.min,
            m_max: range.max,
            total_weight: spectrum.total_weight(),
            modes,
        }),
    })
}

#[derive(Serialize)]
struct SymmetryJson {
    n: u32,
    #[serde(rename = "M")]
    charge: f64,
    alpha: f64,
    route: Route,
    residual: f64,
}

fn render_symmetry(
    plate: PlateSpec,
    alpha: Angle,
    choice: ConstructionChoice,
    format: Format,
) -> Result<String, CliError> {
    let state = build_state(plate, alpha, choice)?;
    let doc = SymmetryJson {
        n: plate.n,
        charge: plate.charge.value(),
        alpha: alpha.radians(),
        route: state.construction.into(),
        residual: symmetry_residual(&state),
    };
    Ok(match format {
        Format::Json => to_json(&doc),
        Format::Csv => format!("residual\n{}\n", cell(doc.residual)),
    })
}

#[derive(Serialize)]
struct SampleJsonRow {
    alpha_rad: f64,
    counts: u64,
    rate: f64,
}

#[derive(Serialize)]
struct SampleJson {
    n: u32,
    #[serde(rename = "M")]
    charge: f64,
    points: usize,
    shots: u64,
    seed: u64,
    rng: &'static str,
    rows: Vec<SampleJsonRow>,
}

fn sample_rows(table: &FringeTable) -> Vec<SampleJsonRow> {
    table
        .rows
        .iter()
        .map(|r| SampleJsonRow {
            alpha_rad: r.alpha.radians(),
            counts: r.counts.unwrap_or(0),
            rate: r.probability,
        })
        .collect()
}

fn render_sample(
    plate: PlateSpec,
    points: usize,
    shots: u64,
    seed: u64,
    format: Format,
) -> Result<String, CliError> {
    let table = sample_fringe(plate.n, plate.charge, points, shots, seed)?;
    let rows = sample_rows(&table);
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("alpha_rad,counts,rate\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", cell(r.alpha_rad), r.counts, cell(r.rate));
            }
            out
        }
        Format::Json => to_json(&SampleJson {
            n: plate.n,
            charge: plate.charge.value(),
            points,
            shots,
            seed,
            rng: RNG_ALGORITHM,
            rows,
        }),
    })
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let result = match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| format!("cannot write to standard output: {e}")),
    };
    result.map_err(CliError::Io)
}

/// Executes a validated configuration, writing its table or report to
/// `--out` or to `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = config.format;
    let text = match &config.command {
        Command::Fringe {
            plate,
            points,
            construction,
        } => render_fringe(*plate, *points, *construction, format)?,
        Command::Bell { plate, settings } => render_bell(*plate, settings, format)?,
        Command::Decompose {
            plate,
            alpha,
            range,
            construction,
        } => render_decompose(*plate, *alpha, *range, *construction, format)?,
        Command::Symmetry {
            plate,
            alpha,
            construction,
        } => render_symmetry(*plate, *alpha, *construction, format)?,
        Command::Sample {
            plate,
            points,
            shots,
            seed,
        } => render_sample(*plate, *points, *shots, *seed, format)?,
        Command::Verify {
            points,
            all_records,
            inject_fault,
        } => {
            let report = verify::run_verification(*points, *all_records, *inject_fault)?;
            write_output(config.output.as_deref(), &to_json(&report), stdout)?;
            if !report.passed() {
                return Err(CliError::VerificationFailed {
                    failures: report.summary.failures,
                    cases: report.summary.cases,
                    max_abs_err: report.summary.max_abs_err,
                });
            }
            return Ok(());
        }
    };
    write_output(config.output.as_deref(), &text, stdout)
}

/// Parses `args`, runs, and returns the process exit status. Diagnostics go
/// to `stderr` as a single line.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = parse_args(args).and_then(|parsed| match parsed {
        Parsed::Print(text) => write_output(None, &text, stdout),
        Parsed::Run(config) => run(&config, stdout),
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "sppn: error: {line}");
            e.exit_code()
        }
    }
}
