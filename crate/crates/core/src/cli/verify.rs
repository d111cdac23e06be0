//! Sweep of every closed form against exact integration of the fields it
//! describes.
//!
//! Formula labels:
//!
//! | label | closed form | oracle |
//! |---|---|---|
//! | `base_overlap` | `⟨M(0)\|M(α)⟩` | vortex fields |
//! | `self_rotation`, `self_rotation_real` | `⟨M\|Û(β)\|M⟩` and its real part | vortex and its rotation |
//! | `rotated_overlap`, `rotated_probability` | `⟨M(0)\|Û(β)\|M(α)⟩` and its square modulus | rotated vortex |
//! | `base_product`, `base_product_real` | `⟨M(0)\|M(α)⟩⟨M(0)\|Û(β)\|M(α)⟩*` | product of exact overlaps |
//! | `product`, `product_real` | `⟨M(0)\|Û(β₁)\|M(α)⟩⟨M(0)\|Û(β₂)\|M(α)⟩*` | product of exact overlaps |
//! | `single_plate_probability`, `two_section_probability`, `four_section_probability` | written-out n = 1, 2, 4 parabolas | rotational superposition |
//! | `n_section_probability` | n-section parabola | sector profile |
//! | `n_section_probability_superposition` | n-section parabola | rotational superposition |
//! | `superposed_amplitude` | `⟨Mn(0)\|Mn(α)⟩` from rotated overlaps | rotational superposition |

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{
    base_product, base_product_real, overlap_amplitude_base, overlap_amplitude_rotated,
    overlap_probability_n, product_amplitude, product_real, rotated_probability,
    self_rotation_amplitude, self_rotation_real, superposed_overlap_amplitude,
};
use crate::oracle::inner_product;
use crate::phase::{fractional_vortex_field, Angle, FractionalCharge, PiecewiseExpField};
use crate::special_cases::{
    four_section_probability, single_plate_probability, two_section_probability,
};
use crate::superposition::{build_spp_profile, build_superposed, SuperposedState};
use crate::{Error, Result};

/// A case passes when `|closed − oracle|` is below this.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// Section counts of the sweep.
pub const SECTIONS: [u32; 5] = [1, 2, 3, 4, 5];
/// Step indices of the sweep.
pub const CHARGES: [f64; 5] = [0.3, 0.5, 1.25, 2.5, 3.7];

/// Size of the perturbation applied to one closed form by the fault switch.
const FAULT: f64 = 1e-6;

/// A written-out probability for one plate size.
type WrittenForm = fn(FractionalCharge, Angle) -> f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Complex([f64; 2]),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex([z.re, z.im])
    }
}

impl Value {
    fn distance(self, other: Value) -> f64 {
        match (self, other) {
            (Value::Real(a), Value::Real(b)) => (a - b).abs(),
            (Value::Complex([a, b]), Value::Complex([c, d])) => Complex64::new(a - c, b - d).norm(),
            _ => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Rotation {
    Single(f64),
    Pair([f64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub formula: &'static str,
    pub n: u32,
    #[serde(rename = "M")]
    pub charge: f64,
    pub alpha: f64,
    pub beta: Option<Rotation>,
    pub closed: Value,
    pub oracle: Value,
    pub abs_err: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FormulaSummary {
    pub cases: u64,
    pub max_abs_err: f64,
    pub failures: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub tolerance: f64,
    pub max_abs_err: f64,
    pub cases: u64,
    pub failures: u64,
    /// Cases where a construction did not exist (vanishing norm).
    pub skipped: u64,
    pub by_formula: BTreeMap<&'static str, FormulaSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub points: usize,
    pub sections: Vec<u32>,
    pub charges: Vec<f64>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.max_abs_err < VERIFY_TOLERANCE && self.summary.failures == 0
    }
}

struct Collector {
    keep_all: bool,
    records: Vec<Record>,
    summary: Summary,
}

impl Collector {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        formula: &'static str,
        n: u32,
        charge: FractionalCharge,
        alpha: Angle,
        beta: Option<Rotation>,
        closed: Value,
        oracle: Value,
    ) {
        let abs_err = closed.distance(oracle);
        // NaN counts as a failure
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        let failed = !(abs_err < VERIFY_TOLERANCE);
        let entry = self.summary.by_formula.entry(formula).or_default();
        entry.cases += 1;
        entry.max_abs_err = entry.max_abs_err.max(abs_err);
        self.summary.cases += 1;
        self.summary.max_abs_err = self.summary.max_abs_err.max(abs_err);
        if abs_err.is_nan() {
            entry.max_abs_err = f64::INFINITY;
            self.summary.max_abs_err = f64::INFINITY;
        }
        if failed {
            entry.failures += 1;
            self.summary.failures += 1;
        }
        if failed || self.keep_all {
            self.records.push(Record {
                formula,
                n,
                charge: charge.value(),
                alpha: alpha.radians(),
                beta,
                closed,
                oracle,
                abs_err,
            });
        }
    }
}

fn grid(points: usize) -> Vec<Angle> {
    (0..points)
        .map(|j| Angle::new(TAU * j as f64 / points as f64))
        .collect()
}

/// Runs the sweep on a `points`-sized α grid (and β grid for the rotated
/// formulas). `inject_fault` perturbs the base-overlap closed form so that
/// the gate can be seen to fail.
pub fn run_verification(points: usize, keep_all: bool, inject_fault: bool) -> Result<Report> {
    if points < 2 {
        return Err(Error::TooFewPoints(points));
    }
    let angles = grid(points);
    let mut c = Collector {
        keep_all,
        records: Vec::new(),
        summary: Summary {
            tolerance: VERIFY_TOLERANCE,
            ..Summary::default()
        },
    };
    let fault = if inject_fault { 1.0 + FAULT } else { 1.0 };

    for &m in &CHARGES {
        let q = FractionalCharge::new(m);
        single_vortex_cases(&mut c, q, &angles, fault);
        for &n in &SECTIONS {
            plate_cases(&mut c, n, q, &angles)?;
        }
    }
    Ok(Report {
        points,
        sections: SECTIONS.to_vec(),
        charges: CHARGES.to_vec(),
        records: c.records,
        summary: c.summary,
    })
}

fn single_vortex_cases(c: &mut Collector, q: FractionalCharge, angles: &[Angle], fault: f64) {
    let reference = fractional_vortex_field(q, Angle::ZERO);
    let fields: Vec<PiecewiseExpField> = angles
        .iter()
        .map(|&a| fractional_vortex_field(q, a))
        .collect();

    // exact ⟨M(0)|M(α)⟩ and ⟨M(0)|Û(β)|M(α)⟩ on the grid
    let base: Vec<Complex64> = fields
        .iter()
        .map(|f| inner_product(&reference, f))
        .collect();
    let rotated: Vec<Vec<Complex64>> = fields
        .iter()
        .map(|f| {
            angles
                .iter()
                .map(|&b| inner_product(&reference, &f.rotate(b)))
                .collect()
        })
        .collect();

    for (i, &alpha) in angles.iter().enumerate() {
        let closed = overlap_amplitude_base(q, alpha) * fault;
        c.push(
            "base_overlap",
            1,
            q,
            alpha,
            None,
            closed.into(),
            base[i].into(),
        );
    }

    for (j, &beta) in angles.iter().enumerate() {
        let oracle = rotated[0][j];
        let b = Some(Rotation::Single(beta.radians()));
        c.push(
            "self_rotation",
            1,
            q,
            Angle::ZERO,
            b,
            self_rotation_amplitude(q, beta).into(),
            oracle.into(),
        );
        c.push(
            "self_rotation_real",
            1,
            q,
            Angle::ZERO,
            b,
            self_rotation_real(q, beta).into(),
            oracle.re.into(),
        );
    }

    for (i, &alpha) in angles.iter().enumerate() {
        for (j, &beta) in angles.iter().enumerate() {
            let b = Some(Rotation::Single(beta.radians()));
            let oracle = rotated[i][j];
            let closed = overlap_amplitude_rotated(q, alpha, beta)
                .amplitude
                .unwrap_or_default();
            c.push(
                "rotated_overlap",
                1,
                q,
                alpha,
                b,
                closed.into(),
                oracle.into(),
            );
            c.push(
                "rotated_probability",
                1,
                q,
                alpha,
                b,
                rotated_probability(q, alpha, beta).into(),
                oracle.norm_sqr().into(),
            );
            let cross = base[i] * oracle.conj();
            c.push(
                "base_product",
                1,
                q,
                alpha,
                b,
                base_product(q, alpha, beta).into(),
                cross.into(),
            );
            c.push(
                "base_product_real",
                1,
                q,
                alpha,
                b,
                base_product_real(q, alpha, beta).into(),
                cross.re.into(),
            );
        }
    }

    for (i, &alpha) in angles.iter().enumerate() {
        for (j1, &b1) in angles.iter().enumerate() {
            for (j2, &b2) in angles.iter().enumerate() {
                let b = Some(Rotation::Pair([b1.radians(), b2.radians()]));
                let oracle = rotated[i][j1] * rotated[i][j2].conj();
                c.push(
                    "product",
                    1,
                    q,
                    alpha,
                    b,
                    product_amplitude(q, alpha, b1, b2).into(),
                    oracle.into(),
                );
                c.push(
                    "product_real",
                    1,
                    q,
                    alpha,
                    b,
                    product_real(q, alpha, b1, b2).into(),
                    oracle.re.into(),
                );
            }
        }
    }
}

/// Builds the state at α = 0 and at every grid angle, or `None` when the
/// construction does not exist for this charge.
fn states(
    build: fn(u32, FractionalCharge, Angle) -> Result<SuperposedState>,
    n: u32,
    q: FractionalCharge,
    angles: &[Angle],
) -> Result<Option<(SuperposedState, Vec<SuperposedState>)>> {
    let reference = match build(n, q, Angle::ZERO) {
        Ok(s) => s,
        Err(Error::DegenerateSuperposition { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let rotated = angles
        .iter()
        .map(|&a| build(n, q, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((reference, rotated)))
}

fn plate_cases(c: &mut Collector, n: u32, q: FractionalCharge, angles: &[Angle]) -> Result<()> {
    if let Some((reference, rotated)) = states(build_spp_profile, n, q, angles)? {
        for (&alpha, state) in angles.iter().zip(&rotated) {
            let oracle = inner_product(&reference.field, &state.field).norm_sqr();
            let closed = overlap_probability_n(n, q, alpha)?.probability;
            c.push(
                "n_section_probability",
                n,
                q,
                alpha,
                None,
                closed.into(),
                oracle.into(),
            );
        }
    }

    let Some((reference, rotated)) = states(build_superposed, n, q, angles)? else {
        c.summary.skipped += angles.len() as u64;
        return Ok(());
    };
    let written: Option<(&'static str, WrittenForm)> = match n {
        1 => Some(("single_plate_probability", single_plate_probability)),
        2 => Some(("two_section_probability", two_section_probability)),
        4 => Some(("four_section_probability", four_section_probability)),
        _ => None,
    };
    for (&alpha, state) in angles.iter().zip(&rotated) {
        let amplitude = inner_product(&reference.field, &state.field);
        let probability = amplitude.norm_sqr();
        let closed = overlap_probability_n(n, q, alpha)?.probability;
        c.push(
            "n_section_probability_superposition",
            n,
            q,
            alpha,
            None,
            closed.into(),
            probability.into(),
        );
        c.push(
            "superposed_amplitude",
            n,
            q,
            alpha,
            None,
            superposed_overlap_amplitude(n, q, alpha)?.into(),
            amplitude.into(),
        );
        if let Some((label, formula)) = written {
            c.push(
                label,
                n,
                q,
                alpha,
                None,
                formula(q, alpha).into(),
                probability.into(),
            );
        }
    }
    Ok(())
}
