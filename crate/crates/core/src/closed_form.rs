//! Piecewise analytic overlap amplitudes and probabilities.
//!
//! All formulas take the charge `M = m + μ` and canonical angles. Where a
//! formula has several sections the section is chosen from the unreduced
//! sums `α + β` (which live in `[0, 4π)`), and the 1-based section number is
//! reported alongside the value where useful.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::phase::{Angle, FractionalCharge, BOUNDARY_SNAP};
use crate::{Error, Result};

/// Normalisation sums below this magnitude are treated as a vanishing
/// superposition.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

/// A complex overlap amplitude (when one exists), its probability and the
/// 1-based section of the piecewise formula that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OverlapResult {
    pub amplitude: Option<Complex64>,
    pub probability: f64,
    pub branch: u32,
}

impl OverlapResult {
    fn from_amplitude(amplitude: Complex64, branch: u32) -> Self {
        OverlapResult {
            amplitude: Some(amplitude),
            probability: amplitude.norm_sqr(),
            branch,
        }
    }
}

#[inline]
fn sin_sq_pi(charge: FractionalCharge) -> f64 {
    let s = (PI * charge.value()).sin();
    s * s
}

#[inline]
fn rotation_phase(charge: FractionalCharge, beta: f64) -> Complex64 {
    Complex64::cis(-(charge.integer_part() as f64) * beta)
}

/// Whether `α + β` lies in the first section (`α + β ≤ 2π`).
#[inline]
fn within_first_turn(sum: f64) -> bool {
    sum <= TAU + BOUNDARY_SNAP
}

/// `(1/2π)[x e^{i(2π−x)μ} + (2π−x) e^{−ixμ}]` for any real `x`.
fn base_at(charge: FractionalCharge, x: f64) -> Complex64 {
    let mu = charge.fractional_part();
    (Complex64::cis((TAU - x) * mu) * x + Complex64::cis(-x * mu) * (TAU - x)) / TAU
}

/// `⟨M(0)|M(α)⟩ = (1/2π)[α e^{i(2π−α)μ} + (2π−α) e^{−iαμ}]`.
pub fn overlap_amplitude_base(charge: FractionalCharge, alpha: Angle) -> Complex64 {
    base_at(charge, alpha.radians())
}

/// Section (1 or 2) of the rotated-overlap formulas for `(α, β)`.
pub fn rotated_branch(alpha: Angle, beta: Angle) -> u32 {
    if within_first_turn(alpha.radians() + beta.radians()) {
        1
    } else {
        2
    }
}

/// `⟨M(0)|Û(β)|M(α)⟩` in its two-section form.
pub fn overlap_amplitude_rotated(
    charge: FractionalCharge,
    alpha: Angle,
    beta: Angle,
) -> OverlapResult {
    let mu = charge.fractional_part();
    let s = alpha.radians() + beta.radians();
    let branch = rotated_branch(alpha, beta);
    let bracket = if branch == 1 {
        Complex64::cis((TAU - s) * mu) * s + Complex64::cis(-s * mu) * (TAU - s)
    } else {
        Complex64::cis((2.0 * TAU - s) * mu) * (s - TAU)
            + Complex64::cis(-(s - TAU) * mu) * (2.0 * TAU - s)
    };
    let amplitude = rotation_phase(charge, beta.radians()) * bracket / TAU;
    OverlapResult::from_amplitude(amplitude, branch)
}

/// `|⟨M(0)|Û(β)|M(α)⟩|²` as the two-section parabola in `α + β`.
pub fn rotated_probability(charge: FractionalCharge, alpha: Angle, beta: Angle) -> f64 {
    let s = alpha.radians() + beta.radians();
    let sin2 = sin_sq_pi(charge);
    let quad = if within_first_turn(s) {
        s * (s - TAU)
    } else {
        (s - 2.0 * TAU) * (s - TAU)
    };
    (4.0 * quad * sin2 + FOUR_PI_SQ) / FOUR_PI_SQ
}

/// `⟨M(α)|Û(β)|M(α)⟩ = (e^{−imβ}/2π)[β e^{i(2π−β)μ} + (2π−β) e^{−iβμ}]`,
/// independent of α.
pub fn self_rotation_amplitude(charge: FractionalCharge, beta: Angle) -> Complex64 {
    let b = beta.radians();
    rotation_phase(charge, b) * base_at(charge, b)
}

/// `Re⟨M(α)|Û(β)|M(α)⟩ = (1/2π)[β cos(2πμ − βM) + (2π−β) cos(βM)]`.
pub fn self_rotation_real(charge: FractionalCharge, beta: Angle) -> f64 {
    let b = beta.radians();
    let mu = charge.fractional_part();
    let m = charge.value();
    (b * (TAU * mu - b * m).cos() + (TAU - b) * (b * m).cos()) / TAU
}

/// `⟨M(0)|M(α)⟩ · ⟨M(0)|Û(β)|M(α)⟩*` in its two-section form.
pub fn base_product(charge: FractionalCharge, alpha: Angle, beta: Angle) -> Complex64 {
    let a = alpha.radians();
    let b = beta.radians();
    let m = charge.value();
    let s = a + b;
    let value = if within_first_turn(s) {
        Complex64::cis(b * m) * (a * s + (TAU - a) * (TAU - s))
            + Complex64::cis(-(TAU - b) * m) * ((TAU - a) * s)
            + Complex64::cis((TAU + b) * m) * (a * (TAU - s))
    } else {
        Complex64::cis(-(TAU - b) * m) * (a * (s - TAU) + (TAU - a) * (2.0 * TAU - s))
            + Complex64::cis(-(2.0 * TAU - b) * m) * ((TAU - a) * (s - TAU))
            + Complex64::cis(b * m) * (a * (2.0 * TAU - s))
    };
    value / FOUR_PI_SQ
}

/// Real part of [`base_product`], in its own closed form.
pub fn base_product_real(charge: FractionalCharge, alpha: Angle, beta: Angle) -> f64 {
    let a = alpha.radians();
    let b = beta.radians();
    let m = charge.value();
    let s = a + b;
    let value = if within_first_turn(s) {
        (4.0 * (a * a + a * b - TAU * a - PI * b) * sin_sq_pi(charge) + FOUR_PI_SQ) * (b * m).cos()
            + TAU * b * (TAU * m).sin() * (b * m).sin()
    } else {
        2.0 * (a * a + a * b - 2.0 * TAU * a - PI * b + FOUR_PI_SQ) * ((TAU - b) * m).cos()
            + (TAU - a) * (s - TAU) * ((2.0 * TAU - b) * m).cos()
            + a * (2.0 * TAU - s) * (b * m).cos()
    };
    value / FOUR_PI_SQ
}

/// Section (1 to 4) of the two-rotation product formulas:
/// 1 when both `α + β₁` and `α + β₂` stay within the first turn, 2 when only
/// the first does, 3 when only the second does, 4 when neither does.
pub fn product_branch(alpha: Angle, beta1: Angle, beta2: Angle) -> u32 {
    let first = within_first_turn(alpha.radians() + beta1.radians());
    let second = within_first_turn(alpha.radians() + beta2.radians());
    match (first, second) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    }
}

/// `⟨M(0)|Û(β₁)|M(α)⟩ · ⟨M(0)|Û(β₂)|M(α)⟩*` in its four-section form.
pub fn product_amplitude(
    charge: FractionalCharge,
    alpha: Angle,
    beta1: Angle,
    beta2: Angle,
) -> Complex64 {
    let a = alpha.radians();
    let (b1, b2) = (beta1.radians(), beta2.radians());
    let m = charge.value();
    let (x1, x2) = (a + b1, a + b2);
    let sin2 = sin_sq_pi(charge);
    let twist = Complex64::new(0.0, TAU * (b1 - b2) * (TAU * m).sin());
    let bracket = match product_branch(alpha, beta1, beta2) {
        1 => Complex64::new(4.0 * sin2 * (x1 * x2 - PI * (x1 + x2)) + FOUR_PI_SQ, 0.0) + twist,
        2 => {
            Complex64::cis(-TAU * m) * (x1 * (x2 - TAU) + (TAU - x1) * (2.0 * TAU - x2))
                + Complex64::cis(-2.0 * TAU * m) * ((TAU - x1) * (x2 - TAU))
                + x1 * (2.0 * TAU - x2)
        }
        3 => {
            Complex64::cis(TAU * m) * ((x1 - TAU) * x2 + (2.0 * TAU - x1) * (TAU - x2))
                + Complex64::cis(2.0 * TAU * m) * ((x1 - TAU) * (TAU - x2))
                + (2.0 * TAU - x1) * x2
        }
        _ => {
            let inner = x1 * x2 - PI * (6.0 * a + 3.0 * b1 + 3.0 * b2 - 4.0 * TAU);
            Complex64::new(4.0 * sin2 * inner + FOUR_PI_SQ, 0.0) + twist
        }
    };
    Complex64::cis(-(b1 - b2) * m) * bracket / FOUR_PI_SQ
}

/// Real part of [`product_amplitude`], in its own closed form.
pub fn product_real(charge: FractionalCharge, alpha: Angle, beta1: Angle, beta2: Angle) -> f64 {
    let a = alpha.radians();
    let (b1, b2) = (beta1.radians(), beta2.radians());
    let m = charge.value();
    let (x1, x2) = (a + b1, a + b2);
    let d = b1 - b2;
    let sin2 = sin_sq_pi(charge);
    let twist = TAU * d * (TAU * m).sin() * (d * m).sin();
    let value = match product_branch(alpha, beta1, beta2) {
        1 => (4.0 * sin2 * (x1 * x2 - PI * (x1 + x2)) + FOUR_PI_SQ) * (d * m).cos() + twist,
        2 => {
            (x1 * (x2 - TAU) + (TAU - x1) * (2.0 * TAU - x2)) * ((d + TAU) * m).cos()
                + (TAU - x1) * (x2 - TAU) * ((d + 2.0 * TAU) * m).cos()
                + x1 * (2.0 * TAU - x2) * (d * m).cos()
        }
        3 => {
            ((x1 - TAU) * x2 + (2.0 * TAU - x1) * (TAU - x2)) * ((d - TAU) * m).cos()
                + (x1 - TAU) * (TAU - x2) * ((d - 2.0 * TAU) * m).cos()
                + (2.0 * TAU - x1) * x2 * (d * m).cos()
        }
        _ => {
            let inner = x1 * x2 - PI * (6.0 * a + 3.0 * b1 + 3.0 * b2 - 4.0 * TAU);
            (4.0 * sin2 * inner + FOUR_PI_SQ) * (d * m).cos() + twist
        }
    };
    value / FOUR_PI_SQ
}

/// The 1-based section `t` with `2π(t−1)/n ≤ α < 2πt/n`. An α within the
/// boundary snap below a section start is assigned to that section.
pub fn section_index(n: u32, alpha: Angle) -> u32 {
    let x = f64::from(n) * alpha.radians() / TAU;
    let nearest = x.round();
    let t = if (x - nearest).abs() < BOUNDARY_SNAP {
        nearest as u32 + 1
    } else {
        x.floor() as u32 + 1
    };
    t.clamp(1, n)
}

/// Overlap probability of two n-section plate states at relative angle α:
///
/// `[π(2t−1) − nα]²/π² · sin²(Mπ/n) + cos²(Mπ/n)` on section `t`.
pub fn overlap_probability_n(
    n: u32,
    charge: FractionalCharge,
    alpha: Angle,
) -> Result<OverlapResult> {
    if n == 0 {
        return Err(Error::ZeroSections);
    }
    let nf = f64::from(n);
    let t = section_index(n, alpha);
    let (s, c) = (charge.value() * PI / nf).sin_cos();
    let lever = (PI * f64::from(2 * t - 1) - nf * alpha.radians()) / PI;
    Ok(OverlapResult {
        amplitude: None,
        probability: lever * lever * s * s + c * c,
        branch: t,
    })
}

/// `Σ_k Re⟨M|Û(2πk/n)|M⟩`, the normalisation sum of the n-fold
/// rotational superposition (its squared norm divided by n).
pub fn superposition_normalization(n: u32, charge: FractionalCharge) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSections);
    }
    Ok((0..n)
        .map(|k| self_rotation_real(charge, Angle::turn_fraction(k, n)))
        .sum())
}

/// `⟨Mn(0)|Mn(α)⟩ = Σ_k ⟨M(0)|Û(2πk/n)|M(α)⟩ / Σ_k Re⟨M|Û(2πk/n)|M⟩`.
pub fn superposed_overlap_amplitude(
    n: u32,
    charge: FractionalCharge,
    alpha: Angle,
) -> Result<Complex64> {
    let denom = superposition_normalization(n, charge)?;
    if denom.abs() < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateSuperposition {
            n,
            charge: charge.value(),
            norm: f64::from(n) * denom,
        });
    }
    let numer: Complex64 = (0..n)
        .map(|k| {
            overlap_amplitude_rotated(charge, alpha, Angle::turn_fraction(k, n))
                .amplitude
                .unwrap_or_default()
        })
        .sum();
    Ok(numer / denom)
}
