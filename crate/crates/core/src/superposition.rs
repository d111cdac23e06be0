//! n-fold rotationally symmetric states `|Mn(α)⟩`.
//!
//! Two constructions are provided. The rotational sum adds n rotated copies
//! of a fractional vortex and normalises; it has zero norm on some charges
//! (for even n, exactly those with `(M − n/2) mod n = 0`). The sector
//! profile writes the ramp `e^{iM·((φ − α) mod 2π/n)}` directly and exists
//! for every charge. Where both exist they differ by one global phase.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{superposition_normalization, DEGENERACY_THRESHOLD};
use crate::oracle::{mode_projection, norm_squared};
use crate::phase::{fractional_vortex_field, Angle, FractionalCharge, PiecewiseExpField, Segment};
use crate::{Error, Result};

/// Number of sample angles used by [`symmetry_residual`].
pub const SYMMETRY_SAMPLES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Normalised sum of the n rotated fractional vortices.
    #[serde(rename = "superposition")]
    EqOneSuperposition,
    /// Direct n-sector ramp.
    #[serde(rename = "sector")]
    SectorProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperposedState {
    pub n: u32,
    pub charge: FractionalCharge,
    pub alpha: Angle,
    pub field: PiecewiseExpField,
    pub construction: Construction,
}

/// The normalised rotational superposition `Σ_k Û(2πk/n)|M(α)⟩`.
///
/// Within each sector every summand carries the gradient M, so the sum is a
/// single complex coefficient per sector. The norm is integrated exactly.
pub fn build_superposed(n: u32, charge: FractionalCharge, alpha: Angle) -> Result<SuperposedState> {
    if n == 0 {
        return Err(Error::ZeroSections);
    }
    let base = fractional_vortex_field(charge, alpha);
    let copies: Vec<PiecewiseExpField> = (0..n)
        .map(|k| base.rotate(Angle::turn_fraction(k, n)))
        .collect();
    let sum = PiecewiseExpField::superpose(&copies)?;
    let norm = norm_squared(&sum);
    if norm < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateSuperposition {
            n,
            charge: charge.value(),
            norm,
        });
    }
    Ok(SuperposedState {
        n,
        charge,
        alpha,
        field: sum.scaled(Complex64::new(norm.sqrt().recip(), 0.0)),
        construction: Construction::EqOneSuperposition,
    })
}

/// Squared norm of the unnormalised rotational superposition,
/// `n · Σ_k Re⟨M|Û(2πk/n)|M⟩`. Zero is a legal value.
pub fn unnormalized_norm(n: u32, charge: FractionalCharge) -> Result<f64> {
    Ok(f64::from(n) * superposition_normalization(n, charge)?)
}

/// The sector ramp `ψ(φ) = e^{iM·((φ − α) mod 2π/n)}`.
pub fn build_spp_profile(
    n: u32,
    charge: FractionalCharge,
    alpha: Angle,
) -> Result<SuperposedState> {
    if n == 0 {
        return Err(Error::ZeroSections);
    }
    let m = charge.value();
    let width = TAU / f64::from(n);
    let a = alpha.radians();
    let one = Complex64::new(1.0, 0.0);
    let mut pieces = Vec::with_capacity(n as usize + 1);
    for j in 0..n {
        let start = a + width * f64::from(j);
        let end = start + width;
        let offset = -m * start;
        // φ in [start, end) read modulo 2π; the part past 2π wraps to [0, end − 2π).
        if end <= TAU {
            pieces.push(Segment::new(start, end, m, offset, one));
        } else if start >= TAU {
            pieces.push(Segment::new(
                start - TAU,
                end - TAU,
                m,
                offset + m * TAU,
                one,
            ));
        } else {
            pieces.push(Segment::new(start, TAU, m, offset, one));
            pieces.push(Segment::new(0.0, end - TAU, m, offset + m * TAU, one));
        }
    }
    Ok(SuperposedState {
        n,
        charge,
        alpha,
        field: PiecewiseExpField::assemble(pieces).merge_continuous(),
        construction: Construction::SectorProfile,
    })
}

/// `max_{t, φ} |ψ(φ) − (Û(2πt/n)ψ)(φ)|` over t = 1…n and
/// [`SYMMETRY_SAMPLES`] angles offset by half a sample step.
pub fn symmetry_residual(state: &SuperposedState) -> f64 {
    let psi = &state.field;
    let samples: Vec<Angle> = (0..SYMMETRY_SAMPLES)
        .map(|j| Angle::new(TAU * (j as f64 + 0.5) / SYMMETRY_SAMPLES as f64))
        .collect();
    (1..=state.n)
        .map(|t| {
            let rotated = psi.rotate(Angle::turn_fraction(t, state.n));
            samples
                .iter()
                .map(|&phi| (psi.value_at(phi) - rotated.value_at(phi)).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// OAM weights `c_{m′} = ⟨m′|ψ⟩` over an inclusive integer range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSpectrum {
    pub m_min: i64,
    pub m_max: i64,
    pub coefficients: BTreeMap<i64, Complex64>,
}

impl ModeSpectrum {
    /// `Σ |c_{m′}|²` over the range.
    pub fn total_weight(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn get(&self, m_prime: i64) -> Option<Complex64> {
        self.coefficients.get(&m_prime).copied()
    }
}

/// Projects a state onto the integer modes `m_min..=m_max` by exact
/// per-segment integration.
pub fn decompose_superposed(
    state: &SuperposedState,
    m_min: i64,
    m_max: i64,
) -> Result<ModeSpectrum> {
    decompose_field(&state.field, m_min, m_max)
}

pub fn decompose_field(field: &PiecewiseExpField, m_min: i64, m_max: i64) -> Result<ModeSpectrum> {
    if m_min > m_max {
        return Err(Error::InvalidModeRange {
            min: m_min,
            max: m_max,
        });
    }
    let coefficients = (m_min..=m_max)
        .map(|mp| (mp, mode_projection(field, mp)))
        .collect();
    Ok(ModeSpectrum {
        m_min,
        m_max,
        coefficients,
    })
}

/// Phase accumulated across one sector, reduced to `[0, 2π)`. It is read
/// from the values at the two edges of the sector that starts at α, with
/// that sector's exponential continued to its far edge.
pub fn sector_phase_advance(state: &SuperposedState) -> f64 {
    let width = TAU / f64::from(state.n);
    let start = state.alpha.radians();
    let psi = &state.field;
    let seg = psi.segments()[psi.segment_index(Angle::new(start + 0.5 * width).radians())];
    let unwrapped = |phi: f64| seg.coefficient() * Complex64::cis(seg.gradient * phi);
    let mut near_edge = start;
    if Angle::new(start + 0.5 * width).radians() < start {
        // sector midpoint wrapped past 2π: work in the wrapped coordinate
        near_edge -= TAU;
    }
    (unwrapped(near_edge + width) / unwrapped(near_edge))
        .arg()
        .rem_euclid(TAU)
}

/// Global phase `e^{iθ}` such that `a ≈ e^{iθ} b`, fitted at the midpoint of
/// the first segment of `a`.
pub fn fit_global_phase(a: &PiecewiseExpField, b: &PiecewiseExpField) -> Complex64 {
    let mid = Angle::new(a.segments()[0].midpoint());
    let r = a.value_at(mid) / b.value_at(mid);
    r / r.norm()
}

/// `max_φ |a(φ) − e^{iθ} b(φ)|` on `samples` half-offset angles, with θ from
/// [`fit_global_phase`].
pub fn phase_aligned_distance(a: &PiecewiseExpField, b: &PiecewiseExpField, samples: usize) -> f64 {
    let phase = fit_global_phase(a, b);
    (0..samples)
        .map(|j| Angle::new(TAU * (j as f64 + 0.5) / samples as f64))
        .map(|phi| (a.value_at(phi) - phase * b.value_at(phi)).norm())
        .fold(0.0, f64::max)
}
