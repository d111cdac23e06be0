//! Exact inner products of piecewise-exponential fields.
//!
//! On every piece of the common refinement of two partitions the integrand
//! `conj(bra)·ket` is `C·e^{igφ}` with constant `C` and `g`, so the integral
//! has a closed antiderivative. Nothing here uses the analytic overlap
//! formulas of [`crate::closed_form`]; the two are checked against each other.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::phase::{Angle, FractionalCharge, PiecewiseExpField, BOUNDARY_SNAP};
use crate::superposition::{build_spp_profile, build_superposed, Construction};
use crate::Result;

/// Below this gradient difference the piece integrand is treated as constant.
const FLAT_GRADIENT: f64 = 1e-12;

/// `∫_a^b e^{igφ} dφ`, written as `e^{ig(a+b)/2} · (b−a) · sinc(g(b−a)/2)` so
/// that nearly equal gradients do not cancel catastrophically.
fn exp_integral(g: f64, a: f64, b: f64) -> Complex64 {
    let width = b - a;
    if g.abs() < FLAT_GRADIENT {
        return Complex64::new(width, 0.0);
    }
    let half = 0.5 * g * width;
    let sinc = if half.abs() < 1e-8 {
        1.0 - half * half / 6.0
    } else {
        half.sin() / half
    };
    Complex64::cis(0.5 * g * (a + b)) * (width * sinc)
}

/// `(1/2π) ∫₀^{2π} conj(bra(φ)) · ket(φ) dφ`, computed exactly.
pub fn inner_product(bra: &PiecewiseExpField, ket: &PiecewiseExpField) -> Complex64 {
    let mut cuts: Vec<f64> = bra.boundaries().chain(ket.boundaries()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| (*b - *a).abs() <= BOUNDARY_SNAP);

    let bra_segs = bra.segments();
    let ket_segs = ket.segments();
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= BOUNDARY_SNAP {
            continue;
        }
        let mid = 0.5 * (a + b);
        let s = &bra_segs[bra.segment_index(mid)];
        let t = &ket_segs[ket.segment_index(mid)];
        let c = s.coefficient().conj() * t.coefficient();
        total += c * exp_integral(t.gradient - s.gradient, a, b);
    }
    total / TAU
}

/// `⟨ψ|ψ⟩`.
pub fn norm_squared(field: &PiecewiseExpField) -> f64 {
    inner_product(field, field).re
}

/// `⟨m′|ψ⟩`, the weight of the integer OAM eigenmode `m′` in `ψ`.
pub fn mode_projection(field: &PiecewiseExpField, m_prime: i64) -> Complex64 {
    inner_product(&PiecewiseExpField::eigenmode(m_prime), field)
}

/// Brute-force overlap probability `|⟨Mn(0)|Mn(α)⟩|²`: both states are
/// built as fields with the requested construction and integrated exactly.
pub fn overlap_probability_oracle(
    n: u32,
    charge: FractionalCharge,
    alpha: Angle,
    construction: Construction,
) -> Result<f64> {
    let (reference, rotated) = match construction {
        Construction::EqOneSuperposition => (
            build_superposed(n, charge, Angle::ZERO)?,
            build_superposed(n, charge, alpha)?,
        ),
        Construction::SectorProfile => (
            build_spp_profile(n, charge, Angle::ZERO)?,
            build_spp_profile(n, charge, alpha)?,
        ),
    };
    Ok(inner_product(&reference.field, &rotated.field).norm_sqr())
}
