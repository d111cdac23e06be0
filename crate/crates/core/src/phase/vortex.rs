use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::angle::{canonical_add, Angle, FractionalCharge};
use super::field::{PiecewiseExpField, Segment};

/// The fractional vortex field
/// `⟨φ|M(α)⟩ = e^{imφ} · e^{iμ[φ + 2π f_α(φ) − α]}`, where `f_α` is 1 on
/// `[0, α)` and 0 on `[α, 2π)`.
///
/// The `[0, α)` piece carries the extra `2πμ` phase. A single piece is
/// returned when α = 0 or the charge is an integer.
pub fn fractional_vortex_field(charge: FractionalCharge, alpha: Angle) -> PiecewiseExpField {
    let gradient = charge.value();
    let mu = charge.fractional_part();
    let alpha = alpha.radians();
    let one = Complex64::new(1.0, 0.0);
    let tail = Segment::new(alpha, TAU, gradient, -mu * alpha, one);
    if alpha == 0.0 || mu == 0.0 {
        return PiecewiseExpField::assemble(vec![Segment { start: 0.0, ..tail }]);
    }
    let head = Segment::new(0.0, alpha, gradient, mu * (TAU - alpha), one);
    PiecewiseExpField::assemble(vec![head, tail])
}

/// The rotation operator `Û(β)`, acting as `φ ↦ ψ(φ ⊖ β)`.
///
/// On a fractional vortex this reproduces `e^{−imβ}|M(α ⊕ β)⟩`.
pub fn rotate_field(psi: &PiecewiseExpField, beta: Angle) -> PiecewiseExpField {
    psi.rotate(beta)
}

/// `⟨m′|Û(β)|M(α)⟩`, the weight of the integer OAM mode `m′` in a rotated
/// fractional vortex:
///
/// `e^{−imβ} · i e^{i(m−m′)(β⊕α)} (1 − e^{i2πμ}) / (2π(M − m′))`.
///
/// For an integer charge the state is the eigenmode `e^{imφ}` and the
/// coefficient is the Kronecker delta times the rotation phase `e^{−imβ}`.
pub fn mode_coefficient(
    charge: FractionalCharge,
    alpha: Angle,
    m_prime: i64,
    beta: Angle,
) -> Complex64 {
    let m = charge.integer_part();
    let mu = charge.fractional_part();
    let rotation = Complex64::cis(-(m as f64) * beta.radians());
    if charge.is_integer() {
        return if m_prime == m {
            rotation
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let shifted = canonical_add(beta, alpha).radians();
    let dislocation = Complex64::cis(((m - m_prime) as f64) * shifted);
    let jump = Complex64::new(1.0, 0.0) - Complex64::cis(TAU * mu);
    let denom = 2.0 * PI * (charge.value() - m_prime as f64);
    rotation * Complex64::i() * dislocation * jump / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_angles(count: usize) -> impl Iterator<Item = Angle> {
        (0..count).map(move |j| Angle::new(TAU * (j as f64 + 0.5) / count as f64))
    }

    #[test]
    fn half_charge_at_pi() {
        let f = fractional_vortex_field(FractionalCharge::new(0.5), Angle::ZERO);
        let v = f.value_at(Angle::new(PI));
        assert!((v - Complex64::i()).norm() < 1e-15);
    }

    #[test]
    fn integer_charge_ignores_dislocation() {
        for alpha in [0.0, 1.0, 4.0] {
            let f = fractional_vortex_field(FractionalCharge::new(2.0), Angle::new(alpha));
            assert_eq!(f.len(), 1);
            let v = f.value_at(Angle::new(PI / 2.0));
            assert!((v + 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn dislocated_branch_carries_extra_phase() {
        let f = fractional_vortex_field(FractionalCharge::new(0.5), Angle::new(PI));
        assert_eq!(f.len(), 2);
        let v = f.value_at(Angle::new(PI / 2.0));
        assert!((v - Complex64::cis(0.75 * PI)).norm() < 1e-15);
    }

    #[test]
    fn unit_modulus() {
        for m in [0.3, 0.5, 1.25, 2.5, 3.7, -0.5] {
            for a in [0.0, 0.7, 3.0, 6.2] {
                let f = fractional_vortex_field(FractionalCharge::new(m), Angle::new(a));
                for phi in sample_angles(257) {
                    assert!((f.value_at(phi).norm() - 1.0).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn rotation_matches_relabelled_dislocation() {
        // Û(π)|1.5(0)⟩ = e^{−iπ}|1.5(π)⟩ point for point.
        let q = FractionalCharge::new(1.5);
        let rotated = rotate_field(&fractional_vortex_field(q, Angle::ZERO), Angle::new(PI));
        let target = fractional_vortex_field(q, Angle::new(PI));
        for phi in sample_angles(1000) {
            let want = Complex64::cis(-PI) * target.value_at(phi);
            assert!((rotated.value_at(phi) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_law_holds_on_grid() {
        for m in [0.3, 1.25, 2.5, 3.7, -1.4] {
            let q = FractionalCharge::new(m);
            for a in [0.0, 1.1, 4.9] {
                for b in [0.4, 2.0, 5.5] {
                    let alpha = Angle::new(a);
                    let beta = Angle::new(b);
                    let rotated = rotate_field(&fractional_vortex_field(q, alpha), beta);
                    let target = fractional_vortex_field(q, alpha + beta);
                    let phase = Complex64::cis(-(q.integer_part() as f64) * b);
                    for phi in sample_angles(400) {
                        let d = rotated.value_at(phi) - phase * target.value_at(phi);
                        assert!(d.norm() < 1e-12, "M={m} α={a} β={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_turn_is_identity() {
        let f = fractional_vortex_field(FractionalCharge::new(2.3), Angle::new(1.0));
        let r = rotate_field(&f, Angle::new(TAU));
        for phi in sample_angles(300) {
            assert!((r.value_at(phi) - f.value_at(phi)).norm() < 1e-12);
        }
    }

    #[test]
    fn half_charge_zero_mode() {
        let c = mode_coefficient(FractionalCharge::new(0.5), Angle::ZERO, 0, Angle::ZERO);
        assert!((c - Complex64::new(0.0, 2.0 / PI)).norm() < 1e-15);
        assert!((c.norm_sqr() - 4.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn integer_charge_is_kronecker() {
        let q = FractionalCharge::new(3.0);
        let a = Angle::new(1.3);
        assert!((mode_coefficient(q, a, 3, Angle::ZERO) - 1.0).norm() < 1e-15);
        assert_eq!(mode_coefficient(q, a, 2, Angle::ZERO).norm(), 0.0);
        // rotated eigenmode picks up e^{−imβ}
        let c = mode_coefficient(q, a, 3, Angle::new(0.5));
        assert!((c - Complex64::cis(-1.5)).norm() < 1e-15);
    }

    #[test]
    fn rotation_keeps_mode_weights() {
        let q = FractionalCharge::new(1.25);
        let a = Angle::new(0.9);
        for mp in -10..=10 {
            let w0 = mode_coefficient(q, a, mp, Angle::ZERO).norm();
            for b in [0.3, 2.2, 5.9] {
                let w = mode_coefficient(q, a, mp, Angle::new(b)).norm();
                assert!((w - w0).abs() < 1e-15);
            }
        }
    }
}
