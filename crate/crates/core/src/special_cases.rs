//! The general rotated-overlap formulas written out for the rotations used
//! by the two- and four-section plates (β ∈ {π/2, π, 3π/2}), and the
//! assembled overlap probabilities for n = 1, 2 and 4.
//!
//! These are independent transcriptions kept as fixtures: the test suites
//! check them against [`crate::closed_form`] and against the exact oracle.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::closed_form::{
    base_product_real, overlap_amplitude_base, product_real, rotated_probability,
    DEGENERACY_THRESHOLD,
};
use crate::phase::{Angle, FractionalCharge};
use crate::{Error, Result};

const PI_SQ: f64 = PI * PI;
const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

#[inline]
fn trig(charge: FractionalCharge) -> (f64, f64) {
    let m = charge.value();
    let s = (m * PI).sin();
    (m, s * s)
}

#[inline]
fn parabola(lever: f64, s: f64, c: f64) -> f64 {
    lever * lever * s * s + c * c
}

/// `|⟨M(0)|M(α)⟩|² = (1 − α/π)² sin²(Mπ) + cos²(Mπ)`.
pub fn single_plate_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let (s, c) = (charge.value() * PI).sin_cos();
    parabola(1.0 - alpha.radians() / PI, s, c)
}

/// Two-section plate: `(1 − 2α/π)²` on `[0, π)` and `(3 − 2α/π)²` on
/// `[π, 2π)`, weighted by `sin²(Mπ/2)`, plus `cos²(Mπ/2)`.
pub fn two_section_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (s, c) = (charge.value() * PI / 2.0).sin_cos();
    let k = if a < PI { 1.0 } else { 3.0 };
    parabola(k - 2.0 * a / PI, s, c)
}

/// Four-section plate: `(2t − 1 − 4α/π)²` on the t-th quarter turn, weighted
/// by `sin²(Mπ/4)`, plus `cos²(Mπ/4)`.
pub fn four_section_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (s, c) = (charge.value() * PI / 4.0).sin_cos();
    let k = if a < FRAC_PI_2 {
        1.0
    } else if a < PI {
        3.0
    } else if a < 1.5 * PI {
        5.0
    } else {
        7.0
    };
    parabola(k - 4.0 * a / PI, s, c)
}

/// `|⟨M(0)|Û(π)|M(α)⟩|²`.
pub fn half_turn_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (_, sin2) = trig(charge);
    let quad = if a < PI {
        a * a - PI_SQ
    } else {
        (a - PI) * (a - 3.0 * PI)
    };
    (quad * sin2 + PI_SQ) / PI_SQ
}

/// `|⟨M(0)|Û(π/2)|M(α)⟩|²`.
pub fn quarter_turn_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (_, sin2) = trig(charge);
    let quad = if a < 1.5 * PI {
        (a + FRAC_PI_2) * (a - 1.5 * PI)
    } else {
        (a - 1.5 * PI) * (a - 3.5 * PI)
    };
    (quad * sin2 + PI_SQ) / PI_SQ
}

/// `|⟨M(0)|Û(3π/2)|M(α)⟩|²`.
pub fn three_quarter_turn_probability(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (_, sin2) = trig(charge);
    let quad = if a < FRAC_PI_2 {
        (a + 1.5 * PI) * (a - FRAC_PI_2)
    } else {
        (a - FRAC_PI_2) * (a - 2.5 * PI)
    };
    (quad * sin2 + PI_SQ) / PI_SQ
}

/// `Re[⟨M(0)|M(α)⟩ ⟨M(0)|Û(π)|M(α)⟩*]`.
pub fn half_turn_base_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let m = charge.value();
    let (c1, c3) = ((m * PI).cos(), (3.0 * m * PI).cos());
    let v = if a < PI {
        a * (PI - a) * c3 + (4.0 * PI_SQ - PI * a + a * a) * c1
    } else {
        (TAU - a) * (a - PI) * c3 + (6.0 * PI_SQ - 3.0 * PI * a + a * a) * c1
    };
    v / FOUR_PI_SQ
}

/// `Re[⟨M(0)|M(α)⟩ ⟨M(0)|Û(π/2)|M(α)⟩*]`.
pub fn quarter_turn_base_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (m, sin2) = trig(charge);
    let v = if a < 1.5 * PI {
        (2.0 * (2.0 * a * a - 3.0 * PI * a - PI_SQ) * sin2 + FOUR_PI_SQ) * (m * PI / 2.0).cos()
            + PI_SQ * (2.0 * m * PI).sin() * (m * PI / 2.0).sin()
    } else {
        (2.0 * a * a - 7.0 * PI * a + 7.0 * PI_SQ) * (1.5 * m * PI).cos()
            + (3.5 * PI * a - a * a - 3.0 * PI_SQ) * (3.5 * m * PI).cos()
            + a * (3.5 * PI - a) * (m * PI / 2.0).cos()
    };
    v / FOUR_PI_SQ
}

/// `Re[⟨M(0)|M(α)⟩ ⟨M(0)|Û(3π/2)|M(α)⟩*]`.
///
/// The first-section bracket is `2(2α² − πα − 3π²)`: it is the general
/// base-product real part at β = 3π/2. A `+3π²` there disagrees with the
/// general form by `3 sin²(Mπ) cos(3Mπ/2)`.
pub fn three_quarter_turn_base_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (m, sin2) = trig(charge);
    let v = if a < FRAC_PI_2 {
        (2.0 * (2.0 * a * a - PI * a - 3.0 * PI_SQ) * sin2 + FOUR_PI_SQ) * (1.5 * m * PI).cos()
            + 3.0 * PI_SQ * (2.0 * m * PI).sin() * (1.5 * m * PI).sin()
    } else {
        (2.0 * a * a - 5.0 * PI * a + 5.0 * PI_SQ) * (m * PI / 2.0).cos()
            + (2.5 * PI * a - a * a - PI_SQ) * (2.5 * m * PI).cos()
            + a * (2.5 * PI - a) * (1.5 * m * PI).cos()
    };
    v / FOUR_PI_SQ
}

/// `Re[⟨M(0)|Û(π)|M(α)⟩ ⟨M(0)|Û(π/2)|M(α)⟩*]`.
pub fn half_and_quarter_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (m, sin2) = trig(charge);
    let edge = PI_SQ * (2.0 * m * PI).sin() * (m * PI / 2.0).sin();
    let v = if a < PI {
        (4.0 * sin2 * (a * a - FRAC_PI_2 * a - PI_SQ) + FOUR_PI_SQ) * (m * PI / 2.0).cos() + edge
    } else if a < 1.5 * PI {
        (2.0 * a * a + 4.0 * PI_SQ - 5.0 * PI * a) * (1.5 * m * PI).cos()
            + (a - PI) * (1.5 * PI - a) * (3.5 * m * PI).cos()
            + (3.0 * PI - a) * (a + FRAC_PI_2) * (m * PI / 2.0).cos()
    } else {
        (4.0 * sin2 * (a * a - 4.5 * PI * a + 4.0 * PI_SQ) + FOUR_PI_SQ) * (m * PI / 2.0).cos()
            + edge
    };
    v / FOUR_PI_SQ
}

/// `Re[⟨M(0)|Û(π)|M(α)⟩ ⟨M(0)|Û(3π/2)|M(α)⟩*]`.
pub fn half_and_three_quarter_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (m, sin2) = trig(charge);
    let edge = PI_SQ * (2.0 * m * PI).sin() * (m * PI / 2.0).sin();
    let v = if a < FRAC_PI_2 {
        (4.0 * sin2 * (a * a + FRAC_PI_2 * a - PI_SQ) + FOUR_PI_SQ) * (m * PI / 2.0).cos() + edge
    } else if a < PI {
        (2.0 * a * a + 2.0 * PI_SQ - 3.0 * PI * a) * (1.5 * m * PI).cos()
            + (PI - a) * (a - FRAC_PI_2) * (3.5 * m * PI).cos()
            + (a + PI) * (2.5 * PI - a) * (m * PI / 2.0).cos()
    } else {
        (4.0 * sin2 * (a * a - 3.5 * PI * a + 2.0 * PI_SQ) + FOUR_PI_SQ) * (m * PI / 2.0).cos()
            + edge
    };
    v / FOUR_PI_SQ
}

/// `Re[⟨M(0)|Û(π/2)|M(α)⟩ ⟨M(0)|Û(3π/2)|M(α)⟩*]`.
pub fn quarter_and_three_quarter_cross(charge: FractionalCharge, alpha: Angle) -> f64 {
    let a = alpha.radians();
    let (m, sin2) = trig(charge);
    let edge = 2.0 * PI_SQ * (2.0 * m * PI).sin() * (m * PI).sin();
    let v = if a < FRAC_PI_2 {
        (4.0 * sin2 * (a * a - 1.25 * PI_SQ) + FOUR_PI_SQ) * (m * PI).cos() + edge
    } else if a < 1.5 * PI {
        (a * a - 2.0 * PI * a + 4.75 * PI_SQ) * (m * PI).cos()
            + (1.5 * PI - a) * (a - FRAC_PI_2) * (3.0 * m * PI).cos()
    } else {
        (4.0 * sin2 * (a * a - 4.0 * PI * a + 2.75 * PI_SQ) + FOUR_PI_SQ) * (m * PI).cos() + edge
    };
    v / FOUR_PI_SQ
}

fn checked_denominator(n: u32, charge: FractionalCharge, denom: f64) -> Result<f64> {
    if denom.abs() < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateSuperposition {
            n,
            charge: charge.value(),
            norm: f64::from(n) * denom,
        });
    }
    Ok(denom * denom)
}

/// Terms of the two-section modulus square: the two self terms and one
/// cross term.
struct TwoSectionTerms {
    base: f64,
    half: f64,
    base_half: f64,
}

fn assemble_two(charge: FractionalCharge, t: TwoSectionTerms) -> Result<f64> {
    let d = checked_denominator(2, charge, 1.0 + (PI * charge.value()).cos())?;
    Ok((t.base + t.half + 2.0 * t.base_half) / d)
}

/// `|⟨M2(0)|M2(α)⟩|²` expanded as a modulus square and evaluated with the
/// general rotated-overlap formulas.
pub fn two_section_from_rotations(charge: FractionalCharge, alpha: Angle) -> Result<f64> {
    let half = Angle::new(PI);
    assemble_two(
        charge,
        TwoSectionTerms {
            base: overlap_amplitude_base(charge, alpha).norm_sqr(),
            half: rotated_probability(charge, alpha, half),
            base_half: base_product_real(charge, alpha, half),
        },
    )
}

/// The same expansion evaluated with the written-out half-turn fixtures.
pub fn two_section_from_specialisations(charge: FractionalCharge, alpha: Angle) -> Result<f64> {
    assemble_two(
        charge,
        TwoSectionTerms {
            base: single_plate_probability(charge, alpha),
            half: half_turn_probability(charge, alpha),
            base_half: half_turn_base_cross(charge, alpha),
        },
    )
}

/// Four self terms followed by the six cross terms, ordered
/// (0,π), (0,π/2), (0,3π/2), (π,π/2), (π,3π/2), (π/2,3π/2).
struct FourSectionTerms {
    selves: [f64; 4],
    crosses: [f64; 6],
}

fn assemble_four(charge: FractionalCharge, t: FourSectionTerms) -> Result<f64> {
    let m = charge.value();
    let denom = 1.0 + (PI * m).cos() + 2.0 * (FRAC_PI_2 * m).cos().powi(3);
    let d = checked_denominator(4, charge, denom)?;
    let total: f64 = t.selves.iter().sum::<f64>() + 2.0 * t.crosses.iter().sum::<f64>();
    Ok(total / d)
}

/// `|⟨M4(0)|M4(α)⟩|²` expanded as a modulus square and evaluated with the
/// general rotated-overlap formulas.
pub fn four_section_from_rotations(charge: FractionalCharge, alpha: Angle) -> Result<f64> {
    let (quarter, half, three) = (Angle::new(FRAC_PI_2), Angle::new(PI), Angle::new(1.5 * PI));
    assemble_four(
        charge,
        FourSectionTerms {
            selves: [
                overlap_amplitude_base(charge, alpha).norm_sqr(),
                rotated_probability(charge, alpha, half),
                rotated_probability(charge, alpha, quarter),
                rotated_probability(charge, alpha, three),
            ],
            crosses: [
                base_product_real(charge, alpha, half),
                base_product_real(charge, alpha, quarter),
                base_product_real(charge, alpha, three),
                product_real(charge, alpha, half, quarter),
                product_real(charge, alpha, half, three),
                product_real(charge, alpha, quarter, three),
            ],
        },
    )
}

/// The same expansion evaluated with the written-out quarter, half and
/// three-quarter turn fixtures.
pub fn four_section_from_specialisations(charge: FractionalCharge, alpha: Angle) -> Result<f64> {
    assemble_four(
        charge,
        FourSectionTerms {
            selves: [
                single_plate_probability(charge, alpha),
                half_turn_probability(charge, alpha),
                quarter_turn_probability(charge, alpha),
                three_quarter_turn_probability(charge, alpha),
            ],
            crosses: [
                half_turn_base_cross(charge, alpha),
                quarter_turn_base_cross(charge, alpha),
                three_quarter_turn_base_cross(charge, alpha),
                half_and_quarter_cross(charge, alpha),
                half_and_three_quarter_cross(charge, alpha),
                quarter_and_three_quarter_cross(charge, alpha),
            ],
        },
    )
}

/// A written-out specialisation and the general formula it must agree with.
pub struct Specialisation {
    pub name: &'static str,
    pub fixture: fn(FractionalCharge, Angle) -> f64,
    pub general: fn(FractionalCharge, Angle) -> f64,
    /// Section boundaries of the fixture inside `(0, 2π)`.
    pub boundaries: &'static [f64],
}

fn gen_half_prob(q: FractionalCharge, a: Angle) -> f64 {
    rotated_probability(q, a, Angle::new(PI))
}
fn gen_quarter_prob(q: FractionalCharge, a: Angle) -> f64 {
    rotated_probability(q, a, Angle::new(FRAC_PI_2))
}
fn gen_three_prob(q: FractionalCharge, a: Angle) -> f64 {
    rotated_probability(q, a, Angle::new(1.5 * PI))
}
fn gen_half_cross(q: FractionalCharge, a: Angle) -> f64 {
    base_product_real(q, a, Angle::new(PI))
}
fn gen_quarter_cross(q: FractionalCharge, a: Angle) -> f64 {
    base_product_real(q, a, Angle::new(FRAC_PI_2))
}
fn gen_three_cross(q: FractionalCharge, a: Angle) -> f64 {
    base_product_real(q, a, Angle::new(1.5 * PI))
}
fn gen_half_quarter(q: FractionalCharge, a: Angle) -> f64 {
    product_real(q, a, Angle::new(PI), Angle::new(FRAC_PI_2))
}
fn gen_half_three(q: FractionalCharge, a: Angle) -> f64 {
    product_real(q, a, Angle::new(PI), Angle::new(1.5 * PI))
}
fn gen_quarter_three(q: FractionalCharge, a: Angle) -> f64 {
    product_real(q, a, Angle::new(FRAC_PI_2), Angle::new(1.5 * PI))
}

/// Every rotation specialisation paired with its general formula.
pub fn specialisations() -> [Specialisation; 9] {
    [
        Specialisation {
            name: "half_turn_probability",
            fixture: half_turn_probability,
            general: gen_half_prob,
            boundaries: &[PI],
        },
        Specialisation {
            name: "half_turn_base_cross",
            fixture: half_turn_base_cross,
            general: gen_half_cross,
            boundaries: &[PI],
        },
        Specialisation {
            name: "quarter_turn_probability",
            fixture: quarter_turn_probability,
            general: gen_quarter_prob,
            boundaries: &[1.5 * PI],
        },
        Specialisation {
            name: "three_quarter_turn_probability",
            fixture: three_quarter_turn_probability,
            general: gen_three_prob,
            boundaries: &[FRAC_PI_2],
        },
        Specialisation {
            name: "quarter_turn_base_cross",
            fixture: quarter_turn_base_cross,
            general: gen_quarter_cross,
            boundaries: &[1.5 * PI],
        },
        Specialisation {
            name: "three_quarter_turn_base_cross",
            fixture: three_quarter_turn_base_cross,
            general: gen_three_cross,
            boundaries: &[FRAC_PI_2],
        },
        Specialisation {
            name: "half_and_quarter_cross",
            fixture: half_and_quarter_cross,
            general: gen_half_quarter,
            boundaries: &[PI, 1.5 * PI],
        },
        Specialisation {
            name: "half_and_three_quarter_cross",
            fixture: half_and_three_quarter_cross,
            general: gen_half_three,
            boundaries: &[FRAC_PI_2, PI],
        },
        Specialisation {
            name: "quarter_and_three_quarter_cross",
            fixture: quarter_and_three_quarter_cross,
            general: gen_quarter_three,
            boundaries: &[FRAC_PI_2, 1.5 * PI],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::overlap_probability_n;

    const CHARGES: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 2.5];

    fn grid() -> impl Iterator<Item = Angle> {
        (0..64).map(|j| Angle::new(TAU * f64::from(j) / 64.0))
    }

    #[test]
    fn every_specialisation_matches_general_form() {
        for sp in specialisations() {
            for m in CHARGES.iter().chain(&[0.3, 1.25, 3.7]) {
                let q = FractionalCharge::new(*m);
                for a in grid() {
                    let d = ((sp.fixture)(q, a) - (sp.general)(q, a)).abs();
                    assert!(d < 1e-12, "{} M={m} α={a}: {d:e}", sp.name);
                }
            }
        }
    }

    #[test]
    fn flipped_constant_sign_breaks_agreement() {
        // the +3π² variant of the first three-quarter-turn section
        let flipped = |q: FractionalCharge, a: f64| {
            let (m, sin2) = trig(q);
            ((2.0 * (2.0 * a * a - PI * a + 3.0 * PI_SQ) * sin2 + FOUR_PI_SQ)
                * (1.5 * m * PI).cos()
                + 3.0 * PI_SQ * (2.0 * m * PI).sin() * (1.5 * m * PI).sin())
                / FOUR_PI_SQ
        };
        let q = FractionalCharge::new(0.5);
        let a = Angle::new(0.3);
        let d = flipped(q, a.radians()) - gen_three_cross(q, a);
        let (m, sin2) = trig(q);
        assert!((d - 3.0 * sin2 * (1.5 * m * PI).cos()).abs() < 1e-12);
        assert!(d.abs() > 1.0);
    }

    #[test]
    fn n_one_two_four_forms_match_section_parabola() {
        for m in [0.3, 0.5, 1.0, 1.25, 2.0, 2.5, 3.7] {
            let q = FractionalCharge::new(m);
            for a in grid() {
                let p = |n| overlap_probability_n(n, q, a).unwrap().probability;
                assert!((single_plate_probability(q, a) - p(1)).abs() < 1e-12);
                assert!((two_section_probability(q, a) - p(2)).abs() < 1e-12);
                assert!((four_section_probability(q, a) - p(4)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn assemblies_match_written_probabilities() {
        for m in [0.3, 0.5, 1.25, 1.5, 2.5, 3.7] {
            let q = FractionalCharge::new(m);
            for a in grid() {
                let two = two_section_probability(q, a);
                assert!((two_section_from_rotations(q, a).unwrap() - two).abs() < 1e-12);
                assert!((two_section_from_specialisations(q, a).unwrap() - two).abs() < 1e-12);
                let four = four_section_probability(q, a);
                assert!((four_section_from_rotations(q, a).unwrap() - four).abs() < 1e-12);
                assert!((four_section_from_specialisations(q, a).unwrap() - four).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn assemblies_refuse_vanishing_norm() {
        let q = FractionalCharge::new(1.0);
        assert!(two_section_from_rotations(q, Angle::new(1.0)).is_err());
        let q = FractionalCharge::new(2.0);
        assert!(four_section_from_specialisations(q, Angle::new(1.0)).is_err());
    }
}
