use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

/// Values this close to 2π wrap to 0 and section boundaries are matched
/// with this tolerance.
pub const BOUNDARY_SNAP: f64 = 1e-12;

/// An azimuthal angle canonicalized into `[0, 2π)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Wraps `radians` into `[0, 2π)`. Anything within [`BOUNDARY_SNAP`] of
    /// 2π maps to 0. Non-finite input stays non-finite.
    pub fn new(radians: f64) -> Self {
        let r = radians.rem_euclid(TAU);
        if TAU - r < BOUNDARY_SNAP {
            Angle(0.0)
        } else {
            Angle(r)
        }
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Angle::new(degrees.to_radians())
    }

    /// The fraction `k/n` of a full turn.
    pub fn turn_fraction(k: u32, n: u32) -> Self {
        Angle::new(TAU * f64::from(k) / f64::from(n))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `α ⊕ β = (α + β) mod 2π`.
pub fn canonical_add(a: Angle, b: Angle) -> Angle {
    Angle::new(a.0 + b.0)
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        canonical_add(self, rhs)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::new(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

/// The plate step index `M`, split as `M = m + μ` with `m = ⌊M⌋` and
/// `μ ∈ [0, 1)`. Negative charges use the same floor split.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FractionalCharge {
    value: f64,
    integer_part: i64,
    fractional_part: f64,
}

impl FractionalCharge {
    pub fn new(value: f64) -> Self {
        let floor = value.floor();
        let mut fractional_part = value - floor;
        let mut integer_part = floor as i64;
        // value - floor can round up to exactly 1 for tiny negative inputs
        if fractional_part >= 1.0 {
            fractional_part = 0.0;
            integer_part += 1;
        }
        FractionalCharge {
            value,
            integer_part,
            fractional_part,
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    #[inline]
    pub fn integer_part(self) -> i64 {
        self.integer_part
    }

    #[inline]
    pub fn fractional_part(self) -> f64 {
        self.fractional_part
    }

    pub fn is_integer(self) -> bool {
        self.fractional_part == 0.0
    }
}

impl From<f64> for FractionalCharge {
    fn from(value: f64) -> Self {
        FractionalCharge::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wraps_large_input() {
        assert!((Angle::new(5.0 * PI / 2.0).radians() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn wrap_case_of_addition() {
        let a = Angle::new(1.5 * PI);
        assert!(((a + a).radians() - PI).abs() < 1e-15);
    }

    #[test]
    fn zero_is_identity() {
        for k in 0..100 {
            let a = Angle::new(0.0628 * f64::from(k));
            assert_eq!(canonical_add(a, Angle::ZERO), a);
        }
    }

    #[test]
    fn snaps_near_full_turn_to_zero() {
        assert_eq!(Angle::new(TAU - 1e-13).radians(), 0.0);
        assert_eq!(Angle::new(-1e-17).radians(), 0.0);
        assert!(Angle::new(TAU - 1e-11).radians() > 0.0);
    }

    #[test]
    fn negative_charge_split() {
        let q = FractionalCharge::new(-0.5);
        assert_eq!(q.integer_part(), -1);
        assert_eq!(q.fractional_part(), 0.5);
        let q = FractionalCharge::new(2.75);
        assert_eq!((q.integer_part(), q.fractional_part()), (2, 0.75));
        assert!(FractionalCharge::new(3.0).is_integer());
    }

    #[test]
    fn tiny_negative_charge_keeps_fraction_below_one() {
        let q = FractionalCharge::new(-1e-20);
        assert!(q.fractional_part() < 1.0);
        assert_eq!(q.integer_part(), 0);
    }
}
