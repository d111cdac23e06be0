//! Angle arithmetic, the fractional vortex state and the rotation operator.

mod angle;
mod field;
mod vortex;

pub use angle::{canonical_add, Angle, FractionalCharge, BOUNDARY_SNAP};
pub use field::{PiecewiseExpField, Segment};
pub use vortex::{fractional_vortex_field, mode_coefficient, rotate_field};
