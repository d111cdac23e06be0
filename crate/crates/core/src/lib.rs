//! Fractional orbital-angular-momentum states and n-section spiral phase
//! plate (SPPn) states.
//!
//! The crate is organised bottom-up:
//!
//! * [`phase`]: angles on the circle, the step index `M = m + μ`, the
//!   piecewise-exponential field representation, the fractional vortex field
//!   `⟨φ|M(α)⟩`, the rotation operator and integer-OAM mode coefficients.
//! * [`oracle`]: exact inner products of piecewise-exponential fields, used
//!   as an independent check on every closed form.
//! * [`closed_form`]: the piecewise analytic overlap amplitudes and
//!   probabilities, including the n-section parabola.
//! * [`special_cases`]: the literal specialisations of the general formulas
//!   to quarter, half and three-quarter turns and to n = 1, 2, 4.
//! * [`superposition`]: the rotational superposition `|Mn⟩` and the direct
//!   sector-profile construction, norms, symmetry audits and mode spectra.
//! * [`bell`]: coincidence fringes, the CHSH correlation and parameter, and a
//!   seeded shot-noise sampler.
//! * [`cli`]: the `sppn` command-line front end.

pub mod bell;
pub mod cli;
pub mod closed_form;
mod error;
pub mod oracle;
pub mod phase;
pub mod special_cases;
pub mod superposition;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use phase::{Angle, FractionalCharge, PiecewiseExpField, Segment};
