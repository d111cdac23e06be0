use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The rotational superposition has (numerically) zero norm.
    #[error("degenerate superposition for n = {n}, M = {charge}: unnormalized norm {norm:e}")]
    DegenerateSuperposition { n: u32, charge: f64, norm: f64 },

    #[error("number of plate sections must be at least 1")]
    ZeroSections,

    #[error("orthogonal-pair index t = {t_perp} is outside 1..={n}")]
    TPerpOutOfRange { t_perp: u32, n: u32 },

    #[error("invalid mode range [{min}, {max}]")]
    InvalidModeRange { min: i64, max: i64 },

    #[error("a scan needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("invalid field: {0}")]
    InvalidField(String),
}
