//! Coincidence fringes, CHSH correlations and a shot-noise fringe sampler
//! for photon pairs analysed by two rotated n-section phase plates.

use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::closed_form::overlap_probability_n;
use crate::oracle::overlap_probability_oracle;
use crate::phase::{Angle, FractionalCharge};
use crate::superposition::Construction;
use crate::{Error, Result};

/// Tolerance on `(M − n/2) mod n = 0` for the orthogonality class.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// Name of the generator behind [`sample_fringe`], for output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha), seeded from u64, stream = row index";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyzerSettings {
    pub n: u32,
    pub alpha_s: Angle,
    pub alpha_s_prime: Angle,
    pub alpha_i: Angle,
    pub alpha_i_prime: Angle,
    /// Which of the n orthogonal partner angles `α + π(2t − 1)/n` is used.
    pub t_perp: u32,
}

impl AnalyzerSettings {
    pub fn new(
        n: u32,
        [alpha_s, alpha_s_prime, alpha_i, alpha_i_prime]: [Angle; 4],
        t_perp: u32,
    ) -> Result<Self> {
        check_sections(n)?;
        check_t_perp(n, t_perp)?;
        Ok(Self {
            n,
            alpha_s,
            alpha_s_prime,
            alpha_i,
            alpha_i_prime,
            t_perp,
        })
    }
}

fn check_sections(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroSections)
    } else {
        Ok(())
    }
}

fn check_t_perp(n: u32, t_perp: u32) -> Result<()> {
    if (1..=n).contains(&t_perp) {
        Ok(())
    } else {
        Err(Error::TPerpOutOfRange { t_perp, n })
    }
}

/// `(−π/4n, π/4n, −π/2n, 0)` with `t_perp = 1`.
pub fn standard_settings(n: u32) -> Result<AnalyzerSettings> {
    check_sections(n)?;
    let nf = f64::from(n);
    AnalyzerSettings::new(
        n,
        [
            Angle::new(-PI / (4.0 * nf)),
            Angle::new(PI / (4.0 * nf)),
            Angle::new(-PI / (2.0 * nf)),
            Angle::ZERO,
        ],
        1,
    )
}

/// Coincidence probability of the pair, the overlap probability at the
/// wrapped analyser difference `(α_s − α_i) mod 2π`.
pub fn coincidence_probability(
    n: u32,
    charge: FractionalCharge,
    alpha_s: Angle,
    alpha_i: Angle,
) -> Result<f64> {
    Ok(overlap_probability_n(n, charge, alpha_s - alpha_i)?.probability)
}

/// Whether `(M − n/2) mod n = 0`, i.e. the fringe minima reach zero.
pub fn in_orthogonal_class(n: u32, charge: FractionalCharge) -> bool {
    let nf = f64::from(n);
    let r = (charge.value() - 0.5 * nf).rem_euclid(nf);
    r < CLASS_TOLERANCE || nf - r < CLASS_TOLERANCE
}

/// The partner angle `α + π(2t − 1)/n`.
pub fn orthogonal_partner(n: u32, alpha: Angle, t_perp: u32) -> Angle {
    alpha + Angle::new(PI * f64::from(2 * t_perp - 1) / f64::from(n))
}

/// Correlation
/// `[P(s, i) + P(s⊥, i⊥) − P(s, i⊥) − P(s⊥, i)] / [sum of the four]`.
pub fn correlation_e(
    n: u32,
    charge: FractionalCharge,
    alpha_s: Angle,
    alpha_i: Angle,
    t_perp: u32,
) -> Result<f64> {
    check_sections(n)?;
    check_t_perp(n, t_perp)?;
    let s_perp = orthogonal_partner(n, alpha_s, t_perp);
    let i_perp = orthogonal_partner(n, alpha_i, t_perp);
    let p = |a, b| coincidence_probability(n, charge, a, b);
    let same = p(alpha_s, alpha_i)? + p(s_perp, i_perp)?;
    let crossed = p(alpha_s, i_perp)? + p(s_perp, alpha_i)?;
    let total = same + crossed;
    debug_assert!(total > 0.0);
    Ok((same - crossed) / total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellResult {
    /// `E(s, i), E(s′, i), E(s, i′), E(s′, i′)`.
    pub correlations: [f64; 4],
    /// `E₁ − E₂ + E₃ + E₄`.
    pub s: f64,
    /// False when the fringe minima do not reach zero; S is still computed.
    pub in_orthogonal_class: bool,
}

pub fn chsh_parameter(
    n: u32,
    charge: FractionalCharge,
    settings: &AnalyzerSettings,
) -> Result<BellResult> {
    if settings.n != n {
        return Err(Error::InvalidField(format!(
            "settings built for n = {} used with n = {n}",
            settings.n
        )));
    }
    let t = settings.t_perp;
    let e = |a, b| correlation_e(n, charge, a, b, t);
    let correlations = [
        e(settings.alpha_s, settings.alpha_i)?,
        e(settings.alpha_s_prime, settings.alpha_i)?,
        e(settings.alpha_s, settings.alpha_i_prime)?,
        e(settings.alpha_s_prime, settings.alpha_i_prime)?,
    ];
    let [e1, e2, e3, e4] = correlations;
    Ok(BellResult {
        correlations,
        s: e1 - e2 + e3 + e4,
        in_orthogonal_class: in_orthogonal_class(n, charge),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeRow {
    pub alpha: Angle,
    /// Analytic probability, or `counts / shots` (zero without shots) for
    /// sampled rows.
    pub probability: f64,
    pub counts: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeTable {
    pub rows: Vec<FringeRow>,
}

/// The half-open grid `α_j = 2πj/points`, `j = 0…points−1`.
pub fn scan_grid(points: usize) -> Result<Vec<Angle>> {
    if points < 2 {
        return Err(Error::TooFewPoints(points));
    }
    Ok((0..points)
        .map(|j| Angle::new(TAU * j as f64 / points as f64))
        .collect())
}

/// Overlap probability on [`scan_grid`] from the closed form.
pub fn fringe_scan(n: u32, charge: FractionalCharge, points: usize) -> Result<FringeTable> {
    let rows = scan_grid(points)?
        .into_iter()
        .map(|alpha| {
            Ok(FringeRow {
                alpha,
                probability: overlap_probability_n(n, charge, alpha)?.probability,
                counts: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FringeTable { rows })
}

/// Overlap probability on [`scan_grid`] by exact integration of the chosen
/// state construction.
pub fn fringe_scan_oracle(
    n: u32,
    charge: FractionalCharge,
    points: usize,
    construction: Construction,
) -> Result<FringeTable> {
    let rows = scan_grid(points)?
        .into_iter()
        .map(|alpha| {
            Ok(FringeRow {
                alpha,
                probability: overlap_probability_oracle(n, charge, alpha, construction)?,
                counts: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FringeTable { rows })
}

fn binomial_draw(rng: &mut ChaCha20Rng, shots: u64, p: f64) -> u64 {
    if shots == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return shots;
    }
    Binomial::new(shots, p)
        .expect("p lies strictly inside (0, 1)")
        .sample(rng)
}

/// Binomial coincidence counts on [`scan_grid`].
///
/// Row j draws from its own ChaCha20 stream j under `seed`, so the table is
/// independent of evaluation order. The probability column holds
/// `counts / shots`, or 0 when `shots = 0`.
pub fn sample_fringe(
    n: u32,
    charge: FractionalCharge,
    points: usize,
    shots: u64,
    seed: u64,
) -> Result<FringeTable> {
    let analytic = fringe_scan(n, charge, points)?;
    let rows = analytic
        .rows
        .into_iter()
        .enumerate()
        .map(|(j, row)| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            let counts = binomial_draw(&mut rng, shots, row.probability);
            let rate = if shots == 0 {
                0.0
            } else {
                counts as f64 / shots as f64
            };
            FringeRow {
                alpha: row.alpha,
                probability: rate,
                counts: Some(counts),
            }
        })
        .collect();
    Ok(FringeTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn q(m: f64) -> FractionalCharge {
        FractionalCharge::new(m)
    }

    #[test]
    fn wrapped_difference() {
        let p = coincidence_probability(1, q(0.5), Angle::new(0.1), Angle::new(TAU - 0.1)).unwrap();
        let want = (1.0 - 0.2 / PI).powi(2);
        assert!((p - want).abs() < 1e-12);
        let zero = coincidence_probability(1, q(0.5), Angle::new(PI), Angle::ZERO).unwrap();
        assert!(zero.abs() < 1e-15);
    }

    #[test]
    fn hand_correlations() {
        let e = correlation_e(1, q(0.5), Angle::new(-PI / 4.0), Angle::new(-FRAC_PI_2), 1).unwrap();
        assert!((e - 0.8).abs() < 1e-12);
        let e = correlation_e(1, q(0.5), Angle::new(PI / 4.0), Angle::new(-FRAC_PI_2), 1).unwrap();
        assert!((e + 0.8).abs() < 1e-12);
    }

    #[test]
    fn t_perp_is_checked() {
        let r = correlation_e(2, q(1.0), Angle::ZERO, Angle::ZERO, 3);
        assert_eq!(r, Err(Error::TPerpOutOfRange { t_perp: 3, n: 2 }));
        assert!(correlation_e(2, q(1.0), Angle::ZERO, Angle::ZERO, 0).is_err());
    }

    #[test]
    fn standard_angles_for_one_section() {
        let s = standard_settings(1).unwrap();
        let got = [s.alpha_s, s.alpha_s_prime, s.alpha_i, s.alpha_i_prime].map(Angle::radians);
        let want = [1.75 * PI, 0.25 * PI, 1.5 * PI, 0.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15);
        }
        assert_eq!(s.t_perp, 1);
    }

    #[test]
    fn chsh_reaches_sixteen_fifths() {
        for (n, m) in [(1, 0.5), (2, 1.0), (4, 2.0)] {
            let r = chsh_parameter(n, q(m), &standard_settings(n).unwrap()).unwrap();
            assert!((r.s - 3.2).abs() < 1e-12, "n={n}: {}", r.s);
            assert!(r.in_orthogonal_class);
        }
    }

    #[test]
    fn class_membership() {
        assert!(in_orthogonal_class(1, q(0.5)));
        assert!(in_orthogonal_class(1, q(-0.5)));
        assert!(in_orthogonal_class(3, q(4.5)));
        assert!(!in_orthogonal_class(2, q(0.7)));
        assert!(!in_orthogonal_class(4, q(4.0)));
        let r = chsh_parameter(2, q(0.7), &standard_settings(2).unwrap()).unwrap();
        assert!(!r.in_orthogonal_class);
        assert!(r.s.is_finite());
    }

    #[test]
    fn constant_fringe_for_whole_turns() {
        let t = fringe_scan(4, q(4.0), 37).unwrap();
        assert!(t.rows.iter().all(|r| (r.probability - 1.0).abs() < 1e-12));
    }

    #[test]
    fn scan_grid_is_half_open() {
        let g = scan_grid(5).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], Angle::ZERO);
        assert!((g[1].radians() - TAU / 5.0).abs() < 1e-15);
        assert_eq!(scan_grid(1), Err(Error::TooFewPoints(1)));
    }

    #[test]
    fn sampler_edge_cases() {
        let t = sample_fringe(1, q(0.5), 16, 0, 7).unwrap();
        assert!(t
            .rows
            .iter()
            .all(|r| r.counts == Some(0) && r.probability == 0.0));
        let t = sample_fringe(2, q(2.0), 16, 1000, 7).unwrap();
        assert!(t.rows.iter().all(|r| r.counts == Some(1000)));
    }

    #[test]
    fn sampler_is_reproducible() {
        let a = sample_fringe(1, q(0.5), 50, 10_000, 42).unwrap();
        let b = sample_fringe(1, q(0.5), 50, 10_000, 42).unwrap();
        let c = sample_fringe(1, q(0.5), 50, 10_000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
