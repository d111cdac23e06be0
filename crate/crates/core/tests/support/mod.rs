//! Test-side oracle: fields evaluated straight from their definitions and
//! integrated by Gauss–Legendre quadrature between known discontinuities.
//! Shares no code with the crate's field representation.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

pub use num_complex::Complex64 as C;

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    (0..order)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=order {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `(1/2π) ∫₀^{2π} f(φ) dφ` for `f` smooth between the given break points.
pub fn circle_mean<F: Fn(f64) -> C>(f: F, breaks: &[f64]) -> C {
    let rule = gauss_legendre(24);
    let mut cuts: Vec<f64> = breaks
        .iter()
        .map(|b| b.rem_euclid(TAU))
        .chain([0.0, TAU])
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| (*b - *a).abs() < 1e-14);
    let mut total = C::new(0.0, 0.0);
    for w in cuts.windows(2) {
        let pieces = 8;
        let h = (w[1] - w[0]) / pieces as f64;
        for p in 0..pieces {
            let a = w[0] + h * p as f64;
            let (mid, half) = (a + 0.5 * h, 0.5 * h);
            for &(x, wt) in &rule {
                total += f(mid + half * x) * (wt * half);
            }
        }
    }
    total / TAU
}

fn split(m: f64) -> (f64, f64) {
    let int = m.floor();
    (int, m - int)
}

/// `⟨φ|M(α)⟩ = e^{imφ} e^{iμ[φ + 2π f_α(φ) − α]}` with `f_α = 1` on `[0, α)`.
pub fn vortex(m: f64, alpha: f64, phi: f64) -> C {
    let (int, mu) = split(m);
    let phi = phi.rem_euclid(TAU);
    let f = if phi < alpha { 1.0 } else { 0.0 };
    C::cis(int * phi) * C::cis(mu * (phi + TAU * f - alpha))
}

/// The rotated vortex `φ ↦ ⟨φ ⊖ β|M(α)⟩`.
pub fn rotated_vortex(m: f64, alpha: f64, beta: f64, phi: f64) -> C {
    vortex(m, alpha, (phi - beta).rem_euclid(TAU))
}

/// `⟨M(0)|Û(β)|M(α)⟩` by quadrature.
pub fn rotated_overlap(m: f64, alpha: f64, beta: f64) -> C {
    circle_mean(
        |phi| vortex(m, 0.0, phi).conj() * rotated_vortex(m, alpha, beta, phi),
        &[alpha, beta, alpha + beta],
    )
}

/// The unnormalised sum `Σ_k Û(2πk/n)|M(α)⟩` at φ.
pub fn rotational_sum(n: u32, m: f64, alpha: f64, phi: f64) -> C {
    (0..n)
        .map(|k| rotated_vortex(m, alpha, TAU * f64::from(k) / f64::from(n), phi))
        .sum()
}

/// The sector ramp `e^{iM((φ − α) mod 2π/n)}`.
pub fn sector_ramp(n: u32, m: f64, alpha: f64, phi: f64) -> C {
    let width = TAU / f64::from(n);
    C::cis(m * (phi - alpha).rem_euclid(width))
}

/// Break points of an n-sector state dislocated at α.
pub fn sector_breaks(n: u32, alpha: f64) -> Vec<f64> {
    (0..n)
        .map(|k| alpha + TAU * f64::from(k) / f64::from(n))
        .collect()
}

/// `|⟨s(0)|s(α)⟩|² / (⟨s(0)|s(0)⟩⟨s(α)|s(α)⟩)` for a state family `s`.
pub fn normalised_overlap<F: Fn(f64, f64) -> C>(state: F, n: u32, alpha: f64) -> f64 {
    let mut breaks = sector_breaks(n, 0.0);
    breaks.extend(sector_breaks(n, alpha));
    let cross = circle_mean(|p| state(0.0, p).conj() * state(alpha, p), &breaks);
    let a = circle_mean(|p| state(0.0, p).norm_sqr().into(), &breaks).re;
    let b = circle_mean(|p| state(alpha, p).norm_sqr().into(), &breaks).re;
    cross.norm_sqr() / (a * b)
}

/// `⟨m′|ψ⟩` by quadrature.
pub fn mode_weight<F: Fn(f64) -> C>(psi: F, m_prime: i64, breaks: &[f64]) -> C {
    circle_mean(|p| C::cis(-(m_prime as f64) * p) * psi(p), breaks)
}
