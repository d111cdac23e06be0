//! Invariants checked over random inputs.

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use sppn::bell::{
    chsh_parameter, coincidence_probability, correlation_e, fringe_scan, sample_fringe,
    AnalyzerSettings,
};
use sppn::closed_form::{overlap_amplitude_rotated, overlap_probability_n};
use sppn::oracle::{inner_product, overlap_probability_oracle};
use sppn::phase::{canonical_add, fractional_vortex_field, rotate_field};
use sppn::superposition::{build_spp_profile, build_superposed, unnormalized_norm, Construction};
use sppn::{Angle, FractionalCharge};

fn angle() -> impl Strategy<Value = Angle> {
    (0.0..TAU).prop_map(Angle::new)
}

fn charge() -> impl Strategy<Value = FractionalCharge> {
    (-6.0..6.0_f64).prop_map(FractionalCharge::new)
}

proptest! {
    #[test]
    fn angles_are_canonical(x in -1e3..1e3_f64, y in -1e3..1e3_f64) {
        for v in [Angle::new(x), canonical_add(Angle::new(x), Angle::new(y))] {
            prop_assert!((0.0..TAU).contains(&v.radians()));
        }
    }

    #[test]
    fn charge_split_reassembles(m in -50.0..50.0_f64) {
        let c = FractionalCharge::new(m);
        prop_assert!((0.0..1.0).contains(&c.fractional_part()));
        prop_assert!((c.integer_part() as f64 + c.fractional_part() - m).abs() < 1e-12);
    }

    #[test]
    fn inner_product_is_hermitian(m1 in charge(), a1 in angle(), m2 in charge(), a2 in angle()) {
        let f = fractional_vortex_field(m1, a1);
        let g = fractional_vortex_field(m2, a2);
        prop_assert!((inner_product(&f, &g) - inner_product(&g, &f).conj()).norm() < 1e-13);
    }

    #[test]
    fn rotation_preserves_inner_products(
        m1 in charge(), a1 in angle(), m2 in charge(), a2 in angle(), b in angle()
    ) {
        let f = fractional_vortex_field(m1, a1);
        let g = fractional_vortex_field(m2, a2);
        let before = inner_product(&f, &g);
        let after = inner_product(&rotate_field(&f, b), &rotate_field(&g, b));
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn cauchy_schwarz(m1 in charge(), a1 in angle(), m2 in charge(), a2 in angle(), b in angle()) {
        let f = fractional_vortex_field(m1, a1);
        let g = rotate_field(&fractional_vortex_field(m2, a2), b);
        prop_assert!(inner_product(&f, &g).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn vortex_fields_are_unit(m in charge(), a in angle()) {
        let f = fractional_vortex_field(m, a);
        prop_assert!((inner_product(&f, &f).re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rotated_overlap_matches_oracle(m in charge(), a in angle(), b in angle()) {
        let r = overlap_amplitude_rotated(m, a, b);
        let oracle = inner_product(
            &fractional_vortex_field(m, Angle::ZERO),
            &rotate_field(&fractional_vortex_field(m, a), b),
        );
        prop_assert!((r.probability - oracle.norm_sqr()).abs() < 1e-11);
        if let Some(amp) = r.amplitude {
            prop_assert!((amp - oracle).norm() < 1e-11);
        }
    }

    #[test]
    fn n_section_closed_form_matches_oracle(n in 1u32..=8, m in 0.05..8.0_f64, a in angle()) {
        let m = FractionalCharge::new(m);
        let closed = overlap_probability_n(n, m, a).unwrap().probability;
        prop_assert!((0.0..=1.0 + 1e-12).contains(&closed));
        let sector = overlap_probability_oracle(n, m, a, Construction::SectorProfile).unwrap();
        prop_assert!((closed - sector).abs() < 1e-10);
        if unnormalized_norm(n, m).unwrap() > 1e-6 {
            let sum = overlap_probability_oracle(n, m, a, Construction::EqOneSuperposition).unwrap();
            prop_assert!((closed - sum).abs() < 1e-9);
        }
    }

    #[test]
    fn built_states_are_unit(n in 1u32..=6, m in 0.05..6.0_f64, a in angle()) {
        let m = FractionalCharge::new(m);
        let profile = build_spp_profile(n, m, a).unwrap();
        prop_assert!((inner_product(&profile.field, &profile.field).re - 1.0).abs() < 1e-12);
        if let Ok(s) = build_superposed(n, m, a) {
            prop_assert!((inner_product(&s.field, &s.field).re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn constructions_agree_on_overlaps(n in 1u32..=6, m in 0.05..6.0_f64, a in angle()) {
        let m = FractionalCharge::new(m);
        prop_assume!(unnormalized_norm(n, m).unwrap() > 1e-6);
        let sum = build_superposed(n, m, Angle::ZERO).unwrap();
        let sum_a = build_superposed(n, m, a).unwrap();
        let ramp = build_spp_profile(n, m, Angle::ZERO).unwrap();
        let ramp_a = build_spp_profile(n, m, a).unwrap();
        let p = inner_product(&sum.field, &sum_a.field).norm_sqr();
        let q = inner_product(&ramp.field, &ramp_a.field).norm_sqr();
        prop_assert!((p - q).abs() < 1e-9);
    }

    #[test]
    fn coincidence_is_symmetric(n in 1u32..=6, m in 0.05..6.0_f64, x in angle(), y in angle()) {
        let m = FractionalCharge::new(m);
        let pxy = coincidence_probability(n, m, x, y).unwrap();
        let pyx = coincidence_probability(n, m, y, x).unwrap();
        prop_assert!((pxy - pyx).abs() < 1e-12);
    }

    #[test]
    fn correlations_are_bounded(n in 1u32..=6, m in 0.05..6.0_f64, x in angle(), y in angle()) {
        if let Ok(e) = correlation_e(n, FractionalCharge::new(m), x, y, 1) {
            prop_assert!(e.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn orthogonal_partner_choice_is_irrelevant(
        n in prop::sample::select(vec![2u32, 4]),
        m in 0.05..6.0_f64,
        x in angle(),
        y in angle(),
    ) {
        let m = FractionalCharge::new(m);
        let base = correlation_e(n, m, x, y, 1);
        for t in 2..=n {
            match (&base, correlation_e(n, m, x, y, t)) {
                (Ok(e1), Ok(et)) => prop_assert!((e1 - et).abs() < 1e-10),
                (Err(_), Err(_)) => {}
                (b, other) => prop_assert!(false, "t={t}: {b:?} vs {other:?}"),
            }
        }
    }

    #[test]
    fn chsh_is_periodic_in_sector_width(
        n in 1u32..=6,
        m in 0.05..6.0_f64,
        angles in prop::array::uniform4(angle()),
        shifts in prop::array::uniform4(-3i32..=3),
    ) {
        let m = FractionalCharge::new(m);
        let settings = AnalyzerSettings::new(n, angles, 1).unwrap();
        let width = TAU / f64::from(n);
        let mut moved = angles;
        for (a, k) in moved.iter_mut().zip(shifts) {
            *a = Angle::new(a.radians() + f64::from(k) * width);
        }
        let shifted = AnalyzerSettings::new(n, moved, 1).unwrap();
        if let (Ok(r1), Ok(r2)) = (chsh_parameter(n, m, &settings), chsh_parameter(n, m, &shifted)) {
            prop_assert!((r1.s - r2.s).abs() < 1e-9);
        }
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>(), shots in 0u64..10_000) {
        let m = FractionalCharge::new(0.5);
        let a = sample_fringe(2, m, 16, shots, seed).unwrap();
        let b = sample_fringe(2, m, 16, shots, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampled_rates_concentrate(seed in any::<u64>(), m in 0.1..3.0_f64) {
        let shots = 200_000_u64;
        let charge = FractionalCharge::new(m);
        let sampled = sample_fringe(1, charge, 24, shots, seed).unwrap();
        let analytic = fringe_scan(1, charge, 24).unwrap();
        // Bernstein bound at failure probability 1e-9 per row; unlike a
        // Gaussian multiple of σ it stays valid when p sits near 0 or 1.
        let log_term = (2.0 / 1e-9_f64).ln();
        let n = shots as f64;
        for (row, exact) in sampled.rows.iter().zip(&analytic.rows) {
            let p = exact.probability;
            // p can exceed 1 by an ulp at α = 0
            let variance = (p * (1.0 - p)).max(0.0);
            let bound = (2.0 * variance * log_term / n).sqrt() + 2.0 * log_term / (3.0 * n);
            let rate = row.counts.unwrap() as f64 / n;
            prop_assert_eq!(rate, row.probability);
            prop_assert!((rate - p).abs() <= bound, "α={} p={p} rate={rate}", row.alpha.radians());
        }
    }
}

#[test]
fn half_turn_overlap_vanishes_only_at_half_charge() {
    for m in [0.1, 0.3, 0.7, 1.5] {
        let p = overlap_probability_n(1, FractionalCharge::new(m), Angle::new(PI)).unwrap();
        let vanishes = p.probability < 1e-12;
        assert_eq!(vanishes, (m - 0.5_f64).rem_euclid(1.0) == 0.0, "M={m}");
    }
}
