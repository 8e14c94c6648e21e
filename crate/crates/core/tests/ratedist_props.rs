mod common;

use common::{arb_state, squeezed_thermal};
use gauss_rd::{
    bosonic_entropy, brute_force_rate, clipping_distortion, coherent_info, pure_state_rate, rate_distortion, rd_curve,
    summarize_source, thermal_omega, CovMat64, EntropyBase, GridSpec, NoiseParams64,
};
use proptest::prelude::*;

const BITS: EntropyBase = EntropyBase::Bits;

fn thermal(n_s: f64) -> CovMat64 {
    CovMat64::thermal(n_s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn curves_are_nonincreasing_and_start_at_source_entropy(g in arb_state(), top in 0.5..4.0f64) {
        let grid: Vec<f64> = (0..=60).map(|i| top * i as f64 / 60.0).collect();
        let curve = rd_curve(&g, &grid, BITS).unwrap();
        let n_s = summarize_source(&g).unwrap().n_s;
        prop_assert!((curve[0].r_i - bosonic_entropy(n_s, BITS).unwrap()).abs() <= 1e-9);
        for w in curve.windows(2) {
            prop_assert!(w[1].r_i <= w[0].r_i + 1e-12);
            prop_assert!(w[1].r_i >= 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pure_state_rate_is_the_omega_two_reduction(n_s in 0.0..5.0f64, n_n in 0.0..4.0f64) {
        let p = NoiseParams64::new(n_s, n_n * n_n, 2.0 * n_n).unwrap();
        let via_ic = coherent_info(&p, BITS).unwrap().max(0.0);
        prop_assert!((pure_state_rate(n_s, n_n, BITS).unwrap() - via_ic).abs() <= 1e-10);
    }
}

#[test]
fn zero_distortion_gives_source_entropy() {
    for n_s in [0.0, 0.1, 0.25, 1.0, 5.0] {
        let g = bosonic_entropy(n_s, BITS).unwrap();
        for gamma in [thermal(n_s), squeezed_thermal(2.0 * n_s + 1.0, 0.6, 0.3)] {
            assert!(
                (rate_distortion(&gamma, 0.0, BITS).unwrap().r_i - g).abs() <= 1e-9,
                "N_s = {n_s}"
            );
        }
    }
}

#[test]
fn nearly_pure_sources_follow_the_pure_state_formula() {
    for r in [0.0, 0.4, 1.0] {
        let g = squeezed_thermal(1.0 + 1e-9, r, 0.8);
        let n_s = summarize_source(&g).unwrap().n_s;
        for n_n in [0.05, 0.5, 2.0] {
            let rate = rate_distortion(&g, n_n, BITS).unwrap().r_i;
            assert!((rate - pure_state_rate(n_s, n_n, BITS).unwrap()).abs() <= 1e-6);
        }
    }
}

#[test]
fn pure_sources_have_zero_rate() {
    for trace in [2.0f64, 3.0, 10.0] {
        let a = 0.5 * (trace + (trace * trace - 4.0).sqrt());
        let g = CovMat64::one_mode(a, 0.0, 1.0 / a).unwrap();
        let grid: Vec<f64> = (0..201).map(|i| 0.01 * i as f64).collect();
        assert!(rd_curve(&g, &grid, BITS).unwrap().iter().all(|p| p.r_i == 0.0));
    }
}

#[test]
fn rate_vanishes_at_twice_sinh_two_r() {
    for n_s in [0.05, 0.25, 1.0] {
        let omega: f64 = thermal_omega(2.0 * n_s + 1.0);
        let n_n = (omega * omega - 4.0).sqrt();
        let p = rate_distortion(&thermal(n_s), n_n, BITS).unwrap();
        assert_eq!(p.r_i, 0.0, "N_s = {n_s}: I_c = {}", p.i_c);
    }
}

#[test]
fn clipping_point_brackets_the_zero_crossing() {
    for n_s in [0.05, 0.25, 1.0] {
        let src = summarize_source(&thermal(n_s)).unwrap();
        let n0 = clipping_distortion(&src, BITS).unwrap().unwrap();
        let g = thermal(n_s);
        assert!(rate_distortion(&g, 0.99 * n0, BITS).unwrap().r_i > 0.0);
        assert_eq!(rate_distortion(&g, 1.01 * n0, BITS).unwrap().r_i, 0.0);
    }
}

#[test]
fn weak_signal_isotropic_noise_is_a_grid_minimum_at_moderate_distortion() {
    for (n_s, n_n) in [(0.005, 0.2), (0.001, 0.1), (0.001, 0.5)] {
        let bf = brute_force_rate(&thermal(n_s), n_n, GridSpec::default(), BITS).unwrap();
        assert!(bf.i_min >= bf.closed_form - 1e-9, "N_s = {n_s}, N_n = {n_n}: {bf:?}");
        assert!(
            (bf.delta_star - n_n * n_n).abs() <= bf.delta_step,
            "N_s = {n_s}, N_n = {n_n}: {bf:?}"
        );
    }
}

#[test]
fn anisotropic_noise_beats_isotropic_noise_at_small_distortion() {
    for n_s in [0.001, 0.005, 0.01, 0.25, 1.0] {
        let bf = brute_force_rate(&thermal(n_s), 0.05, GridSpec::default(), BITS).unwrap();
        assert!(bf.i_min < bf.closed_form - 1e-7, "N_s = {n_s}: {bf:?}");
        assert_eq!(bf.t_star, 1.0);
        assert!(bf.delta_star < 0.05 * 0.05);
    }
}
