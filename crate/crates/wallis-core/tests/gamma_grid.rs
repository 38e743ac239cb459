//! Golden-grid checks of the gamma kernel and agreement between its three
//! independent evaluation routes (Lanczos, Euler limit, defining integral).

use wallis_core::gamma::{
    gamma, gamma_euler_limit, gamma_integral_quadrature, gamma_recursion_shift, log_gamma,
    pochhammer, sin_pi, PochhammerSpec,
};

const LOG_GAMMA_GRID: &[(f64, f64)] = &[
    (1e-6, 13.815509980749432),
    (0.001, 6.9071788853838537),
    (0.1, 2.2527126517342060),
    (0.25, 1.2880225246980775),
    (1.0 / 3.0, 0.98542064692776707),
    (0.5, 0.57236494292470009),
    (0.75, 0.20328095143129537),
    (1.0, 0.0),
    (1.25, -0.098271836421813161),
    (1.4616321449683623, -0.12148629053584961),
    (1.5, -0.12078223763524522),
    (2.0, 0.0),
    (2.5, 0.28468287047291916),
    (3.7, 1.4280723266653879),
    (5.0, 3.1780538303479456),
    (10.0, 12.801827480081470),
    (20.25, 40.084110597917349),
    (100.5, 361.43554046777762),
    (1000.0, 5905.2204232091812),
    (12345.678, 103959.91990554606),
    (1e5, 1051287.7089736569),
    (999999.5, 12815497.661392708),
];

const GAMMA_GRID: &[(f64, f64)] = &[
    (-0.5, -3.5449077018110321),
    (-1.5, 2.3632718012073547),
    (-2.5, -0.94530872048294188),
    (-0.25, -4.9016668098607106),
    (-3.7, 0.25164399590242264),
    (-10.3, -5.2623632395356270e-7),
    (0.25, 3.6256099082219083),
    (0.5, 1.7724538509055160),
    (1.5, 0.88622692545275801),
    (4.0, 6.0),
];

#[test]
fn log_gamma_matches_reference_grid() {
    for &(z, want) in LOG_GAMMA_GRID {
        let got = log_gamma(z).unwrap();
        let scale = want.abs().max(1.0);
        assert!(
            (got - want).abs() <= 1e-13 * scale,
            "log_gamma({z}): got {got}, want {want}"
        );
    }
}

#[test]
fn gamma_matches_reference_grid_including_negatives() {
    for &(z, want) in GAMMA_GRID {
        let got = gamma(z).unwrap();
        assert!(
            (got / want - 1.0).abs() <= 1e-13,
            "gamma({z}): got {got}, want {want}"
        );
    }
}

#[test]
fn recursion_shift_agrees_with_direct_ratio() {
    for i in 0..200u32 {
        let z = 0.13 + 0.217 * i as f64;
        let k = 1 + i % 7;
        let shift = gamma_recursion_shift(z, k).unwrap();
        let direct = (log_gamma(z + k as f64).unwrap() - log_gamma(z).unwrap()).exp();
        assert!(
            (shift / direct - 1.0).abs() <= 1e-12,
            "z={z}, k={k}: {shift} vs {direct}"
        );
    }
}

#[test]
fn euler_limit_deviation_shrinks_like_one_over_m() {
    for z in [0.5, 1.5, 2.5, 3.7] {
        let truth = gamma(z).unwrap();
        let mut last = f64::INFINITY;
        for m in [1_000u64, 10_000, 100_000, 1_000_000] {
            let approx = gamma_euler_limit(z, m).unwrap();
            let dev = (approx / truth - 1.0).abs();
            assert!(dev < last, "z={z}, m={m}: deviation not shrinking");
            last = dev;
        }
        let cap = if z == 0.5 { 1e-6 } else { 1e-5 };
        assert!(last <= cap, "z={z}: final deviation {last}");
    }
}

#[test]
fn integral_quadrature_grid_stays_within_its_bound() {
    for k in 1..=50u32 {
        let z = 0.4 * k as f64;
        let eval = gamma_integral_quadrature(z, 1e-9).unwrap();
        let truth = gamma(z).unwrap();
        assert!(
            (eval.value - truth).abs() <= eval.error_bound,
            "z={z}: |{} - {truth}| > {}",
            eval.value,
            eval.error_bound
        );
        assert!((eval.value / truth - 1.0).abs() <= 1e-8, "z={z}");
    }
}

#[test]
fn pochhammer_agrees_with_recursion_shift() {
    for i in 0..40u32 {
        let y = 0.21 + 0.4 * i as f64;
        let ell = 1 + i % 9;
        let spec = PochhammerSpec::new(y, ell).unwrap();
        let direct = pochhammer(&spec).unwrap();
        let shifted = gamma_recursion_shift(y, ell).unwrap();
        assert!((direct / shifted - 1.0).abs() <= 1e-13, "y={y}, ell={ell}");
    }
}

#[test]
fn reflection_identity_grid() {
    for z in [1.0 / 3.0, 0.25, 1.0 / 6.0, 0.125, 0.41] {
        let product = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let trig = core::f64::consts::PI / sin_pi(z);
        assert!((product / trig - 1.0).abs() < 1e-12, "z={z}");
    }
}
