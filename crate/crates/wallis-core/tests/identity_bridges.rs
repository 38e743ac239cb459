//! End-to-end identity checks: every named special value reached by an
//! actual truncated-product run, radicals against direct sines, and the
//! reflection bridges in both product and gamma form.

use wallis_core::gamma::sin_pi;
use wallis_core::identities::{
    half_shift_reflection_check, nested_radical_sin, reflection_check, reflection_product_rhs,
    sine_product_over_pi, special_value, NestedRadicalSpec, ReflectionCase, SpecialCase,
};
use wallis_core::products::{closed_form_target, evaluate, ProductFamily};

const PI: f64 = core::f64::consts::PI;

#[test]
fn named_values_are_reached_by_truncated_products() {
    let plain = [
        SpecialCase::Wallis,
        SpecialCase::CatalanPi2Sqrt2,
        SpecialCase::Sqrt2,
        SpecialCase::B6A0,
        SpecialCase::Pi3,
        SpecialCase::Eights,
    ];
    for case in plain {
        let sv = special_value(case).unwrap();
        let eval = evaluate(&sv.family, 1e-10).unwrap();
        let bridged = sv.bridge.apply(eval.value, &sv.family).unwrap();
        assert!(
            (bridged - sv.target).abs() <= 1e-9,
            "{:?}: {bridged} vs {}",
            case,
            sv.target
        );
    }
    for n in [3u32, 4, 5] {
        let sv = special_value(SpecialCase::Pow2(n)).unwrap();
        let eval = evaluate(&sv.family, 3e-10).unwrap();
        let bridged = sv.bridge.apply(eval.value, &sv.family).unwrap();
        assert!(
            (bridged - sv.target).abs() <= 1e-8,
            "n={n}: {bridged} vs {}",
            sv.target
        );
    }
}

#[test]
fn power_of_two_targets_match_reference_values() {
    let wants = [
        (3u32, 8.2093772238162471),
        (4, 16.103272684793023),
        (5, 32.051462050687197),
    ];
    for (n, want) in wants {
        let sv = special_value(SpecialCase::Pow2(n)).unwrap();
        assert!((sv.target / want - 1.0).abs() < 1e-14, "n={n}: {}", sv.target);
    }
}

#[test]
fn radical_chain_tracks_the_direct_sine() {
    let mut prev = f64::INFINITY;
    for n in 3..=25u32 {
        let spec = NestedRadicalSpec::new(n).unwrap();
        let radical = nested_radical_sin(&spec);
        let direct = sin_pi(0.5f64.powi(n as i32));
        assert!((radical / direct - 1.0).abs() <= 1e-12, "n={n}");
        assert!(radical > 0.0 && radical < prev, "n={n} not decreasing");
        prev = radical;
    }
    // The chain stays finite and positive out to its depth cap.
    let deep = nested_radical_sin(&NestedRadicalSpec::new(60).unwrap());
    assert!(deep > 0.0 && deep < 1e-17);
}

#[test]
fn reflection_product_equals_pi_over_sine() {
    for b in [2u32, 4, 6, 8, 12] {
        let case = ReflectionCase::new(b).unwrap();
        let eval = reflection_product_rhs(&case, 1e-9).unwrap();
        let want = PI / sin_pi(1.0 / b as f64);
        assert!(
            (eval.value - want).abs() <= eval.error_bound,
            "b={b}: {} vs {want}",
            eval.value
        );
        assert!(eval.error_bound <= 1e-9, "b={b}");
    }
    assert!(ReflectionCase::new(3).is_err());
}

#[test]
fn gamma_reflection_survives_negative_arguments() {
    for z in [0.1, 0.37, 0.5, 0.93, -0.6, -2.5, 1.0 / 3.0, 10.25] {
        let v = reflection_check(z, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "z={z}: {v}");
    }
}

#[test]
fn half_shift_family_closes_at_one_over_cosine() {
    let f = ProductFamily::new(6.0, 0.0, 4).unwrap();
    let closed = closed_form_target(&f).unwrap();
    assert!((closed - 1.1547005383792515).abs() < 1e-13);
    for b in [4u32, 6, 8, 10, 12, 16, 32] {
        let r = half_shift_reflection_check(b, 1e-9).unwrap();
        assert!((r - 1.0).abs() <= 1e-9, "b={b}: {r}");
    }
}

#[test]
fn sine_product_bound_tightens_with_more_factors() {
    for x in [0.1, 0.25, 0.5, 0.75, 0.875] {
        let reference = sin_pi(x) / PI;
        let mut prev_bound = f64::INFINITY;
        for k in [10u64, 100, 1000] {
            let eval = sine_product_over_pi(x, k, true).unwrap();
            assert!(
                (eval.value - reference).abs() <= eval.error_bound,
                "x={x}, K={k}: {} vs {reference}",
                eval.value
            );
            assert!(eval.error_bound < prev_bound, "x={x}, K={k}");
            prev_bound = eval.error_bound;
        }
        assert!(prev_bound < 1e-9, "x={x}: final bound {prev_bound}");
    }
}
