//! Reflection-formula bridges, trigonometric special values of the product
//! families, nested radicals for sin(pi/2^n), and the sine infinite product.
//!
//! These are the consistency seams of the library: the same number computed
//! as a truncated product, as a gamma closed form, and as an explicit
//! radical or trigonometric expression must agree to stated tolerances.

use crate::error::{Error, Result};
use crate::gamma::{cos_pi, gamma, sin_pi};
use crate::kahan::KahanSum;
use crate::products::{
    closed_form_target, evaluate, prefactor, Evaluation, Method, ProductFamily,
};
use core::f64::consts::PI;
use libm::{cbrt, exp, fabs, log1p, sqrt};

/// Even product-family order b whose reflection value is pi/sin(pi/b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReflectionCase {
    /// Even order, at least 2.
    pub b: u32,
}

impl ReflectionCase {
    /// Validates evenness and the floor b >= 2.
    pub fn new(b: u32) -> Result<Self> {
        if b < 2 || b % 2 != 0 {
            return Err(Error::Domain { what: "reflection case needs even b >= 2" });
        }
        Ok(Self { b })
    }
}

/// Depth parameter n of the radical chain for sin(pi/2^n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NestedRadicalSpec {
    /// Number of halvings; at least 3 (sin(pi/8) is the shortest chain).
    pub n: u32,
}

impl NestedRadicalSpec {
    /// Validates 3 <= n <= 60 (beyond 60 the angle underflows the ladder).
    pub fn new(n: u32) -> Result<Self> {
        if !(3..=60).contains(&n) {
            return Err(Error::Domain { what: "nested radical depth must lie in 3..=60" });
        }
        Ok(Self { n })
    }
}

/// Named classical evaluations of the product families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// b=2, a=0: the Wallis product, pi/2.
    Wallis,
    /// b=4, a=1: pi/(2 sqrt(2)).
    CatalanPi2Sqrt2,
    /// b=4, a=0: sqrt(2).
    Sqrt2,
    /// b=6, a=0, bare product without prefactor: 7 sqrt(3)/(4 2^(1/3)).
    B6A0,
    /// b=6, a=2: pi/3.
    Pi3,
    /// b=8, a=3: pi/(4 sqrt(2 - sqrt(2))).
    Eights,
    /// b=2^n, a=2^(n-1)-1, times b: pi/sin(pi/2^n) via the nested radical.
    Pow2(u32),
}

/// How a family evaluation maps onto the named target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bridge {
    /// Target is the full product (prefactor included) as is.
    Identity,
    /// Target is b times the full product.
    TimesB,
    /// Target is the bare product: full value divided by the prefactor.
    DividePrefactor,
}

impl Bridge {
    /// Applies the bridge to a full-product value.
    pub fn apply(&self, value: f64, family: &ProductFamily) -> Result<f64> {
        match self {
            Bridge::Identity => Ok(value),
            Bridge::TimesB => Ok(family.b * value),
            Bridge::DividePrefactor => Ok(value / prefactor(family)?),
        }
    }

    /// One-line description of the mapping.
    pub fn describe(&self) -> &'static str {
        match self {
            Bridge::Identity => "product equals target directly",
            Bridge::TimesB => "target = b * product",
            Bridge::DividePrefactor => "target = product / prefactor",
        }
    }
}

/// A named target value, the family that reaches it, and the bridge between.
#[derive(Debug, Clone, Copy)]
pub struct SpecialValue {
    /// Closed-form target computed from first principles (trig or radical).
    pub target: f64,
    /// Product family whose evaluation reaches the target.
    pub family: ProductFamily,
    /// How the family evaluation maps onto the target.
    pub bridge: Bridge,
    /// Human-readable formula for the target.
    pub label: &'static str,
}

/// Looks up a named special case: its independent target value and the
/// product family + bridge that must reproduce it.
pub fn special_value(case: SpecialCase) -> Result<SpecialValue> {
    let sv = match case {
        SpecialCase::Wallis => SpecialValue {
            target: PI / 2.0,
            family: ProductFamily::new(2.0, 0.0, 3)?,
            bridge: Bridge::Identity,
            label: "pi/2",
        },
        SpecialCase::CatalanPi2Sqrt2 => SpecialValue {
            target: PI / (2.0 * sqrt(2.0)),
            family: ProductFamily::new(4.0, 1.0, 3)?,
            bridge: Bridge::Identity,
            label: "pi/(2 sqrt(2))",
        },
        SpecialCase::Sqrt2 => SpecialValue {
            target: sqrt(2.0),
            family: ProductFamily::new(4.0, 0.0, 3)?,
            bridge: Bridge::Identity,
            label: "sqrt(2)",
        },
        SpecialCase::B6A0 => SpecialValue {
            target: 7.0 * sqrt(3.0) / (4.0 * cbrt(2.0)),
            family: ProductFamily::new(6.0, 0.0, 3)?,
            bridge: Bridge::DividePrefactor,
            label: "7 sqrt(3)/(4 2^(1/3))",
        },
        SpecialCase::Pi3 => SpecialValue {
            target: PI / 3.0,
            family: ProductFamily::new(6.0, 2.0, 3)?,
            bridge: Bridge::Identity,
            label: "pi/3",
        },
        SpecialCase::Eights => SpecialValue {
            target: PI / (4.0 * sqrt(2.0 - sqrt(2.0))),
            family: ProductFamily::new(8.0, 3.0, 3)?,
            bridge: Bridge::Identity,
            label: "pi/(4 sqrt(2 - sqrt(2)))",
        },
        SpecialCase::Pow2(n) => {
            let radical = NestedRadicalSpec::new(n)?;
            let b = (1u64 << n) as f64;
            let a = (1u64 << (n - 1)) as f64 - 1.0;
            SpecialValue {
                target: PI / nested_radical_sin(&radical),
                family: ProductFamily::new(b, a, 3)?,
                bridge: Bridge::TimesB,
                label: "pi/sin(pi/2^n)",
            }
        }
    };
    Ok(sv)
}

/// sin(pi/2^n) from the nested radical chain of half-angle roots.
///
/// The chain is evaluated innermost-out on the complement u_j = 2 - t_j of
/// the cosine ladder t_(j+1) = sqrt(2 + t_j): algebraically identical to the
/// textbook radical, but the subtraction 2 - t (which cancels half the
/// mantissa by n = 25) never happens; u is carried exactly through
/// u/(2 + sqrt(4 - u)).
pub fn nested_radical_sin(spec: &NestedRadicalSpec) -> f64 {
    let mut u = 2.0 - sqrt(2.0);
    for _ in 0..(spec.n - 3) {
        u /= 2.0 + sqrt(4.0 - u);
    }
    0.5 * sqrt(u)
}

/// b times the full product of the family (b, b/2 - 1, 3), which equals
/// Gamma(1 - 1/b) Gamma(1/b) = pi/sin(pi/b) by the reflection formula.
///
/// The inner evaluation runs at tol/b so the bridged value honors `tol`.
pub fn reflection_product_rhs(case: &ReflectionCase, tol: f64) -> Result<Evaluation> {
    if !(tol > 1e-10 && tol < 1e-2) {
        return Err(Error::Domain { what: "reflection rhs tol must lie in (1e-10, 1e-2)" });
    }
    let b = case.b as f64;
    let family = ProductFamily::new(b, b / 2.0 - 1.0, 3)?;
    let inner = evaluate(&family, (tol / b).max(2e-12))?;
    let value = b * inner.value;
    let error_bound = b * inner.error_bound + fabs(value) * 1e-15;
    if error_bound > tol {
        return Err(Error::NonConvergence { budget: 1 });
    }
    Ok(Evaluation {
        value,
        error_bound,
        terms_used: inner.terms_used,
        method: Method::TailCorrected,
    })
}

/// Gamma(z) Gamma(1-z) sin(pi z) / pi, which is exactly 1 wherever defined.
///
/// Deviation from 1 measures the rounding self-consistency of the kernel;
/// `tol` is the caller's acceptance threshold and is validated only.
pub fn reflection_check(z: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain { what: "reflection check tol must be positive" });
    }
    let left = gamma(z)?;
    let right = gamma(1.0 - z)?;
    Ok(left * right * sin_pi(z) / PI)
}

/// Product-form check of the reflection value at half-shifted arguments:
/// the family (b, 0, b/2 + 1) converges to Gamma(1/2 - 1/b) Gamma(1/2 + 1/b)
/// / pi = 1/cos(pi/b). Returns product side / closed form, which must be 1
/// within `tol`; the closed form's agreement with 1/cos(pi/b) is asserted
/// internally at 1e-12.
pub fn half_shift_reflection_check(b: u32, tol: f64) -> Result<f64> {
    if b < 4 || b % 2 != 0 {
        return Err(Error::Domain { what: "half-shift check needs even b >= 4" });
    }
    if !(tol > 1e-11 && tol < 1e-2) {
        return Err(Error::Domain { what: "half-shift tol must lie in (1e-11, 1e-2)" });
    }
    let family = ProductFamily::new(b as f64, 0.0, b / 2 + 1)?;
    let closed = closed_form_target(&family)?;
    if fabs(closed * cos_pi(1.0 / b as f64) - 1.0) > 1e-12 {
        return Err(Error::Domain { what: "half-shift closed form disagrees with 1/cos(pi/b)" });
    }
    let product_side = evaluate(&family, (0.5 * tol).max(2e-12))?;
    Ok(product_side.value / closed)
}

/// x times the truncated sine product prod_{k<=K} (1 - x^2/k^2), converging
/// to sin(pi x)/pi; with `tail_corrected` the dropped factors are bracketed
/// by the same integral sandwich the product engine uses (here the index
/// progression is k itself, so the bracket is valid for every K >= 1 once
/// 0 < x < 1).
pub fn sine_product_over_pi(x: f64, k_terms: u64, tail_corrected: bool) -> Result<Evaluation> {
    if !(x.is_finite() && x > 0.0 && x < 1.0) {
        return Err(Error::Domain { what: "sine product expects 0 < x < 1" });
    }
    if k_terms == 0 || k_terms > 100_000_000 {
        return Err(Error::Domain { what: "sine product needs 1 <= K <= 1e8" });
    }
    let mut ln = KahanSum::new();
    for k in 1..=k_terms {
        let kf = k as f64;
        ln.add(log1p(-(x * x) / (kf * kf)));
    }
    let partial = x * exp(ln.total());
    if !tail_corrected {
        let reference = sin_pi(x) / PI;
        return Ok(Evaluation {
            value: partial,
            error_bound: fabs(partial - reference),
            terms_used: k_terms,
            method: Method::Partial,
        });
    }
    let k = k_terms as f64;
    let inv_half = 1.0 / (k + 0.5);
    let inv_one = 1.0 / (k + 1.0);
    let upper2 = inv_half;
    let upper4 = inv_half * inv_half * inv_half / 3.0;
    let upper6 = upper4 * inv_half * inv_half * 0.6;
    let lower2 = inv_one + 0.5 * inv_one * inv_one;
    let lower4 = inv_one * inv_one * inv_one / 3.0 + 0.5 * inv_one * inv_one * inv_one * inv_one;
    let x2 = x * x;
    let x4 = x2 * x2;
    let x6 = x4 * x2;
    let s_mag_upper = x2 * upper2 + 0.5 * x4 * upper4 + (4.0 / 9.0) * x6 * upper6;
    let s_mag_lower = x2 * lower2 + 0.5 * x4 * lower4;
    let t_lo = exp(-s_mag_upper);
    let t_hi = exp(-s_mag_lower);
    let value = partial * 0.5 * (t_lo + t_hi);
    let error_bound = partial * 0.5 * (t_hi - t_lo) + fabs(value) * 1e-14;
    Ok(Evaluation { value, error_bound, terms_used: k_terms, method: Method::TailCorrected })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_closed_forms_hit_their_targets() {
        let cases = [
            SpecialCase::Wallis,
            SpecialCase::CatalanPi2Sqrt2,
            SpecialCase::Sqrt2,
            SpecialCase::B6A0,
            SpecialCase::Pi3,
            SpecialCase::Eights,
            SpecialCase::Pow2(3),
            SpecialCase::Pow2(5),
        ];
        for case in cases {
            let sv = special_value(case).unwrap();
            let closed = closed_form_target(&sv.family).unwrap();
            let bridged = sv.bridge.apply(closed, &sv.family).unwrap();
            assert!(
                fabs(bridged / sv.target - 1.0) < 1e-12,
                "{:?}: {} vs {}",
                case,
                bridged,
                sv.target
            );
        }
    }

    #[test]
    fn b6_a0_has_two_matching_closed_forms() {
        let sv = special_value(SpecialCase::B6A0).unwrap();
        let gamma_form = 7.0 * sqrt(PI) * gamma(1.0 / 6.0).unwrap()
            / (4.0 * gamma(1.0 / 3.0).unwrap() * gamma(1.0 / 3.0).unwrap());
        assert!(fabs(sv.target - 2.4057768647475546) < 1e-15);
        assert!(fabs(gamma_form / sv.target - 1.0) < 1e-12);
    }

    #[test]
    fn nested_radical_agrees_with_direct_sine() {
        for n in 3..=25u32 {
            let spec = NestedRadicalSpec::new(n).unwrap();
            let radical = nested_radical_sin(&spec);
            let direct = sin_pi(1.0 / (1u64 << n) as f64);
            assert!(fabs(radical / direct - 1.0) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn reflection_product_reaches_pi_over_sin() {
        let case = ReflectionCase::new(2).unwrap();
        let eval = reflection_product_rhs(&case, 1e-9).unwrap();
        assert!(fabs(eval.value - PI) <= eval.error_bound);
        assert!(eval.error_bound <= 1e-9);
        let case = ReflectionCase::new(6).unwrap();
        let eval = reflection_product_rhs(&case, 1e-9).unwrap();
        assert!(fabs(eval.value - PI / sin_pi(1.0 / 6.0)) <= eval.error_bound);
    }

    #[test]
    fn reflection_self_consistency() {
        for z in [1.0 / 3.0, 0.25, 1.0 / 6.0, 0.125, 0.41, -2.5, 0.37] {
            let v = reflection_check(z, 1e-12).unwrap();
            assert!(fabs(v - 1.0) < 1e-12, "z={z}: {v}");
        }
        assert!(reflection_check(3.0, 1e-12).is_err());
    }

    #[test]
    fn half_shift_product_matches_cosine_form() {
        for b in [4u32, 6, 8, 16] {
            let r = half_shift_reflection_check(b, 1e-9).unwrap();
            assert!(fabs(r - 1.0) < 1e-9, "b={b}: {r}");
        }
        assert!(half_shift_reflection_check(5, 1e-9).is_err());
    }

    #[test]
    fn sine_product_converges_and_brackets() {
        let x = 0.75;
        let reference = sin_pi(x) / PI;
        let raw = sine_product_over_pi(x, 1000, false).unwrap();
        assert!(fabs(raw.value - reference) < 1e-3);
        let corrected = sine_product_over_pi(x, 1000, true).unwrap();
        assert!(fabs(corrected.value - reference) <= corrected.error_bound);
        assert!(corrected.error_bound < 1e-9);
        assert!(fabs(reference - 0.22507907903927652) < 1e-16);
    }
}
