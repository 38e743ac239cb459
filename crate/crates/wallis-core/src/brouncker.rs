//! Continued fraction b(s) = s + 1^2/(2s + 3^2/(2s + 5^2/(2s + ...))) with
//! odd-square numerators, its gamma and product closed forms, and the
//! functional equation b(s-1) b(s+1) = s^2.
//!
//! Convergents approach the limit alternately from above and below with
//! error ~ C d^(-s), so consecutive convergents bracket the truth and their
//! midpoint cancels the oscillating leading term, decaying like d^(-2s).
//! The adaptive evaluator exploits both facts plus one Richardson step in
//! the known exponent 2s.

use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use crate::products::{evaluate, Evaluation, Method, ProductFamily};
use libm::{exp, exp2, fabs};

/// Probe depths double from here in adaptive mode.
const ADAPTIVE_START: u64 = 8;
/// Hard ceiling on the deepest adaptive probe.
const ADAPTIVE_CAP: u64 = 1 << 24;

/// Evaluation request: argument s plus either a fixed truncation depth or a
/// target tolerance for adaptive deepening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CFSpec {
    /// Argument of the fraction; must be finite and positive.
    pub s: f64,
    /// Truncation depth in fixed mode; ignored when `tol` is set.
    pub depth: u32,
    /// Adaptive target tolerance; `None` selects fixed-depth mode.
    pub tol: Option<f64>,
}

impl CFSpec {
    /// Fixed-depth request: exactly `depth` partial quotients.
    pub fn new(s: f64, depth: u32) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Domain { what: "continued fraction needs s > 0" });
        }
        if depth == 0 || depth as u64 > ADAPTIVE_CAP {
            return Err(Error::Domain { what: "depth must lie in 1..=2^24" });
        }
        Ok(Self { s, depth, tol: None })
    }

    /// Adaptive request: deepen until successive extrapolants differ by
    /// less than `tol` (clamped below at 1e-8).
    pub fn with_tol(s: f64, tol: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Domain { what: "continued fraction needs s > 0" });
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Domain { what: "adaptive tol must be positive" });
        }
        Ok(Self { s, depth: 0, tol: Some(tol.max(1e-8)) })
    }
}

/// Depth-d convergent by backward recurrence; depth 1 gives s + 1/(2s).
fn convergent(s: f64, depth: u64) -> f64 {
    let mut x = 2.0 * s;
    for j in (1..depth).rev() {
        let num = (2 * j + 1) as f64;
        x = 2.0 * s + num * num / x;
    }
    s + 1.0 / x
}

/// Midpoint of the bracketing pair (f_d, f_(d+1)).
fn midpoint(s: f64, depth: u64) -> f64 {
    0.5 * (convergent(s, depth) + convergent(s, depth + 1))
}

/// Evaluates the fraction in whichever mode the `CFSpec` selects.
///
/// Fixed mode reports the depth-d convergent with the bracket width
/// |f_(d+1) - f_d| as its bound. Adaptive mode doubles the probe depth,
/// Richardson-extrapolates consecutive midpoints with weight 2^(2s), and
/// stops when the extrapolants stabilize; slowly converging arguments
/// (small s) can exhaust the depth ceiling, reported as `BudgetExceeded`.
pub fn cf_eval(spec: &CFSpec) -> Result<Evaluation> {
    match spec.tol {
        None => {
            let d = spec.depth as u64;
            let value = convergent(spec.s, d);
            let next = convergent(spec.s, d + 1);
            Ok(Evaluation {
                value,
                error_bound: fabs(next - value),
                terms_used: d,
                method: Method::Partial,
            })
        }
        Some(tol) => {
            let weight = exp2(2.0 * spec.s);
            let mut d = ADAPTIVE_START;
            let mut m_prev = midpoint(spec.s, d);
            let mut r_prev = f64::NAN;
            loop {
                d *= 2;
                if d > ADAPTIVE_CAP {
                    return Err(Error::BudgetExceeded { cap: ADAPTIVE_CAP });
                }
                let m_cur = midpoint(spec.s, d);
                let r_cur = (weight * m_cur - m_prev) / (weight - 1.0);
                if r_prev.is_finite() {
                    let diff = fabs(r_cur - r_prev);
                    if diff < tol {
                        return Ok(Evaluation {
                            value: r_cur,
                            error_bound: diff.max(4.0 * f64::EPSILON * fabs(r_cur)),
                            terms_used: d + 1,
                            method: Method::TailCorrected,
                        });
                    }
                }
                m_prev = m_cur;
                r_prev = r_cur;
            }
        }
    }
}

/// Closed form 4 [Gamma((3+s)/4) / Gamma((1+s)/4)]^2, valid for s > -1.
pub fn cf_gamma_form(s: f64) -> Result<f64> {
    if !(s.is_finite() && s > -1.0) {
        return Err(Error::Domain { what: "gamma form needs s > -1" });
    }
    let diff = log_gamma((3.0 + s) / 4.0)? - log_gamma((1.0 + s) / 4.0)?;
    Ok(4.0 * exp(2.0 * diff))
}

/// Closed form (s+1) / P(s) where P is the product family (2, (s-1)/4, 3).
///
/// The division rescales the product's absolute error by value/P, so the
/// inner run targets 0.9 tol P^2/(s+1) with P taken from a coarse first
/// pass; the returned bound restates the inner bound in output units.
pub fn cf_product_form(s: f64, tol: f64) -> Result<Evaluation> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain { what: "product form needs s > 0" });
    }
    if !(tol > 1e-10 && tol < 1e-2) {
        return Err(Error::Domain { what: "product form tol must lie in (1e-10, 1e-2)" });
    }
    let family = ProductFamily::new(2.0, (s - 1.0) / 4.0, 3)?;
    let coarse = evaluate(&family, 1e-6)?;
    let inner_tol = (0.9 * tol * coarse.value * coarse.value / (s + 1.0)).max(1.01e-12);
    let fine = evaluate(&family, inner_tol.min(9e-3))?;
    let value = (s + 1.0) / fine.value;
    let error_bound =
        fine.error_bound * value / fine.value + fabs(value) * 4.0 * f64::EPSILON;
    Ok(Evaluation { value, error_bound, terms_used: fine.terms_used, method: fine.method })
}

/// b(s-1) b(s+1) / s^2 through the gamma closed form; exactly 1 in exact
/// arithmetic for every s > 1, so the deviation from 1 exposes rounding.
pub fn functional_equation_check(s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 1.0) {
        return Err(Error::Domain { what: "functional equation needs s > 1" });
    }
    let left = cf_gamma_form(s - 1.0)?;
    let right = cf_gamma_form(s + 1.0)?;
    Ok(left * right / (s * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn shallow_convergents_are_exact_rationals() {
        assert_eq!(convergent(1.0, 1), 1.5);
        assert!(fabs(convergent(1.0, 2) - (1.0 + 1.0 / (2.0 + 9.0 / 2.0))) < 1e-16);
    }

    #[test]
    fn gamma_form_hits_classical_values() {
        assert!(fabs(cf_gamma_form(1.0).unwrap() - 4.0 / PI) < 1e-15);
        assert!(fabs(cf_gamma_form(3.0).unwrap() - PI) < 1e-14);
        let goldens = [
            (0.5, 0.84523871465522268),
            (2.0, 2.1884396152264766),
            (5.0, 5.0929581789406507),
            (7.3, 7.3659599317062942),
        ];
        for (s, want) in goldens {
            let got = cf_gamma_form(s).unwrap();
            assert!(fabs(got / want - 1.0) < 1e-14, "s={s}: {got}");
        }
    }

    #[test]
    fn consecutive_convergents_bracket_the_limit() {
        let truth = 4.0 / PI;
        for d in [10u64, 100, 1000] {
            let lo = convergent(1.0, d).min(convergent(1.0, d + 1));
            let hi = convergent(1.0, d).max(convergent(1.0, d + 1));
            assert!(lo <= truth && truth <= hi, "d={d}");
        }
    }

    #[test]
    fn fixed_mode_bound_covers_truth() {
        let spec = CFSpec::new(1.0, 50).unwrap();
        let eval = cf_eval(&spec).unwrap();
        assert_eq!(eval.terms_used, 50);
        assert!(fabs(eval.value - 4.0 / PI) <= eval.error_bound);
    }

    #[test]
    fn adaptive_triangle_with_both_closed_forms() {
        for s in [0.5, 1.0, 2.0, 3.0, 5.0, 7.3] {
            let spec = CFSpec::with_tol(s, 1e-8).unwrap();
            let numeric = cf_eval(&spec).unwrap().value;
            let gamma_form = cf_gamma_form(s).unwrap();
            let product_form = cf_product_form(s, 1e-9).unwrap().value;
            assert!(fabs(numeric - gamma_form) < 3e-8, "s={s}: cf vs gamma");
            assert!(fabs(product_form - gamma_form) < 3e-9, "s={s}: product vs gamma");
        }
    }

    #[test]
    fn product_form_inverts_the_wallis_instance() {
        let eval = cf_product_form(2.0, 1e-9).unwrap();
        assert!(fabs(eval.value - 2.1884396152264766) <= eval.error_bound);
        assert!(fabs(3.0 / eval.value - 1.3708397431333909) < 1e-9);
    }

    #[test]
    fn functional_equation_is_flat() {
        for s in [1.5, 2.0, 3.7, 10.0, 49.5] {
            let r = functional_equation_check(s).unwrap();
            assert!(fabs(r - 1.0) < 1e-13, "s={s}: {r}");
        }
    }

    #[test]
    fn domain_gates() {
        assert!(CFSpec::new(0.0, 5).is_err());
        assert!(CFSpec::new(1.0, 0).is_err());
        assert!(CFSpec::with_tol(1.0, 0.0).is_err());
        assert!(functional_equation_check(1.0).is_err());
        assert!(cf_product_form(-0.5, 1e-8).is_err());
    }
}
