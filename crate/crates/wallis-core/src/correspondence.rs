//! Ratio of the variational energy to the exact level along increasing
//! angular momentum, and the Richardson machinery that extracts its limit.
//!
//! For the trial family with power b in dimension N, the energy ratio at
//! angular momentum ell approaches 1 like c/ell as ell grows. Sampling the
//! ratio along a geometric ladder of ell values and extrapolating in the
//! doubling variable recovers the limit to far better accuracy than any
//! reachable single sample.

use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use crate::products::{closed_form_target, partial_product, ProductFamily};
use alloc::vec::Vec;
use libm::{exp, fabs};

/// Energy ratio E_variational / E_exact at angular momentum `ell`.
///
/// Equals (4/b) (ell + (N-1)/2)^2 / (2 ell + b + N - 2) times a ratio of
/// gamma functions, assembled in log space. Always in (0, 1] for b >= 1 and
/// tending to 1 as ell grows for any fixed b.
pub fn ratio(ell: u32, b: f64, n_dim: u32) -> Result<f64> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Domain { what: "ratio needs b > 0" });
    }
    if n_dim < 3 {
        return Err(Error::Domain { what: "ratio needs dimension N >= 3" });
    }
    let l = ell as f64;
    let n = n_dim as f64;
    let half = l + (n - 1.0) / 2.0;
    let ln_gammas = 2.0 * log_gamma((2.0 * l + n - 1.0) / b)?
        - log_gamma((2.0 * l + n) / b)?
        - log_gamma((2.0 * l + b + n - 2.0) / b)?;
    Ok(4.0 / b * half * half / (2.0 * l + b + n - 2.0) * exp(ln_gammas))
}

/// A ladder of ratio samples: ell_k = a + k b/2 for k = 0..=k_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSequenceSpec {
    /// Trial power; even so every ell_k is an integer.
    pub b: u32,
    /// Ladder offset.
    pub a: u32,
    /// Ambient dimension; at least 3.
    pub n_dim: u32,
    /// Largest ladder index.
    pub k_max: u32,
}

impl RatioSequenceSpec {
    /// Validates b even positive, N >= 3, and a nonempty ladder.
    pub fn new(b: u32, a: u32, n_dim: u32, k_max: u32) -> Result<Self> {
        if b == 0 || b % 2 != 0 {
            return Err(Error::Domain { what: "ratio sequence needs even positive b" });
        }
        if n_dim < 3 {
            return Err(Error::Domain { what: "ratio sequence needs dimension N >= 3" });
        }
        if k_max == 0 {
            return Err(Error::Domain { what: "ratio sequence needs k_max >= 1" });
        }
        Ok(Self { b, a, n_dim, k_max })
    }

    /// Angular momentum at ladder index k.
    pub fn ell_at(&self, k: u32) -> u32 {
        self.a + k * (self.b / 2)
    }
}

/// Ratio samples along the ladder, index k = 0 through k_max inclusive.
pub fn ratio_sequence(spec: &RatioSequenceSpec) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(spec.k_max as usize + 1);
    for k in 0..=spec.k_max {
        out.push(ratio(spec.ell_at(k), spec.b as f64, spec.n_dim)?);
    }
    Ok(out)
}

/// Richardson limit of a sequence sampled at doubling abscissas.
///
/// Input convention: entry i+1 is sampled at twice the abscissa of entry
/// i, so the leading 1/x error halves per entry and the Neville tableau
/// with weights 2^m - 1 cancels it order by order. The tableau corner is
/// returned, stopping early once the corner stops moving at rounding level.
/// Inputs whose successive deviations fail to decay are rejected instead of
/// extrapolated into garbage.
pub fn extrapolate_limit(seq: &[f64]) -> Result<f64> {
    if seq.len() < 3 {
        return Err(Error::Domain { what: "extrapolation needs at least 3 samples" });
    }
    let mut scale = 0.0f64;
    for &v in seq {
        if !v.is_finite() {
            return Err(Error::Domain { what: "extrapolation samples must be finite" });
        }
        scale = scale.max(fabs(v));
    }
    for i in 1..seq.len() - 1 {
        let prev = seq[i] - seq[i - 1];
        let next = seq[i + 1] - seq[i];
        if fabs(next) > 0.75 * fabs(prev) + 1e-13 * scale {
            return Err(Error::IllConditioned);
        }
    }
    let n = seq.len();
    let mut row: Vec<f64> = Vec::with_capacity(n);
    row.extend_from_slice(seq);
    let mut corner = row[n - 1];
    let mut weight = 1.0f64;
    for m in 1..n {
        weight *= 2.0;
        let factor = weight - 1.0;
        for i in (m..n).rev() {
            row[i] += (row[i] - row[i - 1]) / factor;
        }
        let step = fabs(row[n - 1] - corner);
        corner = row[n - 1];
        if step <= 4.0 * f64::EPSILON * scale {
            break;
        }
    }
    Ok(corner)
}

/// Geometric subsample of a dense ladder, anchored at index 3: entries
/// 3, 6, 12, ... as long as they exist. This is the doubling-abscissa shape
/// [`extrapolate_limit`] expects; the anchor skips the strongly curved head
/// of the sequence.
pub fn doubling_ladder(seq: &[f64]) -> Result<Vec<f64>> {
    if seq.len() < 13 {
        return Err(Error::Domain { what: "doubling ladder needs at least 13 samples" });
    }
    let mut out = Vec::new();
    let mut idx = 3usize;
    while idx < seq.len() {
        out.push(seq[idx]);
        idx *= 2;
    }
    Ok(out)
}

/// The product family whose partial products telescope this ratio ladder,
/// cross-checked numerically before being handed back.
///
/// The identity: ratio(a + k b/2) times the closed-form target equals the
/// k-term partial product with prefactor, exactly, for every k.
pub fn derive_product_family(spec: &RatioSequenceSpec) -> Result<ProductFamily> {
    let family = ProductFamily::new(spec.b as f64, spec.a as f64, spec.n_dim)?;
    let target = closed_form_target(&family)?;
    for k in [1u32, 2, 8] {
        let lhs = ratio(spec.ell_at(k), spec.b as f64, spec.n_dim)? * target;
        let rhs = partial_product(&family, k as u64, true)?.value;
        if fabs(lhs / rhs - 1.0) > 1e-10 {
            return Err(Error::Domain { what: "telescoping cross-check failed" });
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_at_the_wallis_point() {
        let got = ratio(0, 2.0, 3).unwrap();
        assert!(fabs(got - 0.84882636315677512) < 1e-15);
    }

    #[test]
    fn ratio_matches_energy_quotient() {
        use crate::variational::{exact_energy, min_energy_analytic, ExactLevel, TrialShape, UnitSystem};
        let units = UnitSystem::default();
        for (ell, b, n) in [(0u32, 2.0, 3u32), (3, 2.0, 3), (1, 4.0, 5), (7, 6.0, 4)] {
            let shape = TrialShape::new(b, ell, n).unwrap();
            let e_min = min_energy_analytic(&shape, &units).unwrap().e_min;
            let level = ExactLevel::new(0, ell, n).unwrap();
            let quotient = e_min / exact_energy(&level, &units);
            let direct = ratio(ell, b, n).unwrap();
            assert!(fabs(quotient / direct - 1.0) < 1e-12, "ell={ell} b={b} N={n}");
        }
    }

    #[test]
    fn deviation_halves_when_ell_doubles() {
        for ell in [100u32, 200, 400] {
            let low = 1.0 - ratio(ell, 2.0, 3).unwrap();
            let high = 1.0 - ratio(2 * ell, 2.0, 3).unwrap();
            let shrink = high / low;
            assert!((0.45..=0.55).contains(&shrink), "ell={ell}: {shrink}");
        }
    }

    #[test]
    fn extrapolate_handles_exact_geometric_input() {
        assert_eq!(extrapolate_limit(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
        let got = extrapolate_limit(&[1.1, 1.05, 1.025]).unwrap();
        assert!(fabs(got - 1.0) < 1e-15);
    }

    #[test]
    fn extrapolate_rejects_growing_deviations() {
        assert_eq!(extrapolate_limit(&[1.0, 1.5, 2.5]), Err(Error::IllConditioned));
        assert!(matches!(extrapolate_limit(&[1.0, 2.0]), Err(Error::Domain { .. })));
    }

    #[test]
    fn ladder_extrapolation_reaches_the_limit() {
        let spec = RatioSequenceSpec::new(2, 0, 3, 100).unwrap();
        let seq = ratio_sequence(&spec).unwrap();
        assert_eq!(seq.len(), 101);
        let ladder = doubling_ladder(&seq).unwrap();
        assert_eq!(ladder.len(), 6);
        let limit = extrapolate_limit(&ladder).unwrap();
        assert!(fabs(limit - 1.0) < 1e-6, "limit {limit}");
    }

    #[test]
    fn derived_family_telescopes() {
        let spec = RatioSequenceSpec::new(6, 2, 3, 10).unwrap();
        let family = derive_product_family(&spec).unwrap();
        let target = closed_form_target(&family).unwrap();
        assert!(fabs(target - 1.0471975511965977) < 1e-14);
    }
}
