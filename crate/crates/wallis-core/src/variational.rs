//! Variational hydrogen-atom spectra in N dimensions with the trial family
//! R(r) = r^ell exp(-alpha r^b).
//!
//! The expectation value of H is a quadratic A u^2 - B u in the collapsed
//! variable u = (2 alpha)^(1/b), with A and B ratios of gamma functions, so
//! the optimal energy has a closed form. A quadrature path recomputes the
//! same expectation from raw moment integrals as an independent oracle, and
//! a golden-section minimizer cross-checks the analytic optimum.

use crate::error::{Error, Result};
use crate::gamma::{log_gamma, MAX_EXP_ARG};
use crate::products::{Evaluation, Method};
use crate::quadrature;
use libm::{exp, fabs, log, pow, sqrt};

/// Physical constants of the Hamiltonian H = -(hbar^2/2m) Lap - e^2/r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Particle mass.
    pub mass: f64,
    /// Charge magnitude entering the Coulomb term e^2/r.
    pub charge: f64,
}

impl UnitSystem {
    /// All three constants must be positive and finite.
    pub fn new(hbar: f64, mass: f64, charge: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(hbar) && ok(mass) && ok(charge)) {
            return Err(Error::Domain { what: "unit system constants must be positive" });
        }
        Ok(Self { hbar, mass, charge })
    }
}

impl Default for UnitSystem {
    /// Atomic-style units: hbar = m = e = 1, Bohr ground state at -1/2.
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, charge: 1.0 }
    }
}

/// Full trial-state parameters: R(r) = r^ell exp(-alpha r^b) in N dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialParams {
    /// Exponential width parameter; positive.
    pub alpha: f64,
    /// Exponential power; positive.
    pub b: f64,
    /// Angular momentum quantum number.
    pub ell: u32,
    /// Ambient dimension; at least 3.
    pub n_dim: u32,
}

impl TrialParams {
    /// Validates positivity of alpha and b and the dimension floor.
    pub fn new(alpha: f64, b: f64, ell: u32, n_dim: u32) -> Result<Self> {
        TrialShape::new(b, ell, n_dim)?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain { what: "trial state needs alpha > 0" });
        }
        Ok(Self { alpha, b, ell, n_dim })
    }

    fn shape(&self) -> TrialShape {
        TrialShape { b: self.b, ell: self.ell, n_dim: self.n_dim }
    }
}

/// Trial-state shape with the width parameter left free, as consumed by the
/// energy minimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialShape {
    /// Exponential power; positive.
    pub b: f64,
    /// Angular momentum quantum number.
    pub ell: u32,
    /// Ambient dimension; at least 3.
    pub n_dim: u32,
}

impl TrialShape {
    /// Validates b > 0 and N >= 3.
    pub fn new(b: f64, ell: u32, n_dim: u32) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Domain { what: "trial state needs b > 0" });
        }
        if n_dim < 3 {
            return Err(Error::Domain { what: "trial state needs dimension N >= 3" });
        }
        let _ = ell;
        Ok(Self { b, ell, n_dim })
    }

    /// Kinetic coefficient A and potential coefficient B of E = A u^2 - B u.
    fn quadratic_coefficients(&self, units: &UnitSystem) -> Result<(f64, f64)> {
        let n = self.n_dim as f64;
        let l = self.ell as f64;
        let b = self.b;
        let g_kin = (2.0 * l + n - 2.0 + b) / b;
        let g_pot = (2.0 * l + n - 1.0) / b;
        let g_norm = (2.0 * l + n) / b;
        let a = units.hbar * units.hbar / (2.0 * units.mass)
            * (b * (2.0 * l + b + n - 2.0) / 4.0)
            * exp(log_gamma(g_kin)? - log_gamma(g_norm)?);
        let bb = units.charge * units.charge * exp(log_gamma(g_pot)? - log_gamma(g_norm)?);
        Ok((a, bb))
    }
}

/// Optimal energy and the width parameter achieving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinEnergy {
    /// Minimized expectation value of H.
    pub e_min: f64,
    /// Width parameter alpha at the minimum.
    pub alpha_star: f64,
}

/// Quantum numbers of an exact N-dimensional hydrogen level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactLevel {
    /// Radial quantum number.
    pub n_r: u32,
    /// Angular momentum quantum number.
    pub ell: u32,
    /// Ambient dimension; at least 3.
    pub n_dim: u32,
}

impl ExactLevel {
    /// Validates the dimension floor.
    pub fn new(n_r: u32, ell: u32, n_dim: u32) -> Result<Self> {
        if n_dim < 3 {
            return Err(Error::Domain { what: "exact level needs dimension N >= 3" });
        }
        Ok(Self { n_r, ell, n_dim })
    }
}

/// Exact level energy -m e^4 / (2 hbar^2 (n_r + ell + (N-1)/2)^2).
pub fn exact_energy(level: &ExactLevel, units: &UnitSystem) -> f64 {
    let n_eff = level.n_r as f64 + level.ell as f64 + (level.n_dim as f64 - 1.0) / 2.0;
    let e4 = units.charge * units.charge * units.charge * units.charge;
    -units.mass * e4 / (units.hbar * units.hbar * 2.0 * n_eff * n_eff)
}

/// Closed-form expectation value of H in the trial state.
#[allow(non_snake_case)]
pub fn expectation_H(p: &TrialParams, units: &UnitSystem) -> Result<f64> {
    let (a, b_coeff) = p.shape().quadratic_coefficients(units)?;
    let u = pow(2.0 * p.alpha, 1.0 / p.b);
    Ok(a * u * u - b_coeff * u)
}

/// Analytic optimum of the quadratic: u* = B/2A, E_min = -B^2/4A.
pub fn min_energy_analytic(shape: &TrialShape, units: &UnitSystem) -> Result<MinEnergy> {
    let (a, b_coeff) = shape.quadratic_coefficients(units)?;
    if a <= 0.0 {
        return Err(Error::Domain { what: "kinetic coefficient must be positive" });
    }
    let u_star = b_coeff / (2.0 * a);
    Ok(MinEnergy {
        e_min: -b_coeff * b_coeff / (4.0 * a),
        alpha_star: 0.5 * pow(u_star, shape.b),
    })
}

/// Golden-section minimization of [`expectation_H`] over alpha.
///
/// The analytic alpha* seeds the bracket [alpha*/10, 10 alpha*]; since the
/// energy is a positive quadratic in u and the u-image of the bracket always
/// contains the vertex, the minimum is interior. The search narrows to a
/// width of sqrt(tol) alpha*, which by the quadratic's curvature puts the
/// energy within O(tol) relative of the true minimum.
pub fn min_energy_numeric(shape: &TrialShape, units: &UnitSystem, tol: f64) -> Result<MinEnergy> {
    if !(tol > 1e-12 && tol < 1e-3) {
        return Err(Error::Domain { what: "numeric minimizer tol must lie in (1e-12, 1e-3)" });
    }
    let seed = min_energy_analytic(shape, units)?;
    let lo0 = seed.alpha_star / 10.0;
    let hi0 = seed.alpha_star * 10.0;
    let energy_at = |alpha: f64| -> Result<f64> {
        expectation_H(
            &TrialParams { alpha, b: shape.b, ell: shape.ell, n_dim: shape.n_dim },
            units,
        )
    };
    const INV_PHI: f64 = 0.61803398874989485;
    let width_target = seed.alpha_star * sqrt(tol) * 0.5;
    let (mut lo, mut hi) = (lo0, hi0);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = energy_at(x1)?;
    let mut f2 = energy_at(x2)?;
    let mut rounds = 0u32;
    while hi - lo > width_target {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = energy_at(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = energy_at(x2)?;
        }
        rounds += 1;
        if rounds > 300 {
            return Err(Error::NonConvergence { budget: 300 });
        }
    }
    let alpha = 0.5 * (lo + hi);
    if alpha < lo0 * 1.05 || alpha > hi0 * 0.95 {
        return Err(Error::BracketFailure);
    }
    Ok(MinEnergy { e_min: energy_at(alpha)?, alpha_star: alpha })
}

/// One radial moment integral(0..inf) r^p exp(-2 alpha r^b) dr by adaptive
/// quadrature on [0, T], with the cut T chosen so the analytic incomplete-
/// gamma tail bound stays below rel_tol/10 of the integral. Returns
/// (value, absolute error bound, panels).
fn moment_integral(p: f64, alpha: f64, b: f64, rel_tol: f64) -> Result<(f64, f64, u32)> {
    let q = (p + 1.0) / b;
    if q <= 0.0 {
        return Err(Error::Domain { what: "moment integral needs (p + 1)/b > 0" });
    }
    // In t = 2 alpha r^b the integral is (2a)^(-q)/b * integral t^(q-1) e^-t,
    // whose tail beyond X is below 2 X^(q-1) e^-X once X >= 2(q-1); push X
    // until that bound is rel_tol/10 of the gamma-function floor 0.885.
    let mut x_cut = (2.0 * q + 2.0).max(10.0);
    let target_ln = log(rel_tol * 0.885 / 10.0);
    let mut pushes = 0u32;
    while core::f64::consts::LN_2 + (q - 1.0) * log(x_cut) - x_cut > target_ln {
        x_cut *= 1.5;
        pushes += 1;
        if pushes > 200 {
            return Err(Error::NonConvergence { budget: 200 });
        }
    }
    let t_max = pow(x_cut / (2.0 * alpha), 1.0 / b);
    let integrand = |r: f64| pow(r, p) * exp(-2.0 * alpha * pow(r, b));
    let quad = quadrature::integrate(&integrand, 0.0, t_max, 0.0, 0.45 * rel_tol, 3000)?;
    let ln_tail = -q * log(2.0 * alpha) - log(b)
        + core::f64::consts::LN_2
        + (q - 1.0) * log(x_cut)
        - x_cut;
    let tail = if ln_tail > MAX_EXP_ARG { return Err(Error::Overflow) } else { exp(ln_tail) };
    Ok((quad.value, quad.error + tail, quad.panels))
}

/// Expectation value of H assembled from raw moment integrals, the
/// quadrature oracle for [`expectation_H`]. `tol` is the relative accuracy
/// target; the returned bound is absolute.
///
/// The kinetic integrand uses the analytically differentiated radial
/// function, R'/R = ell/r - alpha b r^(b-1), expanded into three moments.
#[allow(non_snake_case)]
pub fn expectation_H_quadrature(
    p: &TrialParams,
    units: &UnitSystem,
    tol: f64,
) -> Result<Evaluation> {
    if !(tol > 1e-10 && tol < 1e-3) {
        return Err(Error::Domain { what: "quadrature oracle tol must lie in (1e-10, 1e-3)" });
    }
    let n = p.n_dim as f64;
    let l = p.ell as f64;
    let b = p.b;
    let alpha = p.alpha;
    let p0 = 2.0 * l + n - 1.0;
    let inner = tol / 20.0;

    let (norm, err_norm, panels_norm) = moment_integral(p0, alpha, b, inner)?;
    let (pot, err_pot, panels_pot) = moment_integral(p0 - 1.0, alpha, b, inner)?;
    let (m_top, err_top, panels_top) = moment_integral(p0 + 2.0 * b - 2.0, alpha, b, inner)?;
    let mut kin = alpha * alpha * b * b * m_top;
    let mut err_kin = alpha * alpha * b * b * err_top;
    let mut panels = panels_norm + panels_pot + panels_top;
    if p.ell > 0 {
        let (m_cent, err_cent, panels_cent) = moment_integral(p0 - 2.0, alpha, b, inner)?;
        let (m_cross, err_cross, panels_cross) = moment_integral(p0 + b - 2.0, alpha, b, inner)?;
        kin += l * (2.0 * l + n - 2.0) * m_cent - 2.0 * l * alpha * b * m_cross;
        err_kin += l * (2.0 * l + n - 2.0) * err_cent + 2.0 * l * alpha * b * err_cross;
        panels += panels_cent + panels_cross;
    }
    let kin_scale = units.hbar * units.hbar / (2.0 * units.mass);
    let e2 = units.charge * units.charge;
    let value = kin_scale * kin / norm - e2 * pot / norm;
    let error_bound = kin_scale * (err_kin / norm + fabs(kin) * err_norm / (norm * norm))
        + e2 * (err_pot / norm + pot * err_norm / (norm * norm));
    Ok(Evaluation {
        value,
        error_bound,
        terms_used: panels as u64,
        method: Method::TailCorrected,
    })
}

/// Relative width sqrt(<r^4>/<r^2>^2 - 1) of the r^2 distribution in the
/// trial state. Independent of alpha: the alpha powers cancel in the ratio.
pub fn uncertainty_r2(p: &TrialParams) -> Result<f64> {
    let n = p.n_dim as f64;
    let l = p.ell as f64;
    let b = p.b;
    let a1 = (2.0 * l + n + 4.0) / b;
    let a2 = (2.0 * l + n + 2.0) / b;
    let a3 = (2.0 * l + n) / b;
    let ratio = exp(log_gamma(a1)? + log_gamma(a3)? - 2.0 * log_gamma(a2)?);
    Ok(sqrt((ratio - 1.0).max(0.0)))
}
