//! Pressures on the inner cylinder, the sign change of the full pressure and
//! row-by-row method comparisons.
//!
//! With `E = −ε(b/a)/a²` per unit length and `p = −(1/2πa)∂E/∂a` at fixed
//! `b`, the dimensionless pressure `ρ = 2πa⁴p` is `−(2ε + αε′)`.

use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::exact::{energy_exact_12, ExactParams, MethodTag};
use crate::proximity::{energy_pfa, energy_pfa_derivative, PfaVariant};
use crate::semiclassical::{energy_sem, Geometry, SemiParams};

/// Self-pressure of an isolated inner cylinder in the units of `ρ`,
/// `−2·0.01356`; the outer cylinder's self-energy does not depend on `a`.
pub const SELF_PRESSURE: f64 = 0.02712;

/// Bracket searched for the sign change of the full pressure.
pub const CROSSOVER_BRACKET: (f64, f64) = (2.0, 5.0);

/// Bracket width at which the crossover search stops.
pub const CROSSOVER_TOL: f64 = 1e-3;

/// Number of α points in the figure datasets.
pub const FIGURE_POINTS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeMode {
    /// Closed-form or term-wise differentiated `ε′`.
    Analytic,
    /// Five-point central difference of `ε`.
    CentralDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    pub rho: f64,
    pub method_tag: MethodTag,
    pub derivative_mode: DerivativeMode,
    pub error_estimate: f64,
}

/// A route to `ε(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Semiclassical,
    Pfa(PfaVariant),
}

impl Method {
    pub fn tag(self) -> MethodTag {
        match self {
            Method::Exact => MethodTag::Exact,
            Method::Semiclassical => MethodTag::Semiclassical,
            Method::Pfa(PfaVariant::InnerArea) => MethodTag::PfaInner,
            Method::Pfa(PfaVariant::OuterArea) => MethodTag::PfaOuter,
            Method::Pfa(PfaVariant::GeometricMean) => MethodTag::PfaGeom,
        }
    }

    /// Inverse of `MethodTag::name` for the tags that name a method.
    pub fn from_name(name: &str) -> Option<Method> {
        Some(match name {
            "exact" => Method::Exact,
            "sem" => Method::Semiclassical,
            "pfa-inner" => Method::Pfa(PfaVariant::InnerArea),
            "pfa-outer" => Method::Pfa(PfaVariant::OuterArea),
            "pfa-geom" => Method::Pfa(PfaVariant::GeometricMean),
            _ => return None,
        })
    }

    pub fn has_analytic_derivative(self) -> bool {
        !matches!(self, Method::Exact)
    }
}

/// Accuracy controls of every route.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ObservableParams {
    pub exact: ExactParams,
    pub semi: SemiParams,
}

/// `ε` and its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyValue {
    pub epsilon: f64,
    pub error: f64,
}

/// `ε(α)` by one method.
pub fn energy(method: Method, alpha: f64, params: &ObservableParams) -> Result<EnergyValue> {
    let geometry = Geometry::new(alpha)?;
    Ok(match method {
        Method::Exact => {
            let e = energy_exact_12(alpha, &params.exact)?;
            EnergyValue {
                epsilon: e.epsilon,
                error: e.error_estimate,
            }
        }
        Method::Semiclassical => {
            let s = energy_sem(&geometry, &params.semi)?;
            EnergyValue {
                epsilon: s.epsilon,
                error: s.error_estimate,
            }
        }
        Method::Pfa(v) => {
            let epsilon = energy_pfa(alpha, v);
            EnergyValue {
                epsilon,
                error: f64::EPSILON * epsilon.abs(),
            }
        }
    })
}

/// `ρ = −(2ε + αε′)`.
pub fn rho_from_derivative(alpha: f64, epsilon: f64, d_epsilon: f64) -> f64 {
    -(2.0 * epsilon + alpha * d_epsilon)
}

/// Finite-difference step `max(10⁻⁴, 10⁻³(α−1))`.
pub fn fd_step(alpha: f64) -> f64 {
    (1e-3 * (alpha - 1.0)).max(1e-4)
}

/// Pressure from a five-point central difference of `epsilon_fn`, which
/// returns `(ε, absolute error)`.
///
/// The error estimate adds the propagated evaluation noise to the gap
/// between the five- and three-point derivatives.
pub fn pressure_from_epsilon<F>(mut epsilon_fn: F, alpha: f64, method_tag: MethodTag) -> Result<PressureResult>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let h = fd_step(alpha);
    let mut eval = |x: f64| {
        epsilon_fn(x).map_err(|e| CasimirError::Differentiation {
            alpha,
            source: Box::new(e),
        })
    };
    let (e0, err0) = eval(alpha)?;
    let (m2, em2) = eval(alpha - 2.0 * h)?;
    let (m1, em1) = eval(alpha - h)?;
    let (p1, ep1) = eval(alpha + h)?;
    let (p2, ep2) = eval(alpha + 2.0 * h)?;
    let d5 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d3 = (p1 - m1) / (2.0 * h);
    let noise = (em2 + 8.0 * em1 + 8.0 * ep1 + ep2) / (12.0 * h);
    Ok(PressureResult {
        rho: rho_from_derivative(alpha, e0, d5),
        method_tag,
        derivative_mode: DerivativeMode::CentralDifference,
        error_estimate: 2.0 * err0 + alpha * (noise + (d5 - d3).abs()),
    })
}

/// Pressure by one method. Methods without a closed-form derivative fall
/// back to the central difference, which `derivative_mode` then reports.
pub fn pressure(method: Method, alpha: f64, mode: DerivativeMode, params: &ObservableParams) -> Result<PressureResult> {
    Geometry::new(alpha)?;
    if mode == DerivativeMode::CentralDifference || !method.has_analytic_derivative() {
        return pressure_from_epsilon(
            |x| energy(method, x, params).map(|e| (e.epsilon, e.error)),
            alpha,
            method.tag(),
        );
    }
    let (eps, d_eps, err) = match method {
        Method::Pfa(v) => {
            let eps = energy_pfa(alpha, v);
            (eps, energy_pfa_derivative(alpha, v), 0.0)
        }
        Method::Semiclassical => {
            let s = energy_sem(&Geometry::new(alpha)?, &params.semi)?;
            // The remainder bound scales like the w = 0 family, whose
            // logarithmic derivative is about −3/(α−1).
            let err = s.error_estimate * (2.0 + 3.0 * alpha / (alpha - 1.0));
            (s.epsilon, s.d_epsilon, err)
        }
        Method::Exact => unreachable!("exact route has no analytic derivative"),
    };
    let rounding = 4.0 * f64::EPSILON * (2.0 * eps.abs() + alpha * d_eps.abs());
    Ok(PressureResult {
        rho: rho_from_derivative(alpha, eps, d_eps),
        method_tag: method.tag(),
        derivative_mode: DerivativeMode::Analytic,
        error_estimate: err + rounding,
    })
}

/// Full pressure `ρ₁₂ − 0.02712` from the exact interaction energy.
pub fn pressure_full_exact(alpha: f64, params: &ObservableParams) -> Result<PressureResult> {
    let mut p = pressure(Method::Exact, alpha, DerivativeMode::CentralDifference, params)?;
    p.rho -= SELF_PRESSURE;
    p.method_tag = MethodTag::ExactFull;
    Ok(p)
}

/// Full pressure with the semiclassical interaction energy in place of the
/// exact one.
pub fn pressure_full_sem(alpha: f64, params: &ObservableParams) -> Result<PressureResult> {
    let mut p = pressure(Method::Semiclassical, alpha, DerivativeMode::Analytic, params)?;
    p.rho -= SELF_PRESSURE;
    Ok(p)
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `tol`; returns the midpoint.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(CasimirError::NoSignChange { lo, hi, f_lo, f_hi });
    }
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Radius ratio at which the full exact pressure changes sign.
pub fn find_crossover(params: &ObservableParams) -> Result<f64> {
    let (lo, hi) = CROSSOVER_BRACKET;
    bisect(|a| pressure_full_exact(a, params).map(|p| p.rho), lo, hi, CROSSOVER_TOL)
}

/// As [`find_crossover`] with the semiclassical interaction energy.
pub fn find_crossover_sem(params: &ObservableParams) -> Result<f64> {
    let (lo, hi) = CROSSOVER_BRACKET;
    bisect(|a| pressure_full_sem(a, params).map(|p| p.rho), lo, hi, CROSSOVER_TOL)
}

/// All requested methods at one α. Entries for methods that were not
/// requested are `None`; a failed evaluation leaves its entries `None` and
/// records the message in `error`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonRow {
    pub alpha: f64,
    pub eps_exact12: Option<f64>,
    pub eps_sem: Option<f64>,
    pub eps_pfa_inner: Option<f64>,
    pub eps_pfa_outer: Option<f64>,
    pub eps_pfa_geom: Option<f64>,
    pub rho_exact12: Option<f64>,
    pub rho_sem: Option<f64>,
    pub rho_full_exact: Option<f64>,
    /// `|ε^sem − ε₁₂|/|ε₁₂|`.
    pub eps_deviation: Option<f64>,
    /// `|ρ^sem − ρ₁₂|/|ρ₁₂|`.
    pub rho_deviation: Option<f64>,
    /// Largest absolute error estimate among the values in the row.
    pub err_est: f64,
    pub error: Option<String>,
}

fn fill_row(row: &mut ComparisonRow, method: Method, params: &ObservableParams) -> Result<()> {
    let a = row.alpha;
    match method {
        Method::Exact => {
            let e = energy(method, a, params)?;
            let p = pressure(method, a, DerivativeMode::CentralDifference, params)?;
            row.eps_exact12 = Some(e.epsilon);
            row.rho_exact12 = Some(p.rho);
            row.rho_full_exact = Some(p.rho - SELF_PRESSURE);
            row.err_est = row.err_est.max(e.error).max(p.error_estimate);
        }
        Method::Semiclassical => {
            let s = energy_sem(&Geometry::new(a)?, &params.semi)?;
            let p = pressure(method, a, DerivativeMode::Analytic, params)?;
            row.eps_sem = Some(s.epsilon);
            row.rho_sem = Some(p.rho);
            row.err_est = row.err_est.max(s.error_estimate).max(p.error_estimate);
        }
        Method::Pfa(v) => {
            let slot = match v {
                PfaVariant::InnerArea => &mut row.eps_pfa_inner,
                PfaVariant::OuterArea => &mut row.eps_pfa_outer,
                PfaVariant::GeometricMean => &mut row.eps_pfa_geom,
            };
            *slot = Some(energy_pfa(a, v));
        }
    }
    Ok(())
}

fn relative_deviation(approx: Option<f64>, reference: Option<f64>) -> Option<f64> {
    match (approx, reference) {
        (Some(x), Some(r)) if r != 0.0 => Some(((x - r) / r).abs()),
        _ => None,
    }
}

/// One row per α, computed in parallel and returned in input order.
pub fn compare_methods(alpha_grid: &[f64], methods: &[Method], params: &ObservableParams) -> Vec<ComparisonRow> {
    alpha_grid
        .par_iter()
        .map(|&alpha| {
            let mut row = ComparisonRow {
                alpha,
                ..Default::default()
            };
            for &m in methods {
                if let Err(e) = fill_row(&mut row, m, params) {
                    row.error.get_or_insert_with(|| e.to_string());
                }
            }
            row.eps_deviation = relative_deviation(row.eps_sem, row.eps_exact12);
            row.rho_deviation = relative_deviation(row.rho_sem, row.rho_exact12);
            row
        })
        .collect()
}

fn check_grid(lo: f64, hi: f64, points: usize) -> Result<()> {
    if points < 2 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(CasimirError::InvalidParameter(format!(
            "grid needs lo < hi and at least 2 points, got [{lo}, {hi}] with {points}"
        )));
    }
    Ok(())
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, points)?;
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect())
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced in `ln α`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, points)?;
    if lo <= 0.0 {
        return Err(CasimirError::InvalidParameter(format!(
            "log grid needs lo > 0, got {lo}"
        )));
    }
    let r = (hi / lo).ln() / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { lo * (r * i as f64).exp() })
        .collect())
}

/// Exact and semiclassical energies and pressures over `α ∈ [1.1, 10]`.
pub fn figure4_rows(params: &ObservableParams) -> Result<Vec<ComparisonRow>> {
    let grid = log_grid(1.1, 10.0, FIGURE_POINTS)?;
    Ok(compare_methods(&grid, &[Method::Exact, Method::Semiclassical], params))
}

/// Semiclassical and inner/outer proximity energies over `α ∈ [1.02, 2.5]`.
pub fn figure5_rows(params: &ObservableParams) -> Result<Vec<ComparisonRow>> {
    let grid = linear_grid(1.02, 2.5, FIGURE_POINTS)?;
    let methods = [
        Method::Semiclassical,
        Method::Pfa(PfaVariant::InnerArea),
        Method::Pfa(PfaVariant::OuterArea),
    ];
    Ok(compare_methods(&grid, &methods, params))
}
