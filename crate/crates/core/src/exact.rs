//! Exact interaction energy from the mode sum over angular number `n`,
//! each term an integral over imaginary frequency of `y·ln F_n(y; α)`.

use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{bessel_ik_log, MAX_ARGUMENT, MIN_ARGUMENT};

/// Electromagnetic Casimir energy coefficient of a single perfectly
/// conducting cylinder, `E = −0.01356 ħcℓ/r²`. Taken from the published
/// single-shell results and deliberately not recomputed here.
pub const SINGLE_CYLINDER: f64 = 0.01356;

/// Smallest `α` accepted by the exact route.
pub const MIN_ALPHA: f64 = 1.002;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Which route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    /// Interaction energy `ε₁₂` from the exact mode sum.
    Exact,
    /// `ε₁₂` plus the self-energies of both cylinders.
    ExactFull,
    Semiclassical,
    PfaInner,
    PfaOuter,
    PfaGeom,
}

impl MethodTag {
    pub fn name(self) -> &'static str {
        match self {
            MethodTag::Exact => "exact",
            MethodTag::ExactFull => "exact-full",
            MethodTag::Semiclassical => "sem",
            MethodTag::PfaInner => "pfa-inner",
            MethodTag::PfaOuter => "pfa-outer",
            MethodTag::PfaGeom => "pfa-geom",
        }
    }
}

/// Dimensionless energy with its per-term decomposition.
///
/// `per_n_terms` holds `(index, contribution)` pairs whose sum is `epsilon`;
/// the index is the angular number for the exact route and the winding
/// number for the semiclassical route.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBreakdown {
    pub epsilon: f64,
    pub per_n_terms: Vec<(u32, f64)>,
    pub n_used: u32,
    pub error_estimate: f64,
    pub method_tag: MethodTag,
}

/// Accuracy controls for the exact route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactParams {
    /// Target relative accuracy of `ε₁₂`.
    pub rel_tol: f64,
    /// Number of consecutive negligible terms that ends the `n` sum.
    pub n_stop_rule: u32,
    /// Absolute tolerance floor for each `y` integral.
    pub quad_abs_floor: f64,
    /// The `y` integral is cut at `y_cut_factor/(α−1) + n`.
    pub y_cut_factor: f64,
    /// Hard cap on the angular number.
    pub n_cap: u32,
    /// Subinterval budget for each `y` integral.
    pub max_intervals: usize,
}

impl Default for ExactParams {
    fn default() -> Self {
        ExactParams {
            rel_tol: 1e-8,
            n_stop_rule: 2,
            quad_abs_floor: 1e-15,
            y_cut_factor: 40.0,
            n_cap: 10_000,
            max_intervals: 4000,
        }
    }
}

impl ExactParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(CasimirError::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.y_cut_factor >= 10.0) {
            return Err(CasimirError::InvalidParameter(format!(
                "y_cut_factor must be at least 10, got {}",
                self.y_cut_factor
            )));
        }
        if self.n_stop_rule == 0 || self.n_cap == 0 || self.max_intervals == 0 {
            return Err(CasimirError::InvalidParameter(
                "n_stop_rule, n_cap and max_intervals must be positive".into(),
            ));
        }
        if !(self.quad_abs_floor >= 0.0) {
            return Err(CasimirError::InvalidParameter(
                "quad_abs_floor must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(CasimirError::Domain(format!(
            "alpha must be finite and > 1, got {alpha}"
        )));
    }
    Ok(())
}

/// `ln(1 − r)` for `r = e^{log_r}`; `r ≥ 1` signals a Bessel defect.
fn log1m_exp(log_r: f64, n: u32, y: f64) -> Result<f64> {
    if log_r >= 0.0 {
        if log_r < 1e-12 {
            return Ok((1e-12f64).ln());
        }
        return Err(CasimirError::Domain(format!(
            "Bessel ratio {} >= 1 at n = {n}, y = {y:e}",
            log_r.exp()
        )));
    }
    Ok((-log_r.exp()).ln_1p())
}

/// `ln F_n(iy; 1, α)`, the logarithm of the product of the TM and TE
/// factors `[1 − IₙKₙ(αy)/(Iₙ(αy)Kₙ)]·[1 − I′ₙK′ₙ(αy)/(I′ₙ(αy)K′ₙ)]`.
pub fn log_f12(n: u32, y: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(y > 0.0) {
        return Err(CasimirError::Domain(format!("y must be positive, got {y}")));
    }
    if y < MIN_ARGUMENT {
        let (log_r1, log_r2) = if n == 0 {
            let l = |x: f64| (0.5 * x).ln() + EULER_GAMMA;
            ((l(alpha * y) / l(y)).ln(), -2.0 * alpha.ln())
        } else {
            let v = -2.0 * n as f64 * alpha.ln();
            (v, v)
        };
        return Ok(log1m_exp(log_r1, n, y)? + log1m_exp(log_r2, n, y)?);
    }
    let decay = -2.0 * (alpha - 1.0) * y;
    if alpha * y > MAX_ARGUMENT {
        // Far beyond every cutoff; both ratios underflow.
        return Ok(0.0);
    }
    let inner = bessel_ik_log(n, y)?;
    let outer = bessel_ik_log(n, alpha * y)?;
    let log_r1 = inner.log_i_scaled - outer.log_i_scaled + outer.log_k_scaled - inner.log_k_scaled + decay;
    let log_r2 = log_r1 + (inner.i_log_deriv / outer.i_log_deriv).ln() + (outer.k_log_deriv / inner.k_log_deriv).ln();
    Ok(log1m_exp(log_r1, n, y)? + log1m_exp(log_r2, n, y)?)
}

/// `h(z) = 1 + z²/(1 + √(1+z²))`, which equals `√(1+z²)`.
pub fn h_uniform(z: f64) -> f64 {
    1.0 + z * z / (1.0 + z.hypot(1.0))
}

/// Small-gap form `2·ln[1 − e^{−2n h(y/n)(α−1)}]` of `ln F_n`, meant for
/// `α ∈ (1, 1.1]` and `n ≥ 1`.
pub fn smallgap_log_f_approx(n: u32, y: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(CasimirError::Domain("small-gap form requires n >= 1".into()));
    }
    let nf = n as f64;
    let x = -2.0 * nf * h_uniform(y / nf) * (alpha - 1.0);
    Ok(2.0 * (-x.exp()).ln_1p())
}

/// Value of one `y` integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Upper bound of `∫_Y^∞ 2y e^{−2δy} dy`.
fn tail_bound(delta: f64, y_max: f64) -> f64 {
    (-2.0 * delta * y_max).exp() * (y_max / delta + 0.5 / (delta * delta))
}

/// `∫₀^∞ y·ln F_n(iy; 1, α) dy`.
pub fn integral_n(n: u32, alpha: f64, params: &ExactParams) -> Result<IntegralResult> {
    check_alpha(alpha)?;
    params.validate()?;
    let delta = alpha - 1.0;
    let y_max = params.y_cut_factor / delta + n as f64;
    let mut points = vec![0.0, y_max];
    for p in [n as f64, 1.0 / delta] {
        if p > 0.0 && p < y_max {
            points.push(p);
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    let opts = QuadOptions {
        abs_tol: params.quad_abs_floor,
        rel_tol: 0.1 * params.rel_tol,
        max_intervals: params.max_intervals,
    };
    let r = integrate(|y| Ok(y * log_f12(n, y, alpha)?), &points, &opts)?;
    Ok(IntegralResult {
        value: r.value,
        error: r.error + tail_bound(delta, y_max),
        evaluations: r.evaluations,
    })
}

/// Interaction energy `ε₁₂ = −(1/4π)[I₀ + 2 Σ_{n≥1} Iₙ]`, positive for
/// attraction.
///
/// Integrals are computed in parallel batches; the sum and the stopping
/// decision run sequentially in ascending `n`, so the result does not depend
/// on the thread count.
pub fn energy_exact_12(alpha: f64, params: &ExactParams) -> Result<EnergyBreakdown> {
    check_alpha(alpha)?;
    if alpha < MIN_ALPHA {
        return Err(CasimirError::InvalidParameter(format!(
            "exact route requires alpha >= {MIN_ALPHA}; use the proximity or small-gap forms for alpha = {alpha}"
        )));
    }
    params.validate()?;

    let prefactor = -1.0 / (4.0 * std::f64::consts::PI);
    let batch = (2 * rayon::current_num_threads()).max(4) as u32;
    let mut terms: Vec<(u32, f64)> = Vec::new();
    let mut acc = 0.0;
    let mut quad_err = 0.0;
    let mut negligible = 0;
    let mut next = 0u32;

    while next <= params.n_cap {
        let hi = (next + batch).min(params.n_cap + 1);
        let results: Vec<Result<IntegralResult>> = (next..hi)
            .into_par_iter()
            .map(|n| integral_n(n, alpha, params))
            .collect();
        for (n, r) in (next..hi).zip(results) {
            let r = r?;
            let weight = if n == 0 { 1.0 } else { 2.0 };
            let term = prefactor * weight * r.value;
            acc += term;
            quad_err += weight * r.error / (4.0 * std::f64::consts::PI);
            terms.push((n, term));
            if term.abs() < params.rel_tol * acc.abs() {
                negligible += 1;
            } else {
                negligible = 0;
            }
            if negligible >= params.n_stop_rule {
                let tail = geometric_tail(&terms);
                return Ok(EnergyBreakdown {
                    epsilon: acc,
                    n_used: n + 1,
                    per_n_terms: terms,
                    error_estimate: quad_err + tail,
                    method_tag: MethodTag::Exact,
                });
            }
        }
        next = hi;
    }
    Err(CasimirError::Convergence(format!(
        "angular sum at alpha = {alpha} did not reach rel_tol {} within n <= {}",
        params.rel_tol, params.n_cap
    )))
}

/// Geometric extrapolation of the remaining terms from the last two.
fn geometric_tail(terms: &[(u32, f64)]) -> f64 {
    match terms {
        [.., (_, a), (_, b)] => {
            let q = (b / a).abs();
            if q < 1.0 {
                b.abs() * q / (1.0 - q)
            } else {
                b.abs() * terms.len() as f64
            }
        }
        [(_, b)] => b.abs(),
        [] => 0.0,
    }
}

/// Full energy `ε_ex = ε₁₂ + 0.01356·(1 + α⁻²)` including both self-energies.
pub fn energy_exact_full(alpha: f64, params: &ExactParams) -> Result<EnergyBreakdown> {
    let mut e = energy_exact_12(alpha, params)?;
    e.epsilon += SINGLE_CYLINDER * (1.0 + 1.0 / (alpha * alpha));
    e.method_tag = MethodTag::ExactFull;
    Ok(e)
}
