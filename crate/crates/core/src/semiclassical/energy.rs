//! Semiclassical interaction energy
//! `ε^sem = (√α/4π) Σ_w Σ_{v≥v̂} f_vw N(α, v, w)/v⁴` and its α-derivative.

use std::f64::consts::PI;

use super::orbits::GRAZING_TOL;
use super::{Geometry, SemiParams, ZETA3, ZETA4};
use crate::error::{CasimirError, Result};
use crate::exact::{EnergyBreakdown, MethodTag};
use crate::quadrature::{integrate, QuadOptions};

/// Upper end of the window in which the small-gap form of the `w ≥ 1` sum
/// is a controlled approximation.
pub const SMALL_GAP_VALIDITY_MAX: f64 = 1.2;

/// `1 − cos(πx)` without cancellation.
#[inline]
pub(crate) fn one_minus_cos_pi(x: f64) -> f64 {
    let s = (0.5 * PI * x).sin();
    2.0 * s * s
}

/// `(N, ∂N/∂α)` in terms of `m = 1 − cos(πw/v)`, written so that
/// `α − c`, `αc − 1` and `1 + α² − 2αc` carry no cancellation near `α = 1`.
/// Both vanish at and beyond grazing.
#[inline]
fn n_and_derivative(alpha: f64, m: f64) -> (f64, f64) {
    let delta = alpha - 1.0;
    let g = delta - alpha * m;
    if g <= GRAZING_TOL {
        return (0.0, 0.0);
    }
    let c = 1.0 - m;
    let a_c = delta + m;
    let d = delta * delta + 2.0 * alpha * m;
    let n = (a_c * g).sqrt() / (d * d);
    let dn = n * (0.5 * (1.0 / a_c + c / g) - 4.0 * a_c / d);
    (n, dn)
}

/// `N(α, v, w)`; equals `1/(α−1)³` for `w = 0` and 0 at grazing incidence.
pub fn amplitude_n(alpha: f64, v: u32, w: u32) -> f64 {
    if w == 0 {
        return 1.0 / (alpha - 1.0).powi(3);
    }
    n_and_derivative(alpha, one_minus_cos_pi(w as f64 / v as f64)).0
}

/// `∂N(α, v, w)/∂α`, taken as 0 at grazing incidence.
pub fn amplitude_n_derivative(alpha: f64, v: u32, w: u32) -> f64 {
    if w == 0 {
        return -3.0 / (alpha - 1.0).powi(4);
    }
    n_and_derivative(alpha, one_minus_cos_pi(w as f64 / v as f64)).1
}

/// Closed form of the `w = 0` part, `(π³/360)√α/(α−1)³`.
pub fn energy_sem_w0_closed(alpha: f64) -> f64 {
    PI.powi(3) / 360.0 * alpha.sqrt() / (alpha - 1.0).powi(3)
}

/// `d/dα` of [`energy_sem_w0_closed`].
pub fn energy_sem_w0_closed_derivative(alpha: f64) -> f64 {
    energy_sem_w0_closed(alpha) * (0.5 / alpha - 3.0 / (alpha - 1.0))
}

/// Small-gap limit `ζ(3)/(4π³α)` of the `w ≥ 1` part; controlled for
/// `α ≤ SMALL_GAP_VALIDITY_MAX`.
pub fn energy_sem_wge1_smallgap(alpha: f64) -> f64 {
    ZETA3 / (4.0 * PI.powi(3) * alpha)
}

/// Result of the periodic-orbit energy sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiBreakdown {
    pub alpha: f64,
    pub epsilon: f64,
    /// `dε/dα` from the term-wise differentiated sum.
    pub d_epsilon: f64,
    /// Bouncing-ball family `w = 0`, all repetitions.
    pub w0_subtotal: f64,
    /// All `w ≥ 1` families, including the estimated `v > v_max` remainder.
    pub wge1_subtotal: f64,
    /// `(w, contribution)` for the explicitly summed `w ≥ 1` families.
    pub per_w: Vec<(u32, f64)>,
    /// Estimated contribution of `w ≥ 1` families with `v > v_max`.
    pub continuum_tail: f64,
    /// Largest `v` summed explicitly.
    pub v_max: u64,
    pub error_estimate: f64,
}

impl SemiBreakdown {
    /// Two-term breakdown: index 0 is the `w = 0` family, index 1 all
    /// `w ≥ 1` families.
    pub fn to_energy_breakdown(&self) -> EnergyBreakdown {
        EnergyBreakdown {
            epsilon: self.epsilon,
            per_n_terms: vec![(0, self.w0_subtotal), (1, self.wge1_subtotal)],
            n_used: self.v_max.min(u32::MAX as u64) as u32,
            error_estimate: self.error_estimate,
            method_tag: MethodTag::Semiclassical,
        }
    }
}

/// `Σ_{v>V} v^{−s}` for `s = 3, 4` by Euler–Maclaurin.
fn sigma3(v: f64) -> f64 {
    1.0 / (2.0 * v * v) - 1.0 / (2.0 * v.powi(3)) + 1.0 / (4.0 * v.powi(4)) - 1.0 / (12.0 * v.powi(6))
        + 1.0 / (12.0 * v.powi(8))
}

fn sigma4(v: f64) -> f64 {
    1.0 / (3.0 * v.powi(3)) - 1.0 / (2.0 * v.powi(4)) + 1.0 / (3.0 * v.powi(5)) - 1.0 / (6.0 * v.powi(7))
        + 2.0 / (9.0 * v.powi(9))
}

/// `(G, ∂G/∂α, error)` with `G = ∫₀^{θ/π} N(α, cos πx) dx`, computed after
/// `x = θ/π − u²` to absorb the square-root edge at grazing.
fn continuum_integral(alpha: f64, theta: f64) -> Result<(f64, f64, f64)> {
    let u_max = (theta / PI).sqrt();
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_intervals: 500,
    };
    let at = |u: f64| {
        let x = theta / PI - u * u;
        n_and_derivative(alpha, one_minus_cos_pi(x))
    };
    let g = integrate(|u| Ok(2.0 * u * at(u).0), &[0.0, u_max], &opts)?;
    let dg = integrate(|u| Ok(2.0 * u * at(u).1), &[0.0, u_max], &opts)?;
    Ok((g.value, dg.value, g.error + dg.error))
}

/// Number of explicit repetitions so that the Riemann-sum uncertainty of
/// the `w ≥ 1` remainder stays below `tol` relative to the `w = 0` sum.
fn v_cut(tol: f64) -> u64 {
    ((1.0 / (3.0 * tol * ZETA4)).cbrt().ceil() as u64 + 1).max(3)
}

/// Periodic-orbit sum for the interaction energy, with `dε/dα`.
///
/// The `w = 0` family is summed up to `V` with an Euler–Maclaurin remainder.
/// Families with `w ≥ 1` are summed explicitly for `v ≤ V`; since `N` is
/// monotone in `cos(πw/v)`, the `v > V` remainder is bracketed by
/// `Σ_v 2v⁻⁴ [vG − N_max, vG]` and its midpoint is added, with the half-width
/// reported in `error_estimate`.
pub fn energy_sem(geometry: &Geometry, params: &SemiParams) -> Result<SemiBreakdown> {
    params.validate()?;
    let alpha = geometry.alpha();
    let theta = geometry.theta();
    let big_v = v_cut(params.tail_rel_tol);
    if big_v > params.v_hard_cap {
        return Err(CasimirError::Convergence(format!(
            "tail_rel_tol {} needs v up to {big_v}, above v_hard_cap {}",
            params.tail_rel_tol, params.v_hard_cap
        )));
    }
    let w_top = (big_v as f64 * theta / PI).floor() as u64;
    if w_top > params.w_max as u64 {
        return Err(CasimirError::Convergence(format!(
            "tail_rel_tol {} at alpha = {alpha} needs w up to {w_top}, above w_max {}",
            params.tail_rel_tol, params.w_max
        )));
    }

    let n0 = amplitude_n(alpha, 1, 0);
    let dn0 = amplitude_n_derivative(alpha, 1, 0);
    let vf = big_v as f64;
    let s3 = sigma3(vf);
    let s4 = sigma4(vf);

    // w = 0: descending partial sum of v⁻⁴ plus remainder.
    let mut zeta_partial = 0.0;
    for v in (1..=big_v).rev() {
        zeta_partial += (v as f64).powi(-4);
    }
    let zeta_sum = zeta_partial + s4;

    // w ≥ 1, explicit part. Weight f = 2.
    let mut per_w = vec![0.0; w_top as usize + 1];
    let mut d_per_w = vec![0.0; w_top as usize + 1];
    for v in 3..=big_v {
        let vf = v as f64;
        let inv4 = 2.0 / (vf * vf * vf * vf);
        let w_hi = ((vf * theta / PI) * (1.0 + 1e-12)).floor() as usize;
        for w in 1..=w_hi.min(w_top as usize) {
            let (n, dn) = n_and_derivative(alpha, one_minus_cos_pi(w as f64 / vf));
            per_w[w] += n * inv4;
            d_per_w[w] += dn * inv4;
        }
    }
    let explicit: f64 = per_w.iter().sum();
    let d_explicit: f64 = d_per_w.iter().sum();

    let (g, dg, g_err) = continuum_integral(alpha, theta)?;
    let tail = 2.0 * g * s3 - n0 * s4;
    let d_tail = 2.0 * dg * s3 - dn0 * s4;

    let pref = alpha.sqrt() / (4.0 * PI);
    let d_pref = pref / (2.0 * alpha);
    let w0 = pref * n0 * zeta_sum;
    let wge1 = pref * (explicit + tail);
    let epsilon = w0 + wge1;
    let sum = n0 * zeta_sum + explicit + tail;
    let d_sum = dn0 * zeta_sum + d_explicit + d_tail;
    let d_epsilon = d_pref * sum + pref * d_sum;

    let rounding = 1e-15 * epsilon.abs() * (1.0 + (big_v as f64).sqrt());
    let error_estimate = pref * (n0 * s4 + 2.0 * g_err * s3) + rounding;

    Ok(SemiBreakdown {
        alpha,
        epsilon,
        d_epsilon,
        w0_subtotal: w0,
        wge1_subtotal: wge1,
        per_w: per_w
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &x)| x != 0.0)
            .map(|(w, &x)| (w as u32, pref * x))
            .collect(),
        continuum_tail: pref * tail,
        v_max: big_v,
        error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sem(alpha: f64) -> SemiBreakdown {
        energy_sem(&Geometry::new(alpha).unwrap(), &SemiParams::default()).unwrap()
    }

    #[test]
    fn n_examples() {
        assert_eq!(amplitude_n(2.0, 3, 1), 0.0);
        assert!((amplitude_n(2.0, 4, 1) - 0.155_184).abs() < 1e-6);
        assert_eq!(amplitude_n(2.5, 7, 0), 1.0 / 1.5f64.powi(3));
    }

    #[test]
    fn n_derivative_matches_difference_quotient() {
        for &(a, v, w) in &[(2.0, 4, 1), (3.3, 11, 3), (1.2, 40, 2), (1.7, 9, 0)] {
            let h = 1e-6;
            let fd = (amplitude_n(a + h, v, w) - amplitude_n(a - h, v, w)) / (2.0 * h);
            let an = amplitude_n_derivative(a, v, w);
            assert!(((fd - an) / an).abs() < 1e-7, "{a} {v} {w}: {fd} {an}");
        }
    }

    #[test]
    fn euler_maclaurin_remainders() {
        let m = 5000u64;
        let direct = |s: i32, v: u64| (v + 1..=v + m).rev().map(|k| (k as f64).powi(-s)).sum::<f64>();
        for v in [50u64, 200] {
            let (a, b) = (v as f64, (v + m) as f64);
            assert!(((sigma3(a) - sigma3(b)) / direct(3, v) - 1.0).abs() < 1e-12);
            assert!(((sigma4(a) - sigma4(b)) / direct(4, v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn w0_subtotal_matches_closed_form() {
        for a in [1.1, 2.0, 5.0, 10.0] {
            let s = sem(a);
            let c = energy_sem_w0_closed(a);
            assert!(((s.w0_subtotal - c) / c).abs() < 1e-12);
        }
        assert!((energy_sem_w0_closed(2.0) - 0.121_805).abs() < 1e-6);
    }

    #[test]
    fn wge1_share_at_large_alpha() {
        let s = sem(10.0);
        assert!(s.wge1_subtotal / s.epsilon < 0.03);
    }

    #[test]
    fn wge1_continuum_limit_near_contact() {
        // With f = 2 for every w ≥ 1 family, the v-sum becomes
        // (2/(πw)³)∫x²N dx → (2/(πw)³)·π/(4α^{3/2}), so the w ≥ 1 part
        // tends to ζ(3)/(8π³α), with a relative correction of order √(α−1).
        // The v-grid must resolve the peak of N, of width (α−1)/π in x, so
        // the tolerance is tightened to push v_max past 3·10⁴.
        let p = SemiParams {
            tail_rel_tol: 1e-14,
            ..Default::default()
        };
        for a in [1.001, 1.003] {
            let s = energy_sem(&Geometry::new(a).unwrap(), &p).unwrap();
            // error_estimate also carries rounding on the much larger w = 0 part
            assert!(s.error_estimate < 5e-3 * s.wge1_subtotal);
            let r = s.wge1_subtotal / (ZETA3 / (8.0 * PI.powi(3) * a));
            let leading = 1.0 - 4.0 / PI * (0.5 * (a - 1.0)).sqrt();
            assert!((r - leading).abs() < 0.01, "alpha={a}: ratio {r}, leading {leading}");
        }
    }

    #[test]
    fn wge1_brute_force_reference() {
        // Direct double sum over v < 2·10⁵ (independent script) at α = 1.01;
        // the omitted v ≥ 2·10⁵ part is about 5e-9.
        let s = sem(1.01);
        let brute = 0.004_283_929_527;
        assert!(
            s.wge1_subtotal > brute && s.wge1_subtotal - brute < 1e-8,
            "{}",
            s.wge1_subtotal
        );
    }

    #[test]
    fn tail_estimate_is_consistent_with_longer_sum() {
        // A tighter tolerance sums further; the difference must sit inside
        // the looser error estimate.
        let g = Geometry::new(2.7).unwrap();
        let loose = energy_sem(
            &g,
            &SemiParams {
                tail_rel_tol: 1e-7,
                ..Default::default()
            },
        )
        .unwrap();
        let tight = energy_sem(&g, &SemiParams::default()).unwrap();
        assert!((loose.epsilon - tight.epsilon).abs() <= loose.error_estimate + tight.error_estimate);
    }

    #[test]
    fn caps_are_enforced() {
        let g = Geometry::new(3.0).unwrap();
        let p = SemiParams {
            w_max: 5,
            ..Default::default()
        };
        assert!(matches!(energy_sem(&g, &p), Err(CasimirError::Convergence(_))));
        let p = SemiParams {
            v_hard_cap: 100,
            ..Default::default()
        };
        assert!(matches!(energy_sem(&g, &p), Err(CasimirError::Convergence(_))));
    }
}
