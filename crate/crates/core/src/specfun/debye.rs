//! Uniform large-order (Debye) expansions of `I_ν(νz)`, `K_ν(νz)` and their
//! derivatives.
//!
//! The coefficient polynomials `u_k(p)` and `v_k(p)` are generated once from
//! their defining recurrences and stored as `p^k · Q_k(p²)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::LogBesselSet;

/// Number of coefficient polynomials generated (`k = 0..MAX_TERMS`).
pub(crate) const MAX_TERMS: usize = 24;

/// Relative size of the last retained term.
const TERM_TOL: f64 = 1e-17;

struct Tables {
    /// `u[k][j]` is the coefficient of `p^(k + 2j)` in `u_k(p)`.
    u: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, &cj)| j as f64 * cj).collect()
}

fn build_tables() -> Tables {
    // Dense coefficients in powers of p.
    let mut dense: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 0..MAX_TERMS - 1 {
        let uk = &dense[k];
        let duk = derivative(uk);
        let mut next = vec![0.0; 3 * (k + 1) + 1];
        // (1/2) p^2 (1 - p^2) u_k'(p)
        for (j, &c) in duk.iter().enumerate() {
            next[j + 2] += 0.5 * c;
            next[j + 4] -= 0.5 * c;
        }
        // (1/8) ∫_0^p (1 - 5 s^2) u_k(s) ds
        for (j, &c) in uk.iter().enumerate() {
            next[j + 1] += 0.125 * c / (j + 1) as f64;
            next[j + 3] -= 0.625 * c / (j + 3) as f64;
        }
        dense.push(next);
    }

    let mut dense_v: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 1..MAX_TERMS {
        let prev = &dense[k - 1];
        let dprev = derivative(prev);
        let mut vk = dense[k].clone();
        vk.resize(3 * k + 1, 0.0);
        // p (p^2 - 1) [ u_{k-1}/2 + p u'_{k-1} ]
        let mut bracket = vec![0.0; prev.len() + 1];
        for (j, &c) in prev.iter().enumerate() {
            bracket[j] += 0.5 * c;
        }
        for (j, &c) in dprev.iter().enumerate() {
            bracket[j + 1] += c;
        }
        for (j, &c) in bracket.iter().enumerate() {
            if j + 3 < vk.len() {
                vk[j + 3] += c;
            }
            vk[j + 1] -= c;
        }
        dense_v.push(vk);
    }

    let pack = |d: &[Vec<f64>]| -> Vec<Vec<f64>> {
        d.iter()
            .enumerate()
            .map(|(k, c)| (0..=k).map(|j| c.get(k + 2 * j).copied().unwrap_or(0.0)).collect())
            .collect()
    };
    Tables {
        u: pack(&dense),
        v: pack(&dense_v),
    }
}

#[inline]
fn eval_packed(q: &[f64], p2: f64, pk: f64) -> f64 {
    let mut acc = 0.0;
    for &c in q.iter().rev() {
        acc = acc * p2 + c;
    }
    acc * pk
}

/// `η(z) − z` with `η(z) = √(1+z²) + ln(z / (1 + √(1+z²)))`, evaluated
/// without cancellation for small and large `z`.
pub(crate) fn eta_minus_z(z: f64) -> f64 {
    let s = z.hypot(1.0);
    let log_term = if z < 1.0 {
        z.ln() - s.ln_1p()
    } else {
        (-(1.0 + 1.0 / (s + z)) / (1.0 + s)).ln_1p()
    };
    1.0 / (s + z) + log_term
}

/// Series sums `Σ u_k/ν^k`, `Σ (−1)^k u_k/ν^k` and the same for `v_k`.
struct Sums {
    u_plus: f64,
    u_minus: f64,
    v_plus: f64,
    v_minus: f64,
    converged: bool,
}

fn series(nu: f64, p: f64) -> Sums {
    let t = tables();
    let p2 = p * p;
    let inv = 1.0 / nu;
    let (mut up, mut um, mut vp, mut vm) = (1.0, 1.0, 1.0, 1.0);
    let mut scale = 1.0; // p^k / ν^k
    let mut converged = false;
    for k in 1..MAX_TERMS {
        scale *= p * inv;
        let uk = eval_packed(&t.u[k], p2, scale);
        let vk = eval_packed(&t.v[k], p2, scale);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        up += uk;
        um += sign * uk;
        vp += vk;
        vm += sign * vk;
        if uk.abs() < TERM_TOL * up.abs().min(um.abs()) && vk.abs() < TERM_TOL * vp.abs().min(vm.abs()) {
            converged = true;
            break;
        }
    }
    Sums {
        u_plus: up,
        u_minus: um,
        v_plus: vp,
        v_minus: vm,
        converged,
    }
}

/// Debye expansion at integer order `n ≥ 1` and argument `y > 0`.
///
/// Returns `None` when the series did not settle to double precision, which
/// only happens for orders well below the switch point.
pub(crate) fn log_set(n: u32, y: f64) -> Option<LogBesselSet> {
    let nu = n as f64;
    let z = y / nu;
    let s = z.hypot(1.0);
    let p = 1.0 / s;
    let sums = series(nu, p);
    if !sums.converged {
        return None;
    }
    let expo = nu * eta_minus_z(z);
    let quarter_log = 0.5 * s.ln();
    let log_i_scaled = expo - 0.5 * (2.0 * PI * nu).ln() - quarter_log + sums.u_plus.ln();
    let log_k_scaled = -expo + 0.5 * (PI / (2.0 * nu)).ln() - quarter_log + sums.u_minus.ln();
    let s_over_z = s / z;
    Some(LogBesselSet {
        order: n,
        argument: y,
        log_i_scaled,
        log_k_scaled,
        i_log_deriv: s_over_z * sums.v_plus / sums.u_plus,
        k_log_deriv: -s_over_z * sums.v_minus / sums.u_minus,
    })
}
