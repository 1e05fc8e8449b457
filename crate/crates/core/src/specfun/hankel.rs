//! Large-argument (Hankel) asymptotic series for `Iₙ(y)e^{−y}` and
//! `Kₙ(y)e^{y}`, used when `y` is large compared with `n²`.

use std::f64::consts::PI;

use super::LogBesselSet;

const TERM_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 200;

/// Returns `(Σ (−1)^k t_k, Σ t_k)` or `None` if the terms stop shrinking
/// before reaching `TERM_TOL`.
fn sums(nu: f64, y: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut t = 1.0;
    let mut alt = 1.0;
    let mut plain = 1.0;
    for k in 1..MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = t * (mu - odd * odd) / (8.0 * k as f64 * y);
        if next.abs() > t.abs() && k > 1 {
            return None;
        }
        t = next;
        plain += t;
        alt += if k % 2 == 0 { t } else { -t };
        if t.abs() < TERM_TOL * alt.abs().min(plain.abs()) {
            return Some((alt, plain));
        }
    }
    None
}

pub(crate) fn log_set(n: u32, y: f64) -> Option<LogBesselSet> {
    let nu = n as f64;
    let (i_n, k_n) = sums(nu, y)?;
    let (i_n1, k_n1) = sums(nu + 1.0, y)?;
    if i_n <= 0.0 || k_n <= 0.0 || i_n1 <= 0.0 {
        return None;
    }
    let log_pref = -0.5 * (2.0 * PI * y).ln();
    Some(LogBesselSet {
        order: n,
        argument: y,
        log_i_scaled: log_pref + i_n.ln(),
        log_k_scaled: 0.5 * (PI / (2.0 * y)).ln() + k_n.ln(),
        // I'_n = I_{n+1} + (n/y) I_n,  K'_n = −K_{n+1} + (n/y) K_n
        i_log_deriv: i_n1 / i_n + nu / y,
        k_log_deriv: -k_n1 / k_n + nu / y,
    })
}
