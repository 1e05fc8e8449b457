//! Low-order evaluation: `K₀`, `K₁` by power series (y ≤ 2) or Steed's
//! continued fraction (y > 2), `Kₙ` by forward recurrence, and `Iₙ` by a
//! Miller-style backward recurrence for the ratios `I_k/I_{k−1}` normalised
//! against an independently computed `I₀`.
//!
//! Everything is carried as logarithms or ratios so that no intermediate
//! quantity overflows for small arguments and moderate orders.

use std::f64::consts::PI;

use super::LogBesselSet;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument `K₀`, `K₁` come from their power series.
const K_SERIES_MAX: f64 = 2.0;

/// Below this argument `I₀` comes from its power series.
const I0_SERIES_MAX: f64 = 25.0;

/// `I₀(y)e^{−y}` and `I₁(y)e^{−y}` series terms share this loop.
fn i0_i1_series(y: f64) -> (f64, f64) {
    let q = 0.25 * y * y;
    let mut t0 = 1.0;
    let mut t1 = 0.5 * y;
    let (mut s0, mut s1) = (t0, t1);
    let mut k = 1.0;
    loop {
        t0 *= q / (k * k);
        t1 *= q / (k * (k + 1.0));
        s0 += t0;
        s1 += t1;
        if t0 < 1e-17 * s0 && t1 < 1e-17 * s1 {
            break;
        }
        k += 1.0;
    }
    (s0, s1)
}

/// `I₀(y)·e^{−y}`.
pub(crate) fn i0_scaled(y: f64) -> f64 {
    if y <= I0_SERIES_MAX {
        i0_i1_series(y).0 * (-y).exp()
    } else {
        // e^{-y} I₀(y) ~ (2πy)^{-1/2} Σ a_k / y^k, all a_k > 0
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            let odd = 2.0 * k - 1.0;
            term *= odd * odd / (8.0 * k * y);
            sum += term;
            if term < 1e-17 * sum || k > 60.0 {
                break;
            }
            k += 1.0;
        }
        sum / (2.0 * PI * y).sqrt()
    }
}

/// `(K₀(y)e^{y}, K₁(y)e^{y})`.
pub(crate) fn k0_k1_scaled(y: f64) -> (f64, f64) {
    if y <= K_SERIES_MAX {
        k_series(y)
    } else {
        k_steed(y)
    }
}

fn k_series(y: f64) -> (f64, f64) {
    let (i0, i1) = i0_i1_series(y);
    let q = 0.25 * y * y;
    let log_half = (0.5 * y).ln();

    // K₀ = −(ln(y/2)+γ) I₀ + Σ_{k≥1} H_k q^k/(k!)²
    let mut t = 1.0;
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    // K₁ = 1/y + ln(y/2) I₁ − (y/4) Σ_{k≥0} (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let mut t1 = 1.0;
    let mut s1 = 0.0;
    let mut k = 0.0;
    loop {
        let psi_k1 = -EULER_GAMMA + harmonic;
        let psi_k2 = psi_k1 + 1.0 / (k + 1.0);
        let d1 = (psi_k1 + psi_k2) * t1;
        s1 += d1;
        k += 1.0;
        t *= q / (k * k);
        harmonic += 1.0 / k;
        let d0 = harmonic * t;
        s0 += d0;
        t1 *= q / (k * (k + 1.0));
        if d0.abs() < 1e-17 * s0.abs() && d1.abs() < 1e-17 * s1.abs() {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / y + log_half * i1 - 0.25 * y * s1;
    let e = y.exp();
    (k0 * e, k1 * e)
}

/// Steed's algorithm for the second continued fraction (Temme), order 0.
fn k_steed(y: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + y);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * y)).sqrt() / s;
    let k1 = k0 * (y + 0.5 - h) / y;
    (k0, k1)
}

/// Start index for the backward ratio recurrence. The neglected tail damps
/// like `(I_M/I_n)²`, which is below 1e−17 at this depth.
fn miller_start(n: u32, y: f64) -> usize {
    let nf = n as f64 + 1.0;
    ((nf * nf + 80.0 * y).sqrt() + 0.5 * y.min(nf) + 30.0).ceil() as usize
}

/// Recurrence-based evaluation, valid for every `(n, y)` but with cost
/// growing like `n + √(n² + 80y)`.
pub(crate) fn log_set(n: u32, y: f64) -> LogBesselSet {
    let n_us = n as usize;

    // Backward: rho[k] = I_k / I_{k-1} for k = 1..=n+1.
    let start = miller_start(n, y).max(n_us + 2);
    let mut rho = 0.0;
    let mut log_ratio_sum = 0.0;
    let mut rho_n_plus_1 = 0.0;
    let two_over_y = 2.0 / y;
    for k in (1..=start).rev() {
        rho = 1.0 / (k as f64 * two_over_y + rho);
        if k == n_us + 1 {
            rho_n_plus_1 = rho;
        }
        if k <= n_us {
            log_ratio_sum += rho.ln();
        }
    }
    let log_i_scaled = i0_scaled(y).ln() + log_ratio_sum;
    let i_log_deriv = rho_n_plus_1 + n as f64 / y;

    // Forward: r = K_{k+1}/K_k.
    let (k0, k1) = k0_k1_scaled(y);
    let mut log_k_scaled = k0.ln();
    let mut r = k1 / k0;
    let mut prev_r = f64::NAN;
    for k in 1..=n_us {
        log_k_scaled += r.ln();
        prev_r = r;
        r = 1.0 / r + k as f64 * two_over_y;
    }
    // K'_n/K_n = −(K_{n−1}/K_n + n/y) for n ≥ 1, −K₁/K₀ for n = 0.
    let k_log_deriv = if n == 0 { -r } else { -(1.0 / prev_r + n as f64 / y) };

    LogBesselSet {
        order: n,
        argument: y,
        log_i_scaled,
        log_k_scaled,
        i_log_deriv,
        k_log_deriv,
    }
}
