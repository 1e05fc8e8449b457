//! Exponentially scaled modified Bessel functions `Iₙ`, `Kₙ` of integer order
//! and their first derivatives.
//!
//! Three evaluation regimes are used:
//!
//! * large order (`n ≥ DEBYE_MIN_ORDER`): uniform Debye expansion;
//! * large argument (`y ≥ max(30, (n+1)²/2)`): Hankel asymptotic series;
//! * everything else: forward recurrence for `K`, backward ratio recurrence
//!   for `I`.
//!
//! Internally every value is carried as `ln(value · e^{∓y})` plus the
//! logarithmic derivative, so ratios such as `Iₙ(y)/Iₙ(αy)` can be formed
//! without overflow for any supported `(n, y)`.

mod debye;
mod hankel;
mod small_order;

use crate::error::{CasimirError, Result};

/// Orders at or above this value use the uniform large-order expansion.
pub const DEBYE_MIN_ORDER: u32 = 50;

/// Largest supported order.
pub const MAX_ORDER: u32 = 100_000;
/// Smallest supported argument.
pub const MIN_ARGUMENT: f64 = 1e-12;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1e6;

/// Scaled Bessel values in logarithmic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBesselSet {
    pub order: u32,
    pub argument: f64,
    /// `ln(Iₙ(y)) − y`
    pub log_i_scaled: f64,
    /// `ln(Kₙ(y)) + y`
    pub log_k_scaled: f64,
    /// `I′ₙ(y)/Iₙ(y)`
    pub i_log_deriv: f64,
    /// `K′ₙ(y)/Kₙ(y)`
    pub k_log_deriv: f64,
}

/// Scaled Bessel values and derivatives at one `(n, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBesselSet {
    pub order: u32,
    pub argument: f64,
    /// `Iₙ(y)·e^{−y}`
    pub i_scaled: f64,
    /// `Kₙ(y)·e^{y}`
    pub k_scaled: f64,
    /// `I′ₙ(y)·e^{−y}`
    pub di_scaled: f64,
    /// `K′ₙ(y)·e^{y}`
    pub dk_scaled: f64,
}

impl ScaledBesselSet {
    /// `y·(Iₙ K′ₙ − I′ₙ Kₙ)`, which is exactly `−1`.
    pub fn wronskian_times_y(&self) -> f64 {
        self.argument * (self.i_scaled * self.dk_scaled - self.di_scaled * self.k_scaled)
    }
}

impl LogBesselSet {
    /// `y·(Iₙ K′ₙ − I′ₙ Kₙ)` computed from the logarithmic form.
    pub fn wronskian_times_y(&self) -> f64 {
        self.argument * (self.log_i_scaled + self.log_k_scaled).exp() * (self.k_log_deriv - self.i_log_deriv)
    }
}

fn check_envelope(n: u32, y: f64) -> Result<()> {
    if !(y > 0.0) {
        return Err(CasimirError::Domain(format!(
            "Bessel argument must be positive, got {y}"
        )));
    }
    if n > MAX_ORDER || !(MIN_ARGUMENT..=MAX_ARGUMENT).contains(&y) {
        return Err(CasimirError::Range(format!(
            "(n, y) = ({n}, {y:e}) outside supported envelope n <= {MAX_ORDER}, \
             {MIN_ARGUMENT:e} <= y <= {MAX_ARGUMENT:e}"
        )));
    }
    Ok(())
}

fn hankel_applies(n: u32, y: f64) -> bool {
    let m = n as f64 + 1.0;
    y >= 30.0_f64.max(0.5 * m * m)
}

/// Dispatch without envelope checks.
pub(crate) fn log_set_unchecked(n: u32, y: f64) -> LogBesselSet {
    if n >= DEBYE_MIN_ORDER {
        if let Some(s) = debye::log_set(n, y) {
            return s;
        }
    } else if hankel_applies(n, y) {
        if let Some(s) = hankel::log_set(n, y) {
            return s;
        }
    }
    small_order::log_set(n, y)
}

/// Scaled Bessel values in logarithmic form; never overflows.
pub fn bessel_ik_log(n: u32, y: f64) -> Result<LogBesselSet> {
    check_envelope(n, y)?;
    Ok(log_set_unchecked(n, y))
}

/// `Iₙ(y)e^{−y}`, `Kₙ(y)e^{y}` and their derivatives.
///
/// Fails with a range error when a scaled value is not representable as a
/// normal `f64` (very large order at small argument).
pub fn bessel_ik_scaled(n: u32, y: f64) -> Result<ScaledBesselSet> {
    let l = bessel_ik_log(n, y)?;
    let i_scaled = l.log_i_scaled.exp();
    let k_scaled = l.log_k_scaled.exp();
    let set = ScaledBesselSet {
        order: n,
        argument: y,
        i_scaled,
        k_scaled,
        di_scaled: i_scaled * l.i_log_deriv,
        dk_scaled: k_scaled * l.k_log_deriv,
    };
    let representable = [set.i_scaled, set.k_scaled, set.di_scaled, set.dk_scaled]
        .iter()
        .all(|v| v.is_normal());
    if representable {
        Ok(set)
    } else {
        Err(CasimirError::Range(format!(
            "scaled Bessel values at (n, y) = ({n}, {y:e}) are not representable; use bessel_ik_log"
        )))
    }
}

/// `(ln Iₙ(y), ln Kₙ(y))` of the unscaled functions.
pub fn bessel_log_ik(n: u32, y: f64) -> Result<(f64, f64)> {
    let l = bessel_ik_log(n, y)?;
    Ok((l.log_i_scaled + y, l.log_k_scaled - y))
}
