use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Argument inside the domain but outside the supported envelope, or a
    /// result that cannot be represented in `f64`.
    #[error("range error: {0}")]
    Range(String),

    /// A user-supplied parameter violates its documented invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An iterative sum or series did not reach the requested tolerance
    /// within its caps.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Adaptive quadrature exhausted its interval budget.
    #[error(
        "quadrature did not converge: error {achieved:.3e} > requested {requested:.3e} \
         (worst subinterval [{worst_lo:.6e}, {worst_hi:.6e}])"
    )]
    Quadrature {
        achieved: f64,
        requested: f64,
        worst_lo: f64,
        worst_hi: f64,
    },

    /// A bracketing root search was given an interval without a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// An energy evaluation inside a finite-difference stencil failed.
    #[error("differentiation failed at alpha = {alpha}: {source}")]
    Differentiation { alpha: f64, source: Box<CasimirError> },
}

impl CasimirError {
    /// True for failures of an iterative procedure (as opposed to bad input).
    pub fn is_convergence_failure(&self) -> bool {
        match self {
            CasimirError::Convergence(_) | CasimirError::Quadrature { .. } | CasimirError::NoSignChange { .. } => true,
            CasimirError::Differentiation { source, .. } => source.is_convergence_failure(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
