//! Periodic-orbit description of the region between two coaxial cylinders:
//! orbit families of the annular billiard, the semiclassical interaction
//! energy, oscillating densities of states and the isolated-cylinder checks.

mod cylinder;
mod density;
mod energy;
mod orbits;

pub use cylinder::{
    inner_cylinder_energy_sem, inner_cylinder_family_energy, inner_cylinder_partial_sums, regulated_integral,
    regulated_moment, regulated_moment_extrapolated, weyl_smooth_density,
};
pub use density::{
    family_density_2d, family_density_3d, family_envelope_3d, rho_osc_12_3d, rho_osc_12_3d_transform,
    rho_osc_annulus_2d, DensityParams, TransformCheck,
};
pub use energy::{
    amplitude_n, amplitude_n_derivative, energy_sem, energy_sem_w0_closed, energy_sem_w0_closed_derivative,
    energy_sem_wge1_smallgap, SemiBreakdown, SMALL_GAP_VALIDITY_MAX,
};
pub use orbits::{is_grazing, orbit_length, v_hat, OrbitFamily, OrbitKind};

use crate::error::{CasimirError, Result};

/// `ζ(3)`
pub const ZETA3: f64 = 1.202_056_903_159_594_2;
/// `ζ(4) = π⁴/90`
pub const ZETA4: f64 = std::f64::consts::PI * std::f64::consts::PI * std::f64::consts::PI * std::f64::consts::PI / 90.0;

/// Radius ratio `α = b/a` of the two cylinders, with `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    alpha: f64,
}

impl Geometry {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha.is_finite() {
            Ok(Geometry { alpha })
        } else {
            Err(CasimirError::Domain(format!(
                "alpha must be finite and > 1, got {alpha}"
            )))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Largest half-angle `arccos(1/α)` subtended by an admitted chord.
    pub fn theta(&self) -> f64 {
        (1.0 / self.alpha).acos()
    }
}

/// Truncation controls for the periodic-orbit sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiParams {
    /// Largest winding number that may be enumerated.
    pub w_max: u32,
    /// Target relative accuracy of the energy sum.
    pub tail_rel_tol: f64,
    /// Largest number of bounces that may be enumerated.
    pub v_hard_cap: u64,
}

impl Default for SemiParams {
    fn default() -> Self {
        SemiParams {
            w_max: 100_000,
            tail_rel_tol: 1e-10,
            v_hard_cap: 10_000_000,
        }
    }
}

impl SemiParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_rel_tol > 0.0 && self.tail_rel_tol < 1.0) {
            return Err(CasimirError::InvalidParameter(format!(
                "tail_rel_tol must lie in (0, 1), got {}",
                self.tail_rel_tol
            )));
        }
        if self.w_max == 0 || self.v_hard_cap < 3 {
            return Err(CasimirError::InvalidParameter(
                "w_max and v_hard_cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Scalar boundary condition; TE and TM modes map to Neumann and Dirichlet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    /// Sign of the `±vπ/2` phase.
    pub fn sign(self) -> f64 {
        match self {
            BoundaryCondition::Dirichlet => 1.0,
            BoundaryCondition::Neumann => -1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_rejects_alpha_at_or_below_one() {
        assert!(Geometry::new(1.0).is_err());
        assert!(Geometry::new(0.5).is_err());
        assert!(Geometry::new(f64::INFINITY).is_err());
        assert!((Geometry::new(2.0).unwrap().theta() - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn zeta4_value() {
        assert!((ZETA4 - 1.082_323_233_711_138_2).abs() < 1e-15);
    }
}
