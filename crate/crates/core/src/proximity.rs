//! Proximity (parallel-plate) approximation of the interaction energy.
//!
//! Locally the two shells look like plates a distance `b − a` apart; the
//! plate energy per unit area is then multiplied by an area that the
//! approximation itself does not fix.

use std::f64::consts::PI;

/// Which cylinder area multiplies the plate energy density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PfaVariant {
    /// Area of the inner cylinder, `2πaℓ`.
    InnerArea,
    /// Area of the outer cylinder, `2πbℓ`.
    OuterArea,
    /// Geometric mean `2π√(ab)ℓ`.
    GeometricMean,
}

impl PfaVariant {
    pub const ALL: [PfaVariant; 3] = [PfaVariant::InnerArea, PfaVariant::OuterArea, PfaVariant::GeometricMean];

    /// Area factor `w(α)` relative to the inner cylinder.
    pub fn area_factor(self, alpha: f64) -> f64 {
        match self {
            PfaVariant::InnerArea => 1.0,
            PfaVariant::OuterArea => alpha,
            PfaVariant::GeometricMean => alpha.sqrt(),
        }
    }

    /// `w′(α)/w(α)`.
    fn log_area_factor_derivative(self, alpha: f64) -> f64 {
        match self {
            PfaVariant::InnerArea => 0.0,
            PfaVariant::OuterArea => 1.0 / alpha,
            PfaVariant::GeometricMean => 0.5 / alpha,
        }
    }
}

/// Energy `−(π²/720)·area/gap³` of two perfectly conducting plates.
pub fn parallel_plate_energy(area: f64, gap: f64) -> f64 {
    -PI * PI / 720.0 * area / gap.powi(3)
}

/// Dimensionless proximity energy `(π³/360)·w(α)/(α−1)³` for `α > 1`.
pub fn energy_pfa(alpha: f64, variant: PfaVariant) -> f64 {
    PI.powi(3) / 360.0 * variant.area_factor(alpha) / (alpha - 1.0).powi(3)
}

/// `dε_PFA/dα`.
pub fn energy_pfa_derivative(alpha: f64, variant: PfaVariant) -> f64 {
    energy_pfa(alpha, variant) * (variant.log_area_factor_derivative(alpha) - 3.0 / (alpha - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiclassical::energy_sem_w0_closed;

    #[test]
    fn plate_examples() {
        assert!((parallel_plate_energy(720.0 / (PI * PI), 1.0) + 1.0).abs() < 1e-15);
        let e1 = parallel_plate_energy(3.0, 0.4);
        let e2 = parallel_plate_energy(3.0, 0.8);
        assert!((e1 / e2 - 8.0).abs() < 1e-13);
        let e = parallel_plate_energy(2.0 * PI, 0.1);
        assert!((e / (-PI.powi(3) / 360.0 * 1e3) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn inner_area_is_plate_energy_over_unit_length() {
        // a = 1, ℓ = 1: area 2π, gap α − 1, and ε = −E.
        for a in [1.1, 1.7, 4.0] {
            let plate = parallel_plate_energy(2.0 * PI, a - 1.0);
            assert!((energy_pfa(a, PfaVariant::InnerArea) + plate).abs() < 1e-13 * plate.abs());
        }
    }

    #[test]
    fn geometric_mean_is_the_bouncing_ball_sum() {
        for a in [1.001, 1.02, 2.0, 3.7, 10.0, 123.0] {
            assert_eq!(energy_pfa(a, PfaVariant::GeometricMean), energy_sem_w0_closed(a));
        }
    }

    #[test]
    fn area_ambiguity_at_small_gap() {
        let a = 1.12;
        let i = energy_pfa(a, PfaVariant::InnerArea);
        let o = energy_pfa(a, PfaVariant::OuterArea);
        assert!(((o - i) / i - 0.12).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        for v in PfaVariant::ALL {
            for a in [1.05, 2.0, 6.0] {
                let h = 1e-6 * (a - 1.0);
                let fd = (energy_pfa(a + h, v) - energy_pfa(a - h, v)) / (2.0 * h);
                let an = energy_pfa_derivative(a, v);
                assert!(((fd - an) / an).abs() < 1e-8, "{v:?} {a}");
            }
        }
    }
}
