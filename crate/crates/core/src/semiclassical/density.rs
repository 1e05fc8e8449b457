//! Oscillating parts of the photon density of states, per unit wavenumber,
//! for the annulus (two dimensions) and for the region between the
//! cylinders per unit length (three dimensions).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::orbits::{OrbitFamily, OrbitKind};
use super::{BoundaryCondition, Geometry};
use crate::error::{CasimirError, Result};
use crate::quadrature::{integrate, QuadOptions};

/// Boundary condition and truncation of the orbit sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityParams {
    pub bc: BoundaryCondition,
    pub w_max: u32,
    pub v_max: u32,
}

impl Default for DensityParams {
    fn default() -> Self {
        DensityParams {
            bc: BoundaryCondition::Dirichlet,
            w_max: 10,
            v_max: 50,
        }
    }
}

/// Extra phase `±vπ/2` carried by polygon orbits.
fn polygon_phase(f: &OrbitFamily, bc: BoundaryCondition) -> f64 {
    bc.sign() * f.v as f64 * FRAC_PI_2
}

/// Two-dimensional contribution of one family at wavenumber `k`.
pub fn family_density_2d(f: &OrbitFamily, k: f64, alpha: f64, bc: BoundaryCondition) -> f64 {
    let c = (2.0 / PI).sqrt();
    let l = f.length;
    let v2 = (f.v as f64).powi(2);
    match f.kind {
        OrbitKind::TypeI => c * k.sqrt() * l.powf(1.5) / v2 * (k * l + polygon_phase(f, bc) + FRAC_PI_4).cos(),
        OrbitKind::InnerPolygon => {
            0.5 * f.weight * c * k.sqrt() * l.powf(1.5) / v2 * (k * l + polygon_phase(f, bc) + FRAC_PI_4).cos()
        }
        OrbitKind::TypeII => {
            f.weight * 2.0 * c * alpha * alpha * f.amplitude * (k / l).sqrt() * (k * l + FRAC_PI_4).sin()
        }
    }
}

/// Magnitude of the three-dimensional contribution of one family (the
/// prefactor of its sine).
pub fn family_envelope_3d(f: &OrbitFamily, k: f64, alpha: f64) -> f64 {
    let l = f.length;
    let v2 = (f.v as f64).powi(2);
    match f.kind {
        OrbitKind::TypeI => l / v2 * k / PI,
        OrbitKind::InnerPolygon => f.weight / (2.0 * PI) * l / v2 * k,
        OrbitKind::TypeII => f.weight * 2.0 / PI * alpha * alpha / l * f.amplitude * k,
    }
}

/// Three-dimensional contribution of one family, per unit length.
pub fn family_density_3d(f: &OrbitFamily, k: f64, alpha: f64, bc: BoundaryCondition) -> f64 {
    let env = family_envelope_3d(f, k, alpha);
    match f.kind {
        OrbitKind::TypeII => env * (k * f.length).sin(),
        _ => env * (k * f.length + polygon_phase(f, bc) + FRAC_PI_2).sin(),
    }
}

fn families(kind: OrbitKind, geometry: &Geometry, params: &DensityParams) -> Vec<OrbitFamily> {
    OrbitFamily::enumerate(kind, geometry, params.w_max, params.v_max)
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(CasimirError::Domain(format!("wavenumber must be positive, got {k}")))
    }
}

/// Truncated two-dimensional oscillating density of one orbit kind.
pub fn rho_osc_annulus_2d(kind: OrbitKind, k: f64, geometry: &Geometry, params: &DensityParams) -> Result<f64> {
    check_k(k)?;
    let a = geometry.alpha();
    Ok(families(kind, geometry, params)
        .iter()
        .map(|f| family_density_2d(f, k, a, params.bc))
        .sum())
}

/// Truncated three-dimensional oscillating density of one orbit kind, per
/// unit length, from the stationary-phase closed forms.
pub fn rho_osc_12_3d(kind: OrbitKind, k: f64, geometry: &Geometry, params: &DensityParams) -> Result<f64> {
    check_k(k)?;
    let a = geometry.alpha();
    Ok(families(kind, geometry, params)
        .iter()
        .map(|f| family_density_3d(f, k, a, params.bc))
        .sum())
}

/// Closed form against the axial transform `(k/π)∫₀^{π/2} ρ₂(k cos φ) dφ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformCheck {
    pub closed_form: f64,
    pub transformed: f64,
    /// Sum of the family envelopes, the scale of the density.
    pub envelope: f64,
    /// `|closed_form − transformed| / envelope`.
    pub deviation: f64,
}

/// Evaluates the axial transform of the two-dimensional density by
/// quadrature and compares it with the closed form.
pub fn rho_osc_12_3d_transform(
    kind: OrbitKind,
    k: f64,
    geometry: &Geometry,
    params: &DensityParams,
) -> Result<TransformCheck> {
    check_k(k)?;
    let a = geometry.alpha();
    let fams = families(kind, geometry, params);
    if fams.is_empty() {
        return Ok(TransformCheck {
            closed_form: 0.0,
            transformed: 0.0,
            envelope: 0.0,
            deviation: 0.0,
        });
    }
    let l_max = fams.iter().map(|f| f.length).fold(0.0, f64::max);
    let panels = ((k * l_max / 2.0).ceil() as usize).max(16);
    let points: Vec<f64> = (0..=panels).map(|i| FRAC_PI_2 * i as f64 / panels as f64).collect();
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        max_intervals: 20 * panels,
    };
    let integrand = |phi: f64| {
        let kc = k * phi.cos();
        if kc <= 0.0 {
            return Ok(0.0);
        }
        Ok(fams.iter().map(|f| family_density_2d(f, kc, a, params.bc)).sum::<f64>())
    };
    let q = integrate(integrand, &points, &opts)?;
    let transformed = k / PI * q.value;
    let closed_form: f64 = fams.iter().map(|f| family_density_3d(f, k, a, params.bc)).sum();
    let envelope: f64 = fams.iter().map(|f| family_envelope_3d(f, k, a)).sum();
    Ok(TransformCheck {
        closed_form,
        transformed,
        envelope,
        deviation: (closed_form - transformed).abs() / envelope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grazing_families_do_not_contribute() {
        let g = Geometry::new(2.0).unwrap();
        let f = OrbitFamily::new(OrbitKind::TypeII, 3, 1, &g).unwrap();
        for k in [0.3, 7.0, 123.0] {
            assert_eq!(family_density_2d(&f, k, 2.0, BoundaryCondition::Dirichlet), 0.0);
            assert_eq!(family_density_3d(&f, k, 2.0, BoundaryCondition::Neumann), 0.0);
        }
    }

    #[test]
    fn type_ii_is_blind_to_boundary_condition() {
        let g = Geometry::new(2.3).unwrap();
        let d = DensityParams::default();
        let n = DensityParams {
            bc: BoundaryCondition::Neumann,
            ..d
        };
        for k in [1.0, 17.5] {
            assert_eq!(
                rho_osc_12_3d(OrbitKind::TypeII, k, &g, &d).unwrap(),
                rho_osc_12_3d(OrbitKind::TypeII, k, &g, &n).unwrap()
            );
        }
    }

    #[test]
    fn type_i_phase_flips_with_boundary_condition() {
        let g = Geometry::new(2.0).unwrap();
        let f = OrbitFamily::new(OrbitKind::TypeI, 5, 1, &g).unwrap();
        let k = 3.7;
        let d = family_density_3d(&f, k, 2.0, BoundaryCondition::Dirichlet);
        let n = family_density_3d(&f, k, 2.0, BoundaryCondition::Neumann);
        // v odd: the two phases differ by vπ
        assert!((d + n).abs() < 1e-13 * d.abs().max(1.0));
    }

    #[test]
    fn single_family_transform_converges_to_closed_form() {
        let g = Geometry::new(2.0).unwrap();
        let p = DensityParams {
            w_max: 0,
            v_max: 1,
            ..Default::default()
        };
        // the (1, 0) family has length 2(α − 1) = 2
        let k = 200.0 / 2.0;
        let c = rho_osc_12_3d_transform(OrbitKind::TypeII, k, &g, &p).unwrap();
        assert!(c.deviation < 0.05, "{c:?}");
        let c_far = rho_osc_12_3d_transform(OrbitKind::TypeII, 4.0 * k, &g, &p).unwrap();
        assert!(c_far.deviation < c.deviation);
    }

    #[test]
    fn rejects_nonpositive_wavenumber() {
        let g = Geometry::new(2.0).unwrap();
        assert!(rho_osc_annulus_2d(OrbitKind::TypeI, 0.0, &g, &DensityParams::default()).is_err());
    }
}
