use std::f64::consts::PI;

use super::Geometry;
use crate::error::{CasimirError, Result};

/// `|α cos(πw/v) − 1|` below this counts as grazing incidence.
pub(crate) const GRAZING_TOL: f64 = 1e-12;

/// Relative distance from an integer below which `wπ/arccos(1/α)` is taken
/// to be that integer.
const INTEGER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    /// Polygons inscribed in the outer circle that miss the inner one.
    TypeI,
    /// Orbits bouncing between the outer and the inner circle.
    TypeII,
    /// Polygons inscribed in the inner circle (isolated inner cylinder).
    InnerPolygon,
}

/// Smallest admitted `v` for winding number `w`: the least integer with
/// `cos(πw/v) ≥ 1/α`. A grazing family (equality) is admitted; its type-II
/// amplitude vanishes. Returns 1 for `w = 0`.
pub fn v_hat(w: u32, alpha: f64) -> u32 {
    if w == 0 {
        return 1;
    }
    let x = w as f64 * PI / (1.0 / alpha).acos();
    let r = x.round();
    if (x - r).abs() <= INTEGER_TOL * x {
        r as u32
    } else {
        x.ceil() as u32
    }
}

/// True if the `(v, w)` chord is tangent to the inner circle.
pub fn is_grazing(v: u32, w: u32, alpha: f64) -> bool {
    w > 0 && (alpha * (PI * w as f64 / v as f64).cos() - 1.0).abs() <= GRAZING_TOL
}

fn admissible(kind: OrbitKind, v: u32, w: u32, alpha: f64) -> Result<()> {
    let ok = match kind {
        OrbitKind::TypeI => w >= 1 && v >= v_hat(w, alpha),
        OrbitKind::TypeII => v >= 1 && v >= v_hat(w, alpha),
        OrbitKind::InnerPolygon => w >= 1 && v >= 2 * w,
    };
    if ok {
        Ok(())
    } else {
        Err(CasimirError::Domain(format!(
            "({v}, {w}) is not an admissible {kind:?} family at alpha = {alpha}"
        )))
    }
}

/// Length of the `(v, w)` orbit in units of the inner radius.
pub fn orbit_length(kind: OrbitKind, v: u32, w: u32, alpha: f64) -> Result<f64> {
    Geometry::new(alpha)?;
    admissible(kind, v, w, alpha)?;
    let vf = v as f64;
    let s = (PI * w as f64 / vf).sin();
    Ok(match kind {
        OrbitKind::TypeI => 2.0 * vf * alpha * s,
        OrbitKind::TypeII if w == 0 => 2.0 * vf * (alpha - 1.0),
        OrbitKind::TypeII => {
            let c = (PI * w as f64 / vf).cos();
            2.0 * vf * (1.0 + alpha * alpha - 2.0 * alpha * c).sqrt()
        }
        OrbitKind::InnerPolygon => 2.0 * vf * s,
    })
}

/// `A_vw = α^{−3/2} √((α − c)(αc − 1))`, `c = cos(πw/v)`, zero at grazing.
pub(crate) fn type_ii_amplitude(v: u32, w: u32, alpha: f64) -> f64 {
    if w == 0 {
        return (alpha - 1.0) / alpha.powf(1.5);
    }
    if is_grazing(v, w, alpha) {
        return 0.0;
    }
    let c = (PI * w as f64 / v as f64).cos();
    ((alpha - c) * (alpha * c - 1.0)).max(0.0).sqrt() / alpha.powf(1.5)
}

/// One periodic-orbit family with its length, amplitude and degeneracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitFamily {
    pub kind: OrbitKind,
    pub v: u32,
    pub w: u32,
    pub length: f64,
    /// `A_vw` for type II, `length/v²` for polygons.
    pub amplitude: f64,
    /// `f_vw` for type II, `g_vw` for inner polygons, 1 for type I.
    pub weight: f64,
}

impl OrbitFamily {
    pub fn new(kind: OrbitKind, v: u32, w: u32, geometry: &Geometry) -> Result<Self> {
        let alpha = geometry.alpha();
        let length = orbit_length(kind, v, w, alpha)?;
        let vf = v as f64;
        let (amplitude, weight) = match kind {
            OrbitKind::TypeI => (length / (vf * vf), 1.0),
            OrbitKind::TypeII => (type_ii_amplitude(v, w, alpha), if w == 0 { 1.0 } else { 2.0 }),
            OrbitKind::InnerPolygon => (length / (vf * vf), if v == 2 * w { 1.0 } else { 2.0 }),
        };
        Ok(OrbitFamily {
            kind,
            v,
            w,
            length,
            amplitude,
            weight,
        })
    }

    /// All admitted families of one kind with `w ≤ w_max`, `v ≤ v_max`,
    /// ordered by `w` then `v`.
    pub fn enumerate(kind: OrbitKind, geometry: &Geometry, w_max: u32, v_max: u32) -> Vec<OrbitFamily> {
        let alpha = geometry.alpha();
        let w_min = if kind == OrbitKind::TypeII { 0 } else { 1 };
        let mut out = Vec::new();
        for w in w_min..=w_max {
            let lo = match kind {
                OrbitKind::InnerPolygon => 2 * w,
                _ => v_hat(w, alpha),
            };
            for v in lo.max(1)..=v_max {
                if let Ok(f) = OrbitFamily::new(kind, v, w, geometry) {
                    out.push(f);
                }
            }
        }
        out
    }
}
