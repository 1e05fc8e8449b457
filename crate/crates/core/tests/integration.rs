use std::f64::consts::PI;

use rayon::prelude::*;

use coaxial_casimir::exact::{energy_exact_12, integral_n, log_f12, ExactParams};
use coaxial_casimir::observables::{log_grid, pressure, DerivativeMode, Method, ObservableParams};
use coaxial_casimir::semiclassical::{energy_sem, Geometry, SemiParams};

fn pfa_coefficient() -> f64 {
    PI.powi(3) / 360.0
}

#[test]
fn exact_energy_is_positive_and_decreasing() {
    let p = ExactParams::default();
    let grid = log_grid(1.02, 10.0, 15).unwrap();
    let eps: Vec<f64> = grid.iter().map(|&a| energy_exact_12(a, &p).unwrap().epsilon).collect();
    assert!(eps.iter().all(|&e| e > 0.0));
    assert!(eps.windows(2).all(|w| w[1] < w[0]), "{eps:?}");
}

#[test]
fn tighter_tolerance_stays_within_error_estimate() {
    for alpha in [1.05, 1.5, 4.0] {
        let base = ExactParams::default();
        let tight = ExactParams {
            rel_tol: 0.5 * base.rel_tol,
            ..base
        };
        let a = energy_exact_12(alpha, &base).unwrap();
        let b = energy_exact_12(alpha, &tight).unwrap();
        assert!((a.epsilon - b.epsilon).abs() <= a.error_estimate, "alpha={alpha}");
    }
}

/// Composite Simpson rule with `2m` panels.
fn simpson(f: impl Fn(f64) -> f64 + Sync, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let inner: f64 = (1..2 * m)
        .into_par_iter()
        .map(|i| f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    h / 3.0 * (f(a) + inner + f(b))
}

#[test]
fn y_integral_matches_dense_simpson() {
    let p = ExactParams::default();
    for (n, alpha) in [(1, 1.5), (3, 2.0), (10, 1.2), (30, 3.0), (100, 1.05)] {
        let ours = integral_n(n, alpha, &p).unwrap();
        let y_max = p.y_cut_factor / (alpha - 1.0) + n as f64;
        let reference = simpson(
            |y| {
                if y == 0.0 {
                    0.0
                } else {
                    y * log_f12(n, y, alpha).unwrap()
                }
            },
            0.0,
            y_max,
            200_000,
        );
        assert!(
            ((ours.value - reference) / reference).abs() < 1e-7,
            "n={n} alpha={alpha}: {} vs {reference}",
            ours.value
        );
    }
}

#[test]
fn small_gap_terms_decay_at_twice_the_gap() {
    let alpha = 1.01;
    let e = energy_exact_12(alpha, &ExactParams::default()).unwrap();
    let term = |n: u32| e.per_n_terms.iter().find(|t| t.0 == n).unwrap().1;
    let slope = (term(600).ln() - term(400).ln()) / 200.0;
    let want = -2.0 * (alpha - 1.0);
    assert!(((slope - want) / want).abs() < 0.1, "slope {slope}");
}

#[test]
fn proximity_limit_is_approached_monotonically() {
    let p = ExactParams::default();
    let offsets: Vec<f64> = [1.02, 1.01, 1.005]
        .iter()
        .map(|&a| ((a - 1.0f64).powi(3) * energy_exact_12(a, &p).unwrap().epsilon / pfa_coefficient() - 1.0).abs())
        .collect();
    assert!(offsets.windows(2).all(|w| w[1] < w[0]), "{offsets:?}");
}

#[test]
fn semiclassical_energy_is_decreasing() {
    let p = SemiParams::default();
    let eps: Vec<f64> = log_grid(1.05, 20.0, 60)
        .unwrap()
        .iter()
        .map(|&a| energy_sem(&Geometry::new(a).unwrap(), &p).unwrap().epsilon)
        .collect();
    assert!(eps.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn semiclassical_energy_is_continuous_at_grazing() {
    let p = SemiParams::default();
    let at = |a: f64| energy_sem(&Geometry::new(a).unwrap(), &p).unwrap().epsilon;
    for alpha in [2.0, 2f64.sqrt(), 1.0 / (PI / 5.0).cos()] {
        let mid = at(alpha);
        for h in [1e-9, -1e-9] {
            assert!(((at(alpha + h) - mid) / mid).abs() < 1e-7, "alpha={alpha}");
        }
    }
}

#[test]
fn semiclassical_energy_follows_the_proximity_law() {
    let alpha = 1.005;
    let s = energy_sem(&Geometry::new(alpha).unwrap(), &SemiParams::default()).unwrap();
    let r = (alpha - 1.0f64).powi(3) * s.epsilon / pfa_coefficient();
    assert!((r - 1.0).abs() < 0.01, "{r}");
}

#[test]
fn interaction_pressure_is_positive() {
    let params = ObservableParams::default();
    for a in log_grid(1.02, 10.0, 6).unwrap() {
        let p = pressure(Method::Exact, a, DerivativeMode::CentralDifference, &params).unwrap();
        assert!(p.rho > 0.0, "alpha={a}");
    }
}

#[test]
fn derivative_modes_agree_away_from_grazing() {
    let params = ObservableParams::default();
    for alpha in [1.05, 1.5, 2.7, 3.3, 6.5] {
        let an = pressure(Method::Semiclassical, alpha, DerivativeMode::Analytic, &params).unwrap();
        let fd = pressure(Method::Semiclassical, alpha, DerivativeMode::CentralDifference, &params).unwrap();
        assert!(
            (an.rho - fd.rho).abs() <= an.error_estimate + fd.error_estimate,
            "alpha={alpha}: {} vs {} (errors {} {})",
            an.rho,
            fd.rho,
            an.error_estimate,
            fd.error_estimate
        );
    }
}
