//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 3, 5, 8 and 10 do not hold for this implementation and print
//! FAIL with the measured numbers. They are listed in `KNOWN_FAILURES`; any
//! other failure, or a known failure that starts passing, makes the run
//! exit nonzero so that the list stays accurate.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use coaxial_casimir::exact::{energy_exact_12, log_f12, smallgap_log_f_approx, ExactParams};
use coaxial_casimir::observables::{
    figure4_rows, find_crossover, log_grid, pressure, DerivativeMode, Method, ObservableParams,
};
use coaxial_casimir::proximity::PfaVariant;
use coaxial_casimir::semiclassical::{
    energy_sem, energy_sem_w0_closed, energy_sem_wge1_smallgap, inner_cylinder_energy_sem, orbit_length,
    regulated_moment, BoundaryCondition, Geometry, OrbitKind, SemiParams, ZETA3,
};
use coaxial_casimir::specfun::{bessel_ik_log, bessel_ik_scaled};
use coaxial_casimir::Result;

const KNOWN_FAILURES: [u32; 4] = [3, 5, 8, 10];

type Check = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pfa_recovery() -> Result<Outcome> {
    let target = PI.powi(3) / 360.0;
    let p = ExactParams::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (alpha, tol) in [(1.02, 0.03), (1.01, 0.02)] {
        let e = energy_exact_12(alpha, &p)?;
        let ratio = (alpha - 1.0f64).powi(3) * e.epsilon / target;
        pass &= (ratio - 1.0).abs() < tol;
        parts.push(format!("alpha={alpha}: ratio {ratio:.5} (tol {tol})"));
    }
    Ok(Outcome {
        pass,
        detail: parts.join(", "),
    })
}

fn w0_identity() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for alpha in [1.1, 2.0, 5.0, 10.0] {
        let s = energy_sem(&Geometry::new(alpha)?, &SemiParams::default())?;
        let c = energy_sem_w0_closed(alpha);
        worst = worst.max(((s.w0_subtotal - c) / c).abs());
    }
    Ok(Outcome {
        pass: worst < 1e-12,
        detail: format!("max rel diff {worst:.2e} (tol 1e-12)"),
    })
}

fn agreement_band() -> Result<Outcome> {
    let params = ObservableParams::default();
    let mut worst: (f64, f64) = (0.0, 0.0);
    let mut over = Vec::new();
    for i in 1..=20 {
        let alpha = 1.1 * (4.0f64 / 1.1).powf(i as f64 / 21.0);
        let exact = pressure(Method::Exact, alpha, DerivativeMode::CentralDifference, &params)?;
        let sem = pressure(Method::Semiclassical, alpha, DerivativeMode::Analytic, &params)?;
        let dev = ((sem.rho - exact.rho) / exact.rho).abs();
        if dev >= 0.10 {
            over.push(format!("{alpha:.3}"));
        }
        if dev > worst.1 {
            worst = (alpha, dev);
        }
    }
    Ok(Outcome {
        pass: over.is_empty(),
        detail: format!(
            "max |rho_sem/rho_12 - 1| = {:.4} at alpha={:.3} (tol 0.10); {} points above: [{}]",
            worst.1,
            worst.0,
            over.len(),
            over.join(", ")
        ),
    })
}

fn crossover() -> Result<Outcome> {
    let a = find_crossover(&ObservableParams::default())?;
    Ok(Outcome {
        pass: (3.05..=3.25).contains(&a),
        detail: format!("alpha* = {a:.5} (window [3.05, 3.25])"),
    })
}

fn wge1_share() -> Result<Outcome> {
    let p = SemiParams::default();
    let far = energy_sem(&Geometry::new(10.0)?, &p)?;
    let share = far.wge1_subtotal / far.epsilon;
    let near_alpha = 1.01;
    let near = energy_sem(&Geometry::new(near_alpha)?, &p)?;
    let ratio = near.wge1_subtotal / energy_sem_wge1_smallgap(near_alpha);
    // For comparison: the limit of the computed sum at small gap is
    // ζ(3)/(8π³α) with a leading correction 1 − (4/π)√(δ/2).
    let half = ZETA3 / (8.0 * PI.powi(3) * near_alpha);
    let corrected = half * (1.0 - 4.0 / PI * (0.5 * (near_alpha - 1.0)).sqrt());
    let pass_far = share < 0.03;
    let pass_near = (ratio - 1.0).abs() < 0.05;
    Ok(Outcome {
        pass: pass_far && pass_near,
        detail: format!(
            "alpha=10 share {:.4} (< 0.03) {}; alpha=1.01 wge1/[zeta3/(4 pi^3 alpha)] = {ratio:.4} (tol 5%) {}, \
             wge1/[zeta3/(8 pi^3 alpha) corrected] = {:.4}",
            share,
            if pass_far { "ok" } else { "over" },
            if pass_near { "ok" } else { "out" },
            near.wge1_subtotal / corrected
        ),
    })
}

fn isolated_cylinder() -> Result<Outcome> {
    let total = inner_cylinder_energy_sem();
    let mut families = 0;
    let mut worst: f64 = 0.0;
    for w in 1..=10u32 {
        for v in 2 * w..=50 {
            let l = orbit_length(OrbitKind::InnerPolygon, v, w, 2.0)?;
            let d = regulated_moment(l, v, BoundaryCondition::Dirichlet);
            let n = regulated_moment(l, v, BoundaryCondition::Neumann);
            worst = worst.max((d + n).abs());
            families += 1;
        }
    }
    Ok(Outcome {
        pass: total == 0.0 && worst == 0.0,
        detail: format!("total {total:e}; max |D + N| over {families} families {worst:e}"),
    })
}

/// `Iₙ(y)` by its power series.
fn i_series(n: u32, y: f64) -> f64 {
    let q = 0.25 * y * y;
    let mut t = (0.5 * y).powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut s = t;
    let mut k = 1.0;
    while t > 1e-18 * s {
        t *= q / (k * (k + n as f64));
        s += t;
        k += 1.0;
    }
    s
}

/// `Kₙ(y)e^y = ∫₀^∞ e^{y(1 − cosh t)} cosh(nt) dt` by the trapezoid rule.
fn k_integral_scaled(n: u32, y: f64) -> f64 {
    let h = 1.0 / 128.0;
    let mut s = 0.5;
    let mut t: f64 = h;
    loop {
        let f = (y * (1.0 - t.cosh()) + n as f64 * t).exp() * 0.5 * (1.0 + (-2.0 * n as f64 * t).exp());
        s += f;
        if f < 1e-20 * s && y * t.sinh() > n as f64 {
            break;
        }
        t += h;
    }
    s * h
}

fn bessel_engine() -> Result<Outcome> {
    let orders = log_grid(1.0, 1001.0, 100)?;
    let args = log_grid(1e-3, 1e4, 100)?;
    let mut wronskian: f64 = 0.0;
    for &o in &orders {
        for &y in &args {
            let s = bessel_ik_log(o.round() as u32 - 1, y)?;
            wronskian = wronskian.max((s.wronskian_times_y() + 1.0).abs());
        }
    }
    let points = [
        (0, 0.1),
        (0, 1.0),
        (0, 10.0),
        (1, 0.05),
        (1, 2.5),
        (1, 20.0),
        (2, 0.7),
        (2, 15.0),
        (3, 4.0),
        (5, 0.3),
        (5, 9.0),
        (8, 1.5),
        (8, 30.0),
        (13, 6.0),
        (21, 2.0),
        (21, 25.0),
        (34, 10.0),
        (55, 0.5),
        (55, 40.0),
        (60, 60.0),
    ];
    let mut oracle: f64 = 0.0;
    for (n, y) in points {
        let s = bessel_ik_scaled(n, y)?;
        let i = i_series(n, y) * (-y).exp();
        let k = k_integral_scaled(n, y);
        oracle = oracle
            .max(((s.i_scaled - i) / i).abs())
            .max(((s.k_scaled - k) / k).abs());
    }
    Ok(Outcome {
        pass: wronskian < 1e-11 && oracle < 1e-10,
        detail: format!(
            "Wronskian max |yW + 1| = {wronskian:.2e} over 10^4 points, n <= 1000, y in [1e-3, 1e4] (tol 1e-11); \
             oracle max rel {oracle:.2e} at 20 points (tol 1e-10)"
        ),
    })
}

fn derivative_consistency() -> Result<Outcome> {
    let params = ObservableParams::default();
    let methods = [
        Method::Semiclassical,
        Method::Pfa(PfaVariant::InnerArea),
        Method::Pfa(PfaVariant::OuterArea),
        Method::Pfa(PfaVariant::GeometricMean),
    ];
    let mut bad = Vec::new();
    let mut worst_ok: f64 = 0.0;
    for alpha in [1.5, 2.0, 3.0] {
        for m in methods {
            let an = pressure(m, alpha, DerivativeMode::Analytic, &params)?;
            let fd = pressure(m, alpha, DerivativeMode::CentralDifference, &params)?;
            let rel = ((an.rho - fd.rho) / an.rho).abs();
            if rel < 1e-6 {
                worst_ok = worst_ok.max(rel);
            } else {
                bad.push(format!("{} at alpha={alpha}: {rel:.2e}", m.tag().name()));
            }
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "max rel diff among passing cases {worst_ok:.2e} (tol 1e-6); over: [{}]",
            bad.join(", ")
        ),
    })
}

fn uniform_expansion() -> Result<Outcome> {
    let alpha = 1.01;
    let mut worst: (f64, u32, f64) = (0.0, 0, 0.0);
    for n in 5..=50u32 {
        for z in log_grid(0.1, 5.0, 40)? {
            let y = z * n as f64;
            let exact = log_f12(n, y, alpha)?;
            let approx = smallgap_log_f_approx(n, y, alpha)?;
            let rel = ((approx - exact) / exact).abs();
            if rel > worst.0 {
                worst = (rel, n, z);
            }
        }
    }
    Ok(Outcome {
        pass: worst.0 < 0.05,
        detail: format!(
            "max rel diff {:.4} at n={}, z={:.3} (tol 0.05)",
            worst.0, worst.1, worst.2
        ),
    })
}

fn figure4_properties() -> Result<Outcome> {
    let rows = figure4_rows(&ObservableParams::default())?;
    if let Some(r) = rows.iter().find(|r| r.error.is_some()) {
        return Ok(Outcome {
            pass: false,
            detail: format!("row at alpha={} failed", r.alpha),
        });
    }
    let col = |f: fn(&coaxial_casimir::observables::ComparisonRow) -> Option<f64>| {
        rows.iter().map(|r| f(r).unwrap_or(f64::NAN)).collect::<Vec<_>>()
    };
    let exact = col(|r| r.eps_exact12);
    let sem = col(|r| r.eps_sem);
    let dev = col(|r| r.eps_deviation);
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let dev_growing = decreasing(&dev.iter().map(|d| -d).collect::<Vec<_>>());
    let (peak_idx, peak) = dev
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |a, (i, d)| if d > a.1 { (i, d) } else { a });
    Ok(Outcome {
        pass: decreasing(&exact) && decreasing(&sem) && dev_growing,
        detail: format!(
            "eps_12 decreasing {}, eps_sem decreasing {}, energy deviation increasing {} \
             (peak {:.5} at alpha={:.3}, {:.5} at alpha=10)",
            decreasing(&exact),
            decreasing(&sem),
            dev_growing,
            peak,
            rows[peak_idx].alpha,
            dev.last().copied().unwrap_or(f64::NAN)
        ),
    })
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 10] = [
        (1, "PFA recovery of the exact energy", pfa_recovery),
        (2, "w=0 closed form", w0_identity),
        (3, "10% pressure agreement on (1.1, 4)", agreement_band),
        (4, "pressure crossover", crossover),
        (5, "w>=1 share and small-gap limit", wge1_share),
        (6, "isolated-cylinder cancellation", isolated_cylinder),
        (7, "Bessel engine", bessel_engine),
        (8, "analytic vs finite-difference pressure", derivative_consistency),
        (9, "uniform-expansion cross-check", uniform_expansion),
        (10, "figure-4 dataset properties", figure4_properties),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&id);
        println!(
            "criterion {id}: {} {name}: {} [{secs:.1} s]{}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            if known && !outcome.pass { " (known)" } else { "" }
        );
        if outcome.pass == known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
