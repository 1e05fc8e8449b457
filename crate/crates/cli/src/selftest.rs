//! Invariant suites run by `selftest`. Each suite reports one metric and
//! the bound it is held to; a suite that cannot be evaluated fails.

use coaxial_casimir::observables::{find_crossover, log_grid, pressure, DerivativeMode, Method, ObservableParams};
use coaxial_casimir::proximity::{energy_pfa, PfaVariant};
use coaxial_casimir::semiclassical::{
    energy_sem, energy_sem_w0_closed, inner_cylinder_energy_sem, inner_cylinder_family_energy, BoundaryCondition,
    Geometry,
};
use coaxial_casimir::specfun::bessel_ik_log;
use coaxial_casimir::Result;

use crate::commands::Report;
use crate::output::{Cell, Record, Table};

/// Metric must not exceed the bound.
const AT_MOST: bool = false;
/// Metric must exceed the bound.
const ABOVE: bool = true;

struct Suite {
    name: &'static str,
    bound: f64,
    direction: bool,
    metric: fn(&ObservableParams) -> Result<f64>,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "bessel-wronskian",
        bound: 1e-11,
        direction: AT_MOST,
        metric: bessel_wronskian,
    },
    Suite {
        name: "bessel-recurrence",
        bound: 1e-10,
        direction: AT_MOST,
        metric: bessel_recurrence,
    },
    Suite {
        name: "w0-closed-form",
        bound: 1e-12,
        direction: AT_MOST,
        metric: w0_closed_form,
    },
    Suite {
        name: "pfa-ordering",
        bound: 0.0,
        direction: AT_MOST,
        metric: pfa_ordering,
    },
    Suite {
        name: "derivative-consistency",
        bound: 1e-6,
        direction: AT_MOST,
        metric: derivative_consistency,
    },
    Suite {
        name: "isolated-cylinder",
        bound: 0.0,
        direction: AT_MOST,
        metric: isolated_cylinder,
    },
    Suite {
        name: "rho12-positive",
        bound: 0.0,
        direction: ABOVE,
        metric: rho12_positive,
    },
    Suite {
        name: "crossover",
        bound: 0.1,
        direction: AT_MOST,
        metric: crossover_offset,
    },
];

/// Largest `|y·W + 1|` over a 100 × 100 log grid with `n ≤ 1000`,
/// `10⁻³ ≤ y ≤ 10⁴`.
fn bessel_wronskian(_: &ObservableParams) -> Result<f64> {
    let orders = log_grid(1.0, 1001.0, 100)?;
    let args = log_grid(1e-3, 1e4, 100)?;
    let mut worst: f64 = 0.0;
    for &o in &orders {
        let n = o.round() as u32 - 1;
        for &y in &args {
            let s = bessel_ik_log(n, y)?;
            worst = worst.max((s.wronskian_times_y() + 1.0).abs());
        }
    }
    Ok(worst)
}

/// Largest relative residual of `I_{n−1} − I_{n+1} = (2n/y)Iₙ` and
/// `K_{n+1} − K_{n−1} = (2n/y)Kₙ`, divided through by `Iₙ` (`Kₙ`) and
/// scaled by the largest remaining term.
fn bessel_recurrence(_: &ObservableParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in [1u32, 2, 5, 20, 49, 50, 51, 120, 400] {
        for &y in &log_grid(1e-2, 1e3, 25)? {
            let lo = bessel_ik_log(n - 1, y)?;
            let mid = bessel_ik_log(n, y)?;
            let hi = bessel_ik_log(n + 1, y)?;
            let c = 2.0 * n as f64 / y;
            let (i_lo, i_hi) = (
                (lo.log_i_scaled - mid.log_i_scaled).exp(),
                (hi.log_i_scaled - mid.log_i_scaled).exp(),
            );
            let (k_lo, k_hi) = (
                (lo.log_k_scaled - mid.log_k_scaled).exp(),
                (hi.log_k_scaled - mid.log_k_scaled).exp(),
            );
            worst = worst
                .max((i_lo - i_hi - c).abs() / i_lo.max(c))
                .max((k_hi - k_lo - c).abs() / k_hi);
        }
    }
    Ok(worst)
}

fn w0_closed_form(p: &ObservableParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in [1.1, 2.0, 5.0, 10.0] {
        let s = energy_sem(&Geometry::new(a)?, &p.semi)?;
        let c = energy_sem_w0_closed(a);
        worst = worst.max(((s.w0_subtotal - c) / c).abs());
    }
    Ok(worst)
}

/// Number of grid points violating inner < geometric < outer or the
/// bitwise identity with the bouncing-ball closed form.
fn pfa_ordering(_: &ObservableParams) -> Result<f64> {
    let mut bad = 0;
    for a in log_grid(1.001, 100.0, 200)? {
        let i = energy_pfa(a, PfaVariant::InnerArea);
        let g = energy_pfa(a, PfaVariant::GeometricMean);
        let o = energy_pfa(a, PfaVariant::OuterArea);
        if !(i < g && g < o) || g != energy_sem_w0_closed(a) {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

/// Largest relative gap between analytic and five-point pressures at
/// `α = 1.5, 3`. Integer-ratio points such as `α = 2`, where families
/// graze and the semiclassical sum has a square-root kink, are avoided.
fn derivative_consistency(p: &ObservableParams) -> Result<f64> {
    let methods = [
        Method::Semiclassical,
        Method::Pfa(PfaVariant::InnerArea),
        Method::Pfa(PfaVariant::OuterArea),
        Method::Pfa(PfaVariant::GeometricMean),
    ];
    let mut worst: f64 = 0.0;
    for a in [1.5, 3.0] {
        for m in methods {
            let an = pressure(m, a, DerivativeMode::Analytic, p)?;
            let fd = pressure(m, a, DerivativeMode::CentralDifference, p)?;
            worst = worst.max(((an.rho - fd.rho) / an.rho).abs());
        }
    }
    Ok(worst)
}

/// Largest `|E_D + E_N|` over the inner-polygon families, plus the total.
fn isolated_cylinder(_: &ObservableParams) -> Result<f64> {
    let mut worst = inner_cylinder_energy_sem().abs();
    for w in 1..=10 {
        for v in 2 * w..=50 {
            let d = inner_cylinder_family_energy(v, w, BoundaryCondition::Dirichlet)?;
            let n = inner_cylinder_family_energy(v, w, BoundaryCondition::Neumann)?;
            worst = worst.max((d + n).abs());
        }
    }
    Ok(worst)
}

/// Smallest `ρ₁₂` on eight points of `[1.02, 10]`.
fn rho12_positive(p: &ObservableParams) -> Result<f64> {
    let mut least = f64::INFINITY;
    for a in log_grid(1.02, 10.0, 8)? {
        least = least.min(pressure(Method::Exact, a, DerivativeMode::CentralDifference, p)?.rho);
    }
    Ok(least)
}

/// `|α* − 3.15|`.
fn crossover_offset(p: &ObservableParams) -> Result<f64> {
    Ok((find_crossover(p)? - 3.15).abs())
}

pub fn run(params: &ObservableParams) -> Report {
    let mut report = Report {
        table: Table::new(vec!["suite", "status", "metric", "bound"]),
        ..Default::default()
    };
    let mut passed = 0u64;
    for s in SUITES {
        let (status, metric) = match (s.metric)(params) {
            Ok(m) => {
                let ok = if s.direction == ABOVE {
                    m > s.bound
                } else {
                    m <= s.bound
                };
                (ok, Cell::Num(m))
            }
            Err(e) => {
                let mut r = Record::default();
                r.push("suite", Cell::Text(s.name.into()));
                r.push("message", Cell::Text(e.to_string()));
                report.diagnostics.errors.push(r);
                (false, Cell::Missing)
            }
        };
        passed += status as u64;
        report.table.push(vec![
            Cell::Text(s.name.into()),
            Cell::Text(if status { "PASS" } else { "FAIL" }.into()),
            metric,
            Cell::Num(s.bound),
        ]);
    }
    report.diagnostics.fields.push("passed", Cell::Int(passed));
    report
        .diagnostics
        .fields
        .push("failed", Cell::Int(SUITES.len() as u64 - passed));
    report.breach = passed < SUITES.len() as u64;
    report
}
