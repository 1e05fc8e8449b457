use coaxial_casimir::exact::energy_exact_full;
use coaxial_casimir::observables::{
    compare_methods, energy, figure4_rows, figure5_rows, find_crossover, find_crossover_sem, linear_grid, log_grid,
    pressure, pressure_full_exact, ComparisonRow, DerivativeMode, Method, CROSSOVER_BRACKET, CROSSOVER_TOL,
};
use coaxial_casimir::proximity::PfaVariant;
use coaxial_casimir::{CasimirError, Result};

use crate::config::{CommandKind, RunConfig, Selection, Spacing};
use crate::output::{Cell, Diagnostics, Record, Table};
use crate::selftest;
use crate::CliError;

/// Table, diagnostics and the first failure of a run. `breach` marks a
/// failed self-test suite.
#[derive(Debug, Default)]
pub struct Report {
    pub table: Table,
    pub diagnostics: Diagnostics,
    pub failure: Option<CliError>,
    pub breach: bool,
}

impl Report {
    fn new(columns: Vec<&'static str>) -> Self {
        Report {
            table: Table::new(columns),
            ..Default::default()
        }
    }

    fn fail(&mut self, context: (&str, Cell), e: CasimirError) {
        let mut r = Record::default();
        r.push(context.0, context.1);
        r.push("message", Cell::Text(e.to_string()));
        self.diagnostics.errors.push(r);
        if self.failure.is_none() {
            self.failure = Some(e.into());
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Report {
    match cfg.command {
        CommandKind::Energy => point(cfg, false),
        CommandKind::Pressure => point(cfg, true),
        CommandKind::Sweep => sweep(cfg),
        CommandKind::Figure4 => figure(
            cfg,
            figure4_rows,
            &["alpha", "eps_exact12", "eps_sem", "rho_exact12", "rho_sem", "err_est"],
        ),
        CommandKind::Figure5 => figure(
            cfg,
            figure5_rows,
            &["alpha", "eps_sem", "eps_pfa_inner", "eps_pfa_outer", "err_est"],
        ),
        CommandKind::Crossover => crossover(cfg),
        CommandKind::Selftest => selftest::run(&cfg.params),
    }
}

fn point(cfg: &RunConfig, is_pressure: bool) -> Report {
    let alpha = cfg.alpha.expect("resolved point command has alpha");
    let p = &cfg.params;
    let mut report = if is_pressure {
        Report::new(vec!["alpha", "method", "rho", "derivative", "err_est"])
    } else {
        Report::new(vec!["alpha", "method", "eps", "err_est"])
    };
    for &sel in &cfg.methods {
        let name = Cell::Text(sel.name().to_string());
        let row = if is_pressure {
            let r = match sel {
                Selection::ExactFull => pressure_full_exact(alpha, p),
                Selection::Method(m) => pressure(m, alpha, cfg.mode, p),
            };
            r.map(|r| {
                let mode = match r.derivative_mode {
                    DerivativeMode::Analytic => "analytic",
                    DerivativeMode::CentralDifference => "central",
                };
                vec![Cell::Num(r.rho), Cell::Text(mode.into()), Cell::Num(r.error_estimate)]
            })
        } else {
            let r = match sel {
                Selection::ExactFull => energy_exact_full(alpha, &p.exact).map(|e| (e.epsilon, e.error_estimate)),
                Selection::Method(m) => energy(m, alpha, p).map(|e| (e.epsilon, e.error)),
            };
            r.map(|(eps, err)| vec![Cell::Num(eps), Cell::Num(err)])
        };
        let cells = match row {
            Ok(cells) => cells,
            Err(e) => {
                report.fail(("method", name.clone()), e);
                vec![Cell::Missing; report.table.columns.len() - 2]
            }
        };
        let mut full = vec![Cell::Num(alpha), name];
        full.extend(cells);
        report.table.push(full);
    }
    report
}

fn column(row: &ComparisonRow, name: &str) -> Cell {
    match name {
        "alpha" => Cell::Num(row.alpha),
        "eps_exact12" => Cell::opt(row.eps_exact12),
        "eps_sem" => Cell::opt(row.eps_sem),
        "eps_pfa_inner" => Cell::opt(row.eps_pfa_inner),
        "eps_pfa_outer" => Cell::opt(row.eps_pfa_outer),
        "eps_pfa_geom" => Cell::opt(row.eps_pfa_geom),
        "rho_exact12" => Cell::opt(row.rho_exact12),
        "rho_sem" => Cell::opt(row.rho_sem),
        "rho_full_exact" => Cell::opt(row.rho_full_exact),
        "err_est" => {
            if row.error.is_some() {
                Cell::Missing
            } else {
                Cell::Num(row.err_est)
            }
        }
        _ => unreachable!("unknown column {name}"),
    }
}

fn sweep_columns(methods: &[Method]) -> Vec<&'static str> {
    let mut cols = vec!["alpha"];
    let has = |m: Method| methods.contains(&m);
    if has(Method::Exact) {
        cols.push("eps_exact12");
    }
    if has(Method::Semiclassical) {
        cols.push("eps_sem");
    }
    for (v, c) in [
        (PfaVariant::InnerArea, "eps_pfa_inner"),
        (PfaVariant::OuterArea, "eps_pfa_outer"),
        (PfaVariant::GeometricMean, "eps_pfa_geom"),
    ] {
        if has(Method::Pfa(v)) {
            cols.push(c);
        }
    }
    if has(Method::Exact) {
        cols.push("rho_exact12");
    }
    if has(Method::Semiclassical) {
        cols.push("rho_sem");
    }
    if has(Method::Exact) {
        cols.push("rho_full_exact");
    }
    cols.push("err_est");
    cols
}

fn table_from_rows(columns: &[&'static str], rows: &[ComparisonRow]) -> Report {
    let mut report = Report::new(columns.to_vec());
    for row in rows {
        report.table.push(columns.iter().map(|c| column(row, c)).collect());
        if let Some(msg) = &row.error {
            let mut r = Record::default();
            r.push("alpha", Cell::Num(row.alpha));
            r.push("message", Cell::Text(msg.clone()));
            report.diagnostics.errors.push(r);
        }
    }
    let fields = &mut report.diagnostics.fields;
    fields.push("rows", Cell::Int(rows.len() as u64));
    fields.push(
        "failed_rows",
        Cell::Int(rows.iter().filter(|r| r.error.is_some()).count() as u64),
    );
    let max = |f: fn(&ComparisonRow) -> Option<f64>| rows.iter().filter_map(f).reduce(f64::max);
    if let Some(d) = max(|r| r.eps_deviation) {
        fields.push("max_eps_deviation", Cell::Num(d));
    }
    if let Some(d) = max(|r| r.rho_deviation) {
        fields.push("max_rho_deviation", Cell::Num(d));
    }
    if rows.iter().any(|r| r.error.is_some()) {
        // Row failures keep the table but make the exit status nonzero.
        report.failure = Some(CliError::Compute(CasimirError::Convergence(format!(
            "{} of {} rows failed",
            rows.iter().filter(|r| r.error.is_some()).count(),
            rows.len()
        ))));
    }
    report
}

fn sweep(cfg: &RunConfig) -> Report {
    let s = cfg.sweep.expect("resolved sweep has a range");
    let grid = match s.spacing {
        Spacing::Linear => linear_grid(s.alpha_min, s.alpha_max, s.points),
        Spacing::Log => log_grid(s.alpha_min, s.alpha_max, s.points),
    };
    let grid = match grid {
        Ok(g) => g,
        Err(e) => {
            return Report {
                failure: Some(e.into()),
                ..Default::default()
            }
        }
    };
    let methods: Vec<Method> = cfg
        .methods
        .iter()
        .filter_map(|s| match s {
            Selection::Method(m) => Some(*m),
            Selection::ExactFull => None,
        })
        .collect();
    let rows = compare_methods(&grid, &methods, &cfg.params);
    table_from_rows(&sweep_columns(&methods), &rows)
}

fn figure(
    cfg: &RunConfig,
    rows: fn(&coaxial_casimir::observables::ObservableParams) -> Result<Vec<ComparisonRow>>,
    columns: &[&'static str],
) -> Report {
    match rows(&cfg.params) {
        Ok(r) => table_from_rows(columns, &r),
        Err(e) => Report {
            failure: Some(e.into()),
            table: Table::new(columns.to_vec()),
            ..Default::default()
        },
    }
}

fn crossover(cfg: &RunConfig) -> Report {
    let sel = cfg.methods[0];
    let mut report = Report::new(vec!["alpha", "method", "err_est"]);
    let r = match sel {
        Selection::Method(Method::Semiclassical) => find_crossover_sem(&cfg.params),
        _ => find_crossover(&cfg.params),
    };
    let name = Cell::Text(sel.name().to_string());
    match r {
        Ok(a) => report
            .table
            .push(vec![Cell::Num(a), name, Cell::Num(0.5 * CROSSOVER_TOL)]),
        Err(e) => {
            report.table.push(vec![Cell::Missing, name.clone(), Cell::Missing]);
            report.fail(("method", name), e);
        }
    }
    let f = &mut report.diagnostics.fields;
    f.push("bracket_lo", Cell::Num(CROSSOVER_BRACKET.0));
    f.push("bracket_hi", Cell::Num(CROSSOVER_BRACKET.1));
    report
}
