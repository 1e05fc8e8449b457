//! Command-line flags, the optional `key = value` file, and their merge into
//! a validated [`RunConfig`]. Flags win over the file, the file over the
//! built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coaxial_casimir::exact::MIN_ALPHA;
use coaxial_casimir::observables::{DerivativeMode, Method, ObservableParams};
use coaxial_casimir::proximity::PfaVariant;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "coaxial-casimir",
    version,
    about = "Casimir energies and pressures of two concentric conducting cylinders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output encoding
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the table here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps and mode sums
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Relative tolerance of the exact mode sum
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Relative tolerance of the periodic-orbit sum
    #[arg(long, global = true)]
    pub sem_tol: Option<f64>,

    /// File of `key = value` lines supplying defaults for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensionless energy at one radius ratio, one record per method
    Energy(PointArgs),
    /// Dimensionless pressure on the inner cylinder at one radius ratio
    Pressure(PressureArgs),
    /// Method comparison over a grid of radius ratios
    Sweep(SweepArgs),
    /// Exact and semiclassical energies and pressures over [1.1, 10]
    Figure4,
    /// Semiclassical and proximity energies over [1.02, 2.5]
    Figure5,
    /// Radius ratio where the full pressure changes sign
    Crossover(CrossoverArgs),
    /// Run the built-in invariant checks
    Selftest,
}

#[derive(Args, Debug, Default)]
pub struct PointArgs {
    /// Radius ratio b/a
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Comma-separated methods: exact, exact-full, sem, pfa-inner, pfa-outer, pfa-geom
    #[arg(long, value_delimiter = ',')]
    pub method: Option<Vec<String>>,
}

#[derive(Args, Debug, Default)]
pub struct PressureArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Derivative of the energy: analytic where available, or central difference
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// First radius ratio of the grid [default: 1.1]
    #[arg(long)]
    pub alpha_min: Option<f64>,
    /// Last radius ratio of the grid [default: 4]
    #[arg(long)]
    pub alpha_max: Option<f64>,
    /// Number of grid points [default: 30]
    #[arg(long)]
    pub points: Option<usize>,
    /// Grid spacing [default: log]
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Comma-separated methods: exact, sem, pfa-inner, pfa-outer, pfa-geom
    #[arg(long, value_delimiter = ',')]
    pub method: Option<Vec<String>>,
}

#[derive(Args, Debug, Default)]
pub struct CrossoverArgs {
    /// Interaction energy used for the full pressure: exact or sem
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Analytic,
    Central,
}

impl From<ModeArg> for DerivativeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Analytic => DerivativeMode::Analytic,
            ModeArg::Central => DerivativeMode::CentralDifference,
        }
    }
}

/// A method as selected on the command line; `exact-full` exists only for
/// single-point energies and pressures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Method(Method),
    ExactFull,
}

impl Selection {
    pub fn name(self) -> &'static str {
        match self {
            Selection::Method(m) => m.tag().name(),
            Selection::ExactFull => "exact-full",
        }
    }

    fn uses_exact(self) -> bool {
        matches!(self, Selection::ExactFull | Selection::Method(Method::Exact))
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exact-full" {
            return Ok(Selection::ExactFull);
        }
        Method::from_name(s)
            .map(Selection::Method)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Energy,
    Pressure,
    Sweep,
    Figure4,
    Figure5,
    Crossover,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

/// Fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub methods: Vec<Selection>,
    pub alpha: Option<f64>,
    pub sweep: Option<SweepRange>,
    pub mode: DerivativeMode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub params: ObservableParams,
}

const ALL_POINT_METHODS: &str = "exact,exact-full,sem,pfa-inner,pfa-outer,pfa-geom";
const DEFAULT_SWEEP_METHODS: &str = "exact,sem";

const FILE_KEYS: &[&str] = &[
    "format",
    "out",
    "jobs",
    "rel_tol",
    "sem_tol",
    "alpha",
    "alpha_min",
    "alpha_max",
    "points",
    "spacing",
    "method",
    "mode",
    "exact.n_stop_rule",
    "exact.quad_abs_floor",
    "exact.y_cut_factor",
    "exact.n_cap",
    "exact.max_intervals",
    "sem.w_max",
    "sem.v_hard_cap",
];

/// Parsed `key = value` file. Keys may use `-` or `_`.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = k.trim().replace('-', "_");
            if !FILE_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "config line {}: unknown key `{}`",
                    i + 1,
                    k.trim()
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Config(format!("config key `{key}`: cannot parse `{v}`: {e}")))
            })
            .transpose()
    }

    fn get_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values
            .get(key)
            .map(|v| T::from_str(v, true).map_err(|e| CliError::Config(format!("config key `{key}`: {e}"))))
            .transpose()
    }

    fn get_list(&self, key: &str) -> Option<Vec<String>> {
        self.values
            .get(key)
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
    }
}

fn parse_methods(list: &[String], allow_full: bool) -> Result<Vec<Selection>, CliError> {
    let mut out = Vec::new();
    for name in list {
        let s: Selection = name
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("method: {e}")))?;
        if s == Selection::ExactFull && !allow_full {
            return Err(CliError::Config(
                "method: `exact-full` applies to energy and pressure only; sweeps report rho_full_exact with `exact`"
                    .into(),
            ));
        }
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("method: at least one method is required".into()));
    }
    Ok(out)
}

fn default_list(s: &str) -> Vec<String> {
    s.split(',').map(str::to_string).collect()
}

fn check_alpha(field: &str, alpha: f64, exact: bool) -> Result<(), CliError> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(CliError::Config(format!(
            "{field}: must be finite and > 1, got {alpha}"
        )));
    }
    if exact && alpha <= MIN_ALPHA {
        return Err(CliError::Config(format!(
            "{field}: exact methods need alpha > {MIN_ALPHA}, got {alpha}"
        )));
    }
    Ok(())
}

impl RunConfig {
    /// Merges flags, file and defaults, and validates the result.
    pub fn resolve(cli: Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        Self::resolve_with(cli, &file)
    }

    pub fn resolve_with(cli: Cli, file: &FileConfig) -> Result<Self, CliError> {
        let mut params = ObservableParams::default();
        if let Some(t) = cli.rel_tol.or(file.get("rel_tol")?) {
            params.exact.rel_tol = t;
        }
        if let Some(t) = cli.sem_tol.or(file.get("sem_tol")?) {
            params.semi.tail_rel_tol = t;
        }
        if let Some(v) = file.get("exact.n_stop_rule")? {
            params.exact.n_stop_rule = v;
        }
        if let Some(v) = file.get("exact.quad_abs_floor")? {
            params.exact.quad_abs_floor = v;
        }
        if let Some(v) = file.get("exact.y_cut_factor")? {
            params.exact.y_cut_factor = v;
        }
        if let Some(v) = file.get("exact.n_cap")? {
            params.exact.n_cap = v;
        }
        if let Some(v) = file.get("exact.max_intervals")? {
            params.exact.max_intervals = v;
        }
        if let Some(v) = file.get("sem.w_max")? {
            params.semi.w_max = v;
        }
        if let Some(v) = file.get("sem.v_hard_cap")? {
            params.semi.v_hard_cap = v;
        }
        params
            .exact
            .validate()
            .map_err(|e| CliError::Config(format!("rel_tol/exact: {e}")))?;
        params
            .semi
            .validate()
            .map_err(|e| CliError::Config(format!("sem_tol/sem: {e}")))?;

        let format = match cli.format {
            Some(f) => f,
            None => file.get_enum("format")?.unwrap_or(Format::Csv),
        };
        let out = cli.out.or(file.get("out")?);
        let jobs = cli.jobs.or(file.get("jobs")?);
        if jobs == Some(0) {
            return Err(CliError::Config("jobs: must be at least 1".into()));
        }

        let mut cfg = RunConfig {
            command: CommandKind::Selftest,
            methods: Vec::new(),
            alpha: None,
            sweep: None,
            mode: DerivativeMode::Analytic,
            format,
            out,
            jobs,
            params,
        };

        match cli.command {
            Command::Energy(p) => {
                cfg.command = CommandKind::Energy;
                cfg.resolve_point(p, file)?;
            }
            Command::Pressure(p) => {
                cfg.command = CommandKind::Pressure;
                cfg.mode = match p.mode {
                    Some(m) => m.into(),
                    None => file
                        .get_enum::<ModeArg>("mode")?
                        .map_or(DerivativeMode::Analytic, Into::into),
                };
                cfg.resolve_point(p.point, file)?;
            }
            Command::Sweep(s) => {
                cfg.command = CommandKind::Sweep;
                let list = s
                    .method
                    .or_else(|| file.get_list("method"))
                    .unwrap_or_else(|| default_list(DEFAULT_SWEEP_METHODS));
                cfg.methods = parse_methods(&list, false)?;
                let range = SweepRange {
                    alpha_min: s.alpha_min.or(file.get("alpha_min")?).unwrap_or(1.1),
                    alpha_max: s.alpha_max.or(file.get("alpha_max")?).unwrap_or(4.0),
                    points: s.points.or(file.get("points")?).unwrap_or(30),
                    spacing: match s.spacing {
                        Some(sp) => sp,
                        None => file.get_enum("spacing")?.unwrap_or(Spacing::Log),
                    },
                };
                let exact = cfg.methods.iter().any(|m| m.uses_exact());
                check_alpha("alpha_min", range.alpha_min, exact)?;
                if !(range.alpha_max > range.alpha_min && range.alpha_max.is_finite()) {
                    return Err(CliError::Config(format!(
                        "alpha_max: must be finite and > alpha_min, got {}",
                        range.alpha_max
                    )));
                }
                if range.points < 2 {
                    return Err(CliError::Config(format!(
                        "points: need at least 2, got {}",
                        range.points
                    )));
                }
                cfg.sweep = Some(range);
            }
            Command::Figure4 => {
                cfg.command = CommandKind::Figure4;
                cfg.methods = vec![
                    Selection::Method(Method::Exact),
                    Selection::Method(Method::Semiclassical),
                ];
            }
            Command::Figure5 => {
                cfg.command = CommandKind::Figure5;
                cfg.methods = vec![
                    Selection::Method(Method::Semiclassical),
                    Selection::Method(Method::Pfa(PfaVariant::InnerArea)),
                    Selection::Method(Method::Pfa(PfaVariant::OuterArea)),
                ];
            }
            Command::Crossover(c) => {
                cfg.command = CommandKind::Crossover;
                let name = match c.method {
                    Some(m) => m,
                    None => file.get("method")?.unwrap_or_else(|| "exact".to_string()),
                };
                let s: Selection = name.parse().map_err(|e| CliError::Config(format!("method: {e}")))?;
                if !matches!(s, Selection::Method(Method::Exact | Method::Semiclassical)) {
                    return Err(CliError::Config(format!(
                        "method: crossover accepts exact or sem, got `{s}`"
                    )));
                }
                cfg.methods = vec![s];
            }
            Command::Selftest => {}
        }
        Ok(cfg)
    }

    fn resolve_point(&mut self, p: PointArgs, file: &FileConfig) -> Result<(), CliError> {
        let list = p
            .method
            .or_else(|| file.get_list("method"))
            .unwrap_or_else(|| default_list(ALL_POINT_METHODS));
        self.methods = parse_methods(&list, true)?;
        let alpha = p
            .alpha
            .or(file.get("alpha")?)
            .ok_or_else(|| CliError::Config("alpha: required".into()))?;
        check_alpha("alpha", alpha, self.methods.iter().any(|m| m.uses_exact()))?;
        self.alpha = Some(alpha);
        Ok(())
    }

    /// Echo of the run for the JSON encoding.
    pub fn echo(&self) -> ConfigEcho {
        let p = &self.params;
        ConfigEcho {
            command: self.command,
            methods: self.methods.iter().map(|m| m.name()).collect(),
            alpha: self.alpha,
            alpha_min: self.sweep.map(|s| s.alpha_min),
            alpha_max: self.sweep.map(|s| s.alpha_max),
            points: self.sweep.map(|s| s.points),
            spacing: self.sweep.map(|s| s.spacing),
            mode: match self.command {
                CommandKind::Pressure => Some(match self.mode {
                    DerivativeMode::Analytic => "analytic",
                    DerivativeMode::CentralDifference => "central",
                }),
                _ => None,
            },
            format: self.format,
            jobs: self.jobs,
            rel_tol: p.exact.rel_tol,
            sem_tol: p.semi.tail_rel_tol,
            exact_n_cap: p.exact.n_cap,
            exact_max_intervals: p.exact.max_intervals,
            sem_w_max: p.semi.w_max,
            sem_v_hard_cap: p.semi.v_hard_cap,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: CommandKind,
    pub methods: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Spacing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    pub rel_tol: f64,
    pub sem_tol: f64,
    pub exact_n_cap: u32,
    pub exact_max_intervals: usize,
    pub sem_w_max: u32,
    pub sem_v_hard_cap: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("coaxial-casimir").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file_and_file_overrides_defaults() {
        let file = FileConfig::parse("alpha = 3\nrel-tol = 1e-6\nformat = json # comment\n").unwrap();
        let c = RunConfig::resolve_with(cli(&["energy", "--alpha", "2", "--method", "pfa-geom"]), &file).unwrap();
        assert_eq!(c.alpha, Some(2.0));
        assert_eq!(c.params.exact.rel_tol, 1e-6);
        assert_eq!(c.format, Format::Json);
        let c = RunConfig::resolve_with(cli(&["energy", "--method", "sem", "--format", "csv"]), &file).unwrap();
        assert_eq!(c.alpha, Some(3.0));
        assert_eq!(c.format, Format::Csv);
        let c = RunConfig::resolve_with(cli(&["energy", "--alpha", "2"]), &FileConfig::default()).unwrap();
        assert_eq!(c.methods.len(), 6);
        assert_eq!(c.params, ObservableParams::default());
    }

    #[test]
    fn errors_name_the_field() {
        let bad = |args: &[&str], file: &str| {
            let f = FileConfig::parse(file).map_err(|e| e.to_string());
            match f {
                Err(e) => e,
                Ok(f) => RunConfig::resolve_with(cli(args), &f).unwrap_err().to_string(),
            }
        };
        assert!(bad(&["energy"], "").contains("alpha"));
        assert!(bad(&["energy", "--alpha", "1.001", "--method", "exact"], "").contains("alpha"));
        assert!(bad(&["energy", "--alpha", "2", "--method", "nope"], "").contains("method"));
        assert!(bad(&["sweep", "--points", "1"], "").contains("points"));
        assert!(bad(&["sweep", "--alpha-min", "1.001"], "").contains("alpha_min"));
        assert!(bad(&["selftest"], "frobnicate = 1").contains("frobnicate"));
        assert!(bad(&["selftest"], "jobs = many").contains("jobs"));
        assert!(bad(&["selftest", "--rel-tol", "2"], "").contains("rel_tol"));
        assert!(bad(&["crossover", "--method", "pfa-geom"], "").contains("method"));
    }

    #[test]
    fn sweep_defaults() {
        let c = RunConfig::resolve_with(cli(&["sweep"]), &FileConfig::default()).unwrap();
        let s = c.sweep.unwrap();
        assert_eq!(
            (s.alpha_min, s.alpha_max, s.points, s.spacing),
            (1.1, 4.0, 30, Spacing::Log)
        );
        assert_eq!(c.methods.len(), 2);
        // proximity-only sweeps may start closer to contact
        let c = RunConfig::resolve_with(
            cli(&["sweep", "--alpha-min", "1.001", "--method", "pfa-inner"]),
            &FileConfig::default(),
        );
        assert!(c.is_ok());
    }
}
