//! Scenario files: flat `key = value` lines, `#` comment lines, dotted keys
//! for family parameters. Unknown keys are rejected with their line number;
//! absent keys fall back to recorded defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use summab_core::{defaults, ConditionPreset};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum TermsSpec {
    Alternating,
    AlternatingPower(f64),
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightsSpec {
    Unit,
    Linear,
    Geometric(f64),
    LogSlow,
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum XSpec {
    HarmonicPlusOne,
    Power(f64),
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LambdaSpec {
    InverseXSquared,
    InverseX,
    Constant(f64),
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BetaSpec {
    /// `beta_n = |lambda_n - lambda_{n+1}|`.
    Auto,
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSpec {
    WeightedMean,
    Cesaro(f64),
    Identity,
    Csv(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum IndexMethodSpec {
    Matrix,
    Weighted,
    Cesaro(f64),
}

impl TermsSpec {
    pub fn label(&self) -> String {
        match self {
            TermsSpec::Alternating => "alternating".into(),
            TermsSpec::AlternatingPower(d) => format!("alternating_power(delta={d})"),
            TermsSpec::Tabulated(p) => format!("tabulated({})", p.display()),
        }
    }
}

impl WeightsSpec {
    pub fn label(&self) -> String {
        match self {
            WeightsSpec::Unit => "unit".into(),
            WeightsSpec::Linear => "linear".into(),
            WeightsSpec::Geometric(q) => format!("geometric(q={q})"),
            WeightsSpec::LogSlow => "log_slow".into(),
            WeightsSpec::Tabulated(p) => format!("tabulated({})", p.display()),
        }
    }
}

impl XSpec {
    pub fn label(&self) -> String {
        match self {
            XSpec::HarmonicPlusOne => "harmonic_plus_one".into(),
            XSpec::Power(e) => format!("power(epsilon={e})"),
            XSpec::Tabulated(p) => format!("tabulated({})", p.display()),
        }
    }
}

impl LambdaSpec {
    pub fn label(&self) -> String {
        match self {
            LambdaSpec::InverseXSquared => "inverse_x_squared".into(),
            LambdaSpec::InverseX => "inverse_x".into(),
            LambdaSpec::Constant(c) => format!("constant(c={c})"),
            LambdaSpec::Tabulated(p) => format!("tabulated({})", p.display()),
        }
    }
}

impl BetaSpec {
    pub fn label(&self) -> String {
        match self {
            BetaSpec::Auto => "auto".into(),
            BetaSpec::Tabulated(p) => format!("tabulated({})", p.display()),
        }
    }
}

impl MatrixSpec {
    pub fn label(&self) -> String {
        match self {
            MatrixSpec::WeightedMean => "weighted_mean".into(),
            MatrixSpec::Cesaro(a) => format!("cesaro(alpha={a})"),
            MatrixSpec::Identity => "identity".into(),
            MatrixSpec::Csv(p) => format!("csv({})", p.display()),
        }
    }
}

impl IndexMethodSpec {
    pub fn label(&self) -> String {
        match self {
            IndexMethodSpec::Matrix => "matrix".into(),
            IndexMethodSpec::Weighted => "weighted".into(),
            IndexMethodSpec::Cesaro(a) => format!("cesaro(alpha={a})"),
        }
    }
}

/// All scenario tolerances, flat keys in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub slope_tol: f64,
    pub residual_tol: f64,
    pub block_rho: f64,
    pub beta_tol: f64,
    pub ratio_cap: f64,
    pub abs_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slope_tol: defaults::SLOPE_TOL,
            residual_tol: defaults::RESIDUAL_TOL,
            block_rho: defaults::BLOCK_RHO,
            beta_tol: defaults::BETA_TOL,
            ratio_cap: defaults::RATIO_CAP,
            abs_tol: defaults::ABS_TOL,
        }
    }
}

/// A parsed and validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub horizon: usize,
    pub k: f64,
    pub terms: TermsSpec,
    pub weights: WeightsSpec,
    pub x: XSpec,
    pub lambda: LambdaSpec,
    pub beta: BetaSpec,
    pub matrix: MatrixSpec,
    pub index_method: IndexMethodSpec,
    pub preset: ConditionPreset,
    pub tol: Tolerances,
    /// Keys that were not present in the file and fell back to defaults.
    pub defaulted: Vec<String>,
}

/// Smallest horizon the dyadic diagnostics accept.
pub const MIN_HORIZON: usize = defaults::MIN_DIAGNOSTIC_HORIZON;

pub fn parse_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::scenario(path, format!("cannot read scenario: {e}")))?;
    parse_scenario_text(&text, path)
}

struct RawKeys<'p> {
    path: &'p Path,
    entries: BTreeMap<String, (usize, String)>,
    defaulted: Vec<String>,
}

impl<'p> RawKeys<'p> {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    /// Takes `key`, or records it as defaulted and returns `None`.
    fn take_or_default(&mut self, key: &str) -> Option<(usize, String)> {
        match self.entries.remove(key) {
            Some(v) => Some(v),
            None => {
                self.defaulted.push(key.to_string());
                None
            }
        }
    }

    fn take_f64(&mut self, key: &str) -> Result<Option<(usize, f64)>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some((line, value)) => {
                let parsed = value.parse::<f64>().map_err(|_| {
                    CliError::at(self.path, line, format!("invalid number for `{key}`: `{value}`"))
                })?;
                Ok(Some((line, parsed)))
            }
        }
    }

    fn take_f64_or_default(&mut self, key: &str, fallback: f64) -> Result<f64, CliError> {
        match self.take_f64(key)? {
            Some((_, v)) => Ok(v),
            None => {
                self.defaulted.push(key.to_string());
                Ok(fallback)
            }
        }
    }

    fn require_f64(&mut self, key: &str, context: &str) -> Result<f64, CliError> {
        match self.take_f64(key)? {
            Some((_, v)) => Ok(v),
            None => Err(CliError::scenario(
                self.path,
                format!("`{key}` is required for {context}"),
            )),
        }
    }

    fn require_path(&mut self, key: &str, context: &str) -> Result<PathBuf, CliError> {
        match self.take(key) {
            Some((_, v)) => Ok(resolve_relative(self.path, &v)),
            None => Err(CliError::scenario(
                self.path,
                format!("`{key}` is required for {context}"),
            )),
        }
    }
}

/// Paths inside a scenario are resolved relative to the scenario file.
fn resolve_relative(scenario_path: &Path, value: &str) -> PathBuf {
    let p = PathBuf::from(value);
    if p.is_absolute() {
        p
    } else {
        scenario_path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(p)
    }
}

pub fn parse_scenario_text(text: &str, path: &Path) -> Result<Scenario, CliError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(CliError::at(path, lineno, "expected `key = value`"));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(CliError::at(path, lineno, "empty key before `=`"));
        }
        if value.is_empty() {
            return Err(CliError::at(path, lineno, format!("empty value for `{key}`")));
        }
        if let Some((first, _)) = entries.get(&key) {
            return Err(CliError::at(
                path,
                lineno,
                format!("duplicate key `{key}` (first set on line {first})"),
            ));
        }
        entries.insert(key, (lineno, value));
    }

    let mut raw = RawKeys {
        path,
        entries,
        defaulted: Vec::new(),
    };

    let name = match raw.take_or_default("name") {
        Some((_, v)) => v,
        None => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".to_string()),
    };

    let horizon = match raw.take("horizon") {
        Some((line, v)) => v.parse::<usize>().map_err(|_| {
            CliError::at(path, line, format!("invalid integer for `horizon`: `{v}`"))
        })?,
        None => {
            raw.defaulted.push("horizon".into());
            defaults::HORIZON
        }
    };

    let k = raw.take_f64_or_default("k", defaults::EXPONENT)?;

    let terms = match raw.take_or_default("terms.family") {
        None => TermsSpec::Alternating,
        Some((line, v)) => match v.as_str() {
            "alternating" => TermsSpec::Alternating,
            "alternating_power" => TermsSpec::AlternatingPower(
                raw.require_f64("terms.delta", "terms.family = alternating_power")?,
            ),
            "tabulated" => TermsSpec::Tabulated(
                raw.require_path("terms.path", "terms.family = tabulated")?,
            ),
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!(
                        "unknown terms.family `{other}` (expected alternating, alternating_power, tabulated)"
                    ),
                ))
            }
        },
    };

    let weights = match raw.take_or_default("weights.family") {
        None => WeightsSpec::Unit,
        Some((line, v)) => match v.as_str() {
            "unit" => WeightsSpec::Unit,
            "linear" => WeightsSpec::Linear,
            "geometric" => {
                WeightsSpec::Geometric(raw.require_f64("weights.q", "weights.family = geometric")?)
            }
            "log_slow" => WeightsSpec::LogSlow,
            "tabulated" => WeightsSpec::Tabulated(
                raw.require_path("weights.path", "weights.family = tabulated")?,
            ),
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!(
                        "unknown weights.family `{other}` (expected unit, linear, geometric, log_slow, tabulated)"
                    ),
                ))
            }
        },
    };

    let x = match raw.take_or_default("x.family") {
        None => XSpec::HarmonicPlusOne,
        Some((line, v)) => match v.as_str() {
            "harmonic_plus_one" => XSpec::HarmonicPlusOne,
            "power" => XSpec::Power(raw.require_f64("x.epsilon", "x.family = power")?),
            "tabulated" => XSpec::Tabulated(raw.require_path("x.path", "x.family = tabulated")?),
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!("unknown x.family `{other}` (expected harmonic_plus_one, power, tabulated)"),
                ))
            }
        },
    };

    let lambda = match raw.take_or_default("lambda.family") {
        None => LambdaSpec::InverseXSquared,
        Some((line, v)) => match v.as_str() {
            "inverse_x_squared" => LambdaSpec::InverseXSquared,
            "inverse_x" => LambdaSpec::InverseX,
            "constant" => {
                LambdaSpec::Constant(raw.require_f64("lambda.c", "lambda.family = constant")?)
            }
            "tabulated" => LambdaSpec::Tabulated(
                raw.require_path("lambda.path", "lambda.family = tabulated")?,
            ),
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!(
                        "unknown lambda.family `{other}` (expected inverse_x_squared, inverse_x, constant, tabulated)"
                    ),
                ))
            }
        },
    };

    let beta = match (raw.take("beta"), raw.take("beta.path")) {
        (None, None) => {
            raw.defaulted.push("beta".into());
            BetaSpec::Auto
        }
        (Some((_, v)), None) if v == "auto" => BetaSpec::Auto,
        (Some((line, v)), None) => {
            return Err(CliError::at(
                path,
                line,
                format!("beta must be `auto` (got `{v}`); use beta.path for a tabulated sequence"),
            ))
        }
        (None, Some((_, v))) => BetaSpec::Tabulated(resolve_relative(path, &v)),
        (Some((line, _)), Some(_)) => {
            return Err(CliError::at(
                path,
                line,
                "set either `beta = auto` or `beta.path`, not both",
            ))
        }
    };

    let matrix = match raw.take_or_default("matrix.kind") {
        None => MatrixSpec::WeightedMean,
        Some((line, v)) => match v.as_str() {
            "weighted_mean" => MatrixSpec::WeightedMean,
            "cesaro" => MatrixSpec::Cesaro(raw.require_f64("matrix.alpha", "matrix.kind = cesaro")?),
            "identity" => MatrixSpec::Identity,
            "csv" => MatrixSpec::Csv(raw.require_path("matrix.path", "matrix.kind = csv")?),
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!(
                        "unknown matrix.kind `{other}` (expected weighted_mean, cesaro, identity, csv)"
                    ),
                ))
            }
        },
    };

    let index_method = match raw.take_or_default("index.method") {
        None => IndexMethodSpec::Matrix,
        Some((line, v)) => match v.as_str() {
            "matrix" => IndexMethodSpec::Matrix,
            "weighted" => IndexMethodSpec::Weighted,
            "cesaro" => {
                let alpha = raw.take_f64("index.alpha")?.map(|(_, a)| a).unwrap_or_else(|| {
                    raw.defaulted.push("index.alpha".into());
                    1.0
                });
                IndexMethodSpec::Cesaro(alpha)
            }
            other => {
                return Err(CliError::at(
                    path,
                    line,
                    format!("unknown index.method `{other}` (expected matrix, weighted, cesaro)"),
                ))
            }
        },
    };

    let preset = match raw.take_or_default("preset") {
        None => ConditionPreset::Thm31,
        Some((line, v)) => ConditionPreset::parse(&v).ok_or_else(|| {
            CliError::at(
                path,
                line,
                format!("unknown preset `{v}` (expected thm21, thm22, thm31)"),
            )
        })?,
    };

    let fallback = Tolerances::default();
    let tol = Tolerances {
        slope_tol: raw.take_f64_or_default("slope_tol", fallback.slope_tol)?,
        residual_tol: raw.take_f64_or_default("residual_tol", fallback.residual_tol)?,
        block_rho: raw.take_f64_or_default("block_rho", fallback.block_rho)?,
        beta_tol: raw.take_f64_or_default("beta_tol", fallback.beta_tol)?,
        ratio_cap: raw.take_f64_or_default("ratio_cap", fallback.ratio_cap)?,
        abs_tol: raw.take_f64_or_default("abs_tol", fallback.abs_tol)?,
    };

    if let Some((key, line)) = raw
        .entries
        .iter()
        .min_by_key(|(_, (line, _))| *line)
        .map(|(k, (line, _))| (k.clone(), *line))
    {
        return Err(CliError::at(
            path,
            line,
            format!("unknown or inapplicable key `{key}`"),
        ));
    }

    let mut defaulted = raw.defaulted;
    defaulted.sort();

    let scenario = Scenario {
        name,
        horizon,
        k,
        terms,
        weights,
        x,
        lambda,
        beta,
        matrix,
        index_method,
        preset,
        tol,
        defaulted,
    };
    validate(&scenario, path)?;
    Ok(scenario)
}

pub fn validate(sc: &Scenario, path: &Path) -> Result<(), CliError> {
    if sc.horizon < MIN_HORIZON {
        return Err(CliError::scenario(
            path,
            format!(
                "horizon must be at least {MIN_HORIZON} for the dyadic diagnostics, got {}",
                sc.horizon
            ),
        ));
    }
    if !sc.k.is_finite() || sc.k < 1.0 {
        return Err(CliError::scenario(path, format!("k must be >= 1, got {}", sc.k)));
    }
    if let MatrixSpec::Cesaro(alpha) = sc.matrix {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(CliError::scenario(
                path,
                format!("matrix.alpha must be greater than -1, got {alpha}"),
            ));
        }
    }
    if let IndexMethodSpec::Cesaro(alpha) = sc.index_method {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(CliError::scenario(
                path,
                format!("index.alpha must be greater than -1, got {alpha}"),
            ));
        }
    }
    let t = &sc.tol;
    for (key, value, ok) in [
        ("slope_tol", t.slope_tol, t.slope_tol >= 0.0),
        ("residual_tol", t.residual_tol, t.residual_tol > 0.0),
        (
            "block_rho",
            t.block_rho,
            t.block_rho > 0.0 && t.block_rho < 1.0,
        ),
        ("beta_tol", t.beta_tol, t.beta_tol > 0.0),
        ("ratio_cap", t.ratio_cap, t.ratio_cap >= 1.0),
        ("abs_tol", t.abs_tol, t.abs_tol >= 0.0),
    ] {
        if !value.is_finite() || !ok {
            return Err(CliError::scenario(
                path,
                format!("invalid value for `{key}`: {value}"),
            ));
        }
    }
    Ok(())
}
