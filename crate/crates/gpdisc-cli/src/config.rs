//! Flat `key = value` configuration with bracketed section headers. Unknown
//! keys are rejected; values are validated against the same invariants the
//! library enforces.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Tf,
    Profile,
    GiantVortex,
    Minimize2d,
    Vortices,
    ThirdSpeed,
    Symmetry,
    PhaseDiagram,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "tf" => Mode::Tf,
            "profile" => Mode::Profile,
            "giant-vortex" => Mode::GiantVortex,
            "minimize2d" => Mode::Minimize2d,
            "vortices" => Mode::Vortices,
            "third-speed" => Mode::ThirdSpeed,
            "symmetry" => Mode::Symmetry,
            "phase-diagram" => Mode::PhaseDiagram,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Tf => "tf",
            Mode::Profile => "profile",
            Mode::GiantVortex => "giant-vortex",
            Mode::Minimize2d => "minimize2d",
            Mode::Vortices => "vortices",
            Mode::ThirdSpeed => "third-speed",
            Mode::Symmetry => "symmetry",
            Mode::PhaseDiagram => "phase-diagram",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse { line: usize, message: String },
    Validation { field: String, message: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            ConfigError::Validation { field, message } => {
                write!(f, "invalid value for `{field}`: {message}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

/// Either a single value or an inclusive `start:stop:step` sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ValueOrSweep {
    Single(f64),
    Sweep { start: f64, stop: f64, step: f64 },
}

impl ValueOrSweep {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            ValueOrSweep::Single(v) => vec![v],
            ValueOrSweep::Sweep { start, stop, step } => {
                let mut out = Vec::new();
                let n = ((stop - start) / step).round() as i64;
                for k in 0..=n {
                    let v = start + k as f64 * step;
                    if v <= stop + 1e-12 * step.abs() {
                        out.push(v);
                    }
                }
                out
            }
        }
    }

    pub fn single(&self) -> Option<f64> {
        match *self {
            ValueOrSweep::Single(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub epsilon: f64,
    /// Angular speed, possibly a sweep; `omega0` (giant-vortex scaling) is
    /// translated at load time.
    pub omega: ValueOrSweep,
    pub omega_given_as_omega0: bool,
    /// Fixed giant-vortex phase; optimized over the integer window when
    /// absent.
    pub omega_phase: Option<i64>,
    pub profile_n: usize,
    pub nr: usize,
    pub ntheta: usize,
    /// Euler-Lagrange residual tolerance; defaults to `1e-8 / eps^2`.
    pub tol: Option<f64>,
    pub max_iters: usize,
    pub amp_threshold: f64,
    pub d_list: Vec<i64>,
    pub eps_list: Vec<f64>,
    pub omega0_bracket: (f64, f64),
    pub seed: u64,
    pub threads: usize,
    pub formats: Vec<String>,
    pub out_dir: String,
    /// Input field snapshot for the `vortices` mode.
    pub field_path: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Tf,
            epsilon: 0.1,
            omega: ValueOrSweep::Single(0.0),
            omega_given_as_omega0: false,
            omega_phase: None,
            profile_n: 2048,
            nr: 256,
            ntheta: 512,
            tol: None,
            max_iters: 20_000,
            amp_threshold: 0.3,
            d_list: vec![2, 3, 4, 6, 8],
            eps_list: vec![0.05, 0.02, 0.01],
            omega0_bracket: (0.05, 1.0),
            seed: 0,
            threads: 1,
            formats: vec!["csv".into(), "json".into()],
            out_dir: "out".into(),
            field_path: None,
        }
    }
}

fn parse_f64(field: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse().map_err(|_| ConfigError::Validation {
        field: field.into(),
        message: format!("`{v}` is not a number"),
    })
}

fn parse_value_or_sweep(field: &str, v: &str) -> Result<ValueOrSweep, ConfigError> {
    if v.contains(':') {
        let parts: Vec<&str> = v.split(':').collect();
        if parts.len() != 3 {
            return Err(ConfigError::Validation {
                field: field.into(),
                message: "sweep syntax is start:stop:step".into(),
            });
        }
        let start = parse_f64(field, parts[0])?;
        let stop = parse_f64(field, parts[1])?;
        let step = parse_f64(field, parts[2])?;
        if !(step > 0.0 && stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(ConfigError::Validation {
                field: field.into(),
                message: "sweep needs stop >= start and step > 0".into(),
            });
        }
        Ok(ValueOrSweep::Sweep { start, stop, step })
    } else {
        Ok(ValueOrSweep::Single(parse_f64(field, v)?))
    }
}

/// Parse the documented `[section]` / `key = value` format and apply
/// defaults; unknown keys and invalid values are rejected.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut section = String::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: "unterminated section header".into(),
                });
            }
            section = line[1..line.len() - 1].trim().to_string();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("expected key = value, got `{line}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let full = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        if let Some(prev) = seen.insert(full.clone(), line_no) {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("duplicate key `{full}` (first at line {prev})"),
            });
        }
        apply_key(&mut cfg, &full, value)?;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn apply_key(cfg: &mut ExperimentConfig, full: &str, value: &str) -> Result<(), ConfigError> {
    match full {
        "experiment.mode" | "mode" => {
            cfg.mode = Mode::parse(value).ok_or_else(|| ConfigError::Validation {
                field: full.into(),
                message: format!("unknown mode `{value}`"),
            })?;
        }
        "experiment.out" | "out" => cfg.out_dir = value.to_string(),
        "experiment.seed" | "seed" => {
            cfg.seed = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "seed must be a nonnegative integer".into(),
            })?;
        }
        "experiment.threads" | "threads" => {
            cfg.threads = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "threads must be a positive integer".into(),
            })?;
        }
        "experiment.formats" | "formats" | "experiment.format" | "format" => {
            cfg.formats = value
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
        }
        "experiment.field" | "field" => cfg.field_path = Some(value.to_string()),
        "params.epsilon" | "epsilon" => cfg.epsilon = parse_f64(full, value)?,
        "params.omega" | "omega" => {
            cfg.omega = parse_value_or_sweep(full, value)?;
            cfg.omega_given_as_omega0 = false;
        }
        "params.omega0" | "omega0" => {
            cfg.omega = parse_value_or_sweep(full, value)?;
            cfg.omega_given_as_omega0 = true;
        }
        "params.omega_phase" | "omega_phase" => {
            cfg.omega_phase = Some(value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "omega_phase must be an integer".into(),
            })?);
        }
        "grid.profile_n" | "profile_n" => {
            cfg.profile_n = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "profile_n must be a positive integer".into(),
            })?;
        }
        "grid.nr" | "nr" => {
            cfg.nr = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "nr must be a positive integer".into(),
            })?;
        }
        "grid.ntheta" | "ntheta" => {
            cfg.ntheta = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "ntheta must be a positive integer".into(),
            })?;
        }
        "solver.tol" | "tol" => cfg.tol = Some(parse_f64(full, value)?),
        "solver.max_iters" | "max_iters" => {
            cfg.max_iters = value.parse().map_err(|_| ConfigError::Validation {
                field: full.into(),
                message: "max_iters must be a positive integer".into(),
            })?;
        }
        "solver.amp_threshold" | "amp_threshold" => cfg.amp_threshold = parse_f64(full, value)?,
        "solver.d_list" | "d_list" => {
            cfg.d_list = value
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<Vec<i64>, _>>()
                .map_err(|_| ConfigError::Validation {
                    field: full.into(),
                    message: "d_list must be comma-separated integers".into(),
                })?;
        }
        "solver.eps_list" | "eps_list" => {
            cfg.eps_list = value
                .split(',')
                .map(|s| parse_f64(full, s.trim()))
                .collect::<Result<Vec<f64>, _>>()?;
        }
        "solver.omega0_bracket" | "omega0_bracket" => {
            let parts: Vec<&str> = value.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(ConfigError::Validation {
                    field: full.into(),
                    message: "bracket is lo,hi".into(),
                });
            }
            cfg.omega0_bracket = (parse_f64(full, parts[0])?, parse_f64(full, parts[1])?);
        }
        _ => {
            return Err(ConfigError::Validation {
                field: full.into(),
                message: "unknown key".into(),
            });
        }
    }
    Ok(())
}

/// Apply a single `key = value` override on top of a parsed config (used by
/// the command-line flags).
pub fn apply_override(cfg: &mut ExperimentConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    apply_key(cfg, key, value)
}

/// Re-validate after overrides.
pub fn validate_public(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    validate(cfg)
}

fn validate(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(ConfigError::Validation {
            field: "epsilon".into(),
            message: format!("{} out of (0,1)", cfg.epsilon),
        });
    }
    let pts = cfg.omega.points();
    if pts.is_empty() || pts.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(ConfigError::Validation {
            field: "omega".into(),
            message: "sweep must be nonempty, finite and nonnegative".into(),
        });
    }
    if let Some(t) = cfg.tol {
        if !(t > 0.0) {
            return Err(ConfigError::Validation {
                field: "tol".into(),
                message: "tolerance must be positive".into(),
            });
        }
    }
    if cfg.threads == 0 {
        return Err(ConfigError::Validation {
            field: "threads".into(),
            message: "need at least one worker".into(),
        });
    }
    if cfg.profile_n < 17 || cfg.nr < 9 || cfg.ntheta < 8 {
        return Err(ConfigError::Validation {
            field: "grid".into(),
            message: "grids too small".into(),
        });
    }
    if !(cfg.amp_threshold > 0.0 && cfg.amp_threshold < 1.0) {
        return Err(ConfigError::Validation {
            field: "amp_threshold".into(),
            message: "need 0 < amp_threshold < 1".into(),
        });
    }
    if cfg.eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(ConfigError::Validation {
            field: "eps_list".into(),
            message: "epsilons out of (0,1)".into(),
        });
    }
    if !(cfg.omega0_bracket.0 > 0.0 && cfg.omega0_bracket.1 > cfg.omega0_bracket.0) {
        return Err(ConfigError::Validation {
            field: "omega0_bracket".into(),
            message: "need 0 < lo < hi".into(),
        });
    }
    if cfg.mode == Mode::Vortices && cfg.field_path.is_none() {
        return Err(ConfigError::Validation {
            field: "field".into(),
            message: "vortices mode needs a field snapshot path".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config("mode = tf\nepsilon = 0.1\nomega = 0\n").unwrap();
        assert_eq!(cfg.mode, Mode::Tf);
        assert_eq!(cfg.profile_n, 2048);
        assert_eq!(cfg.threads, 1);
        assert_eq!(cfg.omega.single(), Some(0.0));
    }

    #[test]
    fn epsilon_out_of_range_rejected() {
        let err = parse_config("mode = tf\nepsilon = 1.5\n").unwrap_err();
        match err {
            ConfigError::Validation { field, .. } => assert_eq!(field, "epsilon"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sweep_has_inclusive_endpoints() {
        let cfg = parse_config(
            "[experiment]\nmode = phase-diagram\n[params]\nepsilon = 0.05\nomega = 10:200:10\n",
        )
        .unwrap();
        let pts = cfg.omega.points();
        assert_eq!(pts.len(), 20);
        assert_eq!(pts[0], 10.0);
        assert_eq!(*pts.last().unwrap(), 200.0);
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config("mode = tf\nepsilon = 0.1\nbogus = 7\n").unwrap_err();
        assert!(matches!(err, ConfigError::Validation { .. }));
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_config("mode = tf\nnot a key value\n").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sections_and_comments() {
        let text = "\
# experiment
[experiment]
mode = symmetry   # trailing comment
seed = 7

[params]
epsilon = 0.02
omega = 112.8

[solver]
d_list = 2, 3, 4
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.mode, Mode::Symmetry);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.d_list, vec![2, 3, 4]);
    }
}
