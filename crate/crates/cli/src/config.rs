//! Run configuration: JSON file values overridden by command-line flags.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spectral_lempert::calg::scalar::parse_complex_list;
use spectral_lempert::experiments::Perturbation;
use spectral_lempert::Mat3;

use crate::CliError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_BUDGET: usize = 2000;
pub const DEFAULT_DEGREE: usize = 3;
pub const DEFAULT_SAMPLES: usize = 1024;
pub const DEFAULT_J_RANGE: &str = "4..14";
pub const DEFAULT_STEP1_T: [f64; 5] = [0.3, 0.2, 0.1, 0.05, 0.01];
const MAX_J: u32 = 60;
const MAX_BUDGET: usize = 1_000_000;
const MAX_SAMPLES: usize = 1 << 20;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub j_range: Option<String>,
    pub perturbation: Option<String>,
    pub t_grid: Option<Vec<f64>>,
    pub degree: Option<usize>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub emit_svg: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn merged(self, other: RunConfig) -> RunConfig {
        RunConfig {
            j_range: other.j_range.or(self.j_range),
            perturbation: other.perturbation.or(self.perturbation),
            t_grid: other.t_grid.or(self.t_grid),
            degree: other.degree.or(self.degree),
            seed: other.seed.or(self.seed),
            budget: other.budget.or(self.budget),
            samples: other.samples.or(self.samples),
            out: other.out.or(self.out),
            svg: other.svg.or(self.svg),
            emit_svg: other.emit_svg || self.emit_svg,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn degree(&self) -> Result<usize, CliError> {
        let d = self.degree.unwrap_or(DEFAULT_DEGREE);
        if !(1..=6).contains(&d) {
            return Err(CliError::Usage(format!("degree must lie in 1..=6, got {d}")));
        }
        Ok(d)
    }

    pub fn budget(&self) -> Result<usize, CliError> {
        let b = self.budget.unwrap_or(DEFAULT_BUDGET);
        if !(1..=MAX_BUDGET).contains(&b) {
            return Err(CliError::Usage(format!("budget must lie in 1..={MAX_BUDGET}, got {b}")));
        }
        Ok(b)
    }

    pub fn samples(&self) -> Result<usize, CliError> {
        let s = self.samples.unwrap_or(DEFAULT_SAMPLES);
        if !(64..=MAX_SAMPLES).contains(&s) {
            return Err(CliError::Usage(format!("samples must lie in 64..={MAX_SAMPLES}, got {s}")));
        }
        Ok(s)
    }

    pub fn j_range(&self) -> Result<RangeInclusive<u32>, CliError> {
        parse_j_range(self.j_range.as_deref().unwrap_or(DEFAULT_J_RANGE))
    }

    pub fn perturbation(&self) -> Result<Perturbation, CliError> {
        parse_perturbation(self.perturbation.as_deref().unwrap_or("B"))
    }

    pub fn t_grid(&self, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let grid = self.t_grid.clone().unwrap_or_else(|| default.to_vec());
        if grid.is_empty() {
            return Err(CliError::Usage("empty t grid".into()));
        }
        if let Some(t) = grid.iter().find(|t| !t.is_finite()) {
            return Err(CliError::Usage(format!("non-finite t value {t}")));
        }
        Ok(grid)
    }

    /// SVG path, if one was requested.
    pub fn svg_path(&self, which: &str) -> Option<PathBuf> {
        match (&self.svg, self.emit_svg) {
            (Some(p), _) => Some(p.clone()),
            (None, true) => Some(PathBuf::from(format!("{which}.svg"))),
            (None, false) => None,
        }
    }

    pub fn out_path(&self, which: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(format!("{which}.csv")))
    }
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_j_range(s: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Usage(format!("bad j range '{s}', expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b || b > MAX_J {
        return Err(CliError::Usage(format!("j range must satisfy a <= b <= {MAX_J}, got {s}")));
    }
    Ok(a..=b)
}

pub fn parse_perturbation(s: &str) -> Result<Perturbation, CliError> {
    match s {
        "B" | "b" => Ok(Perturbation::ConstantB),
        "sqrt-e32" => Ok(Perturbation::SqrtE32),
        _ => {
            let body = s.strip_prefix("const:").ok_or_else(|| {
                CliError::Usage(format!("unknown perturbation '{s}', expected B, sqrt-e32 or const:<9 entries>"))
            })?;
            Ok(Perturbation::Constant(parse_matrix(body)?))
        }
    }
}

pub fn parse_matrix(s: &str) -> Result<Mat3, CliError> {
    let v = parse_complex_list(s).map_err(|e| CliError::Usage(e.to_string()))?;
    if v.len() != 9 {
        return Err(CliError::Usage(format!("a matrix needs 9 entries, got {}", v.len())));
    }
    Ok(Mat3::from_slice(&v).expect("nine entries"))
}

pub fn parse_point(s: &str) -> Result<spectral_lempert::Cubic, CliError> {
    let v = parse_complex_list(s).map_err(|e| CliError::Usage(e.to_string()))?;
    if v.len() != 3 {
        return Err(CliError::Usage(format!("a point needs 3 entries, got {}", v.len())));
    }
    Ok(spectral_lempert::Cubic::new(v[0], v[1], v[2]))
}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad number '{p}'")))).collect()
}
