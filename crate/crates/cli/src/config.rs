//! Run configuration: command line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sinebasis::{catalog, effective_radial, Potential, QuadratureConfig, RadialProblem};

use crate::output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("numerical failure: {0}")]
    Numeric(#[from] sinebasis::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Tolerance(String),
}

impl CliError {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Config { .. } | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

/// Every key the config file may set. Names match the long flags.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub potential: Option<String>,
    pub params: Option<Vec<f64>>,
    pub dimension: Option<u32>,
    pub angular_momentum: Option<u32>,
    pub basis: Option<usize>,
    pub confine: Option<[f64; 2]>,
    pub nodes_per_panel: Option<usize>,
    pub panels: Option<usize>,
    pub grading: Option<f64>,
    pub window: Option<[f64; 2]>,
    pub length: Option<f64>,
    pub states: Option<usize>,
    pub range: Option<[f64; 2]>,
    pub step: Option<f64>,
    pub left: Option<f64>,
    pub l_range: Option<[f64; 2]>,
    pub a_range: Option<[f64; 2]>,
    pub b_range: Option<[f64; 2]>,
    pub joint: Option<bool>,
    pub kind: Option<String>,
    pub c: Option<f64>,
    pub n: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::config("config", e.message().to_string()))
    }
}

pub fn required<T>(field: &str, value: Option<T>) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::config(field, "missing value"))
}

pub fn pair(field: &str, value: Option<Vec<f64>>) -> Result<Option<[f64; 2]>, CliError> {
    match value {
        None => Ok(None),
        Some(v) if v.len() == 2 => Ok(Some([v[0], v[1]])),
        Some(v) => Err(CliError::config(field, format!("expected 2 numbers, got {}", v.len()))),
    }
}

/// The potential and its treatment, before a window is chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub potential: String,
    pub params: Vec<f64>,
    /// `Some(d)` selects the radial equation in `d` dimensions.
    pub dimension: Option<u32>,
    pub angular_momentum: u32,
    pub confine: Option<[f64; 2]>,
    pub basis: usize,
    pub quadrature: QuadratureConfig,
}

impl ProblemSpec {
    pub fn is_radial(&self) -> bool {
        self.dimension.is_some()
    }

    pub fn build(&self) -> Result<Potential, CliError> {
        let base = catalog(&self.potential, &self.params).map_err(|e| CliError::config("potential", e.to_string()))?;
        let base = match self.confine {
            Some([lo, hi]) if lo < hi => base.with_confinement(lo, hi),
            Some([lo, hi]) => return Err(CliError::config("confine", format!("empty box [{lo}, {hi}]"))),
            None => base,
        };
        match self.dimension {
            None => {
                if self.angular_momentum != 0 {
                    return Err(CliError::config("angular-momentum", "only meaningful with --dimension"));
                }
                Ok(base)
            }
            Some(d) => {
                let problem = RadialProblem::new(d, self.angular_momentum, base)
                    .map_err(|e| CliError::config("dimension", e.to_string()))?;
                effective_radial(&problem).map_err(|e| CliError::config("dimension", e.to_string()))
            }
        }
    }

    pub fn meta(&self) -> serde_json::Value {
        let q = &self.quadrature;
        serde_json::json!({
            "potential": self.potential,
            "params": self.params,
            "dimension": self.dimension,
            "angular_momentum": self.angular_momentum,
            "confine": self.confine,
            "N": self.basis,
            "quadrature": {
                "nodes_per_panel": q.nodes_per_panel,
                "panels": q.panels,
                "geometric_grading": q.geometric_grading,
            },
        })
    }
}

pub fn quadrature(
    nodes: Option<usize>,
    panels: Option<usize>,
    grading: Option<f64>,
) -> Result<QuadratureConfig, CliError> {
    let mut q = QuadratureConfig::default();
    if let Some(n) = nodes {
        q.nodes_per_panel = n;
    }
    if let Some(p) = panels {
        q.panels = p;
    }
    if let Some(g) = grading {
        q.geometric_grading = g;
    }
    q.validate().map_err(|e| {
        let field = if nodes.is_some_and(|n| n == 0) {
            "nodes-per-panel"
        } else if panels.is_some_and(|p| p == 0) {
            "panels"
        } else {
            "grading"
        };
        CliError::config(field, e.to_string())
    })?;
    Ok(q)
}

/// Rejects windows a singular potential cannot live on, naming `field`.
pub fn check_window(potential: &Potential, field: &str, a: f64) -> Result<(), CliError> {
    if potential.singularity_order() > 2 && a <= potential.domain_left() {
        return Err(CliError::config(
            field,
            format!(
                "the left end must exceed {} for this singular potential",
                potential.domain_left()
            ),
        ));
    }
    if a < potential.domain_left() {
        return Err(CliError::config(
            field,
            format!("the left end lies below the domain start {}", potential.domain_left()),
        ));
    }
    Ok(())
}
