//! JSON run configuration.
//!
//! ```json
//! {
//!   "potential": { "v1": 10.0, "v2": 8.0, "alpha": 0.5, "q": 0.3 },
//!   "dirac": { "m": 1.0, "c_spin": 0.0 },
//!   "solver": { "scan_points": 2000, "tol_e": 1e-10, "max_levels": 200 },
//!   "n_r": 0,
//!   "q_list": [0.1, 0.01, 0.001],
//!   "export_points": 400
//! }
//! ```
//!
//! Only `potential` is required. Energies are in units of the chosen mass
//! scale, lengths in its inverse.

use std::path::Path;

use qdeform::{DiracConstants, PotentialParams, SolverConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialParams,
    #[serde(default = "unit_mass")]
    pub dirac: DiracConstants,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Level for `wavefunction`.
    #[serde(default)]
    pub n_r: Option<usize>,
    /// Deformations for `morse-limit` and `verify` sweeps.
    #[serde(default)]
    pub q_list: Option<Vec<f64>>,
    /// Rows of an exported wavefunction on a uniform grid; the solver's own
    /// mesh is written when absent.
    #[serde(default)]
    pub export_points: Option<usize>,
}

fn unit_mass() -> DiracConstants {
    DiracConstants { m: 1.0, c_spin: 0.0 }
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            CliError::config(field_of(&e.to_string()), e.to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("--config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.potential.validate()?;
        self.dirac.validate()?;
        self.solver.validate()?;
        if self.export_points.is_some_and(|n| n < 5) {
            return Err(CliError::config("export_points", "need at least 5 points"));
        }
        if let Some(qs) = &self.q_list {
            check_q_list(qs)?;
        }
        Ok(())
    }
}

/// Finite, non-negative and strictly decreasing.
pub fn check_q_list(qs: &[f64]) -> CliResult<()> {
    if qs.is_empty() {
        return Err(CliError::config("q_list", "is empty"));
    }
    if let Some(q) = qs.iter().find(|q| !q.is_finite() || **q < 0.0) {
        return Err(CliError::config("q_list", format!("{q} is not a valid deformation")));
    }
    if qs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::config("q_list", "must be strictly decreasing"));
    }
    Ok(())
}

/// Parses `0.1,0.01,1e-3`.
pub fn parse_q_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| CliError::config("q_list", format!("`{s}`: {e}")))
        })
        .collect()
}

/// The backquoted name serde puts in messages such as "missing field `alpha`".
fn field_of(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "config".to_string())
}
