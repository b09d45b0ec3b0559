use serde::{Deserialize, Serialize};

/// Tunable tolerances and truncations. Every field has a documented default;
/// the CLI deserializes this from JSON and rejects unknown keys.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct LabConfig {
    /// Absolute/relative hybrid tolerance for adaptive quadrature.
    pub quad_tol: f64,
    /// Maximum bisection depth per quadrature panel.
    pub quad_max_depth: u32,
    /// Truncation point for integrals over unbounded gauge coordinates.
    pub quad_tmax: f64,
    /// Node count for discretized quadratic forms.
    pub spec_n: usize,
    /// Residual tolerance for the inverse-iteration eigensolver.
    pub spec_tol: f64,
    /// Truncation of the discretized t-axis.
    pub spec_tmax: f64,
    /// Smallest positive grid node of the graded spectral mesh. The mesh is
    /// geometric between `spec_tmin` and `spec_tmax`; doubling `spec_n`
    /// inserts log-midpoints, so ladders are nested.
    pub spec_tmin: f64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            quad_tol: 1e-10,
            quad_max_depth: 40,
            quad_tmax: 200.0,
            spec_n: 4096,
            spec_tol: 1e-10,
            spec_tmax: 200.0,
            spec_tmin: 1e-10,
        }
    }
}

impl LabConfig {
    /// Copy with quadrature tolerance tightened and depth raised; used by the
    /// resolution-doubling re-checks.
    pub fn refined(&self) -> Self {
        LabConfig {
            quad_tol: self.quad_tol / 4.0,
            quad_max_depth: self.quad_max_depth + 4,
            ..self.clone()
        }
    }
}
