//! Numeric defaults and tolerances.
//!
//! Every threshold used by the library is collected in [`NumericConfig`] so
//! that runs are reproducible and overridable from one place (the CLI maps
//! `--tol name=value` and `--grid n` onto this struct).

use serde::{Deserialize, Serialize};

/// Default number of arclength samples per curve.
pub const DEFAULT_GRID: usize = 2048;

/// Default number of integration steps for the cylinder generators.
pub const DEFAULT_GENERATOR_STEPS: usize = 4096;

/// Tolerances and grid sizes shared by all operations.
///
/// The defaults target analytic curves sampled at 2048-4096 points over
/// domains of length up to ~100, where fourth-order stencils and RK4 keep
/// discretization error well below each threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericConfig {
    /// Arclength samples per curve.
    pub grid: usize,
    /// Integration steps for cylinder generators.
    pub generator_steps: usize,
    /// Regularity floor: |alpha'(t)| must exceed this everywhere.
    pub reg_eps: f64,
    /// Curvature floor below which the Frenet frame is rejected.
    pub kappa_min: f64,
    /// Torsion floor for operations that divide by tau (osculating laws,
    /// binormal duality).
    pub tau_min: f64,
    /// Maximum allowed orthonormality drift of a moving frame.
    pub frame_tol: f64,
    /// Agreement required between the RK4 and frame-coefficient transport
    /// paths, per unit of initial field length.
    pub transport_tol: f64,
    /// Residual threshold for the helix natural equations.
    pub law_tol: f64,
    /// Relative drift allowed for a reconstructed axis.
    pub axis_tol: f64,
    /// Planarity threshold on max |tau|.
    pub planar_tol: f64,
    /// Surface-membership tolerance, scaled by (1 + |z|).
    pub surface_tol: f64,
    /// Relative round-trip accuracy of the arclength map.
    pub arclength_tol: f64,
    /// Guard for near-zero denominators in axis formulas.
    pub denom_tol: f64,
    /// Zero threshold when assigning a kind to hypothesis coefficients.
    pub hypothesis_zero_tol: f64,
    /// Score above which an estimated hypothesis is flagged as a poor fit.
    pub fit_threshold: f64,
    /// Coarse spherical search grid (polar x azimuthal) for hypothesis
    /// estimation.
    pub hypothesis_grid: (usize, usize),
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            generator_steps: DEFAULT_GENERATOR_STEPS,
            reg_eps: 1e-10,
            kappa_min: 1e-8,
            tau_min: 1e-8,
            frame_tol: 1e-8,
            transport_tol: 1e-7,
            law_tol: 1e-5,
            axis_tol: 1e-6,
            planar_tol: 1e-6,
            surface_tol: 1e-7,
            arclength_tol: 1e-9,
            denom_tol: 1e-9,
            hypothesis_zero_tol: 1e-4,
            fit_threshold: 1e-3,
            hypothesis_grid: (64, 128),
        }
    }
}

impl NumericConfig {
    /// Override a named tolerance, as accepted by the CLI `--tol` flag.
    pub fn set_named(&mut self, name: &str, value: f64) -> Result<(), String> {
        match name {
            "reg" => self.reg_eps = value,
            "kappa_min" => self.kappa_min = value,
            "tau_min" => self.tau_min = value,
            "frame" => self.frame_tol = value,
            "transport" => self.transport_tol = value,
            "law" => self.law_tol = value,
            "axis" => self.axis_tol = value,
            "planar" => self.planar_tol = value,
            "surface" => self.surface_tol = value,
            "arclength" => self.arclength_tol = value,
            "denom" => self.denom_tol = value,
            "hypothesis_zero" => self.hypothesis_zero_tol = value,
            "fit" => self.fit_threshold = value,
            other => return Err(format!("unknown tolerance name `{other}`")),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_positive() {
        let c = NumericConfig::default();
        for v in [
            c.reg_eps,
            c.kappa_min,
            c.tau_min,
            c.frame_tol,
            c.transport_tol,
            c.law_tol,
            c.axis_tol,
            c.planar_tol,
            c.surface_tol,
            c.arclength_tol,
            c.denom_tol,
            c.hypothesis_zero_tol,
            c.fit_threshold,
        ] {
            assert!(v > 0.0);
        }
        assert!(c.grid >= 2);
    }

    #[test]
    fn named_override() {
        let mut c = NumericConfig::default();
        c.set_named("law", 1e-4).unwrap();
        assert_eq!(c.law_tol, 1e-4);
        assert!(c.set_named("nope", 1.0).is_err());
    }
}
