//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("curve is not regular at t = {t}: |d1| = {speed:.3e} <= {eps:.3e}")]
    Regularity { t: f64, speed: f64, eps: f64 },

    #[error("curvature vanishes at s = {s}: kappa = {kappa:.3e} <= {min:.3e}; Frenet frame undefined")]
    VanishingCurvature { s: f64, kappa: f64, min: f64 },

    #[error("torsion vanishes at s = {s}: tau = {tau:.3e} (floor {min:.3e})")]
    VanishingTorsion { s: f64, tau: f64, min: f64 },

    #[error("frame orthonormality drift {drift:.3e} exceeds {tol:.3e} at s = {s}")]
    FrameDegeneracy { s: f64, drift: f64, tol: f64 },

    #[error("transport grid too coarse: RK4 and frame-coefficient paths disagree by {gap:.3e} (tol {tol:.3e})")]
    GridTooCoarse { gap: f64, tol: f64 },

    #[error("axis reconstruction does not support this hypothesis: {0}")]
    BranchUnsupported(String),

    #[error("vanishing denominator c*kappa + a*tau = {value:.3e} at s = {s}")]
    VanishingDenominator { s: f64, value: f64 },

    #[error("base curve leaves the plane orthogonal to the axis by {offset:.3e}")]
    NonPlanarBase { offset: f64 },

    #[error("slope angle reached |phi| = {phi:.6} at s = {s}; curve degenerates into a ruling")]
    SlopeBlowup { s: f64, phi: f64 },

    #[error("theta = 0 has no closed form here; use the ODE generator with theta = 0")]
    ThetaZero,

    #[error("theta(s) crosses zero near s = {s}; the base curvature formula divides by tan(theta)")]
    ThetaZeroCrossing { s: f64 },

    #[error("degenerate surface speed at s = {s}")]
    DegenerateSpeed { s: f64 },

    #[error("implied base curvature is identically zero; the cylinder degenerates to a plane")]
    DegenerateBase,

    #[error("sample at s = {s} lies off the cylinder by {distance:.3e} (tol {tol:.3e})")]
    OffSurface { s: f64, distance: f64, tol: f64 },

    #[error("theta is undefined at s = {s}: <N,V> and <B,V> both vanish")]
    UndefinedTheta { s: f64 },

    #[error("samples are not on a uniform arclength grid")]
    NonUniformGrid,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed data: {0}")]
    Parse(String),
}
