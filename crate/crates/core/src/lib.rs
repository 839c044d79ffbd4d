//! Differential geometry of space curves with a focus on helices.
//!
//! The crate computes Frenet frames, curvature/torsion and Darboux (angular
//! velocity) vectors for parametric curves, transports frame-constant vector
//! fields, evaluates the natural equations that characterize the classical
//! helix families (cylindrical, normal, osculating, rectifying and the
//! general frame-constant case), reconstructs helix axes, and generates
//! helices as curves on generalized cylinders.
//!
//! Everything is deterministic `f64` numerics; tolerances live in
//! [`config::NumericConfig`].

pub mod arclength;
pub mod axis;
pub mod classify;
pub mod config;
pub mod curve;
pub mod cylinder;
pub mod dual;
pub mod error;
pub mod frenet;
pub mod hypothesis;
pub mod io;
pub mod laws;
pub mod numeric;
pub mod transport;

pub use arclength::{ArclengthMap, UnitSpeedCurve};
pub use axis::{reconstruct_axis, AxisReconstruction};
pub use classify::{classify, estimate_hypothesis, ClassReport, HelixClass, HypothesisFit};
pub use config::NumericConfig;
pub use curve::{AnalyticCurve, CurveModel, DerivativeSource, SampledCurve, Vec3};
pub use cylinder::{
    circular_normal_helix, generate_general_helix, generate_normal_helix, make_cylinder,
    normal_angle_profile, slope_and_theta, BaseKind, CircularNormalHelix, CylinderSpec,
    GeneratedHelix, ThetaProfile,
};
pub use dual::{binormal_dual, osculating_to_normal_dual, DualCurveResult};
pub use error::{Error, Result};
pub use frenet::{
    darboux_of_frame, frenet_apparatus, frenet_series, total_curvature, DarbouxEstimate,
    FrameField, FrenetSample,
};
pub use hypothesis::{HelixHypothesis, HypothesisKind};
pub use laws::{
    general_residual, lancret_series, normal_residual, osculating_residual,
    osculating_residual_primal, rectifying_residual, LancretSeries,
};
pub use transport::{
    frame_coefficients, relative_derivative, transport_field, FrameCoefficients,
    FrameConstantField, RelativeDerivative,
};
