//! Binormal duality: integrating the binormal of a curve produces a new
//! unit-speed curve whose curvature and torsion are the original torsion and
//! curvature, with frames related by T -> B, N -> -N, B -> T. The duality
//! swaps the normal-helix and osculating-helix families.
//!
//! The construction needs tau > 0 on the whole range so the dual has a
//! positive curvature; curves with sign-changing torsion must be split
//! upstream.

use crate::config::NumericConfig;
use crate::curve::{CurveModel, SampledCurve, Vec3};
use crate::error::{Error, Result};
use crate::frenet::{frenet_at_param, FrenetSample};
use crate::numeric;

/// Dual curve samples and the residuals of the frame/curvature swap
/// relations, verified by recomputing the dual's Frenet data independently
/// from the integrated positions.
#[derive(Debug, Clone)]
pub struct DualCurveResult {
    pub samples: Vec<FrenetSample>,
    /// max |T_dual - B|, max |N_dual + N|, max |B_dual - T|.
    pub frame_residuals: [f64; 3],
    /// max |kappa_dual - tau|, max |tau_dual - kappa|.
    pub swap_residuals: [f64; 2],
    /// max | |alpha_dual'| - 1 |.
    pub speed_error: f64,
}

/// Integrates the binormal field into the dual curve.
///
/// Positions come from fourth-order cumulative quadrature of B on the
/// arclength grid; the dual Frenet data are recomputed through a local
/// polynomial fit of those positions, independently of the input frames.
pub fn binormal_dual(samples: &[FrenetSample], cfg: &NumericConfig) -> Result<DualCurveResult> {
    if samples.len() < 8 {
        return Err(Error::InvalidInput("need at least 8 samples".into()));
    }
    for x in samples {
        if x.tau <= cfg.tau_min {
            return Err(Error::VanishingTorsion { s: x.s, tau: x.tau, min: cfg.tau_min });
        }
    }
    let s: Vec<f64> = samples.iter().map(|x| x.s).collect();
    let h = numeric::uniform_spacing(&s).ok_or(Error::NonUniformGrid)?;
    let binormals: Vec<Vec3> = samples.iter().map(|x| x.binormal).collect();
    let positions = numeric::cumulative4(h, &binormals);

    let fit = SampledCurve::from_uniform(0.0, h, positions)?;
    let mut dual = Vec::with_capacity(samples.len());
    let mut frame_residuals = [0.0_f64; 3];
    let mut swap_residuals = [0.0_f64; 2];
    let mut speed_error = 0.0_f64;
    for (i, x) in samples.iter().enumerate() {
        let sbar = i as f64 * h;
        let d = frenet_at_param(&fit, sbar, cfg)?;
        speed_error = speed_error.max((fit.d1(sbar).norm() - 1.0).abs());
        frame_residuals[0] = frame_residuals[0].max((d.tangent - x.binormal).norm());
        frame_residuals[1] = frame_residuals[1].max((d.normal + x.normal).norm());
        frame_residuals[2] = frame_residuals[2].max((d.binormal - x.tangent).norm());
        swap_residuals[0] = swap_residuals[0].max((d.kappa - x.tau).abs());
        swap_residuals[1] = swap_residuals[1].max((d.tau - x.kappa).abs());
        dual.push(FrenetSample { s: sbar, ..d });
    }
    Ok(DualCurveResult { samples: dual, frame_residuals, swap_residuals, speed_error })
}

/// Inverse direction of the duality: integrating the binormal of an
/// osculating helix yields a normal helix. Same machinery as
/// [`binormal_dual`]; kept separate because the classification target of the
/// result differs.
pub fn osculating_to_normal_dual(
    samples: &[FrenetSample],
    cfg: &NumericConfig,
) -> Result<DualCurveResult> {
    binormal_dual(samples, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arclength::build_arclength_map;
    use crate::curve::AnalyticCurve;
    use crate::cylinder::circular_normal_helix;
    use crate::frenet::frenet_series;
    use crate::laws::{lancret_series, normal_residual, osculating_residual};
    use std::f64::consts::{FRAC_PI_2, PI, TAU};
    use std::sync::Arc;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn helix_samples(r: f64, h: f64, n: usize) -> Vec<FrenetSample> {
        let c = Arc::new(AnalyticCurve::circular_helix(r, h, (0.0, 2.0 * TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 1024, &cfg()).unwrap();
        frenet_series(c.as_ref(), &map, n, &cfg()).unwrap()
    }

    #[test]
    fn circular_helix_dual_swaps_curvature_and_torsion() {
        let samples = helix_samples(3.0, 4.0, 2048);
        let dual = binormal_dual(&samples, &cfg()).unwrap();
        assert!(dual.swap_residuals[0] < 1e-5, "kappa swap {}", dual.swap_residuals[0]);
        assert!(dual.swap_residuals[1] < 1e-5, "tau swap {}", dual.swap_residuals[1]);
        assert!(dual.frame_residuals.iter().all(|r| *r < 1e-5));
        assert!(dual.speed_error < 1e-8);
        let mid = &dual.samples[1024];
        assert!((mid.kappa - 4.0 / 25.0).abs() < 1e-6);
        assert!((mid.tau - 3.0 / 25.0).abs() < 1e-6);
    }

    #[test]
    fn dual_of_normal_helix_is_an_osculating_helix() {
        // restrict to s < 0 where the family's torsion is positive, and test
        // the osculating law at the swapped angle theta - pi/2
        let theta = PI / 12.0;
        let helix = circular_normal_helix(theta, 0.0, 0.0, (-10.0, -0.2)).unwrap();
        let t_range = (helix.t_of_s(-10.0), helix.t_of_s(-0.2));
        let clipped = circular_normal_helix(theta, 0.0, 0.0, t_range).unwrap();
        let map = build_arclength_map(Arc::new(clipped), 1024, &cfg()).unwrap();
        let samples = frenet_series(map.curve().as_ref(), &map, 2048, &cfg()).unwrap();
        assert!(samples.iter().all(|x| x.tau > 0.0));

        let dual = binormal_dual(&samples, &cfg()).unwrap();
        let series = lancret_series(&dual.samples, &cfg()).unwrap();
        let residual =
            osculating_residual(&series, &dual.samples, theta - FRAC_PI_2, &cfg()).unwrap();
        let rms = numeric::rms(&residual);
        assert!(rms < 1e-4, "osculating residual rms {rms}");
    }

    #[test]
    fn double_dual_restores_curvature_and_torsion() {
        let samples = helix_samples(3.0, 4.0, 2048);
        let first = binormal_dual(&samples, &cfg()).unwrap();
        let second = osculating_to_normal_dual(&first.samples, &cfg()).unwrap();
        for (orig, twice) in samples.iter().zip(&second.samples) {
            assert!((orig.kappa - twice.kappa).abs() < 2e-5);
            assert!((orig.tau - twice.tau).abs() < 2e-5);
        }
    }

    #[test]
    fn law_exchange_normal_to_osculating() {
        // a curve passing the normal law maps to one passing the osculating
        // law with the swapped angle, and back
        let theta = PI / 10.0;
        let helix = circular_normal_helix(theta, 0.0, 0.0, (-8.0, -0.3)).unwrap();
        let t_range = (helix.t_of_s(-8.0), helix.t_of_s(-0.3));
        let clipped = circular_normal_helix(theta, 0.0, 0.0, t_range).unwrap();
        let map = build_arclength_map(Arc::new(clipped), 1024, &cfg()).unwrap();
        let samples = frenet_series(map.curve().as_ref(), &map, 2048, &cfg()).unwrap();

        let series = lancret_series(&samples, &cfg()).unwrap();
        let direct = normal_residual(&series, &samples, theta).unwrap();
        assert!(numeric::rms(&direct) < 1e-6);

        let dual = binormal_dual(&samples, &cfg()).unwrap();
        let dual_series = lancret_series(&dual.samples, &cfg()).unwrap();
        let swapped =
            osculating_residual(&dual_series, &dual.samples, theta - FRAC_PI_2, &cfg()).unwrap();
        assert!(numeric::rms(&swapped) < 1e-4);

        let back = osculating_to_normal_dual(&dual.samples, &cfg()).unwrap();
        let back_series = lancret_series(&back.samples, &cfg()).unwrap();
        let restored = normal_residual(&back_series, &back.samples, theta).unwrap();
        assert!(numeric::rms(&restored) < 1e-4);
    }

    #[test]
    fn sign_changing_torsion_is_rejected() {
        // the full closed-form family crosses tau = 0 at its waist
        let helix = circular_normal_helix(0.3, 0.0, 0.0, (-2.0, 2.0)).unwrap();
        let map = build_arclength_map(Arc::new(helix), 512, &cfg()).unwrap();
        let samples = frenet_series(map.curve().as_ref(), &map, 512, &cfg()).unwrap();
        assert!(matches!(
            binormal_dual(&samples, &cfg()),
            Err(Error::VanishingTorsion { .. })
        ));
    }
}
