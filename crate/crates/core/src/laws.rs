//! Natural-equation residuals for the helix families.
//!
//! Each family of helices with a frame-constant field W orthogonal to the
//! axis is characterized by an intrinsic relation between kappa, tau and
//! their arclength derivatives:
//!
//! - normal (W = cos t N + sin t B):
//!   kappa / (cos^2 t kappa^2 + tau^2) * rho' = -tan t, rho = tau/kappa
//! - osculating (W = cos t T + sin t N):
//!   tau / (kappa^2 + sin^2 t tau^2) * (kappa/tau)' = cot t
//! - rectifying (W = sin t T + cos t B): rho' = 0 (cylindrical helices)
//! - general (W = a T + b N + c B, unit):
//!   -b kappa^2 rho' = c kappa ((1-c^2) kappa^2 + (1-3a^2) tau^2)
//!                   + a tau   ((1-a^2) tau^2   + (1-3c^2) kappa^2)
//!
//! A curve belongs to a family exactly when the corresponding residual
//! vanishes along it; the residual magnitude is the classification score.

use std::f64::consts::FRAC_PI_2;

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::frenet::FrenetSample;
use crate::hypothesis::HelixHypothesis;
use crate::numeric;

/// Lancret curvature rho = tau/kappa and its arclength derivative on a
/// uniform grid. rho is constant exactly for cylindrical helices and linear
/// in s for rectifying curves.
#[derive(Debug, Clone)]
pub struct LancretSeries {
    pub s: Vec<f64>,
    pub rho: Vec<f64>,
    pub rho_prime: Vec<f64>,
    h: f64,
}

impl LancretSeries {
    pub fn spacing(&self) -> f64 {
        self.h
    }
}

/// Builds the Lancret series; requires kappa above the configured floor
/// everywhere (fourth-order differences for rho').
pub fn lancret_series(samples: &[FrenetSample], cfg: &NumericConfig) -> Result<LancretSeries> {
    if samples.len() < 5 {
        return Err(Error::InvalidInput("need at least 5 samples".into()));
    }
    let s: Vec<f64> = samples.iter().map(|x| x.s).collect();
    let h = numeric::uniform_spacing(&s).ok_or(Error::NonUniformGrid)?;
    for x in samples {
        if x.kappa <= cfg.kappa_min {
            return Err(Error::VanishingCurvature { s: x.s, kappa: x.kappa, min: cfg.kappa_min });
        }
    }
    let rho: Vec<f64> = samples.iter().map(|x| x.tau / x.kappa).collect();
    let rho_prime = numeric::derivative4(h, &rho);
    Ok(LancretSeries { s, rho, rho_prime, h })
}

fn check_open_theta(theta: f64) -> Result<()> {
    if !(theta > -FRAC_PI_2 && theta < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in (-pi/2, pi/2), got {theta}"
        )));
    }
    Ok(())
}

/// Residual of the normal-helix law for angle `theta`.
///
/// Zero along a curve iff the curve is a normal helix for that angle
/// (theta = 0 reduces to the cylindrical case rho' = 0).
pub fn normal_residual(
    series: &LancretSeries,
    samples: &[FrenetSample],
    theta: f64,
) -> Result<Vec<f64>> {
    check_open_theta(theta)?;
    let cos2 = theta.cos() * theta.cos();
    let tan = theta.tan();
    Ok(samples
        .iter()
        .zip(&series.rho_prime)
        .map(|(x, rp)| x.kappa / (cos2 * x.kappa * x.kappa + x.tau * x.tau) * rp + tan)
        .collect())
}

/// Residual of the osculating-helix law, in the (kappa/tau)' form.
///
/// Requires |tau| above the configured floor on the whole grid and a nonzero
/// angle; theta = +-pi/2 is the cylindrical limit and is allowed.
pub fn osculating_residual(
    series: &LancretSeries,
    samples: &[FrenetSample],
    theta: f64,
    cfg: &NumericConfig,
) -> Result<Vec<f64>> {
    if theta == 0.0 {
        return Err(Error::InvalidInput("theta must be nonzero for the osculating law".into()));
    }
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in [-pi/2, pi/2] \\ {{0}}, got {theta}"
        )));
    }
    for x in samples {
        if x.tau.abs() <= cfg.tau_min {
            return Err(Error::VanishingTorsion { s: x.s, tau: x.tau, min: cfg.tau_min });
        }
    }
    let sigma: Vec<f64> = samples.iter().map(|x| x.kappa / x.tau).collect();
    let sigma_prime = numeric::derivative4(series.h, &sigma);
    let sin2 = theta.sin() * theta.sin();
    let cot = theta.cos() / theta.sin();
    Ok(samples
        .iter()
        .zip(&sigma_prime)
        .map(|(x, sp)| x.tau / (x.kappa * x.kappa + sin2 * x.tau * x.tau) * sp - cot)
        .collect())
}

/// Residual of the osculating-helix law in its primal rho' form:
/// kappa^2 / (kappa^2 + sin^2 t tau^2) * rho' + cot t * tau.
///
/// Equivalent to [`osculating_residual`] where tau != 0 (they differ by the
/// factor -1/tau); kept separate so the equivalence can be verified.
pub fn osculating_residual_primal(
    series: &LancretSeries,
    samples: &[FrenetSample],
    theta: f64,
) -> Result<Vec<f64>> {
    if theta == 0.0 {
        return Err(Error::InvalidInput("theta must be nonzero for the osculating law".into()));
    }
    let sin2 = theta.sin() * theta.sin();
    let cot = theta.cos() / theta.sin();
    Ok(samples
        .iter()
        .zip(&series.rho_prime)
        .map(|(x, rp)| {
            x.kappa * x.kappa / (x.kappa * x.kappa + sin2 * x.tau * x.tau) * rp + cot * x.tau
        })
        .collect())
}

/// Residual of the rectifying-helix law: rho'. Rectifying helices are
/// exactly the cylindrical helices, so the law is constancy of rho.
pub fn rectifying_residual(series: &LancretSeries) -> Vec<f64> {
    series.rho_prime.clone()
}

/// Residual of the general helix law, LHS - RHS of
/// -b kappa^2 rho' = c kappa ((1-c^2) kappa^2 + (1-3a^2) tau^2)
///                 + a tau   ((1-a^2) tau^2   + (1-3c^2) kappa^2).
///
/// Specializing the coefficients reproduces each family's law up to a
/// nonvanishing factor (see the reduction tests).
pub fn general_residual(
    series: &LancretSeries,
    samples: &[FrenetSample],
    hyp: &HelixHypothesis,
) -> Vec<f64> {
    let (a, b, c) = (hyp.a, hyp.b, hyp.c);
    samples
        .iter()
        .zip(&series.rho_prime)
        .map(|(x, rp)| {
            let (k, t) = (x.kappa, x.tau);
            let lhs = -b * k * k * rp;
            let rhs = c * k * ((1.0 - c * c) * k * k + (1.0 - 3.0 * a * a) * t * t)
                + a * t * ((1.0 - a * a) * t * t + (1.0 - 3.0 * c * c) * k * k);
            lhs - rhs
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arclength::build_arclength_map;
    use crate::curve::{AnalyticCurve, CurveModel, Vec3};
    use crate::frenet::frenet_series;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, TAU};
    use std::sync::Arc;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn helix_series(r: f64, h: f64) -> (Vec<FrenetSample>, LancretSeries) {
        let c = Arc::new(AnalyticCurve::circular_helix(r, h, (0.0, 2.0 * TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 512, &cfg()).unwrap();
        let samples = frenet_series(c.as_ref(), &map, 1024, &cfg()).unwrap();
        let series = lancret_series(&samples, &cfg()).unwrap();
        (samples, series)
    }

    #[test]
    fn circular_helix_lancret_constant() {
        let (_, series) = helix_series(3.0, 4.0);
        for (rho, rp) in series.rho.iter().zip(&series.rho_prime) {
            assert_abs_diff_eq!(*rho, 4.0 / 3.0, epsilon = 1e-12);
            assert!(rp.abs() < 1e-9);
        }
    }

    #[test]
    fn near_planar_rho_tends_to_zero() {
        let (_, series) = helix_series(1.0, 1e-4);
        for rho in &series.rho {
            assert!(rho.abs() < 2e-4);
        }
    }

    #[test]
    fn normal_residual_on_circular_helix() {
        let (samples, series) = helix_series(3.0, 4.0);
        // theta = 0 is the cylindrical case: residual vanishes
        for r in normal_residual(&series, &samples, 0.0).unwrap() {
            assert!(r.abs() < 1e-9);
        }
        // theta = pi/4: rho' = 0 so the residual is exactly tan(pi/4) = 1
        for r in normal_residual(&series, &samples, FRAC_PI_4).unwrap() {
            assert_abs_diff_eq!(r, 1.0, epsilon = 1e-9);
        }
        assert!(normal_residual(&series, &samples, FRAC_PI_2).is_err());
    }

    #[test]
    fn osculating_residual_on_circular_helix() {
        let (samples, series) = helix_series(3.0, 4.0);
        // theta = pi/2: (kappa/tau)' = 0 and cot = 0
        for r in osculating_residual(&series, &samples, FRAC_PI_2, &cfg()).unwrap() {
            assert!(r.abs() < 1e-9);
        }
        for r in osculating_residual(&series, &samples, FRAC_PI_4, &cfg()).unwrap() {
            assert_abs_diff_eq!(r, -1.0, epsilon = 1e-9);
        }
        assert!(osculating_residual(&series, &samples, 0.0, &cfg()).is_err());
    }

    #[test]
    fn osculating_law_rejects_planar_input() {
        let c = Arc::new(AnalyticCurve::circle(1.0, (0.0, TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 256, &cfg()).unwrap();
        let samples = frenet_series(c.as_ref(), &map, 64, &cfg()).unwrap();
        let series = lancret_series(&samples, &cfg()).unwrap();
        match osculating_residual(&series, &samples, FRAC_PI_4, &cfg()) {
            Err(Error::VanishingTorsion { .. }) => {}
            other => panic!("expected VanishingTorsion, got {other:?}"),
        }
    }

    #[test]
    fn osculating_forms_are_equivalent() {
        // form2 = -form1 / tau wherever tau != 0, so they vanish together
        let (samples, series) = helix_series(2.0, 1.5);
        let theta = 0.9;
        let r1 = osculating_residual_primal(&series, &samples, theta).unwrap();
        let r2 = osculating_residual(&series, &samples, theta, &cfg()).unwrap();
        for ((a, b), x) in r1.iter().zip(&r2).zip(&samples) {
            assert_abs_diff_eq!(*b, -a / x.tau, epsilon = 1e-10);
        }
    }

    #[test]
    fn rectifying_residual_is_rho_prime() {
        let (_, series) = helix_series(3.0, 4.0);
        let r = rectifying_residual(&series);
        assert_eq!(r.len(), series.rho_prime.len());
        for x in r {
            assert!(x.abs() < 1e-9);
        }
    }

    #[test]
    fn general_residual_reduces_to_normal_law() {
        // pattern (0, cos t, sin t): R_general = -b kappa (b^2 kappa^2 + tau^2) R_normal
        let (samples, series) = helix_series(2.0, 0.8);
        let theta = 0.35;
        let hyp = HelixHypothesis::normal(theta);
        let rg = general_residual(&series, &samples, &hyp);
        let rn = normal_residual(&series, &samples, theta).unwrap();
        for ((g, n), x) in rg.iter().zip(&rn).zip(&samples) {
            let b = theta.cos();
            let factor = -b * x.kappa * (b * b * x.kappa * x.kappa + x.tau * x.tau);
            assert_abs_diff_eq!(*g, factor * n, epsilon = 1e-10);
        }
    }

    #[test]
    fn general_residual_reduces_to_osculating_law() {
        // pattern (cos t, sin t, 0): R_general = -b (kappa^2 + b^2 tau^2) R_osc_primal
        let (samples, series) = helix_series(2.0, 0.8);
        let theta = 0.55;
        let hyp = HelixHypothesis::osculating(theta);
        let rg = general_residual(&series, &samples, &hyp);
        let ro = osculating_residual_primal(&series, &samples, theta).unwrap();
        for ((g, o), x) in rg.iter().zip(&ro).zip(&samples) {
            let b = theta.sin();
            let factor = -b * (x.kappa * x.kappa + b * b * x.tau * x.tau);
            assert_abs_diff_eq!(*g, factor * o, epsilon = 1e-10);
        }
    }

    #[test]
    fn general_residual_pure_axes() {
        let (samples, series) = helix_series(3.0, 4.0);
        let tol = 1e-9;
        // W = N: reduces to -kappa^2 rho'
        let rg = general_residual(&series, &samples, &HelixHypothesis::new(0.0, 1.0, 0.0, tol).unwrap());
        for (g, x) in rg.iter().zip(&series.rho_prime) {
            let k2 = samples[0].kappa * samples[0].kappa;
            assert_abs_diff_eq!(*g, -k2 * x, epsilon = 1e-12);
        }
        // W = T: reduces to -tau kappa^2, nonzero for the helix
        let rg = general_residual(&series, &samples, &HelixHypothesis::new(1.0, 0.0, 0.0, tol).unwrap());
        for (g, x) in rg.iter().zip(&samples) {
            assert_abs_diff_eq!(*g, -x.tau * x.kappa * x.kappa, epsilon = 1e-12);
            assert!(g.abs() > 1e-3);
        }
        // W = B: reduces to -kappa tau^2
        let rg = general_residual(&series, &samples, &HelixHypothesis::new(0.0, 0.0, 1.0, tol).unwrap());
        for (g, x) in rg.iter().zip(&samples) {
            assert_abs_diff_eq!(*g, -x.kappa * x.tau * x.tau, epsilon = 1e-12);
        }
    }

    #[test]
    fn general_residual_rectifying_pattern_matches_lancret_angle() {
        // For b = 0 the law holds exactly when rho = -c/a, the Lancret angle
        // of the cylindrical helix. For r=3, h=4: rho = 4/3, (a, c) ~ (-3, 4)/5.
        let (samples, series) = helix_series(3.0, 4.0);
        let matched = HelixHypothesis::new(-0.6, 0.0, 0.8, 1e-9).unwrap();
        for g in general_residual(&series, &samples, &matched) {
            assert!(g.abs() < 1e-12);
        }
        let mismatched = HelixHypothesis::rectifying(FRAC_PI_4);
        let rg = general_residual(&series, &samples, &mismatched);
        assert!(numeric::rms(&rg) > 1e-4);
    }

    #[test]
    fn normal_residual_sign_symmetry_under_mirror() {
        // R(theta) on a curve equals -R(-theta) on its (x, y, -z) mirror.
        let theta = 0.3;
        let c = Arc::new(AnalyticCurve::circular_helix(2.0, 1.2, (0.0, TAU)).unwrap());
        let mirror_src = c.clone();
        let mirror = Arc::new(
            AnalyticCurve::new(
                c.domain(),
                {
                    let m = mirror_src.clone();
                    move |t| {
                        let p = m.position(t);
                        Vec3::new(p.x, p.y, -p.z)
                    }
                },
                {
                    let m = mirror_src.clone();
                    move |t| {
                        let p = m.d1(t);
                        Vec3::new(p.x, p.y, -p.z)
                    }
                },
                {
                    let m = mirror_src.clone();
                    move |t| {
                        let p = m.d2(t);
                        Vec3::new(p.x, p.y, -p.z)
                    }
                },
                {
                    let m = mirror_src.clone();
                    move |t| {
                        let p = m.d3(t);
                        Vec3::new(p.x, p.y, -p.z)
                    }
                },
            )
            .unwrap(),
        );
        let build = |curve: Arc<AnalyticCurve>| {
            let map = build_arclength_map(curve.clone(), 256, &cfg()).unwrap();
            let samples = frenet_series(curve.as_ref(), &map, 512, &cfg()).unwrap();
            let series = lancret_series(&samples, &cfg()).unwrap();
            (samples, series)
        };
        let (s1, l1) = build(c);
        let (s2, l2) = build(mirror);
        let r1 = normal_residual(&l1, &s1, theta).unwrap();
        let r2 = normal_residual(&l2, &s2, -theta).unwrap();
        for (a, b) in r1.iter().zip(&r2) {
            assert_abs_diff_eq!(*a, -b, epsilon = 1e-10);
        }
    }

    #[test]
    fn lancret_rejects_vanishing_curvature() {
        let c = Arc::new(AnalyticCurve::twisted_cubic((-1.0, 1.0)).unwrap());
        let map = build_arclength_map(c.clone(), 256, &cfg()).unwrap();
        let samples = frenet_series(c.as_ref(), &map, 128, &cfg()).unwrap();
        // genuine twisted cubic has kappa > 0; force a bad sample instead
        let mut bad = samples.clone();
        bad[10].kappa = 0.0;
        assert!(matches!(
            lancret_series(&bad, &cfg()),
            Err(Error::VanishingCurvature { .. })
        ));
    }
}
