//! Axis reconstruction: given a helix hypothesis W = a T + b N + c B, build
//! the candidate axis field V(s) that W keeps a right angle with. On a true
//! helix V is a constant vector; the drift and orthogonality scores say how
//! far the input is from that.

use crate::config::NumericConfig;
use crate::curve::Vec3;
use crate::error::{Error, Result};
use crate::frenet::FrenetSample;
use crate::hypothesis::{HelixHypothesis, HypothesisKind};
use crate::numeric;

/// Candidate axis field with its integrating factors.
///
/// mu is normalized to 1 at the first sample; the axis scale is free, so V
/// is meaningful up to a constant factor.
#[derive(Debug, Clone)]
pub struct AxisReconstruction {
    pub s: Vec<f64>,
    pub v: Vec<Vec3>,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    /// max_s |V(s) - V(s0)| / |V(s0)|.
    pub drift: f64,
    /// max_s |<W(s), V(s)>| / (|W| |V(s)|).
    pub orthogonality: f64,
}

impl AxisReconstruction {
    /// Unit vector along the mean of V(s).
    pub fn direction(&self) -> Vec3 {
        let sum: Vec3 = self.v.iter().sum();
        sum / sum.norm()
    }

    /// Angle in radians between the reconstructed axis and `axis`, ignoring
    /// orientation.
    pub fn angle_to(&self, axis: &Vec3) -> f64 {
        let d = self.direction();
        (d.dot(&axis.normalize()).abs().min(1.0)).acos()
    }
}

/// Reconstructs the axis field for a normal, osculating or general
/// hypothesis.
///
/// - normal branch: mu = exp(tan t * int tau), lambda = -sec t * rho * mu,
///   V = lambda T + mu (sin t N - cos t B)
/// - osculating branch: mu = exp(-cot t * int kappa),
///   lambda = -mu / (sin t * rho), V = mu (-sin t T + cos t N) + lambda B
/// - general branch: mu' = (c tau - a kappa) mu / b integrated by RK4,
///   lambda = g mu with g = (a c kappa - (b^2 + c^2) tau) / (b (c kappa + a tau)),
///   V = lambda (-c T + a B) + mu (-c N + b B)
///
/// Pure rectifying hypotheses have b = 0, which the general equations divide
/// by; use the rectifying residual instead.
pub fn reconstruct_axis(
    samples: &[FrenetSample],
    hyp: &HelixHypothesis,
    cfg: &NumericConfig,
) -> Result<AxisReconstruction> {
    if samples.len() < 5 {
        return Err(Error::InvalidInput("need at least 5 samples".into()));
    }
    let s: Vec<f64> = samples.iter().map(|x| x.s).collect();
    let h = numeric::uniform_spacing(&s).ok_or(Error::NonUniformGrid)?;

    let (lambda, mu, v): (Vec<f64>, Vec<f64>, Vec<Vec3>) = match hyp.kind {
        HypothesisKind::Normal | HypothesisKind::PrincipalNormal => {
            let theta = hyp.theta().unwrap_or(0.0);
            let tan = theta.tan();
            let sec = 1.0 / theta.cos();
            let tau: Vec<f64> = samples.iter().map(|x| x.tau).collect();
            let int_tau = numeric::cumulative4(h, &tau);
            let mu: Vec<f64> = int_tau.iter().map(|i| (tan * i).exp()).collect();
            let lambda: Vec<f64> = samples
                .iter()
                .zip(&mu)
                .map(|(x, m)| -sec * (x.tau / x.kappa) * m)
                .collect();
            let v = samples
                .iter()
                .zip(lambda.iter().zip(&mu))
                .map(|(x, (l, m))| {
                    x.tangent * *l + (x.normal * theta.sin() - x.binormal * theta.cos()) * *m
                })
                .collect();
            (lambda, mu, v)
        }
        HypothesisKind::Osculating => {
            let theta = hyp.theta().unwrap();
            for x in samples {
                if x.tau.abs() <= cfg.tau_min {
                    return Err(Error::VanishingTorsion { s: x.s, tau: x.tau, min: cfg.tau_min });
                }
            }
            let cot = theta.cos() / theta.sin();
            let kappa: Vec<f64> = samples.iter().map(|x| x.kappa).collect();
            let int_kappa = numeric::cumulative4(h, &kappa);
            let mu: Vec<f64> = int_kappa.iter().map(|i| (-cot * i).exp()).collect();
            let lambda: Vec<f64> = samples
                .iter()
                .zip(&mu)
                .map(|(x, m)| -m / (theta.sin() * (x.tau / x.kappa)))
                .collect();
            let v = samples
                .iter()
                .zip(lambda.iter().zip(&mu))
                .map(|(x, (l, m))| {
                    (x.tangent * -theta.sin() + x.normal * theta.cos()) * *m + x.binormal * *l
                })
                .collect();
            (lambda, mu, v)
        }
        HypothesisKind::General => {
            let (a, b, c) = (hyp.a, hyp.b, hyp.c);
            let n = samples.len();
            // mu' = (c tau - a kappa) mu / b, RK4 with midpoint interpolation
            let rate: Vec<f64> =
                samples.iter().map(|x| (c * x.tau - a * x.kappa) / b).collect();
            let mut mu = Vec::with_capacity(n);
            let mut m = 1.0;
            mu.push(m);
            for i in 0..n - 1 {
                let r0 = rate[i];
                let r1 = rate[i + 1];
                let rm = 0.5 * (r0 + r1);
                let k1 = r0 * m;
                let k2 = rm * (m + 0.5 * h * k1);
                let k3 = rm * (m + 0.5 * h * k2);
                let k4 = r1 * (m + h * k3);
                m += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                mu.push(m);
            }
            let mut lambda = Vec::with_capacity(n);
            for (x, m) in samples.iter().zip(&mu) {
                let denom = c * x.kappa + a * x.tau;
                if denom.abs() <= cfg.denom_tol {
                    return Err(Error::VanishingDenominator { s: x.s, value: denom });
                }
                let g = (a * c * x.kappa - (b * b + c * c) * x.tau) / (b * denom);
                lambda.push(g * m);
            }
            let v = samples
                .iter()
                .zip(lambda.iter().zip(&mu))
                .map(|(x, (l, m))| {
                    (x.tangent * -c + x.binormal * a) * *l + (x.normal * -c + x.binormal * b) * *m
                })
                .collect();
            (lambda, mu, v)
        }
        other => {
            return Err(Error::BranchUnsupported(format!(
                "{other:?} hypotheses have no axis quadrature; rectifying helices are the \
                 cylindrical ones, test rho' instead"
            )))
        }
    };

    let v0 = v[0];
    let v0n = v0.norm();
    let drift = v.iter().map(|x| (x - v0).norm()).fold(0.0_f64, f64::max) / v0n;
    let orthogonality = samples
        .iter()
        .zip(&v)
        .map(|(x, vi)| {
            let w = x.tangent * hyp.a + x.normal * hyp.b + x.binormal * hyp.c;
            w.dot(vi).abs() / (w.norm() * vi.norm())
        })
        .fold(0.0_f64, f64::max);

    Ok(AxisReconstruction { s, v, lambda, mu, drift, orthogonality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arclength::build_arclength_map;
    use crate::curve::AnalyticCurve;
    use crate::frenet::frenet_series;
    use std::f64::consts::TAU;
    use std::sync::Arc;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn helix_samples(r: f64, h: f64, n: usize) -> Vec<FrenetSample> {
        let c = Arc::new(AnalyticCurve::circular_helix(r, h, (0.0, 2.0 * TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 512, &cfg()).unwrap();
        frenet_series(c.as_ref(), &map, n, &cfg()).unwrap()
    }

    #[test]
    fn normal_branch_with_zero_theta_recovers_helix_axis() {
        // W = N on a circular helix: V = -rho T - B is a multiple of e3.
        let samples = helix_samples(3.0, 4.0, 1024);
        let hyp = HelixHypothesis::normal(0.0);
        let rec = reconstruct_axis(&samples, &hyp, &cfg()).unwrap();
        assert!(rec.drift < 1e-10, "drift = {}", rec.drift);
        assert!(rec.orthogonality < 1e-12);
        assert!(rec.angle_to(&Vec3::z()) < 1e-10);
    }

    #[test]
    fn lambda_mu_satisfy_branch_odes_on_normal_helix() {
        // On a curve that is a normal helix for theta, the integrating
        // factors satisfy lambda' = mu sin t kappa,
        // sin t mu' + lambda kappa + mu cos t tau = 0,
        // -cos t mu' + mu sin t tau = 0.
        let theta = 0.25;
        let helix = crate::cylinder::circular_normal_helix(theta, 0.0, 0.0, (-3.0, 3.0)).unwrap();
        let map = build_arclength_map(Arc::new(helix), 1024, &cfg()).unwrap();
        let samples = frenet_series(map.curve().as_ref(), &map, 2048, &cfg()).unwrap();
        let hyp = HelixHypothesis::normal(theta);
        let rec = reconstruct_axis(&samples, &hyp, &cfg()).unwrap();
        assert!(rec.drift < 1e-8, "drift = {}", rec.drift);
        assert!(rec.orthogonality < 1e-10);
        assert!(rec.angle_to(&Vec3::z()) < 1e-9);
        let h = rec.s[1] - rec.s[0];
        let dl = numeric::derivative4(h, &rec.lambda);
        let dm = numeric::derivative4(h, &rec.mu);
        for i in 0..samples.len() {
            let (k, t) = (samples[i].kappa, samples[i].tau);
            let e1 = dl[i] - rec.mu[i] * theta.sin() * k;
            let e2 = theta.sin() * dm[i] + rec.lambda[i] * k + rec.mu[i] * theta.cos() * t;
            let e3 = -theta.cos() * dm[i] + rec.mu[i] * theta.sin() * t;
            assert!(e1.abs() < 1e-7, "e1 = {e1} at {i}");
            assert!(e2.abs() < 1e-7, "e2 = {e2} at {i}");
            assert!(e3.abs() < 1e-7, "e3 = {e3} at {i}");
        }
    }

    #[test]
    fn osculating_branch_odes_on_helix() {
        // A circular helix is an osculating helix exactly at theta = pi/2
        // (W = N); there mu = 1, lambda = -kappa/tau and V is the axis.
        // -sin t mu' - mu cos t kappa = 0,
        // cos t mu' - lambda tau - mu sin t kappa = 0,
        // lambda' + mu cos t tau = 0.
        let samples = helix_samples(3.0, 4.0, 2048);
        let theta = std::f64::consts::FRAC_PI_2;
        let hyp = HelixHypothesis::osculating(theta);
        let rec = reconstruct_axis(&samples, &hyp, &cfg()).unwrap();
        assert!(rec.drift < 1e-9, "drift = {}", rec.drift);
        assert!(rec.orthogonality < 1e-12);
        assert!(rec.angle_to(&Vec3::z()) < 1e-10);
        let h = rec.s[1] - rec.s[0];
        let dl = numeric::derivative4(h, &rec.lambda);
        let dm = numeric::derivative4(h, &rec.mu);
        for i in 0..samples.len() {
            let (k, t) = (samples[i].kappa, samples[i].tau);
            let e1 = -theta.sin() * dm[i] - rec.mu[i] * theta.cos() * k;
            let e2 = theta.cos() * dm[i] - rec.lambda[i] * t - rec.mu[i] * theta.sin() * k;
            let e3 = dl[i] + rec.mu[i] * theta.cos() * t;
            assert!(e1.abs() < 1e-6, "e1 = {e1} at {i}");
            assert!(e2.abs() < 1e-6, "e2 = {e2} at {i}");
            assert!(e3.abs() < 1e-6, "e3 = {e3} at {i}");
        }
    }

    #[test]
    fn general_branch_odes_on_generated_general_helix() {
        // forward-generate a genuine general helix, recompute its Frenet
        // data independently, and verify the axis and the branch ODE system
        // lambda' = mu kappa,
        // c mu' + lambda (c kappa + a tau) + b mu tau = 0,
        // a lambda' + b mu' - c mu tau = 0.
        let h3 = 1.0 / 3.0_f64.sqrt();
        let hyp = HelixHypothesis::new(h3, h3, h3, 1e-9).unwrap();
        let profile = crate::cylinder::ThetaProfile::linear(0.5, -0.02);
        let gen =
            crate::cylinder::generate_general_helix(&hyp, &profile, (0.0, 10.0), 4096, &cfg())
                .unwrap();
        assert_eq!(gen.realized.components(), hyp.components());
        let fit = crate::curve::SampledCurve::from_uniform(
            gen.s[0],
            gen.s[1] - gen.s[0],
            gen.positions.clone(),
        )
        .unwrap();
        let samples: Vec<FrenetSample> = (0..gen.s.len())
            .map(|i| {
                let mut x = crate::frenet::frenet_at_param(&fit, gen.s[i], &cfg()).unwrap();
                x.s = gen.s[i];
                x
            })
            .collect();

        let rec = reconstruct_axis(&samples, &hyp, &cfg()).unwrap();
        assert!(rec.drift < 1e-5, "drift = {}", rec.drift);
        assert!(rec.orthogonality < 1e-6, "orthogonality = {}", rec.orthogonality);
        assert!(rec.angle_to(&Vec3::z()) < 1e-5, "angle = {}", rec.angle_to(&Vec3::z()));

        let h = rec.s[1] - rec.s[0];
        let dl = numeric::derivative4(h, &rec.lambda);
        let dm = numeric::derivative4(h, &rec.mu);
        for i in 4..samples.len() - 4 {
            let (k, t) = (samples[i].kappa, samples[i].tau);
            let e1 = dl[i] - rec.mu[i] * k;
            let e2 =
                hyp.c * dm[i] + rec.lambda[i] * (hyp.c * k + hyp.a * t) + hyp.b * rec.mu[i] * t;
            let e3 = hyp.a * dl[i] + hyp.b * dm[i] - hyp.c * rec.mu[i] * t;
            assert!(e1.abs() < 1e-5, "e1 = {e1} at {i}");
            assert!(e2.abs() < 1e-5, "e2 = {e2} at {i}");
            assert!(e3.abs() < 1e-5, "e3 = {e3} at {i}");
        }
    }

    #[test]
    fn rectifying_branch_is_rejected() {
        let samples = helix_samples(3.0, 4.0, 256);
        let hyp = HelixHypothesis::rectifying(0.5);
        assert!(matches!(
            reconstruct_axis(&samples, &hyp, &cfg()),
            Err(Error::BranchUnsupported(_))
        ));
    }

    #[test]
    fn vanishing_denominator_is_detected() {
        // c kappa + a tau = 0 when c/a = -rho; for r=3, h=4 pick (a, c) ~ (3, -4)
        let samples = helix_samples(3.0, 4.0, 256);
        let norm = (9.0_f64 + 16.0 + 4.0).sqrt();
        let hyp = HelixHypothesis::new(3.0 / norm, 2.0 / norm, -4.0 / norm, 1e-9).unwrap();
        assert!(matches!(
            reconstruct_axis(&samples, &hyp, &cfg()),
            Err(Error::VanishingDenominator { .. })
        ));
    }

    #[test]
    fn non_helix_curve_has_large_drift() {
        let c = Arc::new(AnalyticCurve::twisted_cubic((-1.0, 1.5)).unwrap());
        let map = build_arclength_map(c.clone(), 512, &cfg()).unwrap();
        let samples = frenet_series(c.as_ref(), &map, 1024, &cfg()).unwrap();
        let rec = reconstruct_axis(&samples, &HelixHypothesis::normal(0.2), &cfg()).unwrap();
        assert!(rec.drift > 10.0 * cfg().axis_tol, "drift = {}", rec.drift);
    }
}
