//! Frenet apparatus and Darboux vectors of moving frames.

use crate::config::NumericConfig;
use crate::curve::{CurveModel, Vec3};
use crate::error::{Error, Result};
use crate::numeric;

/// Frenet data at one arclength value.
///
/// The frame satisfies T' = kappa N, N' = -kappa T + tau B, B' = -tau N,
/// and `darboux = tau T + kappa B` is its angular velocity.
#[derive(Debug, Clone)]
pub struct FrenetSample {
    pub s: f64,
    pub position: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub darboux: Vec3,
}

/// Frenet data at curve parameter `t`; the formulas are invariant under
/// reparametrization, so no arclength map is needed here.
pub fn frenet_at_param(curve: &dyn CurveModel, t: f64, cfg: &NumericConfig) -> Result<FrenetSample> {
    let d1 = curve.d1(t);
    let d2 = curve.d2(t);
    let d3 = curve.d3(t);
    let speed = d1.norm();
    if speed <= cfg.reg_eps {
        return Err(Error::Regularity { t, speed, eps: cfg.reg_eps });
    }
    let cross12 = d1.cross(&d2);
    let cn = cross12.norm();
    let kappa = cn / (speed * speed * speed);
    if kappa <= cfg.kappa_min {
        return Err(Error::VanishingCurvature { s: t, kappa, min: cfg.kappa_min });
    }
    let tangent = d1 / speed;
    let binormal = cross12 / cn;
    let normal = binormal.cross(&tangent);
    let tau = cross12.dot(&d3) / (cn * cn);
    let darboux = tangent * tau + binormal * kappa;
    Ok(FrenetSample {
        s: f64::NAN,
        position: curve.position(t),
        tangent,
        normal,
        binormal,
        kappa,
        tau,
        darboux,
    })
}

/// Frenet data at arclength `s`, using `map` to locate the parameter.
///
/// T = alpha'/|alpha'|, kappa = |alpha' x alpha''| / |alpha'|^3,
/// tau = det(alpha', alpha'', alpha''') / |alpha' x alpha''|^2,
/// B = (alpha' x alpha'')/|alpha' x alpha''|, N = B x T.
pub fn frenet_apparatus(
    curve: &dyn CurveModel,
    map: &crate::arclength::ArclengthMap,
    s: f64,
    cfg: &NumericConfig,
) -> Result<FrenetSample> {
    let t = map.t_of_s(s);
    let mut sample = frenet_at_param(curve, t, cfg)?;
    sample.s = s;
    Ok(sample)
}

/// Frenet samples on a uniform arclength grid over the whole curve.
pub fn frenet_series(
    curve: &dyn CurveModel,
    map: &crate::arclength::ArclengthMap,
    n: usize,
    cfg: &NumericConfig,
) -> Result<Vec<FrenetSample>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {n}")));
    }
    let total = map.total_length();
    let h = total / (n - 1) as f64;
    (0..n).map(|i| frenet_apparatus(curve, map, i as f64 * h, cfg)).collect()
}

/// Total curvature omega = sqrt(kappa^2 + tau^2) = |darboux|.
pub fn total_curvature(sample: &FrenetSample) -> f64 {
    let omega = sample.kappa.hypot(sample.tau);
    debug_assert!(
        (omega - sample.darboux.norm()).abs() <= 1e-9 * omega.max(1.0),
        "total curvature disagrees with |darboux|"
    );
    omega
}

/// A moving orthonormal frame sampled on a uniform arclength grid.
///
/// When built from Frenet samples the exact angular velocity tau T + kappa B
/// is attached per node; custom frames fall back to finite differences.
#[derive(Debug, Clone)]
pub struct FrameField {
    s: Vec<f64>,
    f1: Vec<Vec3>,
    f2: Vec<Vec3>,
    f3: Vec<Vec3>,
    exact_darboux: Option<Vec<Vec3>>,
    h: f64,
}

/// Darboux vector estimated at one frame node, with the residuals
/// |Fi' - D x Fi| of the defining equations.
#[derive(Debug, Clone)]
pub struct DarbouxEstimate {
    pub omega: Vec3,
    pub residuals: [f64; 3],
    /// True when boundary one-sided stencils were used.
    pub one_sided: bool,
}

impl FrameField {
    pub fn new(s: Vec<f64>, f1: Vec<Vec3>, f2: Vec<Vec3>, f3: Vec<Vec3>) -> Result<Self> {
        let n = s.len();
        if n < 5 || f1.len() != n || f2.len() != n || f3.len() != n {
            return Err(Error::InvalidInput(
                "frame field needs >= 5 aligned samples".into(),
            ));
        }
        let h = numeric::uniform_spacing(&s).ok_or(Error::NonUniformGrid)?;
        Ok(Self { s, f1, f2, f3, exact_darboux: None, h })
    }

    /// Frenet frame field of a sample list, with exact per-node Darboux
    /// vectors attached.
    pub fn from_frenet(samples: &[FrenetSample]) -> Result<Self> {
        let s: Vec<f64> = samples.iter().map(|x| x.s).collect();
        let f1 = samples.iter().map(|x| x.tangent).collect();
        let f2 = samples.iter().map(|x| x.normal).collect();
        let f3 = samples.iter().map(|x| x.binormal).collect();
        let mut field = Self::new(s, f1, f2, f3)?;
        field.exact_darboux = Some(samples.iter().map(|x| x.darboux).collect());
        Ok(field)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn grid(&self) -> &[f64] {
        &self.s
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn axes(&self, i: usize) -> (Vec3, Vec3, Vec3) {
        (self.f1[i], self.f2[i], self.f3[i])
    }

    /// Max deviation from orthonormality and right-handedness at node `i`.
    pub fn orthonormality_drift(&self, i: usize) -> f64 {
        let (a, b, c) = self.axes(i);
        let mut drift: f64 = 0.0;
        for v in [a, b, c] {
            drift = drift.max((v.norm() - 1.0).abs());
        }
        drift = drift.max(a.dot(&b).abs());
        drift = drift.max(a.dot(&c).abs());
        drift = drift.max(b.dot(&c).abs());
        drift.max((a.cross(&b).dot(&c) - 1.0).abs())
    }

    /// Best available angular velocity at node `i`: the exact value when the
    /// field was built from Frenet samples, otherwise a finite-difference
    /// estimate.
    pub fn darboux_at(&self, i: usize, cfg: &NumericConfig) -> Result<Vec3> {
        if let Some(exact) = &self.exact_darboux {
            return Ok(exact[i]);
        }
        Ok(darboux_of_frame(self, i, cfg)?.omega)
    }

    fn derivative_at(&self, f: &[Vec3], i: usize) -> (Vec3, bool) {
        let n = f.len();
        let inv = 1.0 / (12.0 * self.h);
        if i >= 2 && i + 2 < n {
            let d = f[i - 2] * 1.0 + f[i - 1] * -8.0 + f[i + 1] * 8.0 + f[i + 2] * -1.0;
            (d * inv, false)
        } else if i + 4 < n && i < 2 {
            let d = if i == 0 {
                f[0] * -25.0 + f[1] * 48.0 + f[2] * -36.0 + f[3] * 16.0 + f[4] * -3.0
            } else {
                f[0] * -3.0 + f[1] * -10.0 + f[2] * 18.0 + f[3] * -6.0 + f[4] * 1.0
            };
            (d * inv, true)
        } else {
            let d = if i == n - 1 {
                f[n - 1] * 25.0 + f[n - 2] * -48.0 + f[n - 3] * 36.0 + f[n - 4] * -16.0
                    + f[n - 5] * 3.0
            } else {
                f[n - 1] * 3.0 + f[n - 2] * 10.0 + f[n - 3] * -18.0 + f[n - 4] * 6.0
                    + f[n - 5] * -1.0
            };
            (d * inv, true)
        }
    }
}

/// Angular velocity of a moving frame from its sampled axes:
/// D = <F2',F3> F1 + <F3',F1> F2 + <F1',F2> F3, with Fi' estimated by
/// fourth-order differences on the arclength grid.
pub fn darboux_of_frame(frame: &FrameField, i: usize, cfg: &NumericConfig) -> Result<DarbouxEstimate> {
    let drift = frame.orthonormality_drift(i);
    if drift > cfg.frame_tol {
        return Err(Error::FrameDegeneracy { s: frame.s[i], drift, tol: cfg.frame_tol });
    }
    let (d1, o1) = frame.derivative_at(&frame.f1, i);
    let (d2, o2) = frame.derivative_at(&frame.f2, i);
    let (d3, o3) = frame.derivative_at(&frame.f3, i);
    let (f1, f2, f3) = frame.axes(i);
    let omega = f1 * d2.dot(&f3) + f2 * d3.dot(&f1) + f3 * d1.dot(&f2);
    let residuals = [
        (d1 - omega.cross(&f1)).norm(),
        (d2 - omega.cross(&f2)).norm(),
        (d3 - omega.cross(&f3)).norm(),
    ];
    Ok(DarbouxEstimate { omega, residuals, one_sided: o1 || o2 || o3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arclength::build_arclength_map;
    use crate::curve::AnalyticCurve;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;
    use std::sync::Arc;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn helix_samples(r: f64, h: f64, turns: f64, n: usize) -> Vec<FrenetSample> {
        let c = Arc::new(AnalyticCurve::circular_helix(r, h, (0.0, turns * TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 512, &cfg()).unwrap();
        frenet_series(c.as_ref(), &map, n, &cfg()).unwrap()
    }

    #[test]
    fn circular_helix_kappa_tau() {
        for s in helix_samples(3.0, 4.0, 1.0, 33) {
            assert_abs_diff_eq!(s.kappa, 3.0 / 25.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.tau, 4.0 / 25.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn plane_circle_kappa_tau() {
        let c = Arc::new(AnalyticCurve::circle(2.5, (0.0, TAU)).unwrap());
        let map = build_arclength_map(c.clone(), 256, &cfg()).unwrap();
        let s = frenet_apparatus(c.as_ref(), &map, 1.0, &cfg()).unwrap();
        assert_abs_diff_eq!(s.kappa, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(s.tau, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn frame_is_orthonormal_right_handed() {
        for s in helix_samples(1.3, 0.6, 2.0, 41) {
            assert_abs_diff_eq!(s.tangent.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.tangent.dot(&s.normal), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.tangent.dot(&s.binormal), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.normal.dot(&s.binormal), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.tangent.cross(&s.normal).dot(&s.binormal), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn straight_segment_reports_vanishing_curvature() {
        let c = Arc::new(
            AnalyticCurve::line(Vec3::zeros(), Vec3::new(1.0, 1.0, 0.0), (0.0, 1.0)).unwrap(),
        );
        let map = build_arclength_map(c.clone(), 16, &cfg()).unwrap();
        match frenet_apparatus(c.as_ref(), &map, 0.5, &cfg()) {
            Err(Error::VanishingCurvature { .. }) => {}
            other => panic!("expected VanishingCurvature, got {other:?}"),
        }
    }

    #[test]
    fn darboux_of_helix_frame() {
        // D = tau T + kappa B with kappa = 3/25, tau = 4/25, |D| = 1/5.
        let samples = helix_samples(3.0, 4.0, 2.0, 801);
        let frame = FrameField::from_frenet(&samples).unwrap();
        let mid = samples.len() / 2;
        let est = darboux_of_frame(&frame, mid, &cfg()).unwrap();
        let expect = samples[mid].tangent * (4.0 / 25.0) + samples[mid].binormal * (3.0 / 25.0);
        assert!((est.omega - expect).norm() < 1e-8);
        assert_abs_diff_eq!(est.omega.norm(), 0.2, epsilon = 1e-8);
        assert!(!est.one_sided);
        for r in est.residuals {
            assert!(r < 1e-8);
        }
    }

    #[test]
    fn constant_frame_has_zero_darboux() {
        let n = 64;
        let s: Vec<f64> = (0..n).map(|i| i as f64 * 0.1).collect();
        let frame = FrameField::new(
            s,
            vec![Vec3::x(); n],
            vec![Vec3::y(); n],
            vec![Vec3::z(); n],
        )
        .unwrap();
        let est = darboux_of_frame(&frame, 10, &cfg()).unwrap();
        assert!(est.omega.norm() < 1e-14);
    }

    #[test]
    fn rotating_frame_about_e3_unit_rate() {
        // Analytic oracle: frame columns of Rz(s); its angular velocity is e3.
        let n = 801;
        let h = 0.01;
        let s: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f1: Vec<Vec3> = s.iter().map(|&x| Vec3::new(x.cos(), x.sin(), 0.0)).collect();
        let f2: Vec<Vec3> = s.iter().map(|&x| Vec3::new(-x.sin(), x.cos(), 0.0)).collect();
        let f3 = vec![Vec3::z(); n];
        let frame = FrameField::new(s, f1, f2, f3).unwrap();
        for i in [0, 2, 400, 799, 800] {
            let est = darboux_of_frame(&frame, i, &cfg()).unwrap();
            assert!((est.omega - Vec3::z()).norm() < 1e-7, "i={i}");
            assert_eq!(est.one_sided, i < 2 || i > n - 3);
        }
    }

    #[test]
    fn degenerate_frame_is_rejected() {
        let n = 8;
        let s: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let frame = FrameField::new(
            s,
            vec![Vec3::x() * 1.5; n],
            vec![Vec3::y(); n],
            vec![Vec3::z(); n],
        )
        .unwrap();
        match darboux_of_frame(&frame, 3, &cfg()) {
            Err(Error::FrameDegeneracy { .. }) => {}
            other => panic!("expected FrameDegeneracy, got {other:?}"),
        }
    }

    #[test]
    fn total_curvature_three_four_five() {
        let samples = helix_samples(3.0, 4.0, 1.0, 17);
        assert_abs_diff_eq!(total_curvature(&samples[3]), 0.2, epsilon = 1e-12);
        let circle = Arc::new(AnalyticCurve::circle(2.0, (0.0, TAU)).unwrap());
        let map = build_arclength_map(circle.clone(), 128, &cfg()).unwrap();
        let s = frenet_apparatus(circle.as_ref(), &map, 0.7, &cfg()).unwrap();
        assert_abs_diff_eq!(total_curvature(&s), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn frenet_serret_residuals_under_differencing() {
        let samples = helix_samples(3.0, 4.0, 3.0, 2048);
        let h = samples[1].s - samples[0].s;
        let t: Vec<Vec3> = samples.iter().map(|x| x.tangent).collect();
        let nn: Vec<Vec3> = samples.iter().map(|x| x.normal).collect();
        let b: Vec<Vec3> = samples.iter().map(|x| x.binormal).collect();
        let dt = numeric::derivative4(h, &t);
        let dn = numeric::derivative4(h, &nn);
        let db = numeric::derivative4(h, &b);
        for (i, s) in samples.iter().enumerate() {
            let r1 = (dt[i] - s.normal * s.kappa).norm();
            let r2 = (dn[i] + s.tangent * s.kappa - s.binormal * s.tau).norm();
            let r3 = (db[i] + s.normal * s.tau).norm();
            assert!(r1.max(r2).max(r3) < 1e-6, "i={i} {r1} {r2} {r3}");
        }
    }

    #[test]
    fn reparametrization_invariance() {
        let c1 = Arc::new(AnalyticCurve::circular_helix(2.0, 1.0, (0.0, TAU)).unwrap());
        // same geometric curve, twice the parameter speed
        let c2 = Arc::new(
            AnalyticCurve::new(
                (0.0, TAU / 2.0),
                |t| Vec3::new(2.0 * (2.0 * t).cos(), 2.0 * (2.0 * t).sin(), 2.0 * t),
                |t| Vec3::new(-4.0 * (2.0 * t).sin(), 4.0 * (2.0 * t).cos(), 2.0),
                |t| Vec3::new(-8.0 * (2.0 * t).cos(), -8.0 * (2.0 * t).sin(), 0.0),
                |t| Vec3::new(16.0 * (2.0 * t).sin(), -16.0 * (2.0 * t).cos(), 0.0),
            )
            .unwrap(),
        );
        let m1 = build_arclength_map(c1.clone(), 400, &cfg()).unwrap();
        let m2 = build_arclength_map(c2.clone(), 400, &cfg()).unwrap();
        assert_abs_diff_eq!(m1.total_length(), m2.total_length(), epsilon = 1e-9);
        for i in 0..=10 {
            let s = m1.total_length() * i as f64 / 10.0;
            let a = frenet_apparatus(c1.as_ref(), &m1, s, &cfg()).unwrap();
            let b = frenet_apparatus(c2.as_ref(), &m2, s, &cfg()).unwrap();
            assert!((a.position - b.position).norm() < 1e-9);
            assert!((a.tangent - b.tangent).norm() < 1e-9);
            assert!((a.normal - b.normal).norm() < 1e-9);
            assert!((a.kappa - b.kappa).abs() < 1e-10);
            assert!((a.tau - b.tau).abs() < 1e-10);
        }
    }
}
