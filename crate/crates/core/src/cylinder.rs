//! Curves on generalized cylinders: construction of normal and general
//! helices by integrating their surface equations, a closed-form family on
//! the unit circular cylinder, and the angle diagnostics that characterize
//! them.
//!
//! Orientation conventions used throughout (right-handed frames everywhere):
//! the cylinder over a planar unit-speed base beta with unit axis V is
//! X(t, z) = beta(t) + z V, its normal is N(t) = V x T_beta(t) (inward for a
//! counterclockwise circle), and the signed base curvature is
//! kappa_beta = <beta'', N> (= +1/R for the circle). The signed angle of the
//! principal normal against N is measured as
//! theta = atan2(<N_alpha, T_alpha x N>, <N_alpha, N>), which makes the
//! surface equations read
//!
//!   t' = cos(phi), z' = sin(phi), phi' = tan(theta) cos^2(phi) kappa_beta,
//!   kappa = cos^2(phi) kappa_beta / cos(theta),
//!   tau = sin(phi) cos(phi) kappa_beta.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::arclength::{build_arclength_map, UnitSpeedCurve};
use crate::config::NumericConfig;
use crate::curve::{AnalyticCurve, CurveModel, DerivativeSource, Vec3};
use crate::error::{Error, Result};
use crate::frenet::FrenetSample;
use crate::hypothesis::HelixHypothesis;

/// Builtin base curves for [`make_cylinder`].
pub enum BaseKind {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    Custom(Arc<dyn CurveModel>),
}

/// A generalized cylinder X(t, z) = beta(t) + z V over a planar unit-speed
/// base curve beta orthogonal to the unit axis V.
#[derive(Clone)]
pub struct CylinderSpec {
    base: Arc<dyn CurveModel>,
    axis: Vec3,
    z_ref: f64,
    /// Base period for closed bases; coordinates wrap modulo this length.
    period: Option<f64>,
    /// Dense base samples seeding closest-point projection.
    cache: Vec<(f64, Vec3)>,
}

/// Builds a cylinder over the requested base, reparametrizing to unit speed
/// where needed and verifying that the base is planar and orthogonal to the
/// axis.
pub fn make_cylinder(kind: BaseKind, axis: Vec3, cfg: &NumericConfig) -> Result<CylinderSpec> {
    let norm = axis.norm();
    if norm <= 1e-12 {
        return Err(Error::InvalidInput("cylinder axis must be a nonzero vector".into()));
    }
    let axis = axis / norm;
    // in-plane orthonormal pair (u, v) with u x v = axis
    let seed = if axis.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let u = (seed - axis * seed.dot(&axis)).normalize();
    let v = axis.cross(&u);

    let (base, period): (Arc<dyn CurveModel>, Option<f64>) = match kind {
        BaseKind::Circle { radius } => {
            if radius <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "circle radius must be positive, got {radius}"
                )));
            }
            let r = radius;
            let curve = AnalyticCurve::new(
                (0.0, std::f64::consts::TAU * r),
                move |t| (u * (t / r).cos() + v * (t / r).sin()) * r,
                move |t| u * -(t / r).sin() + v * (t / r).cos(),
                move |t| (u * (t / r).cos() + v * (t / r).sin()) * (-1.0 / r),
                move |t| (u * (t / r).sin() - v * (t / r).cos()) * (1.0 / (r * r)),
            )?;
            (Arc::new(curve), Some(std::f64::consts::TAU * r))
        }
        BaseKind::Ellipse { a, b } => {
            if a <= 0.0 || b <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "ellipse semi-axes must be positive, got a = {a}, b = {b}"
                )));
            }
            let raw = AnalyticCurve::new(
                (0.0, std::f64::consts::TAU),
                move |t| u * (a * t.cos()) + v * (b * t.sin()),
                move |t| u * (-a * t.sin()) + v * (b * t.cos()),
                move |t| u * (-a * t.cos()) + v * (-b * t.sin()),
                move |t| u * (a * t.sin()) + v * (-b * t.cos()),
            )?;
            let map = build_arclength_map(Arc::new(raw), cfg.grid.max(512), cfg)?;
            let length = map.total_length();
            (Arc::new(UnitSpeedCurve::new(map)), Some(length))
        }
        BaseKind::Custom(curve) => {
            let map = build_arclength_map(curve, cfg.grid.max(512), cfg)?;
            (Arc::new(UnitSpeedCurve::new(map)), None)
        }
    };

    let (t0, t1) = base.domain();
    let z_ref = base.position(t0).dot(&axis);
    // planarity and axis-orthogonality of the base
    let mut max_offset: f64 = 0.0;
    let n_check = 257;
    for i in 0..n_check {
        let t = t0 + (t1 - t0) * i as f64 / (n_check - 1) as f64;
        max_offset = max_offset
            .max((base.position(t).dot(&axis) - z_ref).abs())
            .max(base.d1(t).dot(&axis).abs());
    }
    if max_offset > 1e-8 {
        return Err(Error::NonPlanarBase { offset: max_offset });
    }

    let cache_n = 512;
    let cache = (0..cache_n)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (cache_n - 1) as f64;
            (t, base.position(t))
        })
        .collect();

    Ok(CylinderSpec { base, axis, z_ref, period, cache })
}

impl CylinderSpec {
    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn base(&self) -> &Arc<dyn CurveModel> {
        &self.base
    }

    /// Wraps a base parameter into the fundamental domain (closed bases).
    fn wrap(&self, t: f64) -> f64 {
        let (t0, t1) = self.base.domain();
        match self.period {
            Some(p) => t0 + (t - t0).rem_euclid(p),
            None => t.clamp(t0, t1),
        }
    }

    pub fn base_point(&self, t: f64) -> Vec3 {
        self.base.position(self.wrap(t))
    }

    pub fn base_tangent(&self, t: f64) -> Vec3 {
        self.base.d1(self.wrap(t))
    }

    /// Unit surface normal N(t) = V x T_beta(t).
    pub fn normal(&self, t: f64) -> Vec3 {
        self.axis.cross(&self.base_tangent(t))
    }

    /// Signed base curvature <beta'', N>.
    pub fn base_curvature(&self, t: f64) -> f64 {
        self.base.d2(self.wrap(t)).dot(&self.normal(t))
    }

    pub fn surface_point(&self, t: f64, z: f64) -> Vec3 {
        self.base_point(t) + self.axis * z
    }

    /// Surface coordinates (t, z) of the closest cylinder point to `p`,
    /// plus the distance from `p` to the surface.
    pub fn surface_coords(&self, p: Vec3) -> (f64, f64, f64) {
        let z = p.dot(&self.axis) - self.z_ref;
        let q = p - self.axis * z;
        // seed from the cache, then Newton on <beta(t) - q, beta'(t)> = 0
        let mut best = self.cache[0].0;
        let mut best_d = f64::INFINITY;
        for (t, point) in &self.cache {
            let d = (point - q).norm_squared();
            if d < best_d {
                best_d = d;
                best = *t;
            }
        }
        let mut t = best;
        for _ in 0..12 {
            let delta = self.base_point(t) - q;
            let d1 = self.base_tangent(t);
            let g = delta.dot(&d1);
            let dg = 1.0 + delta.dot(&self.base.d2(self.wrap(t)));
            if dg.abs() < 1e-14 {
                break;
            }
            let step = g / dg;
            t -= step;
            t = self.wrap(t);
            if step.abs() < 1e-14 {
                break;
            }
        }
        let dist = (self.surface_point(t, z) - p).norm();
        (t, z, dist)
    }
}

/// Output of [`generate_normal_helix`]: surface coordinates, slope angle and
/// the predicted curvature/torsion along the trajectory.
#[derive(Debug, Clone)]
pub struct GeneratedHelix {
    pub theta: f64,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub z: Vec<f64>,
    pub phi: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub positions: Vec<Vec3>,
}

impl GeneratedHelix {
    /// Frenet samples assembled from the surface frame; exact up to the
    /// integration error of the trajectory itself.
    pub fn frenet_samples(&self, cyl: &CylinderSpec) -> Vec<FrenetSample> {
        let axis = cyl.axis();
        self.s
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let (tb, n) = (cyl.base_tangent(self.t[i]), cyl.normal(self.t[i]));
                let (sin_phi, cos_phi) = self.phi[i].sin_cos();
                let (sin_th, cos_th) = self.theta.sin_cos();
                let tangent = tb * cos_phi + axis * sin_phi;
                let up = axis * cos_phi - tb * sin_phi;
                let normal = n * cos_th + up * sin_th;
                let binormal = up * cos_th - n * sin_th;
                FrenetSample {
                    s,
                    position: self.positions[i],
                    tangent,
                    normal,
                    binormal,
                    kappa: self.kappa[i],
                    tau: self.tau[i],
                    darboux: tangent * self.tau[i] + binormal * self.kappa[i],
                }
            })
            .collect()
    }
}

/// Integrates the surface equations of a helix whose principal normal keeps
/// the constant signed angle `theta` with the cylinder normal.
///
/// The state (t, z, phi) starts at `s_range.0` and is advanced by RK4 with
/// `steps` uniform steps. Fails with `SlopeBlowup` when |phi| approaches
/// pi/2 (the trajectory degenerates into a ruling).
pub fn generate_normal_helix(
    cyl: &CylinderSpec,
    theta: f64,
    t0: f64,
    z0: f64,
    phi0: f64,
    s_range: (f64, f64),
    steps: usize,
    _cfg: &NumericConfig,
) -> Result<GeneratedHelix> {
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in (-pi/2, pi/2), got {theta}"
        )));
    }
    if !(phi0.abs() < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!("phi0 must lie in (-pi/2, pi/2), got {phi0}")));
    }
    if !(s_range.0 < s_range.1) || steps < 2 {
        return Err(Error::InvalidInput("need s_range.0 < s_range.1 and steps >= 2".into()));
    }
    let phi_guard = FRAC_PI_2 - 1e-3;
    let tan_theta = theta.tan();
    let rhs = |_s: f64, y: &[f64; 3]| {
        let (sin_phi, cos_phi) = y[2].sin_cos();
        let kb = cyl.base_curvature(y[0]);
        [cos_phi, sin_phi, tan_theta * cos_phi * cos_phi * kb]
    };

    let n = steps + 1;
    let h = (s_range.1 - s_range.0) / steps as f64;
    let mut state = [t0, z0, phi0];
    let mut out = GeneratedHelix {
        theta,
        s: Vec::with_capacity(n),
        t: Vec::with_capacity(n),
        z: Vec::with_capacity(n),
        phi: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        tau: Vec::with_capacity(n),
        positions: Vec::with_capacity(n),
    };
    for i in 0..n {
        let s = s_range.0 + i as f64 * h;
        if state[2].abs() >= phi_guard {
            return Err(Error::SlopeBlowup { s, phi: state[2] });
        }
        let kb = cyl.base_curvature(state[0]);
        let (sin_phi, cos_phi) = state[2].sin_cos();
        out.s.push(s);
        out.t.push(state[0]);
        out.z.push(state[1]);
        out.phi.push(state[2]);
        out.kappa.push(cos_phi * cos_phi * kb / theta.cos());
        out.tau.push(sin_phi * cos_phi * kb);
        out.positions.push(cyl.surface_point(state[0], state[1]));
        if i + 1 < n {
            state = crate::numeric::rk4_step(&rhs, s, state, h);
        }
    }
    Ok(out)
}

/// Closed-form normal helix on the unit circular cylinder x^2 + y^2 = 1 with
/// axis e3, parametrized so that its intrinsic data are
///
///   kappa(t) = sec(theta) / cosh^2(tan(theta) t),
///   tau(t)   = -sinh(tan(theta) t) / cosh^2(tan(theta) t),
///
/// with the standard right-handed Frenet conventions. Arclength measured
/// from the waist t = 0 is s(t) = sinh(tan(theta) t)/tan(theta), and the
/// Lancret ratio is tau/kappa = -sin(theta) s, linear through the origin.
#[derive(Debug, Clone)]
pub struct CircularNormalHelix {
    pub theta: f64,
    pub t0: f64,
    pub z0: f64,
    domain: (f64, f64),
    tan: f64,
    cot: f64,
}

/// Constructor for [`CircularNormalHelix`]; `domain` is in the curve
/// parameter t. theta = 0 has no closed form (the family degenerates into
/// geodesics); use [`generate_normal_helix`] for that case.
pub fn circular_normal_helix(
    theta: f64,
    t0: f64,
    z0: f64,
    domain: (f64, f64),
) -> Result<CircularNormalHelix> {
    if theta.abs() < 1e-12 {
        return Err(Error::ThetaZero);
    }
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in (-pi/2, pi/2), got {theta}"
        )));
    }
    if !(domain.0 < domain.1) {
        return Err(Error::InvalidInput("domain must be a nonempty interval".into()));
    }
    Ok(CircularNormalHelix { theta, t0, z0, domain, tan: theta.tan(), cot: 1.0 / theta.tan() })
}

impl CircularNormalHelix {
    pub fn kappa_t(&self, t: f64) -> f64 {
        let c = (self.tan * t).cosh();
        1.0 / (self.theta.cos() * c * c)
    }

    pub fn tau_t(&self, t: f64) -> f64 {
        let x = self.tan * t;
        -x.sinh() / (x.cosh() * x.cosh())
    }

    /// Signed arclength from the waist t = 0.
    pub fn s_of_t(&self, t: f64) -> f64 {
        (self.tan * t).sinh() / self.tan
    }

    pub fn t_of_s(&self, s: f64) -> f64 {
        (self.tan * s).asinh() / self.tan
    }

    pub fn kappa_s(&self, s: f64) -> f64 {
        let (c, sn) = (self.theta.cos(), self.theta.sin());
        c / (c * c + sn * sn * s * s)
    }

    pub fn tau_s(&self, s: f64) -> f64 {
        let (c, sn) = (self.theta.cos(), self.theta.sin());
        -sn * c * s / (c * c + sn * sn * s * s)
    }

    /// Slope angle vs arclength from the waist: phi(s) = -arctan(tan(theta) s).
    pub fn phi_s(&self, s: f64) -> f64 {
        -(self.tan * s).atan()
    }

    /// Cylinder coordinate t(s) = cot(theta) asinh(tan(theta) s) + t0.
    pub fn cyl_t_of_s(&self, s: f64) -> f64 {
        self.cot * (self.tan * s).asinh() + self.t0
    }

    /// Cylinder coordinate z(s) = z0 - cot(theta) sqrt(1 + tan^2(theta) s^2).
    pub fn cyl_z_of_s(&self, s: f64) -> f64 {
        self.z0 - self.cot * (1.0 + self.tan * self.tan * s * s).sqrt()
    }

    pub fn rho_s(&self, s: f64) -> f64 {
        -self.theta.sin() * s
    }
}

impl CurveModel for CircularNormalHelix {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
    fn position(&self, t: f64) -> Vec3 {
        let a = t + self.t0;
        Vec3::new(a.cos(), a.sin(), self.z0 - self.cot * (self.tan * t).cosh())
    }
    fn d1(&self, t: f64) -> Vec3 {
        let a = t + self.t0;
        Vec3::new(-a.sin(), a.cos(), -(self.tan * t).sinh())
    }
    fn d2(&self, t: f64) -> Vec3 {
        let a = t + self.t0;
        Vec3::new(-a.cos(), -a.sin(), -self.tan * (self.tan * t).cosh())
    }
    fn d3(&self, t: f64) -> Vec3 {
        let a = t + self.t0;
        Vec3::new(a.sin(), -a.cos(), -self.tan * self.tan * (self.tan * t).sinh())
    }
    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::Analytic
    }
}

/// Signed angle profile theta(s) between the principal normal of `samples`
/// and the cylinder normal at the foot point.
#[derive(Debug, Clone)]
pub struct AngleProfile {
    pub theta: Vec<f64>,
    pub mean: f64,
    /// max_s |theta(s) - mean|.
    pub constancy: f64,
}

/// Measures theta(s) = atan2(<N_alpha, T_alpha x N>, <N_alpha, N>) along the
/// curve, verifying that every sample lies on the cylinder within
/// `surface_tol * (1 + |z|)`.
pub fn normal_angle_profile(
    samples: &[FrenetSample],
    cyl: &CylinderSpec,
    cfg: &NumericConfig,
) -> Result<AngleProfile> {
    let mut theta = Vec::with_capacity(samples.len());
    for x in samples {
        let (t, z, dist) = cyl.surface_coords(x.position);
        let tol = cfg.surface_tol * (1.0 + z.abs());
        if dist > tol {
            return Err(Error::OffSurface { s: x.s, distance: dist, tol });
        }
        let n = cyl.normal(t);
        let up = x.tangent.cross(&n);
        theta.push(x.normal.dot(&up).atan2(x.normal.dot(&n)));
    }
    let mean = theta.iter().sum::<f64>() / theta.len() as f64;
    let constancy = theta.iter().map(|x| (x - mean).abs()).fold(0.0_f64, f64::max);
    Ok(AngleProfile { theta, mean, constancy })
}

/// Slope and normal-angle series of a curve against a fixed axis direction.
#[derive(Debug, Clone)]
pub struct SlopeTheta {
    /// phi(s) = arcsin <T, V>.
    pub phi: Vec<f64>,
    /// theta(s) solving sin(theta) <B, V> + cos(theta) <N, V> = 0, normalized
    /// to (-pi/2, pi/2] and continued along s.
    pub theta: Vec<f64>,
    /// Orthogonality defect <W, V> / cos(phi) of the hypothesis field, when
    /// a hypothesis was supplied; zero along helices with this axis.
    pub relation_residual: Option<Vec<f64>>,
}

/// Computes phi(s), theta(s) and optionally the helix-relation residual for
/// a supplied coefficient triple.
pub fn slope_and_theta(
    samples: &[FrenetSample],
    axis: Vec3,
    hyp: Option<&HelixHypothesis>,
    _cfg: &NumericConfig,
) -> Result<SlopeTheta> {
    let v = axis.normalize();
    let mut phi = Vec::with_capacity(samples.len());
    let mut theta = Vec::with_capacity(samples.len());
    let mut prev: Option<f64> = None;
    for x in samples {
        phi.push(x.tangent.dot(&v).clamp(-1.0, 1.0).asin());
        let nv = x.normal.dot(&v);
        let bv = x.binormal.dot(&v);
        if nv.abs() < 1e-12 && bv.abs() < 1e-12 {
            return Err(Error::UndefinedTheta { s: x.s });
        }
        // tan(theta) = -<N,V>/<B,V> fixes theta mod pi; normalize, then pick
        // the representative closest to the previous sample.
        let mut th = (-nv).atan2(bv);
        if th > FRAC_PI_2 {
            th -= std::f64::consts::PI;
        } else if th <= -FRAC_PI_2 {
            th += std::f64::consts::PI;
        }
        if let Some(p) = prev {
            while th - p > FRAC_PI_2 {
                th -= std::f64::consts::PI;
            }
            while p - th > FRAC_PI_2 {
                th += std::f64::consts::PI;
            }
        }
        prev = Some(th);
        theta.push(th);
    }
    let relation_residual = hyp.map(|h| {
        samples
            .iter()
            .zip(&phi)
            .map(|(x, ph)| {
                let w = x.tangent * h.a + x.normal * h.b + x.binormal * h.c;
                w.dot(&v) / ph.cos()
            })
            .collect()
    });
    Ok(SlopeTheta { phi, theta, relation_residual })
}

/// Prescribed angle function theta(s) with its derivative, for the general
/// helix generator.
#[derive(Clone)]
pub struct ThetaProfile {
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    derivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ThetaProfile {
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { value: Arc::new(value), derivative: Arc::new(derivative) }
    }

    /// theta(s) = theta0 + slope * s.
    pub fn linear(theta0: f64, slope: f64) -> Self {
        Self::new(move |s| theta0 + slope * s, move |_| slope)
    }

    pub fn theta(&self, s: f64) -> f64 {
        (self.value)(s)
    }

    pub fn theta_prime(&self, s: f64) -> f64 {
        (self.derivative)(s)
    }
}

/// Output of [`generate_general_helix`].
#[derive(Debug, Clone)]
pub struct GeneratedGeneralHelix {
    /// The hypothesis actually realized by the construction (the surface
    /// equations admit two mirror branches; see `generate_general_helix`).
    pub realized: HelixHypothesis,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub z: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta_prime: Vec<f64>,
    /// Slope angle phi(s) of the trajectory (z' = sin phi).
    pub phi: Vec<f64>,
    /// Implied base curvature kappa_beta(t(s)) along the trajectory.
    pub kappa_base: Vec<f64>,
    /// Base heading angle psi(s) (tangent direction of the base curve).
    pub psi: Vec<f64>,
    pub positions: Vec<Vec3>,
}

impl GeneratedGeneralHelix {
    /// Frenet samples from the surface frame, exact up to the trajectory
    /// integration error: with U = cos(phi) V - sin(phi) T_beta and sigma
    /// the sign of kappa_base cos(theta),
    /// T = cos(phi) T_beta + sin(phi) V,
    /// N = sigma (cos(theta) N_cyl + sin(theta) U),
    /// B = sigma (cos(theta) U - sin(theta) N_cyl),
    /// kappa = |cos^2(phi) kappa_beta / cos(theta)|,
    /// tau = theta' + sin(phi) cos(phi) kappa_beta.
    pub fn frenet_samples(&self) -> Vec<FrenetSample> {
        let axis = Vec3::z();
        (0..self.s.len())
            .map(|i| {
                let th = self.theta[i];
                let kb = self.kappa_base[i];
                let tb = Vec3::new(self.psi[i].cos(), self.psi[i].sin(), 0.0);
                let n_cyl = Vec3::new(-self.psi[i].sin(), self.psi[i].cos(), 0.0);
                let (sin_phi, cos_phi) = self.phi[i].sin_cos();
                let tangent = tb * cos_phi + axis * sin_phi;
                let up = axis * cos_phi - tb * sin_phi;
                let sigma = if kb * th.cos() >= 0.0 { 1.0 } else { -1.0 };
                let normal = (n_cyl * th.cos() + up * th.sin()) * sigma;
                let binormal = (up * th.cos() - n_cyl * th.sin()) * sigma;
                let kappa = (cos_phi * cos_phi * kb / th.cos()).abs();
                let tau = self.theta_prime[i] + sin_phi * cos_phi * kb;
                FrenetSample {
                    s: self.s[i],
                    position: self.positions[i],
                    tangent,
                    normal,
                    binormal,
                    kappa,
                    tau,
                    darboux: tangent * tau + binormal * kappa,
                }
            })
            .collect()
    }
}

/// Builds a helix with frame-constant field W = a T + b N + c B and a
/// prescribed non-constant angle function theta(s), by integrating the
/// surface-coordinate equations and reconstructing the base curve from its
/// implied curvature. The cylinder axis is e3 and the base starts at the
/// origin with heading e1.
///
/// Requires a != 0 (the a = 0 family is covered by the normal-helix
/// generator), theta(s) bounded away from zero (the base curvature divides
/// by tan theta) and theta'(s) not identically zero (otherwise the implied
/// base is a straight line and the cylinder degenerates to a plane).
///
/// The equations determine the curve only up to a mirror: the realized
/// coefficient triple is (a, b, c) or (a, -b, -c) depending on the sign of
/// the implied curvature against cos(theta); the output reports which.
pub fn generate_general_helix(
    hyp: &HelixHypothesis,
    profile: &ThetaProfile,
    s_range: (f64, f64),
    steps: usize,
    cfg: &NumericConfig,
) -> Result<GeneratedGeneralHelix> {
    let (a, b, c) = (hyp.a, hyp.b, hyp.c);
    if a.abs() <= cfg.hypothesis_zero_tol {
        return Err(Error::InvalidInput(
            "the general generator needs a != 0; use generate_normal_helix for a = 0".into(),
        ));
    }
    if b.abs() <= cfg.hypothesis_zero_tol && c.abs() <= cfg.hypothesis_zero_tol {
        return Err(Error::InvalidInput("(b, c) must not both vanish".into()));
    }
    if !(s_range.0 < s_range.1) || steps < 2 {
        return Err(Error::InvalidInput("need s_range.0 < s_range.1 and steps >= 2".into()));
    }

    let kappa_base_at = |s: f64| -> Result<f64> {
        let th = profile.theta(s);
        if th.abs() < 1e-9 || (th.abs() - FRAC_PI_2).abs() < 1e-9 {
            return Err(Error::ThetaZeroCrossing { s });
        }
        Ok(-(b * th.cos() - c * th.sin()) * profile.theta_prime(s) / (a * th.tan()))
    };

    // degenerate-base probe over the range
    let mut max_kb: f64 = 0.0;
    for i in 0..=64 {
        let s = s_range.0 + (s_range.1 - s_range.0) * i as f64 / 64.0;
        max_kb = max_kb.max(kappa_base_at(s)?.abs());
    }
    if max_kb < 1e-12 {
        return Err(Error::DegenerateBase);
    }

    // branch selection: the realized principal normal flips when the implied
    // curvature and cos(theta) disagree in sign
    let kb0 = kappa_base_at(0.5 * (s_range.0 + s_range.1))?;
    let flip = kb0 * profile.theta(0.5 * (s_range.0 + s_range.1)).cos() < 0.0;
    let realized = if flip {
        HelixHypothesis::new(a, -b, -c, cfg.hypothesis_zero_tol)?
    } else {
        *hyp
    };

    let rhs = |s: f64, y: &[f64; 5]| {
        let th = profile.theta(s);
        let e = -(b * th.sin() + c * th.cos());
        let d = (a * a + e * e).sqrt();
        let tp = a / d;
        let zp = e / d;
        let kb = -(b * th.cos() - c * th.sin()) * profile.theta_prime(s) / (a * th.tan());
        [tp, zp, kb * tp, y[2].cos() * tp, y[2].sin() * tp]
    };

    let n = steps + 1;
    let h = (s_range.1 - s_range.0) / steps as f64;
    // state: (t, z, psi, x, y) with psi the base heading angle
    let mut state = [0.0, 0.0, 0.0, 0.0, 0.0];
    let mut out = GeneratedGeneralHelix {
        realized,
        s: Vec::with_capacity(n),
        t: Vec::with_capacity(n),
        z: Vec::with_capacity(n),
        theta: Vec::with_capacity(n),
        theta_prime: Vec::with_capacity(n),
        phi: Vec::with_capacity(n),
        kappa_base: Vec::with_capacity(n),
        psi: Vec::with_capacity(n),
        positions: Vec::with_capacity(n),
    };
    for i in 0..n {
        let s = s_range.0 + i as f64 * h;
        let th = profile.theta(s);
        let e = -(b * th.sin() + c * th.cos());
        let d = (a * a + e * e).sqrt();
        if d < 1e-12 {
            return Err(Error::DegenerateSpeed { s });
        }
        out.s.push(s);
        out.t.push(state[0]);
        out.z.push(state[1]);
        out.theta.push(th);
        out.theta_prime.push(profile.theta_prime(s));
        out.phi.push(e.atan2(a));
        out.kappa_base.push(kappa_base_at(s)?);
        out.psi.push(state[2]);
        out.positions.push(Vec3::new(state[3], state[4], state[1]));
        if i + 1 < n {
            state = crate::numeric::rk4_step(&rhs, s, state, h);
        }
    }
    Ok(out)
}
