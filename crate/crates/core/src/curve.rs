//! Parametric space curves with derivatives up to third order.

use std::sync::Arc;

use nalgebra::SMatrix;

use crate::error::{Error, Result};

/// Ambient 3-vector. `dot`, `cross` and `norm` come from nalgebra.
pub type Vec3 = nalgebra::Vector3<f64>;

/// Where a curve's derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
    Spline,
}

/// A parametric curve `t -> R^3` with derivatives up to order three.
///
/// Third derivatives are required because torsion needs them. Implementations
/// must be defined on the whole closed `domain()`.
pub trait CurveModel: Send + Sync {
    fn domain(&self) -> (f64, f64);
    fn position(&self, t: f64) -> Vec3;
    fn d1(&self, t: f64) -> Vec3;
    fn d2(&self, t: f64) -> Vec3;
    fn d3(&self, t: f64) -> Vec3;
    fn derivative_source(&self) -> DerivativeSource;
}

type CurveFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// Curve given by closed-form position and derivative closures.
#[derive(Clone)]
pub struct AnalyticCurve {
    domain: (f64, f64),
    pos: CurveFn,
    d1: CurveFn,
    d2: CurveFn,
    d3: CurveFn,
}

impl AnalyticCurve {
    pub fn new(
        domain: (f64, f64),
        pos: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
        d1: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
        d2: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
        d3: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(domain.0 < domain.1) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "curve domain must be a finite interval, got [{}, {}]",
                domain.0, domain.1
            )));
        }
        Ok(Self {
            domain,
            pos: Arc::new(pos),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            d3: Arc::new(d3),
        })
    }

    /// Circular helix `(r cos t, r sin t, h t)`.
    pub fn circular_helix(r: f64, h: f64, domain: (f64, f64)) -> Result<Self> {
        if r <= 0.0 {
            return Err(Error::InvalidInput(format!("helix radius must be positive, got {r}")));
        }
        Self::new(
            domain,
            move |t| Vec3::new(r * t.cos(), r * t.sin(), h * t),
            move |t| Vec3::new(-r * t.sin(), r * t.cos(), h),
            move |t| Vec3::new(-r * t.cos(), -r * t.sin(), 0.0),
            move |t| Vec3::new(r * t.sin(), -r * t.cos(), 0.0),
        )
    }

    /// Plane circle of radius `radius` in the xy-plane.
    pub fn circle(radius: f64, domain: (f64, f64)) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        Self::circular_helix(radius, 0.0, domain)
    }

    /// Straight line `p + t v`.
    pub fn line(p: Vec3, v: Vec3, domain: (f64, f64)) -> Result<Self> {
        Self::new(
            domain,
            move |t| p + v * t,
            move |_| v,
            move |_| Vec3::zeros(),
            move |_| Vec3::zeros(),
        )
    }

    /// Twisted cubic `(t, t^2, t^3)`; a handy non-helix test curve.
    pub fn twisted_cubic(domain: (f64, f64)) -> Result<Self> {
        Self::new(
            domain,
            |t| Vec3::new(t, t * t, t * t * t),
            |t| Vec3::new(1.0, 2.0 * t, 3.0 * t * t),
            |t| Vec3::new(0.0, 2.0, 6.0 * t),
            |_| Vec3::new(0.0, 0.0, 6.0),
        )
    }
}

impl CurveModel for AnalyticCurve {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
    fn position(&self, t: f64) -> Vec3 {
        (self.pos)(t)
    }
    fn d1(&self, t: f64) -> Vec3 {
        (self.d1)(t)
    }
    fn d2(&self, t: f64) -> Vec3 {
        (self.d2)(t)
    }
    fn d3(&self, t: f64) -> Vec3 {
        (self.d3)(t)
    }
    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::Analytic
    }
}

/// Window width for the local polynomial fit (degree 6).
const WINDOW: usize = 7;

/// Curve reconstructed from point samples.
///
/// Evaluation fits a degree-6 polynomial through the 7 nodes nearest the
/// query and differentiates it, which keeps third derivatives stable on the
/// fine, near-uniform grids this crate produces.
#[derive(Clone)]
pub struct SampledCurve {
    t: Vec<f64>,
    p: Vec<Vec3>,
}

impl SampledCurve {
    pub fn new(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        if samples.len() < WINDOW {
            return Err(Error::InvalidInput(format!(
                "need at least {WINDOW} samples, got {}",
                samples.len()
            )));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidInput(
                    "sample parameters must be strictly increasing".into(),
                ));
            }
        }
        let (t, p) = samples.into_iter().unzip();
        Ok(Self { t, p })
    }

    pub fn from_uniform(t0: f64, h: f64, positions: Vec<Vec3>) -> Result<Self> {
        let samples = positions
            .into_iter()
            .enumerate()
            .map(|(i, p)| (t0 + i as f64 * h, p))
            .collect();
        Self::new(samples)
    }

    fn window_start(&self, t: f64) -> usize {
        // index of first node in the 7-point window centered near t
        let n = self.t.len();
        let i = match self.t.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i,
            Err(i) => i,
        };
        i.saturating_sub(WINDOW / 2).min(n - WINDOW)
    }

    /// Position and first three derivatives from one local fit.
    fn fit(&self, t: f64) -> [Vec3; 4] {
        let start = self.window_start(t);
        let nodes = &self.t[start..start + WINDOW];
        let scale = (nodes[WINDOW - 1] - nodes[0]) / (WINDOW - 1) as f64;

        // Vandermonde in the shifted/scaled coordinate u = (ti - t)/scale,
        // so the value and derivatives at t read off the low coefficients.
        let mut v = SMatrix::<f64, WINDOW, WINDOW>::zeros();
        let mut rhs = SMatrix::<f64, WINDOW, 3>::zeros();
        for (row, ti) in nodes.iter().enumerate() {
            let u = (ti - t) / scale;
            let mut pw = 1.0;
            for col in 0..WINDOW {
                v[(row, col)] = pw;
                pw *= u;
            }
            let p = self.p[start + row];
            rhs[(row, 0)] = p.x;
            rhs[(row, 1)] = p.y;
            rhs[(row, 2)] = p.z;
        }
        let coeff = v.lu().solve(&rhs).expect("local Vandermonde is nonsingular");
        let col = |k: usize| Vec3::new(coeff[(k, 0)], coeff[(k, 1)], coeff[(k, 2)]);
        [
            col(0),
            col(1) * (1.0 / scale),
            col(2) * (2.0 / (scale * scale)),
            col(3) * (6.0 / (scale * scale * scale)),
        ]
    }
}

impl CurveModel for SampledCurve {
    fn domain(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }
    fn position(&self, t: f64) -> Vec3 {
        self.fit(t)[0]
    }
    fn d1(&self, t: f64) -> Vec3 {
        self.fit(t)[1]
    }
    fn d2(&self, t: f64) -> Vec3 {
        self.fit(t)[2]
    }
    fn d3(&self, t: f64) -> Vec3 {
        self.fit(t)[3]
    }
    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::Spline
    }
}
