//! Arclength parametrization: cumulative speed quadrature and its inverse.

use std::sync::Arc;

use crate::config::NumericConfig;
use crate::curve::{CurveModel, DerivativeSource, Vec3};
use crate::error::{Error, Result};
use crate::numeric;

/// Monotone map between a curve's parameter `t` and arclength `s`.
///
/// Built by cumulative 5-point Gauss-Legendre quadrature of the speed over a
/// node table; inverted by safeguarded Newton iteration on the same
/// quadrature, so forward and inverse agree to round-off.
#[derive(Clone)]
pub struct ArclengthMap {
    curve: Arc<dyn CurveModel>,
    t_nodes: Vec<f64>,
    s_nodes: Vec<f64>,
    total: f64,
}

/// Cumulative Gauss-Legendre quadrature of |d1| over `n_nodes` uniform
/// parameter nodes. Fails with `Regularity` if the speed dips below
/// `cfg.reg_eps` at any quadrature or table node.
pub fn build_arclength_map(
    curve: Arc<dyn CurveModel>,
    n_nodes: usize,
    cfg: &NumericConfig,
) -> Result<ArclengthMap> {
    if n_nodes < 2 {
        return Err(Error::InvalidInput(format!("n_nodes must be >= 2, got {n_nodes}")));
    }
    let (t0, t1) = curve.domain();
    let h = (t1 - t0) / (n_nodes - 1) as f64;
    let mut t_nodes = Vec::with_capacity(n_nodes);
    let mut s_nodes = Vec::with_capacity(n_nodes);
    let mut slow: Option<(f64, f64)> = None;
    {
        let speed = |t: f64| curve.d1(t).norm();
        let mut acc = 0.0;
        t_nodes.push(t0);
        s_nodes.push(0.0);
        if speed(t0) <= cfg.reg_eps {
            slow = Some((t0, speed(t0)));
        }
        for i in 1..n_nodes {
            let a = t0 + (i - 1) as f64 * h;
            let b = t0 + i as f64 * h;
            acc += numeric::gauss5_with(speed, a, b, |t, v| {
                if v <= cfg.reg_eps && slow.is_none() {
                    slow = Some((t, v));
                }
            });
            t_nodes.push(b);
            s_nodes.push(acc);
        }
    }
    if let Some((t, v)) = slow {
        return Err(Error::Regularity { t, speed: v, eps: cfg.reg_eps });
    }
    let total = s_nodes[n_nodes - 1];
    Ok(ArclengthMap { curve, t_nodes, s_nodes, total })
}

impl ArclengthMap {
    pub fn total_length(&self) -> f64 {
        self.total
    }

    pub fn curve(&self) -> &Arc<dyn CurveModel> {
        &self.curve
    }

    /// Arclength from the left end of the domain to `t`.
    pub fn s_of_t(&self, t: f64) -> f64 {
        let (t0, t1) = self.curve.domain();
        let t = t.clamp(t0, t1);
        let k = match self.t_nodes.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return self.s_nodes[i],
            Err(i) => i - 1,
        };
        let speed = |x: f64| self.curve.d1(x).norm();
        self.s_nodes[k] + numeric::gauss5(speed, self.t_nodes[k], t)
    }

    /// Parameter at arclength `s` in [0, total_length].
    pub fn t_of_s(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, self.total);
        let k = match self.s_nodes.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => return self.t_nodes[i],
            Err(i) => i - 1,
        };
        let (lo, hi) = (self.t_nodes[k], self.t_nodes[k + 1]);
        let (slo, shi) = (self.s_nodes[k], self.s_nodes[k + 1]);
        // linear seed, then Newton on the quadrature-backed residual
        let seed = lo + (hi - lo) * (s - slo) / (shi - slo);
        let f = |t: f64| self.s_nodes[k] + numeric::gauss5(|x| self.curve.d1(x).norm(), lo, t) - s;
        let df = |t: f64| self.curve.d1(t).norm();
        numeric::newton_bracketed(f, df, lo, hi, seed, 1e-13 * self.total.max(1.0))
    }
}

/// View of a curve reparametrized by arclength.
///
/// Derivatives follow from the chain rule through third order, so downstream
/// code can treat the result as a unit-speed `CurveModel` on `[0, L]`.
#[derive(Clone)]
pub struct UnitSpeedCurve {
    map: ArclengthMap,
}

impl UnitSpeedCurve {
    pub fn new(map: ArclengthMap) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &ArclengthMap {
        &self.map
    }

    fn chain(&self, s: f64) -> (f64, Vec3, Vec3, Vec3) {
        let t = self.map.t_of_s(s);
        let c1 = self.map.curve.d1(t);
        let c2 = self.map.curve.d2(t);
        let c3 = self.map.curve.d3(t);
        let v = c1.norm();
        let vp = c1.dot(&c2) / v; // dv/dt
        let vpp = (c2.norm_squared() + c1.dot(&c3)) / v - vp * vp / v;
        let tp = 1.0 / v;
        let tpp = -vp / (v * v * v);
        let tppp = 3.0 * vp * vp / v.powi(5) - vpp / v.powi(4);
        let d1 = c1 * tp;
        let d2 = c2 * (tp * tp) + c1 * tpp;
        let d3 = c3 * (tp * tp * tp) + c2 * (3.0 * tp * tpp) + c1 * tppp;
        (t, d1, d2, d3)
    }
}

impl CurveModel for UnitSpeedCurve {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.map.total)
    }
    fn position(&self, s: f64) -> Vec3 {
        self.map.curve.position(self.map.t_of_s(s))
    }
    fn d1(&self, s: f64) -> Vec3 {
        self.chain(s).1
    }
    fn d2(&self, s: f64) -> Vec3 {
        self.chain(s).2
    }
    fn d3(&self, s: f64) -> Vec3 {
        self.chain(s).3
    }
    fn derivative_source(&self) -> DerivativeSource {
        self.map.curve.derivative_source()
    }
}
