//! Frame-constant vector fields: transport along a moving frame, the
//! rotating-frame derivative, and frame-coefficient series.
//!
//! A field W along a curve is constant with respect to a moving frame F when
//! W' = D_F x W, equivalently when its coefficients <W, Fi> are constant.
//! Both characterizations are implemented: an RK4 integration of the defining
//! equation and the closed-form frame-coefficient combination; they must
//! agree, which doubles as a grid-resolution check.

use crate::config::NumericConfig;
use crate::curve::Vec3;
use crate::error::{Error, Result};
use crate::frenet::FrameField;
use crate::numeric;

/// A transported (frame-constant) field on a frame's arclength grid.
#[derive(Debug, Clone)]
pub struct FrameConstantField {
    /// Initial value at the first grid node.
    pub initial: Vec3,
    /// Constant frame coefficients a_i = <W0, Fi(s0)>.
    pub coefficients: [f64; 3],
    /// Closed-form values a1 F1 + a2 F2 + a3 F3 (the trusted path).
    pub values: Vec<Vec3>,
    /// Values from RK4 integration of W' = D x W.
    pub rk4_values: Vec<Vec3>,
    /// max_s |values - rk4_values|.
    pub path_disagreement: f64,
}

impl FrameConstantField {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Transport `w0` along the frame.
///
/// The RK4 path interpolates the per-node angular velocity linearly inside
/// each step; if it drifts from the frame-coefficient path by more than
/// `transport_tol` per unit |w0| the grid is too coarse for the frame.
pub fn transport_field(
    frame: &FrameField,
    w0: Vec3,
    cfg: &NumericConfig,
) -> Result<FrameConstantField> {
    let n = frame.len();
    let (f1, f2, f3) = frame.axes(0);
    let coefficients = [w0.dot(&f1), w0.dot(&f2), w0.dot(&f3)];

    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b, c) = frame.axes(i);
        values.push(a * coefficients[0] + b * coefficients[1] + c * coefficients[2]);
    }

    let darboux: Vec<Vec3> =
        (0..n).map(|i| frame.darboux_at(i, cfg)).collect::<Result<_>>()?;
    let h = frame.spacing();
    let mut rk4_values = Vec::with_capacity(n);
    let mut w = w0;
    rk4_values.push(w);
    for i in 0..n - 1 {
        let d0 = darboux[i];
        let d1 = darboux[i + 1];
        let dmid = (d0 + d1) * 0.5;
        let k1 = d0.cross(&w);
        let k2 = dmid.cross(&(w + k1 * (0.5 * h)));
        let k3 = dmid.cross(&(w + k2 * (0.5 * h)));
        let k4 = d1.cross(&(w + k3 * h));
        w += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        rk4_values.push(w);
    }

    let path_disagreement = values
        .iter()
        .zip(&rk4_values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    let tol = cfg.transport_tol * w0.norm().max(1e-300);
    if w0.norm() > 0.0 && path_disagreement > tol {
        return Err(Error::GridTooCoarse { gap: path_disagreement, tol });
    }

    Ok(FrameConstantField { initial: w0, coefficients, values, rk4_values, path_disagreement })
}

/// Rate of change of W as seen from the rotating frame:
/// d_r/ds (W) = W' - D_F x W, with W' from grid differences.
#[derive(Debug, Clone)]
pub struct RelativeDerivative {
    pub value: Vec3,
    /// True at grid ends where one-sided stencils were used.
    pub one_sided: bool,
}

/// Rotating-frame derivative of an arbitrary sampled field along the frame.
pub fn relative_derivative(
    w: &[Vec3],
    frame: &FrameField,
    cfg: &NumericConfig,
) -> Result<Vec<RelativeDerivative>> {
    let n = frame.len();
    if w.len() != n {
        return Err(Error::InvalidInput(format!(
            "field has {} samples but frame has {n}",
            w.len()
        )));
    }
    let dw = numeric::derivative4(frame.spacing(), w);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = frame.darboux_at(i, cfg)?;
        out.push(RelativeDerivative {
            value: dw[i] - d.cross(&w[i]),
            one_sided: i < 2 || i + 2 >= n,
        });
    }
    Ok(out)
}

/// Coefficient series <W, Fi> of a sampled field, with constancy scores
/// max_s |a_i(s) - a_i(s0)|.
#[derive(Debug, Clone)]
pub struct FrameCoefficients {
    pub a: [Vec<f64>; 3],
    pub constancy: [f64; 3],
}

pub fn frame_coefficients(w: &[Vec3], frame: &FrameField) -> Result<FrameCoefficients> {
    let n = frame.len();
    if w.len() != n {
        return Err(Error::InvalidInput(format!(
            "field has {} samples but frame has {n}",
            w.len()
        )));
    }
    let mut a = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
    for i in 0..n {
        let (f1, f2, f3) = frame.axes(i);
        a[0].push(w[i].dot(&f1));
        a[1].push(w[i].dot(&f2));
        a[2].push(w[i].dot(&f3));
    }
    let constancy = std::array::from_fn(|k| {
        let a0 = a[k][0];
        a[k].iter().map(|x| (x - a0).abs()).fold(0.0_f64, f64::max)
    });
    Ok(FrameCoefficients { a, constancy })
}
