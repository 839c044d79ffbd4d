//! Small numerical kernels: quadrature, finite differences, cumulative
//! integration and safeguarded root finding. All stencils assume a uniform
//! grid and are fourth-order accurate.

use std::ops::{Add, Mul, Sub};

/// Anything that behaves like a linear space over f64 (f64 itself, Vec3).
pub trait Linear:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Linear for crate::curve::Vec3 {
    fn zero() -> Self {
        crate::curve::Vec3::zeros()
    }
}

/// 5-point Gauss-Legendre nodes and weights on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// 5-point Gauss-Legendre quadrature of `f` over [a, b].
pub fn gauss5<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Evaluate `f` at the 5 Gauss nodes of [a, b], feeding each value to `sink`
/// before accumulating. Used to run regularity checks alongside quadrature.
pub fn gauss5_with<F, S>(mut f: F, a: f64, b: f64, mut sink: S) -> f64
where
    F: FnMut(f64) -> f64,
    S: FnMut(f64, f64),
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        let t = mid + half * x;
        let v = f(t);
        sink(t, v);
        acc += w * v;
    }
    acc * half
}

/// First derivative of uniformly sampled data, fourth order.
///
/// Central 5-point stencil in the interior, one-sided 5-point stencils at the
/// two nodes on each boundary.
pub fn derivative4<T: Linear>(h: f64, f: &[T]) -> Vec<T> {
    let n = f.len();
    assert!(n >= 5, "need at least 5 samples for fourth-order stencils");
    let inv = 1.0 / (12.0 * h);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i < 2 {
            // forward one-sided, anchored at the first five nodes
            let (a, b, c, d4, e) = (f[0], f[1], f[2], f[3], f[4]);
            if i == 0 {
                a * -25.0 + b * 48.0 + c * -36.0 + d4 * 16.0 + e * -3.0
            } else {
                a * -3.0 + b * -10.0 + c * 18.0 + d4 * -6.0 + e * 1.0
            }
        } else if i >= n - 2 {
            // backward one-sided (mirror of the forward formulas), anchored
            // at the last five nodes
            let (a, b, c, d4, e) = (f[n - 1], f[n - 2], f[n - 3], f[n - 4], f[n - 5]);
            if i == n - 1 {
                a * 25.0 + b * -48.0 + c * 36.0 + d4 * -16.0 + e * 3.0
            } else {
                a * 3.0 + b * 10.0 + c * -18.0 + d4 * 6.0 + e * -1.0
            }
        } else {
            f[i - 2] * 1.0 + f[i - 1] * -8.0 + f[i + 1] * 8.0 + f[i + 2] * -1.0
        };
        out.push(d * inv);
    }
    out
}

/// Cumulative integral of uniformly sampled data, fourth order
/// (Newton-Cotes on a sliding cubic; matches composite Simpson at even nodes).
/// Returns F with F[0] = 0 and F[i] ~ integral from x0 to xi.
pub fn cumulative4<T: Linear>(h: f64, f: &[T]) -> Vec<T> {
    let n = f.len();
    assert!(n >= 4, "need at least 4 samples for fourth-order integration");
    let c = h / 24.0;
    let mut out = Vec::with_capacity(n);
    let mut acc = T::zero();
    out.push(acc);
    for i in 0..n - 1 {
        let inc = if i == 0 {
            (f[0] * 9.0 + f[1] * 19.0 + f[2] * -5.0 + f[3] * 1.0) * c
        } else if i == n - 2 {
            (f[n - 1] * 9.0 + f[n - 2] * 19.0 + f[n - 3] * -5.0 + f[n - 4] * 1.0) * c
        } else {
            (f[i - 1] * -1.0 + f[i] * 13.0 + f[i + 1] * 13.0 + f[i + 2] * -1.0) * c
        };
        acc = acc + inc;
        out.push(acc);
    }
    out
}

/// Classical RK4 step for a small fixed-size system.
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: [f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(s, &y);
    let mut y2 = y;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = f(s + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(s + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + h * k3[i];
    }
    let k4 = f(s + h, &y2);
    let mut out = y;
    for i in 0..N {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Safeguarded Newton iteration on a bracket [lo, hi] with f(lo) <= 0 <= f(hi)
/// (or the reverse). Falls back to bisection whenever Newton leaves the
/// bracket or stalls.
pub fn newton_bracketed<F, D>(f: F, df: D, mut lo: f64, mut hi: f64, x0: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let rising = f_lo <= 0.0;
    let mut x = x0.clamp(lo.min(hi), lo.max(hi));
    for _ in 0..100 {
        let fx = f(x);
        if fx.abs() <= tol {
            return x;
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        x = if newton.is_finite() && newton > lo.min(hi) && newton < lo.max(hi) {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo).abs() <= tol.max(f64::EPSILON * x.abs()) {
            return x;
        }
    }
    x
}

/// Returns the common spacing if `s` is uniform to a relative tolerance.
pub fn uniform_spacing(s: &[f64]) -> Option<f64> {
    if s.len() < 2 {
        return None;
    }
    let h = (s[s.len() - 1] - s[0]) / (s.len() - 1) as f64;
    if h <= 0.0 {
        return None;
    }
    for w in s.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0) {
            return None;
        }
    }
    Some(h)
}

pub fn rms(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn median(v: &[f64]) -> f64 {
    let mut w: Vec<f64> = v.to_vec();
    w.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = w.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        w[n / 2]
    } else {
        0.5 * (w[n / 2 - 1] + w[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss5_exact_for_degree_nine() {
        // integral of x^9 + 2x^3 - x over [0, 2] = 2^10/10 + 2*2^4/4 - 2
        let exact = 1024.0 / 10.0 + 8.0 - 2.0;
        let got = gauss5(|x| x.powi(9) + 2.0 * x.powi(3) - x, 0.0, 2.0);
        assert_abs_diff_eq!(got, exact, epsilon = 1e-10);
    }

    #[test]
    fn derivative4_matches_cos() {
        let n = 201;
        let h = 0.01;
        let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
        let d = derivative4(h, &f);
        for (i, di) in d.iter().enumerate() {
            let exact = (i as f64 * h).cos();
            assert!((di - exact).abs() < 5e-9, "i={i} err={}", (di - exact).abs());
        }
    }

    #[test]
    fn derivative4_exact_on_linear_data() {
        let n = 32;
        let h = 0.125;
        let f: Vec<f64> = (0..n).map(|i| 3.0 - 0.7 * (i as f64 * h)).collect();
        let d = derivative4(h, &f);
        for di in d {
            assert_abs_diff_eq!(di, -0.7, epsilon = 1e-12);
        }
    }

    #[test]
    fn cumulative4_matches_sin() {
        let n = 401;
        let h = 0.005;
        let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).cos()).collect();
        let int = cumulative4(h, &f);
        for (i, fi) in int.iter().enumerate() {
            let exact = (i as f64 * h).sin();
            assert!((fi - exact).abs() < 1e-11, "i={i} err={}", (fi - exact).abs());
        }
    }

    #[test]
    fn rk4_harmonic_oscillator() {
        // y'' = -y as a first-order system; one period of the unit circle.
        let f = |_s: f64, y: &[f64; 2]| [y[1], -y[0]];
        let mut y = [1.0, 0.0];
        let steps = 2000;
        let h = std::f64::consts::TAU / steps as f64;
        let mut s = 0.0;
        for _ in 0..steps {
            y = rk4_step(&f, s, y, h);
            s += h;
        }
        assert_abs_diff_eq!(y[0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(y[1], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn newton_finds_sqrt2() {
        let r = newton_bracketed(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0, 1.0, 1e-14);
        assert_abs_diff_eq!(r, std::f64::consts::SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn uniform_spacing_detects_jitter() {
        let s: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
        assert!(uniform_spacing(&s).is_some());
        let mut t = s.clone();
        t[4] += 0.01;
        assert!(uniform_spacing(&t).is_none());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
