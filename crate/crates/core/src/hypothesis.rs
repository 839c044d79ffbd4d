//! Unit coefficient triples (a, b, c) describing the frame-constant field
//! W = a T + b N + c B whose helix law is being tested.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero pattern of the coefficients, naming which plane W lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisKind {
    /// W = +-T: plane-curve law.
    Tangent,
    /// W = +-N: cylindrical-helix law.
    PrincipalNormal,
    /// W = +-B: plane-curve law.
    Binormal,
    /// a = 0, W in the normal plane: (b, c) = (cos theta, sin theta).
    Normal,
    /// c = 0, W in the osculating plane: (a, b) = (cos theta, sin theta).
    Osculating,
    /// b = 0, W in the rectifying plane: (a, c) = (sin theta, cos theta).
    Rectifying,
    /// All three coefficients nonzero.
    General,
}

/// A unit vector (a, b, c) of Frenet-frame coefficients.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HelixHypothesis {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub kind: HypothesisKind,
}

impl HelixHypothesis {
    /// Normalizes (a, b, c) to unit length and derives the kind using
    /// `zero_tol` for the zero pattern.
    pub fn new(a: f64, b: f64, c: f64, zero_tol: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidInput("hypothesis coefficients must be a nonzero finite vector".into()));
        }
        let (a, b, c) = (a / norm, b / norm, c / norm);
        let za = a.abs() <= zero_tol;
        let zb = b.abs() <= zero_tol;
        let zc = c.abs() <= zero_tol;
        let kind = match (za, zb, zc) {
            (false, true, true) => HypothesisKind::Tangent,
            (true, false, true) => HypothesisKind::PrincipalNormal,
            (true, true, false) => HypothesisKind::Binormal,
            (true, false, false) => HypothesisKind::Normal,
            (false, false, true) => HypothesisKind::Osculating,
            (false, true, false) => HypothesisKind::Rectifying,
            (false, false, false) => HypothesisKind::General,
            (true, true, true) => {
                return Err(Error::InvalidInput(
                    "hypothesis coefficients are all below the zero tolerance".into(),
                ))
            }
        };
        Ok(Self { a, b, c, kind })
    }

    /// W = cos(theta) N + sin(theta) B.
    pub fn normal(theta: f64) -> Self {
        Self { a: 0.0, b: theta.cos(), c: theta.sin(), kind: HypothesisKind::Normal }
    }

    /// W = cos(theta) T + sin(theta) N.
    pub fn osculating(theta: f64) -> Self {
        Self { a: theta.cos(), b: theta.sin(), c: 0.0, kind: HypothesisKind::Osculating }
    }

    /// W = sin(theta) T + cos(theta) B.
    pub fn rectifying(theta: f64) -> Self {
        Self { a: theta.sin(), b: 0.0, c: theta.cos(), kind: HypothesisKind::Rectifying }
    }

    pub fn general(a: f64, b: f64, c: f64, zero_tol: f64) -> Result<Self> {
        Self::new(a, b, c, zero_tol)
    }

    /// The angle parameter of the plane families, when one applies.
    pub fn theta(&self) -> Option<f64> {
        match self.kind {
            HypothesisKind::Normal => Some(self.c.atan2(self.b)),
            HypothesisKind::Osculating => Some(self.b.atan2(self.a)),
            HypothesisKind::Rectifying => Some(self.a.atan2(self.c)),
            _ => None,
        }
    }

    /// Canonical antipodal representative: b >= 0, ties broken by a >= 0,
    /// then c >= 0. W and -W define the same geometry.
    pub fn canonical(self, zero_tol: f64) -> Self {
        let flip = if self.b.abs() > zero_tol {
            self.b < 0.0
        } else if self.a.abs() > zero_tol {
            self.a < 0.0
        } else {
            self.c < 0.0
        };
        if flip {
            Self { a: -self.a, b: -self.b, c: -self.c, kind: self.kind }
        } else {
            self
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}
