//! The Szegő reproducing kernel of the Hardy space `H²(ℂ⁺)`.
//!
//! For `z, w` in the open upper half-plane the kernel is
//! `K(z, w) = (i/2π) / (z − w̄)`. Its denominator satisfies
//! `|z − w̄| ≥ Im z + Im w > 0`, so every evaluation is finite. Real parts of
//! `H²` members are harmonic, which is what the Dirichlet solver builds on:
//! only `Re K` and its first derivatives are consumed downstream.

use std::f64::consts::PI;
use thiserror::Error;

/// Rejections raised when constructing points of ℂ⁺.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointError {
    #[error("point ({x}, {y}) is not in the open upper half-plane (y must be > 0)")]
    NotUpperHalf { x: f64, y: f64 },
    #[error("point coordinates must be finite, got ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
}

/// A point `z = x + yi` with `y > 0`, the solver's native coordinate.
///
/// Membership in ℂ⁺ is enforced at construction; every kernel operation may
/// then assume a strictly positive imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    x: f64,
    y: f64,
}

impl UpperHalfPoint {
    /// Creates a point of ℂ⁺, rejecting `y ≤ 0` and non-finite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self, PointError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(PointError::NonFinite { x, y });
        }
        if y <= 0.0 {
            return Err(PointError::NotUpperHalf { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// A complex kernel value with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }
}

/// Evaluates the Szegő kernel `K(z, w) = (i/2π) / (z − w̄)`.
///
/// Writing `z − w̄ = a + bi` with `a = x_z − x_w` and `b = y_z + y_w > 0`
/// gives `K = (b + ai) / (2π (a² + b²))`. Hermitian symmetry
/// `K(z, w) = conj(K(w, z))` holds bit-exactly because swapping the arguments
/// only negates `a`.
pub fn szego(z: UpperHalfPoint, w: UpperHalfPoint) -> ComplexValue {
    let a = z.x - w.x;
    let b = z.y + w.y;
    let denom = 2.0 * PI * (a * a + b * b);
    ComplexValue {
        re: b / denom,
        im: a / denom,
    }
}

/// Real part of the Szegő kernel; symmetric in `(z, w)`.
pub fn szego_re(z: UpperHalfPoint, w: UpperHalfPoint) -> f64 {
    let a = z.x - w.x;
    let b = z.y + w.y;
    b / (2.0 * PI * (a * a + b * b))
}

/// Gradient `(∂/∂x, ∂/∂y)` of `szego_re(z, w)` with respect to `z = x + yi`.
///
/// Closed form from differentiating `b / (2π (a² + b²))`:
/// `∂/∂x = −ab / (π s²)` and `∂/∂y = (a² − b²) / (2π s²)` with `s = a² + b²`.
pub fn szego_re_grad(z: UpperHalfPoint, w: UpperHalfPoint) -> (f64, f64) {
    let a = z.x - w.x;
    let b = z.y + w.y;
    let s = a * a + b * b;
    let dx = -(a * b) / (PI * s * s);
    let dy = (a * a - b * b) / (2.0 * PI * s * s);
    (dx, dy)
}
