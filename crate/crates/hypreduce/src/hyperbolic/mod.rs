//! Model-independent primitives of the hyperbolic plane.
//!
//! Points live on the upper sheet of the hyperboloid
//! `x₀² − x₁² − x₂² = 1` in Minkowski 3-space; the bilinear form is
//! `⟨x, y⟩ = x₀y₀ − x₁y₁ − x₂y₂`. With this convention
//!
//! * points satisfy `⟨p, p⟩ = 1` and `cosh d(p, q) = ⟨p, q⟩`,
//! * a geodesic is the zero set of `⟨·, n⟩` for a spacelike unit normal
//!   `n` (`⟨n, n⟩ = −1`), and `sinh` of the signed point–line distance is
//!   `⟨p, n⟩`,
//! * isometries are the Minkowski-orthogonal 3×3 matrices preserving the
//!   upper sheet.
//!
//! The Poincaré and Klein disks are derived charts; nothing in this module
//! ever computes through them except the explicit conversions.

mod circle;
mod geodesic;
mod isometry;
mod point;
mod trig;

pub use circle::{circumcenter, HCircle};
pub use geodesic::{angle_at, foot_of_perpendicular, Geodesic, IdealPoint};
pub use isometry::{isometry_normalize, Isometry};
pub use point::HPoint;
pub use trig::{solve_right_triangle, RightTriangle, RightTriangleGiven};

use nalgebra::Vector3;
use thiserror::Error;

/// Tolerance for the Minkowski normalization invariant of points and
/// isometries.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Default tolerance for geometric validation predicates.
pub const VALIDATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HyperbolicError {
    /// Input points coincide (within tolerance) where distinct points are
    /// required.
    #[error("degenerate input: points coincide within tolerance")]
    DegenerateInput,
    /// Coordinates outside the open unit disk of the Poincaré/Klein chart.
    #[error("point lies outside the unit disk (|x| = {norm})")]
    OutsideDisk { norm: f64 },
    /// Raw hyperboloid coordinates too far from the sheet to renormalize.
    #[error("vector is not on the hyperboloid sheet (residual {residual:e})")]
    NotOnHyperboloid { residual: f64 },
    /// The requested right-triangle data cannot be realized in H².
    #[error("right triangle constraints are unrealizable: {0}")]
    Unrealizable(String),
    /// No finite circumcircle through the given points.
    #[error("points admit no finite circumcircle")]
    Collinear,
    /// A circle radius must be positive.
    #[error("circle radius must be positive (got {0})")]
    NonPositiveRadius(f64),
}

/// Minkowski bilinear form `x₀y₀ − x₁y₁ − x₂y₂`.
#[inline]
pub(crate) fn mink(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.x - a.y * b.y - a.z * b.z
}

/// Minkowski cross product: the vector `n` with `⟨n, x⟩ = det(x, a, b)`.
///
/// `n` is Minkowski-orthogonal to both arguments.
#[inline]
pub(crate) fn mink_cross(a: &Vector3<f64>, b: &Vector3<f64>) -> Vector3<f64> {
    let c = a.cross(b);
    Vector3::new(c.x, -c.y, -c.z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mink_cross_is_orthogonal() {
        let a = Vector3::new(1.3, 0.2, -0.4);
        let b = Vector3::new(0.9, -0.7, 0.1);
        let n = mink_cross(&a, &b);
        assert!(mink(&n, &a).abs() < 1e-15);
        assert!(mink(&n, &b).abs() < 1e-15);
    }
}
