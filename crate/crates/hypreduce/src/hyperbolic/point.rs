use nalgebra::Vector3;

use super::{mink, HyperbolicError};

/// A point of the hyperbolic plane, stored on the hyperboloid sheet
/// `x₀² − x₁² − x₂² = 1`, `x₀ ≥ 1`.
///
/// The representation is model-independent; [`HPoint::poincare`] and
/// [`HPoint::klein`] produce the two disk charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint(pub(crate) Vector3<f64>);

impl HPoint {
    /// The origin `(1, 0, 0)` (center of both disk charts).
    pub fn origin() -> Self {
        HPoint(Vector3::new(1.0, 0.0, 0.0))
    }

    /// Point from Poincaré-disk coordinates, `x² + y² < 1`.
    pub fn from_poincare(x: f64, y: f64) -> Result<Self, HyperbolicError> {
        let s = x * x + y * y;
        if !(s < 1.0) {
            return Err(HyperbolicError::OutsideDisk { norm: s.sqrt() });
        }
        let d = 1.0 - s;
        Ok(HPoint(Vector3::new((1.0 + s) / d, 2.0 * x / d, 2.0 * y / d)))
    }

    /// Point from Klein-disk coordinates, `x² + y² < 1`.
    pub fn from_klein(x: f64, y: f64) -> Result<Self, HyperbolicError> {
        let s = x * x + y * y;
        if !(s < 1.0) {
            return Err(HyperbolicError::OutsideDisk { norm: s.sqrt() });
        }
        let inv = 1.0 / (1.0 - s).sqrt();
        Ok(HPoint(Vector3::new(inv, x * inv, y * inv)))
    }

    /// Point from raw hyperboloid coordinates; renormalizes residuals up to
    /// `1e-9` and rejects anything larger.
    pub fn from_hyperboloid(x0: f64, x1: f64, x2: f64) -> Result<Self, HyperbolicError> {
        let v = Vector3::new(x0, x1, x2);
        let q = mink(&v, &v);
        if x0 <= 0.0 || !(q.is_finite()) || (q - 1.0).abs() > 1e-9 {
            return Err(HyperbolicError::NotOnHyperboloid { residual: q - 1.0 });
        }
        Ok(HPoint(v / q.sqrt()))
    }

    /// Renormalize a timelike vector onto the sheet. Used internally after
    /// arithmetic that can drift off by rounding.
    pub(crate) fn normalize(v: Vector3<f64>) -> Self {
        let q = mink(&v, &v);
        debug_assert!(q > 0.0, "normalize called on a non-timelike vector");
        let p = v / q.sqrt();
        if p.x < 0.0 {
            HPoint(-p)
        } else {
            HPoint(p)
        }
    }

    /// Raw hyperboloid coordinates `(x₀, x₁, x₂)`.
    pub fn hyperboloid(&self) -> (f64, f64, f64) {
        (self.0.x, self.0.y, self.0.z)
    }

    /// Poincaré-disk coordinates (Euclidean norm `< 1`).
    pub fn poincare(&self) -> (f64, f64) {
        let d = 1.0 + self.0.x;
        (self.0.y / d, self.0.z / d)
    }

    /// Klein-disk coordinates (Euclidean norm `< 1`).
    pub fn klein(&self) -> (f64, f64) {
        (self.0.y / self.0.x, self.0.z / self.0.x)
    }

    /// Residual of the Minkowski normalization, `⟨p, p⟩ − 1`.
    pub fn normalization_residual(&self) -> f64 {
        mink(&self.0, &self.0) - 1.0
    }

    /// Geodesic distance to `other`.
    ///
    /// Computed from the Minkowski difference, which keeps full precision
    /// for nearby points: with `u = cosh d − 1 = −⟨p−q, p−q⟩ / 2`,
    /// `d = 2 arsinh √(u/2)`. Rounding can push `u` a hair below zero; that
    /// is clamped, while `u < −1e-9` is a hard invariant breach.
    pub fn dist(&self, other: &HPoint) -> f64 {
        let delta = self.0 - other.0;
        let u = -0.5 * mink(&delta, &delta);
        if u <= 0.0 {
            assert!(
                u >= -1e-9,
                "distance invariant breached (cosh d - 1 = {u:e}); inputs are corrupted"
            );
            return 0.0;
        }
        2.0 * (u * 0.5).sqrt().asinh()
    }

    /// `cosh` of the distance to `other` (the raw Minkowski product).
    pub fn cosh_dist(&self, other: &HPoint) -> f64 {
        mink(&self.0, &other.0)
    }

    /// Geodesic midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &HPoint) -> HPoint {
        HPoint::normalize(self.0 + other.0)
    }

    /// The point at arclength `s` from `self` along the unit tangent `u`.
    pub(crate) fn walk(&self, u: &Vector3<f64>, s: f64) -> HPoint {
        HPoint::normalize(self.0 * s.cosh() + u * s.sinh())
    }

    /// Unit tangent vector at `self` pointing toward `target`, together
    /// with the distance. Returns `None` for coincident points.
    pub(crate) fn direction_to(&self, target: &HPoint) -> Option<(Vector3<f64>, f64)> {
        let u = target.0 - self.cosh_dist(target) * self.0;
        let n2 = -mink(&u, &u);
        if n2 <= 0.0 || n2.sqrt() < 1e-150 {
            return None;
        }
        Some((u / n2.sqrt(), self.dist(target)))
    }

    pub(crate) fn raw(&self) -> &Vector3<f64> {
        &self.0
    }
}

/// Check the sheet invariant within [`NORMALIZATION_TOL`].
#[cfg(test)]
pub(crate) fn is_normalized(p: &HPoint) -> bool {
    p.normalization_residual().abs() <= super::NORMALIZATION_TOL
}
