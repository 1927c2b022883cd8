use nalgebra::{Matrix3, Vector3};

use super::geodesic::Geodesic;
use super::point::HPoint;
use super::HyperbolicError;

/// An orientation-preserving isometry of `H²`: a Minkowski-orthogonal
/// 3×3 matrix with `det = +1` preserving the upper sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: Matrix3<f64>,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            m: Matrix3::identity(),
        }
    }

    /// Rotation by `theta` about the origin.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Isometry {
            m: Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c),
        }
    }

    /// Translation by `t` along the oriented horizontal axis.
    pub fn translation_x(t: f64) -> Self {
        let (s, c) = (t.sinh(), t.cosh());
        Isometry {
            m: Matrix3::new(c, s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0),
        }
    }

    /// The translation mapping the origin to `p` along their common
    /// geodesic.
    pub fn translation_to(p: &HPoint) -> Self {
        let (x0, x1, x2) = p.hyperboloid();
        let f = 1.0 / (x0 + 1.0);
        Isometry {
            m: Matrix3::new(
                x0,
                x1,
                x2,
                x1,
                1.0 + x1 * x1 * f,
                x1 * x2 * f,
                x2,
                x1 * x2 * f,
                1.0 + x2 * x2 * f,
            ),
        }
    }

    /// Inverse isometry. For Minkowski-orthogonal `M` this is `J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let mt = self.m.transpose();
        let j = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0));
        Isometry { m: j * mt * j }
    }

    /// Composition: `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Self {
        Isometry {
            m: self.m * other.m,
        }
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint::normalize(self.m * p.raw())
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        // Normals transform by the same matrix (the form is preserved).
        Geodesic::from_normal_raw(self.m * g.normal())
    }

    /// Max-norm residual of `Mᵀ J M − J`; the form-preservation invariant.
    pub fn minkowski_residual(&self) -> f64 {
        let j = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0));
        let r = self.m.transpose() * j * self.m - j;
        r.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }
}

impl std::ops::Mul for Isometry {
    type Output = Isometry;
    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

/// The orientation-preserving isometry taking `p` to the origin and `q`
/// onto the positive horizontal axis.
pub fn isometry_normalize(p: &HPoint, q: &HPoint) -> Result<Isometry, HyperbolicError> {
    if p.dist(q) <= 1e-12 {
        return Err(HyperbolicError::DegenerateInput);
    }
    let to_origin = Isometry::translation_to(p).inverse();
    let q1 = to_origin.apply(q);
    let (_, x1, x2) = q1.hyperboloid();
    let theta = x2.atan2(x1);
    Ok(Isometry::rotation(-theta).compose(&to_origin))
}
