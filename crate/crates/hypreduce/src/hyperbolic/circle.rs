use super::point::HPoint;
use super::{mink, mink_cross, HyperbolicError};

/// A hyperbolic circle: the locus at hyperbolic distance `radius` from
/// `center`. In the Poincaré chart this is a Euclidean circle strictly
/// inside the unit disk.
#[derive(Debug, Clone, Copy)]
pub struct HCircle {
    pub center: HPoint,
    pub radius: f64,
}

impl HCircle {
    pub fn new(center: HPoint, radius: f64) -> Result<Self, HyperbolicError> {
        if !(radius > 0.0) {
            return Err(HyperbolicError::NonPositiveRadius(radius));
        }
        Ok(HCircle { center, radius })
    }

    /// Whether `p` lies inside or on the circle, with slack `tol` on the
    /// hyperbolic distance.
    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        self.center.dist(p) <= self.radius + tol
    }

    /// Euclidean center and radius of the circle as drawn in the Poincaré
    /// chart.
    ///
    /// Along the diameter through the hyperbolic center the circle spans
    /// radial coordinates `tanh((ρ ± r)/2)`, where `ρ` is the center's
    /// distance from the origin; the Euclidean center and radius are their
    /// midpoint and half-difference.
    pub fn poincare_circle(&self) -> (f64, f64, f64) {
        let (cx, cy) = self.center.poincare();
        let e = (cx * cx + cy * cy).sqrt();
        let rho = 2.0 * e.atanh();
        let far = ((rho + self.radius) / 2.0).tanh();
        let near = ((rho - self.radius) / 2.0).tanh();
        let (ux, uy) = if e > 1e-300 {
            (cx / e, cy / e)
        } else {
            (1.0, 0.0)
        };
        let mid = 0.5 * (far + near);
        (ux * mid, uy * mid, 0.5 * (far - near))
    }
}

/// Circle through two or three points.
///
/// Two points: the midpoint circle of radius `dist/2`. Three points: the
/// circumcircle, when it exists — three points of `H²` have a finite
/// circumcenter only when their perpendicular bisectors meet, so collinear
/// (and near-collinear, ideal-center) triples report
/// [`HyperbolicError::Collinear`] and callers fall back to two-point
/// circles.
pub fn circumcenter(points: &[HPoint]) -> Result<HCircle, HyperbolicError> {
    match points {
        [p, q] => {
            let d = p.dist(q);
            if d <= 1e-12 {
                return Err(HyperbolicError::DegenerateInput);
            }
            HCircle::new(p.midpoint(q), d / 2.0)
        }
        [p, q, r] => {
            if p.dist(q) <= 1e-12 || q.dist(r) <= 1e-12 || p.dist(r) <= 1e-12 {
                return Err(HyperbolicError::DegenerateInput);
            }
            // Equidistance from all three points means Minkowski-
            // orthogonality to both difference vectors.
            let u = p.raw() - q.raw();
            let v = q.raw() - r.raw();
            let raw = mink_cross(&u, &v);
            let quad = mink(&raw, &raw);
            let scale = raw.norm_squared();
            if quad <= 1e-12 * scale {
                return Err(HyperbolicError::Collinear);
            }
            let center = HPoint::normalize(raw);
            let radius = (center.dist(p) + center.dist(q) + center.dist(r)) / 3.0;
            HCircle::new(center, radius)
        }
        _ => Err(HyperbolicError::DegenerateInput),
    }
}
