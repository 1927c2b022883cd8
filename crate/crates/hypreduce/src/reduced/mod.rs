//! Ordinary reduced polygons: validation, the regular family, butterflies
//! and their angle data, bound evaluation, and the covering center set.
//!
//! An ordinary reduced polygon is a convex odd-gon where every vertex
//! `vᵢ` projects onto the *relative interior* of the opposite side
//! `[vᵢ₊₍ₙ₋₁₎/₂, vᵢ₊₍ₙ₊₁₎/₂]` at distance exactly the minimal width `w`.
//! The chords `[vᵢ, tᵢ]` pair up into crossing chords whose union of two
//! congruent triangles is the `i`-th *butterfly* `Bᵢ`; the butterflies
//! cover the polygon and their vertical angles satisfy `Σφᵢ ≤ π`
//! (equality for the regular family).

mod bounds;
mod cover;
mod perimeter;

pub use bounds::{
    bounds_report, circ_upper, diam_upper, jung_upper, lassak_upper, BoundCheck, BoundsReport,
};
pub use cover::{boundary_cover_point, covering_center_set, CenterArc, CenterRegion};
pub use perimeter::{g_w, gamma_of_width, p_w, p_w_derivatives};

use thiserror::Error;

use crate::hyperbolic::{angle_at, foot_of_perpendicular, Geodesic, HPoint, HyperbolicError};
use crate::polygon::{ConvexPolygon, PolygonError};

/// Default residual tolerance for [`validate`].
pub const DEFAULT_VALIDATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ReducedError {
    #[error("width must be positive (got {0})")]
    NonPositiveWidth(f64),
    #[error("argument {x} outside the admissible angle interval")]
    DomainError { x: f64 },
    #[error("an ordinary reduced polygon has an odd vertex count (got {n})")]
    EvenVertexCount { n: usize },
    #[error("vertex {index} is {residual:e} away from width w to its opposite side")]
    WidthMismatch { index: usize, residual: f64 },
    #[error("foot of vertex {index} lies outside the relative interior of the opposite side (margin {margin:e})")]
    FootNotInterior { index: usize, margin: f64 },
    #[error("butterfly chords of vertex {index} do not cross inside the polygon")]
    CrossingNotFound { index: usize },
    #[error("butterfly angle sum {sum} exceeds π")]
    AngleSumExceeded { sum: f64 },
    #[error(
        "angle order β ≤ γ ≤ α violated at butterfly {index}: β={beta}, γ={gamma}, α={alpha}"
    )]
    AngleOrderViolation {
        index: usize,
        beta: f64,
        gamma: f64,
        alpha: f64,
    },
    #[error("butterfly {index} inconsistent ({what}, residual {residual:e})")]
    ButterflyInconsistent {
        index: usize,
        what: &'static str,
        residual: f64,
    },
    #[error("declared width {declared} does not match measured minimal width {measured}")]
    MinWidthMismatch { declared: f64, measured: f64 },
    #[error("no sign change when bracketing the circumradius up to {upper}")]
    BracketFailure { upper: f64 },
    #[error("no boundary point covers the polygon within radius w (best max-distance {maxdist} > {width})")]
    TheoremViolation { maxdist: f64, width: f64 },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
}

/// One butterfly `Bᵢ`: the union of the congruent triangles
/// `[vᵢ, pᵢ, tᵢ₊ₕ]` and `[vᵢ₊ₕ, pᵢ, tᵢ]` with `h = (n+1)/2`.
#[derive(Debug, Clone, Copy)]
pub struct Butterfly {
    /// Butterfly index `i` (also the index of its first apex vertex).
    pub index: usize,
    /// Index of the second apex `i + (n+1)/2 mod n`.
    pub opposite: usize,
    /// Crossing point `pᵢ` of the chords `[vᵢ, tᵢ]` and `[vᵢ₊ₕ, tᵢ₊ₕ]`.
    pub crossing: HPoint,
    /// Vertical angle `φᵢ` at the crossing.
    pub phi: f64,
    /// Angle `αᵢ = ∠(tᵢ, vᵢ₊ₕ, pᵢ)`.
    pub alpha: f64,
    /// Angle `βᵢ = ∠(vᵢ₊ₕ, vᵢ, pᵢ)`.
    pub beta: f64,
    /// Leg `bᵢ = d(pᵢ, tᵢ)`.
    pub leg_b: f64,
    /// Leg `cᵢ = d(pᵢ, vᵢ₊ₕ)`.
    pub leg_c: f64,
}

/// A validated ordinary reduced polygon with all derived data.
#[derive(Debug, Clone)]
pub struct OrdinaryReducedPolygon {
    polygon: ConvexPolygon,
    width: f64,
    gamma: f64,
    feet: Vec<HPoint>,
    butterflies: Vec<Butterfly>,
}

impl OrdinaryReducedPolygon {
    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn n(&self) -> usize {
        self.polygon.n()
    }

    /// The validated minimal width `w`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Half the interior angle of the regular triangle of the same width.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Foot `tᵢ`: the projection of vertex `i` onto its opposite side.
    pub fn foot(&self, i: usize) -> &HPoint {
        &self.feet[i % self.feet.len()]
    }

    pub fn feet(&self) -> &[HPoint] {
        &self.feet
    }

    pub fn butterflies(&self) -> &[Butterfly] {
        &self.butterflies
    }

    /// Vertical angles `φᵢ` in butterfly order.
    pub fn phis(&self) -> impl Iterator<Item = f64> + '_ {
        self.butterflies.iter().map(|b| b.phi)
    }

    pub fn phi_sum(&self) -> f64 {
        self.phis().sum()
    }

    /// Perimeter through the butterfly formula `2 Σ p_w(φᵢ)`.
    pub fn perimeter_formula(&self) -> f64 {
        2.0 * self
            .butterflies
            .iter()
            .map(|b| p_w(self.width, b.phi).expect("validated phi is in range"))
            .sum::<f64>()
    }

    /// The two triangles of butterfly `i`, as vertex triples.
    pub fn butterfly_triangles(&self, i: usize) -> ([HPoint; 3], [HPoint; 3]) {
        let b = &self.butterflies[i];
        let v_i = *self.polygon.vertex(b.index);
        let v_h = *self.polygon.vertex(b.opposite);
        let t_i = self.feet[b.index];
        let t_h = self.feet[b.opposite];
        ([v_i, b.crossing, t_h], [v_h, b.crossing, t_i])
    }

    /// Whether `x` lies in butterfly `i` (signed slack `tol`).
    pub fn butterfly_contains(&self, i: usize, x: &HPoint, tol: f64) -> bool {
        let (t1, t2) = self.butterfly_triangles(i);
        point_in_triangle(&t1, x, tol) || point_in_triangle(&t2, x, tol)
    }
}

fn point_in_triangle(tri: &[HPoint; 3], x: &HPoint, tol: f64) -> bool {
    for k in 0..3 {
        let a = &tri[k];
        let b = &tri[(k + 1) % 3];
        let c = &tri[(k + 2) % 3];
        let Ok(edge) = Geodesic::through(a, b) else {
            return false;
        };
        let side_c = edge.sinh_signed_dist(c);
        let side_x = edge.sinh_signed_dist(x);
        if side_c >= 0.0 {
            if side_x < -tol {
                return false;
            }
        } else if side_x > tol {
            return false;
        }
    }
    true
}

/// Index of the side opposite vertex `i`: the edge from `v_{i+(n−1)/2}`
/// to `v_{i+(n+1)/2}`.
#[inline]
fn opposite_edge(i: usize, n: usize) -> usize {
    (i + (n - 1) / 2) % n
}

/// Validate `polygon` as an ordinary reduced polygon of width `w`.
///
/// Computes all feet, butterflies and angles, then checks every defining
/// invariant: width residuals within `tol` (default
/// [`DEFAULT_VALIDATE_TOL`]), feet strictly interior (margin `tol`),
/// butterfly congruence and leg identities within `1e-9`, the angle-sum
/// bound `Σφᵢ ≤ π + 1e-9`, the sandwich `βᵢ ≤ γ ≤ αᵢ + 1e-9`, and
/// finally `min_width(P) = w` within `10·tol`. Every failure names the
/// offending index and margin.
pub fn validate(
    polygon: ConvexPolygon,
    w: f64,
    tol: f64,
) -> Result<OrdinaryReducedPolygon, ReducedError> {
    if !(w > 0.0) {
        return Err(ReducedError::NonPositiveWidth(w));
    }
    let n = polygon.n();
    if n % 2 == 0 {
        return Err(ReducedError::EvenVertexCount { n });
    }
    let gamma = gamma_of_width(w)?;

    // Feet and width residuals.
    let mut feet = Vec::with_capacity(n);
    for i in 0..n {
        let k = opposite_edge(i, n);
        let side = polygon.edge(k);
        let (foot, h) = foot_of_perpendicular(polygon.vertex(i), side);
        if (h - w).abs() > tol {
            return Err(ReducedError::WidthMismatch {
                index: i,
                residual: h - w,
            });
        }
        let a = polygon.vertex(k);
        let b = polygon.vertex(k + 1);
        let d1 = a.dist(&foot);
        let d2 = b.dist(&foot);
        let len = a.dist(b);
        let margin = if d1 + d2 - len <= tol {
            d1.min(d2)
        } else {
            -(d1 + d2 - len)
        };
        if margin < tol {
            return Err(ReducedError::FootNotInterior { index: i, margin });
        }
        feet.push(foot);
    }

    // Butterflies.
    let h_step = (n + 1) / 2;
    let mut butterflies = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + h_step) % n;
        let v_i = polygon.vertex(i);
        let v_j = polygon.vertex(j);
        let t_i = &feet[i];
        let t_j = &feet[j];
        let chord_i = Geodesic::through(v_i, t_i)?;
        let chord_j = Geodesic::through(v_j, t_j)?;
        let crossing = chord_i
            .intersection(&chord_j)
            .ok_or(ReducedError::CrossingNotFound { index: i })?;
        // The crossing must lie inside both chord segments.
        let on_i = v_i.dist(&crossing) + crossing.dist(t_i) - v_i.dist(t_i);
        let on_j = v_j.dist(&crossing) + crossing.dist(t_j) - v_j.dist(t_j);
        if on_i > 1e-9 || on_j > 1e-9 {
            return Err(ReducedError::CrossingNotFound { index: i });
        }

        let phi = angle_at(&crossing, v_i, t_j)?;
        let phi_mirror = angle_at(&crossing, t_i, v_j)?;
        if (phi - phi_mirror).abs() > 1e-8 {
            return Err(ReducedError::ButterflyInconsistent {
                index: i,
                what: "vertical angles differ",
                residual: phi - phi_mirror,
            });
        }
        let alpha = angle_at(v_j, t_i, &crossing)?;
        let beta = angle_at(v_i, v_j, &crossing)?;
        let beta_mirror = angle_at(v_j, &crossing, v_i)?;
        if (beta - beta_mirror).abs() > 1e-8 {
            return Err(ReducedError::ButterflyInconsistent {
                index: i,
                what: "base angles differ",
                residual: beta - beta_mirror,
            });
        }

        // Congruence of the two butterfly triangles, side by side.
        let sides = [
            v_i.dist(&crossing) - v_j.dist(&crossing),
            crossing.dist(t_j) - crossing.dist(t_i),
            v_i.dist(t_j) - v_j.dist(t_i),
        ];
        for s in sides {
            if s.abs() > 1e-9 {
                return Err(ReducedError::ButterflyInconsistent {
                    index: i,
                    what: "triangles not congruent",
                    residual: s,
                });
            }
        }

        let leg_b = crossing.dist(t_i);
        let leg_c = crossing.dist(v_j);
        // tanh c = (tanh w − g_w(φ)) / (1 − g_w(φ) tanh w), equivalently
        // b + c = w with g_w(φ) = tanh b.
        let g = g_w(w, phi)?;
        let tw = w.tanh();
        let leg_resid = leg_c.tanh() - (tw - g) / (1.0 - g * tw);
        if leg_resid.abs() > 1e-9 {
            return Err(ReducedError::ButterflyInconsistent {
                index: i,
                what: "leg identity",
                residual: leg_resid,
            });
        }
        // Right-triangle cross-check: cos(α+β)/sin β = cosh w. Angle
        // rounding scales with cosh w, hence the relative gate.
        let trig = (alpha + beta).cos() / beta.sin() - w.cosh();
        if trig.abs() > 1e-8 * w.cosh().max(1.0) {
            return Err(ReducedError::ButterflyInconsistent {
                index: i,
                what: "law of cosines",
                residual: trig,
            });
        }

        for (angle, what) in [(phi, "phi"), (alpha, "alpha"), (beta, "beta")] {
            if !(angle > 0.0 && angle < std::f64::consts::FRAC_PI_2) {
                return Err(ReducedError::ButterflyInconsistent {
                    index: i,
                    what: match what {
                        "phi" => "phi outside (0, pi/2)",
                        "alpha" => "alpha outside (0, pi/2)",
                        _ => "beta outside (0, pi/2)",
                    },
                    residual: angle,
                });
            }
        }

        butterflies.push(Butterfly {
            index: i,
            opposite: j,
            crossing,
            phi,
            alpha,
            beta,
            leg_b,
            leg_c,
        });
    }

    let phi_sum: f64 = butterflies.iter().map(|b| b.phi).sum();
    if phi_sum > std::f64::consts::PI + 1e-9 {
        return Err(ReducedError::AngleSumExceeded { sum: phi_sum });
    }
    for b in &butterflies {
        if b.beta > gamma + 1e-9 || gamma > b.alpha + 1e-9 {
            return Err(ReducedError::AngleOrderViolation {
                index: b.index,
                beta: b.beta,
                gamma,
                alpha: b.alpha,
            });
        }
    }

    let measured = polygon.min_width();
    if (measured - w).abs() > 10.0 * tol {
        return Err(ReducedError::MinWidthMismatch {
            declared: w,
            measured,
        });
    }

    Ok(OrdinaryReducedPolygon {
        polygon,
        width: w,
        gamma,
        feet,
        butterflies,
    })
}

/// The regular ordinary reduced `n`-gon of width `w`, centered at the
/// origin with vertex 0 on the positive horizontal axis.
///
/// The circumradius solves `dist(v₀, opposite side) = w` by bisection:
/// the residual is strictly increasing in the circumradius and bracketed
/// in `(0, 10w]` (the bracket is raised once to `100w` on failure).
pub fn regular_ngon(n: usize, w: f64) -> Result<OrdinaryReducedPolygon, ReducedError> {
    if !(w > 0.0) {
        return Err(ReducedError::NonPositiveWidth(w));
    }
    if n % 2 == 0 {
        return Err(ReducedError::EvenVertexCount { n });
    }
    if n < 3 {
        return Err(ReducedError::Polygon(PolygonError::TooFewVertices { n }));
    }
    let residual = |rho: f64| -> f64 {
        let v0 = ngon_vertex(rho, 0, n);
        let a = ngon_vertex(rho, (n - 1) / 2, n);
        let b = ngon_vertex(rho, (n + 1) / 2, n);
        let side = Geodesic::through(&a, &b).expect("regular vertices are distinct");
        side.dist(&v0) - w
    };
    let mut lo = 1e-12;
    let mut hi = 10.0 * w;
    if residual(hi) < 0.0 {
        hi = 100.0 * w;
        if residual(hi) < 0.0 {
            return Err(ReducedError::BracketFailure { upper: hi });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let rho = 0.5 * (lo + hi);
    let polygon = ConvexPolygon::try_new((0..n).map(|k| ngon_vertex(rho, k, n)).collect())?;
    validate(polygon, w, DEFAULT_VALIDATE_TOL)
}

fn ngon_vertex(rho: f64, k: usize, n: usize) -> HPoint {
    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    // (cosh ρ, sinh ρ cos θ, sinh ρ sin θ) is on the sheet by construction;
    // renormalizing would evaluate cosh² − sinh², which cancels
    // catastrophically at the large ρ probed while bracketing.
    HPoint(nalgebra::Vector3::new(
        rho.cosh(),
        rho.sinh() * theta.cos(),
        rho.sinh() * theta.sin(),
    ))
}
