//! The set of centers whose radius-`r` disks cover the polygon, and the
//! boundary point whose width-radius disk does.
//!
//! `C(P, r) = {x : P ⊆ B(x, r)}` equals the intersection of the radius-`r`
//! disks centered at the vertices (covering a convex polygon reduces to
//! covering its extreme points, and disks are convex). The intersection is
//! computed in the Poincaré chart, where hyperbolic circles are Euclidean
//! circles: each bounding circle contributes at most one boundary arc, and
//! the vertex set that actually contributes arcs is reported as `E*(P)`.

use super::{OrdinaryReducedPolygon, ReducedError};
use crate::hyperbolic::{HCircle, HPoint};

/// One boundary arc of the center region, lying on the circle of radius
/// `r` around vertex `vertex`. Angles are chart angles on the Euclidean
/// circle, counterclockwise from `theta_start` to `theta_end`.
#[derive(Debug, Clone)]
pub struct CenterArc {
    pub vertex: usize,
    pub start: HPoint,
    pub end: HPoint,
    pub chart_center: (f64, f64),
    pub chart_radius: f64,
    pub theta_start: f64,
    pub theta_end: f64,
}

/// The region `C(P, r)`, either empty or bounded by circular arcs listed
/// counterclockwise.
#[derive(Debug, Clone)]
pub enum CenterRegion {
    Empty,
    Region {
        radius: f64,
        /// Boundary arcs in counterclockwise order around the region.
        arcs: Vec<CenterArc>,
        /// Indices of vertices contributing a boundary arc.
        estar: Vec<usize>,
        /// An interior-ish point of the region (chart centroid of the arc
        /// endpoints).
        witness: HPoint,
    },
}

impl CenterRegion {
    pub fn is_empty(&self) -> bool {
        matches!(self, CenterRegion::Empty)
    }
}

/// Disjoint angular intervals on a circle, kept as non-wrapping `[a, b]`
/// pieces inside `[0, 2π)`.
#[derive(Debug, Clone)]
struct AngularIntervals(Vec<(f64, f64)>);

const TAU: f64 = 2.0 * std::f64::consts::PI;

impl AngularIntervals {
    fn full() -> Self {
        AngularIntervals(vec![(0.0, TAU)])
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Intersect with the (possibly wrapping) arc `[mid − half, mid + half]`.
    fn intersect_arc(&mut self, mid: f64, half: f64) {
        let lo = (mid - half).rem_euclid(TAU);
        let hi = (mid + half).rem_euclid(TAU);
        let pieces: Vec<(f64, f64)> = if half >= std::f64::consts::PI {
            vec![(0.0, TAU)]
        } else if lo <= hi {
            vec![(lo, hi)]
        } else {
            vec![(0.0, hi), (lo, TAU)]
        };
        let mut out = Vec::new();
        for &(a, b) in &self.0 {
            for &(c, d) in &pieces {
                let s = a.max(c);
                let e = b.min(d);
                if e > s {
                    out.push((s, e));
                }
            }
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        self.0 = out;
    }

    /// Glue pieces that only split at the 0/2π seam, then return arcs
    /// longer than `min_len`.
    fn arcs(&self, min_len: f64) -> Vec<(f64, f64)> {
        let mut pieces = self.0.clone();
        if pieces.len() >= 2 {
            let first = pieces[0];
            let last = *pieces.last().unwrap();
            if first.0 <= 1e-12 && (TAU - last.1).abs() <= 1e-12 {
                pieces[0] = (last.0 - TAU, first.1);
                pieces.pop();
            }
        }
        pieces.retain(|&(a, b)| b - a > min_len);
        pieces
    }
}

/// Compute `C(P, r)` as an arc-bounded region (or `Empty`).
pub fn covering_center_set(p: &OrdinaryReducedPolygon, r: f64) -> CenterRegion {
    if !(r > 0.0) {
        return CenterRegion::Empty;
    }
    let vertices = p.polygon().vertices();
    let n = vertices.len();
    let circles: Vec<(f64, f64, f64)> = vertices
        .iter()
        .map(|v| {
            HCircle::new(*v, r)
                .expect("radius checked positive")
                .poincare_circle()
        })
        .collect();

    let mut arcs = Vec::new();
    let mut estar = Vec::new();
    for i in 0..n {
        let (cx, cy, ri) = circles[i];
        let mut feasible = AngularIntervals::full();
        for (j, &(dx, dy, rj)) in circles.iter().enumerate() {
            if j == i {
                continue;
            }
            let (ex, ey) = (dx - cx, dy - cy);
            let dist = (ex * ex + ey * ey).sqrt();
            if dist <= 1e-300 {
                continue;
            }
            // Points of circle i inside disk j: cos(θ − θ_ij) ≥ k.
            let k = (dist * dist + ri * ri - rj * rj) / (2.0 * ri * dist);
            if k > 1.0 {
                feasible = AngularIntervals(Vec::new());
                break;
            }
            if k < -1.0 {
                continue;
            }
            feasible.intersect_arc(ey.atan2(ex), k.acos());
            if feasible.is_empty() {
                break;
            }
        }
        if feasible.is_empty() {
            continue;
        }
        let mut contributed = false;
        for (a, b) in feasible.arcs(1e-9) {
            let point_at = |t: f64| {
                HPoint::from_poincare(cx + ri * t.cos(), cy + ri * t.sin())
                    .expect("center-region arcs stay inside the disk")
            };
            arcs.push(CenterArc {
                vertex: i,
                start: point_at(a),
                end: point_at(b),
                chart_center: (cx, cy),
                chart_radius: ri,
                theta_start: a,
                theta_end: b,
            });
            contributed = true;
        }
        if contributed {
            estar.push(i);
        }
    }

    if arcs.is_empty() {
        return CenterRegion::Empty;
    }

    // Chart centroid of arc endpoints: interior by convexity of the
    // region in this chart.
    let mut sx = 0.0;
    let mut sy = 0.0;
    for arc in &arcs {
        let (ax, ay) = arc.start.poincare();
        let (bx, by) = arc.end.poincare();
        sx += ax + bx;
        sy += ay + by;
    }
    let count = (2 * arcs.len()) as f64;
    let witness =
        HPoint::from_poincare(sx / count, sy / count).expect("centroid stays in the disk");

    // Counterclockwise order around the witness.
    let (wx, wy) = witness.poincare();
    arcs.sort_by(|p, q| {
        let mid = |arc: &CenterArc| {
            let t = 0.5 * (arc.theta_start + arc.theta_end);
            let x = arc.chart_center.0 + arc.chart_radius * t.cos() - wx;
            let y = arc.chart_center.1 + arc.chart_radius * t.sin() - wy;
            y.atan2(x)
        };
        mid(p).partial_cmp(&mid(q)).unwrap()
    });

    CenterRegion::Region {
        radius: r,
        arcs,
        estar,
        witness,
    }
}

/// Boundary point minimizing the maximum vertex distance
/// `F(z) = maxᵢ d(z, vᵢ)`, searched per edge by golden section (the
/// pointwise max of convex distance functions is convex along each
/// geodesic edge) plus the vertices themselves.
///
/// For an ordinary reduced polygon the optimum satisfies
/// `F(z) ≤ w`; a result above `w + 1e-6` reports
/// [`ReducedError::TheoremViolation`].
pub fn boundary_cover_point(
    p: &OrdinaryReducedPolygon,
) -> Result<(HPoint, f64), ReducedError> {
    let poly = p.polygon();
    let n = poly.n();
    let max_dist = |z: &HPoint| -> f64 {
        poly.vertices()
            .iter()
            .map(|v| z.dist(v))
            .fold(0.0f64, f64::max)
    };
    let mut best: Option<(HPoint, f64)> = None;
    let mut consider = |z: HPoint, f: f64| {
        if best.as_ref().map_or(true, |(_, fb)| f < *fb) {
            best = Some((z, f));
        }
    };
    for i in 0..n {
        let a = poly.vertex(i);
        consider(*a, max_dist(a));
        let b = poly.vertex(i + 1);
        let Some((dir, len)) = a.direction_to(b) else {
            continue;
        };
        let eval = |s: f64| {
            let z = a.walk(&dir, s);
            (max_dist(&z), z)
        };
        // Golden-section minimization over the edge parameter.
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let (mut lo, mut hi) = (0.0f64, len);
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = eval(x1);
        let mut f2 = eval(x2);
        while hi - lo > 1e-12 {
            if f1.0 < f2.0 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = eval(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = eval(x2);
            }
        }
        let (f, z) = if f1.0 < f2.0 { f1 } else { f2 };
        consider(z, f);
    }
    let (z, f) = best.expect("polygon has vertices");
    if f > p.width() + 1e-6 {
        return Err(ReducedError::TheoremViolation {
            maxdist: f,
            width: p.width(),
        });
    }
    Ok((z, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced::regular_ngon;

    fn sample_region_points(region: &CenterRegion, count: usize) -> Vec<HPoint> {
        let CenterRegion::Region { arcs, witness, .. } = region else {
            return Vec::new();
        };
        let (wx, wy) = witness.poincare();
        let mut pts = vec![*witness];
        let mut boundary = Vec::new();
        for arc in arcs {
            for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let t = arc.theta_start + (arc.theta_end - arc.theta_start) * frac;
                boundary.push((
                    arc.chart_center.0 + arc.chart_radius * t.cos(),
                    arc.chart_center.1 + arc.chart_radius * t.sin(),
                ));
            }
        }
        let mut k = 0usize;
        while pts.len() < count && !boundary.is_empty() {
            let (bx, by) = boundary[k % boundary.len()];
            let lambda = (k % 7) as f64 / 7.0;
            let x = wx + (bx - wx) * lambda;
            let y = wy + (by - wy) * lambda;
            pts.push(HPoint::from_poincare(x, y).unwrap());
            k += 1;
        }
        for (bx, by) in boundary {
            pts.push(HPoint::from_poincare(bx, by).unwrap());
        }
        pts
    }

    #[test]
    fn region_at_radius_w_contains_circumcenter() {
        let p = regular_ngon(5, 1.0).unwrap();
        let region = covering_center_set(&p, 1.0);
        let CenterRegion::Region { ref arcs, ref estar, witness, .. } = region else {
            panic!("C(P, w) must be nonempty since R < w");
        };
        assert!(!arcs.is_empty());
        // Regular polygon: all vertices contribute by symmetry.
        assert_eq!(estar.len(), 5);
        let disk = p.polygon().min_enclosing_disk();
        // The circumcenter lies in the region.
        let worst = p
            .polygon()
            .vertices()
            .iter()
            .map(|v| disk.center.dist(v))
            .fold(0.0f64, f64::max);
        assert!(worst <= 1.0 + 1e-9);
        assert!(witness.dist(&disk.center) < 1.0);
    }

    #[test]
    fn region_below_circumradius_is_empty() {
        let p = regular_ngon(5, 1.0).unwrap();
        let disk = p.polygon().min_enclosing_disk();
        let region = covering_center_set(&p, disk.radius - 1e-3);
        assert!(region.is_empty());
    }

    #[test]
    fn sampled_region_points_cover_all_vertices() {
        for (n, w) in [(5usize, 1.0), (7, 0.6), (9, 1.5)] {
            let p = regular_ngon(n, w).unwrap();
            let region = covering_center_set(&p, w);
            let pts = sample_region_points(&region, 200);
            assert!(!pts.is_empty(), "n={n}: region empty");
            for z in pts {
                let worst = p
                    .polygon()
                    .vertices()
                    .iter()
                    .map(|v| z.dist(v))
                    .fold(0.0f64, f64::max);
                assert!(
                    worst <= w + 1e-9,
                    "n={n} w={w}: sampled center misses a vertex by {}",
                    worst - w
                );
            }
        }
    }

    #[test]
    fn region_arcs_chain_counterclockwise() {
        let p = regular_ngon(7, 0.9).unwrap();
        let CenterRegion::Region { arcs, .. } = covering_center_set(&p, 0.9) else {
            panic!("nonempty");
        };
        let m = arcs.len();
        for i in 0..m {
            let next = &arcs[(i + 1) % m];
            assert!(
                arcs[i].end.dist(&next.start) < 1e-8,
                "arc {i} does not chain to its successor"
            );
        }
    }

    #[test]
    fn boundary_cover_regular_triangle_uses_feet() {
        let w = 1.0;
        let p = regular_ngon(3, w).unwrap();
        let (z, f) = boundary_cover_point(&p).unwrap();
        assert!(f <= w + 1e-8);
        // Each foot works: dist(t_i, v_i) = w, adjacent vertices at half
        // the side length, which is below w.
        let half_side = ((w.cosh() + (w.cosh().powi(2) + 8.0).sqrt()) / 4.0).acosh();
        assert!(half_side < w);
        let at_foot = p
            .polygon()
            .vertices()
            .iter()
            .map(|v| p.foot(0).dist(v))
            .fold(0.0f64, f64::max);
        assert!((at_foot - w).abs() < 1e-9);
        // The optimizer's point is at least as good.
        assert!(f <= at_foot + 1e-9);
        assert!(p.polygon().contains(&z).margin.abs() < 1e-6);
    }

    #[test]
    fn boundary_cover_regular_nine_gon() {
        let p = regular_ngon(9, 1.0).unwrap();
        let (_, f) = boundary_cover_point(&p).unwrap();
        assert!(f <= 1.0 + 1e-8, "maxdist {f}");
    }

    #[test]
    fn golden_section_matches_dense_sampling() {
        let p = regular_ngon(5, 0.8).unwrap();
        let (_, f) = boundary_cover_point(&p).unwrap();
        let poly = p.polygon();
        let mut best = f64::INFINITY;
        for i in 0..poly.n() {
            let a = poly.vertex(i);
            let b = poly.vertex(i + 1);
            let (dir, len) = a.direction_to(b).unwrap();
            for k in 0..=1000 {
                let z = a.walk(&dir, len * k as f64 / 1000.0);
                let worst = poly
                    .vertices()
                    .iter()
                    .map(|v| z.dist(v))
                    .fold(0.0f64, f64::max);
                best = best.min(worst);
            }
        }
        assert!((f - best).abs() < 1e-6, "golden {f} vs sampled {best}");
    }
}
