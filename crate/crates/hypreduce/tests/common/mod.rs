//! Shared oracles for the integration suites. Everything here recomputes
//! its answer through a route independent of the library code path it
//! checks.

use hypreduce::hyperbolic::HPoint;
use hypreduce::polygon::ConvexPolygon;
use nalgebra::Vector3;

fn mink(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.x - a.y * b.y - a.z * b.z
}

fn raw(p: &HPoint) -> Vector3<f64> {
    let (x0, x1, x2) = p.hyperboloid();
    Vector3::new(x0, x1, x2)
}

fn edge_normal(p: &HPoint, q: &HPoint) -> Vector3<f64> {
    let a = raw(p);
    let b = raw(q);
    let c = a.cross(&b);
    let n = Vector3::new(c.x, -c.y, -c.z);
    let norm2 = -mink(&n, &n);
    n / norm2.sqrt()
}

fn line_line(n1: &Vector3<f64>, n2: &Vector3<f64>) -> f64 {
    let c = mink(n1, n2).abs();
    if c <= 1.0 {
        0.0
    } else {
        c.acosh()
    }
}

/// Width of the polygon with respect to one supporting line, as the exact
/// maximum of the line-line distance over all supporting lines: per
/// vertex cone the distance is a folded sinusoid in the normal angle, so
/// the maximum is the amplitude when the peak angle falls inside the cone
/// and an endpoint value otherwise. No iteration, no shared code with
/// `width_wrt_edge`.
fn oracle_width_wrt(polygon: &ConvexPolygon, line: &Vector3<f64>) -> f64 {
    let n = polygon.n();
    let normals: Vec<Vector3<f64>> = (0..n)
        .map(|i| edge_normal(polygon.vertex(i), polygon.vertex(i + 1)))
        .collect();
    let mut best = 0.0f64;
    for j in 0..n {
        let a = normals[(j + n - 1) % n];
        let b = normals[j];
        let dot = -mink(&a, &b);
        let w_raw = b - a * dot;
        let w_norm2 = -mink(&w_raw, &w_raw);
        if w_norm2 <= 1e-30 {
            best = best.max(line_line(line, &a));
            continue;
        }
        let w = w_raw / w_norm2.sqrt();
        let span = dot.clamp(-1.0, 1.0).acos();
        // B(line, m(ψ)) = α cos ψ + β sin ψ on ψ ∈ [0, span].
        let alpha = mink(line, &a);
        let beta = mink(line, &w);
        let mut candidates = vec![0.0, span];
        let psi0 = beta.atan2(alpha);
        for peak in [psi0, psi0 + std::f64::consts::PI, psi0 - std::f64::consts::PI] {
            if peak >= 0.0 && peak <= span {
                candidates.push(peak);
            }
        }
        let m = candidates
            .into_iter()
            .map(|psi| (alpha * psi.cos() + beta * psi.sin()).abs())
            .fold(0.0f64, f64::max);
        best = best.max(if m > 1.0 { m.acosh() } else { 0.0 });
    }
    best
}

/// Minimal width over ~10³ sampled supporting lines (every edge line plus
/// normal-cone directions sampled at each vertex), each width evaluated
/// through [`oracle_width_wrt`].
pub fn dense_min_width_oracle(polygon: &ConvexPolygon) -> f64 {
    let n = polygon.n();
    let normals: Vec<Vector3<f64>> = (0..n)
        .map(|i| edge_normal(polygon.vertex(i), polygon.vertex(i + 1)))
        .collect();
    let mut lines: Vec<Vector3<f64>> = normals.clone();
    let per_cone = (1000 / n).max(8);
    for j in 0..n {
        let a = normals[(j + n - 1) % n];
        let b = normals[j];
        let dot = -mink(&a, &b);
        let w_raw = b - a * dot;
        let w_norm2 = -mink(&w_raw, &w_raw);
        if w_norm2 <= 1e-30 {
            continue;
        }
        let w = w_raw / w_norm2.sqrt();
        let span = dot.clamp(-1.0, 1.0).acos();
        for k in 1..per_cone {
            let psi = span * k as f64 / per_cone as f64;
            lines.push(a * psi.cos() + w * psi.sin());
        }
    }
    lines
        .iter()
        .map(|l| oracle_width_wrt(polygon, l))
        .fold(f64::INFINITY, f64::min)
}

/// Exhaustive minimal enclosing disk over all 2- and 3-point support
/// sets; independent of the incremental recursion.
pub fn exhaustive_min_disk(vertices: &[HPoint]) -> (HPoint, f64) {
    let n = vertices.len();
    let covers =
        |c: &HPoint, r: f64| vertices.iter().all(|v| c.dist(v) <= r + 1e-11);
    let mut best: Option<(HPoint, f64)> = None;
    let mut consider = |c: HPoint, r: f64| {
        if best.as_ref().is_none_or(|(_, br)| r < *br) {
            best = Some((c, r));
        }
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let c = vertices[i].midpoint(&vertices[j]);
            let r = vertices[i].dist(&vertices[j]) / 2.0;
            if covers(&c, r) {
                consider(c, r);
            }
            for k in (j + 1)..n {
                if let Ok(circ) =
                    hypreduce::hyperbolic::circumcenter(&[vertices[i], vertices[j], vertices[k]])
                {
                    if covers(&circ.center, circ.radius) {
                        consider(circ.center, circ.radius);
                    }
                }
            }
        }
    }
    best.expect("some support set covers")
}

/// Uniform rejection sampler in the Klein chart restricted to the
/// polygon; pass/fail use only, no measure claims.
pub struct KleinSampler {
    state: u64,
}

impl KleinSampler {
    pub fn new(seed: u64) -> Self {
        KleinSampler { state: seed.max(1) }
    }

    fn next_f64(&mut self) -> f64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.state >> 11) as f64) / ((1u64 << 53) as f64)
    }

    /// Next sample inside the polygon.
    pub fn sample_in(&mut self, polygon: &ConvexPolygon) -> HPoint {
        loop {
            let x = self.next_f64() * 2.0 - 1.0;
            let y = self.next_f64() * 2.0 - 1.0;
            if x * x + y * y >= 1.0 {
                continue;
            }
            let Ok(p) = HPoint::from_klein(x, y) else {
                continue;
            };
            if polygon.contains(&p).inside {
                return p;
            }
        }
    }
}
