//! Deterministic SVG figures in the Poincaré disk.
//!
//! Geodesic edges are drawn as true circular arcs: the circle through the
//! two ideal endpoints of the edge's geodesic meets the unit circle
//! orthogonally, so figures are exact in the chart (no polyline
//! approximation). Output is a pure function of the input — identical
//! scenes give byte-identical SVG.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::hyperbolic::{Geodesic, HCircle, HPoint};
use crate::polygon::ConvexPolygon;
use crate::reduced::{boundary_cover_point, covering_center_set, CenterRegion, OrdinaryReducedPolygon};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("overlay {0:?} needs a validated ordinary reduced polygon (pass the width)")]
    OverlayNeedsReduced(&'static str),
    #[error("overlay geometry failed: {0}")]
    Geometry(String),
}

/// Optional figure layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overlay {
    /// Shade the butterflies (two congruent triangles each).
    Butterflies,
    /// Feet and the vertex-to-foot chords.
    Feet,
    /// The minimal enclosing disk.
    Circumcircle,
    /// The width-radius disk centered at the best boundary point.
    CoverDisk,
    /// The center region C(P, w) bounded by circular arcs.
    CenterRegion,
}

impl FromStr for Overlay {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "butterflies" => Ok(Overlay::Butterflies),
            "feet" => Ok(Overlay::Feet),
            "circumcircle" => Ok(Overlay::Circumcircle),
            "cover" => Ok(Overlay::CoverDisk),
            "region" => Ok(Overlay::CenterRegion),
            other => Err(format!(
                "unknown overlay {other:?} (expected butterflies|feet|circumcircle|cover|region)"
            )),
        }
    }
}

/// What to draw: a polygon, optionally its validated reduced structure
/// (required by most overlays), and the overlay list.
pub struct Scene<'a> {
    pub polygon: &'a ConvexPolygon,
    pub reduced: Option<&'a OrdinaryReducedPolygon>,
    pub overlays: &'a [Overlay],
}

/// Chart geometry of a geodesic segment: a straight chord through the
/// disk center or an arc of the circle orthogonal to the unit circle.
#[derive(Debug, Clone, Copy)]
pub enum ChartArc {
    Segment,
    Arc { cx: f64, cy: f64, r: f64 },
}

/// Chart arc data for the geodesic through `a` and `b`: the orthocircle
/// through the two ideal endpoints `u₁`, `u₂` has center
/// `(u₁ + u₂)/(1 + u₁·u₂)` and radius `√(|c|² − 1)`; diameters degenerate
/// to segments.
pub fn geodesic_chart_arc(a: &HPoint, b: &HPoint) -> ChartArc {
    let Ok(g) = Geodesic::through(a, b) else {
        return ChartArc::Segment;
    };
    let (u, v) = (g.source(), g.target());
    let dot = u.x * v.x + u.y * v.y;
    if 1.0 + dot < 1e-12 {
        return ChartArc::Segment;
    }
    let cx = (u.x + v.x) / (1.0 + dot);
    let cy = (u.y + v.y) / (1.0 + dot);
    let r = (cx * cx + cy * cy - 1.0).max(0.0).sqrt();
    if r < 1e-7 {
        // Numerically almost a diameter; a chord is more stable to draw.
        return ChartArc::Segment;
    }
    ChartArc::Arc { cx, cy, r }
}

fn fc(v: f64) -> String {
    // Fixed-width decimal keeps output byte-stable and avoids "-0.000000".
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// SVG y axis points down; flip to keep the mathematical orientation.
fn svg_xy(p: &HPoint) -> (f64, f64) {
    let (x, y) = p.poincare();
    (x, -y)
}

/// Append the path command drawing the geodesic segment from `a`
/// (current point) to `b`.
fn push_edge(d: &mut String, a: &HPoint, b: &HPoint) {
    let (bx, by) = svg_xy(b);
    match geodesic_chart_arc(a, b) {
        ChartArc::Segment => {
            let _ = write!(d, " L {} {}", fc(bx), fc(by));
        }
        ChartArc::Arc { cx, cy, r } => {
            let (ax, ay) = svg_xy(a);
            let (scx, scy) = (cx, -cy);
            // Geodesic arcs between interior points subtend < π, so the
            // sweep follows the short way around the arc center.
            let cross = (ax - scx) * (by - scy) - (ay - scy) * (bx - scx);
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let _ = write!(d, " A {} {} 0 0 {} {} {}", fc(r), fc(r), sweep, fc(bx), fc(by));
        }
    }
}

fn closed_path(points: &[HPoint]) -> String {
    let mut d = String::new();
    let (sx, sy) = svg_xy(&points[0]);
    let _ = write!(d, "M {} {}", fc(sx), fc(sy));
    for i in 0..points.len() {
        let a = &points[i];
        let b = &points[(i + 1) % points.len()];
        push_edge(&mut d, a, b);
    }
    d.push_str(" Z");
    d
}

fn open_path(a: &HPoint, b: &HPoint) -> String {
    let mut d = String::new();
    let (sx, sy) = svg_xy(a);
    let _ = write!(d, "M {} {}", fc(sx), fc(sy));
    push_edge(&mut d, a, b);
    d
}

fn circle_element(out: &mut String, circle: &HCircle, style: &str) {
    let (cx, cy, r) = circle.poincare_circle();
    let _ = writeln!(
        out,
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>",
        fc(cx),
        fc(-cy),
        fc(r)
    );
}

fn dot(out: &mut String, p: &HPoint, r: f64, fill: &str) {
    let (x, y) = svg_xy(p);
    let _ = writeln!(
        out,
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
        fc(x),
        fc(y),
        fc(r)
    );
}

fn need_reduced<'a>(
    scene: &Scene<'a>,
    overlay: &'static str,
) -> Result<&'a OrdinaryReducedPolygon, RenderError> {
    scene
        .reduced
        .ok_or(RenderError::OverlayNeedsReduced(overlay))
}

/// Render the scene to an SVG 1.1 document over the unit Poincaré disk
/// (viewBox −1.05 … 1.05).
pub fn render_svg(scene: &Scene) -> Result<String, RenderError> {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
    );
    out.push_str("  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.006\"/>\n");

    // Region first so everything else draws on top of the fill.
    if scene.overlays.contains(&Overlay::CenterRegion) {
        let p = need_reduced(scene, "region")?;
        if let CenterRegion::Region { arcs, .. } = covering_center_set(p, p.width()) {
            let mut d = String::new();
            let first = svg_xy(&arcs[0].start);
            let _ = write!(d, "M {} {}", fc(first.0), fc(first.1));
            for arc in &arcs {
                let (ex, ey) = svg_xy(&arc.end);
                let span = arc.theta_end - arc.theta_start;
                let large = if span > std::f64::consts::PI { 1 } else { 0 };
                // Counterclockwise in math coordinates is sweep 0 after
                // the y flip.
                let _ = write!(
                    d,
                    " A {} {} 0 {large} 0 {} {}",
                    fc(arc.chart_radius),
                    fc(arc.chart_radius),
                    fc(ex),
                    fc(ey)
                );
            }
            d.push_str(" Z");
            let _ = writeln!(
                out,
                "  <path d=\"{d}\" fill=\"#80b3e6\" fill-opacity=\"0.45\" stroke=\"#336699\" stroke-width=\"0.004\"/>"
            );
        }
    }

    if scene.overlays.contains(&Overlay::Butterflies) {
        let p = need_reduced(scene, "butterflies")?;
        for i in 0..p.n() {
            let (t1, t2) = p.butterfly_triangles(i);
            for tri in [t1, t2] {
                let _ = writeln!(
                    out,
                    "  <path d=\"{}\" fill=\"#e6b280\" fill-opacity=\"0.35\" stroke=\"#b37733\" stroke-width=\"0.003\"/>",
                    closed_path(&tri)
                );
            }
        }
    }

    if scene.overlays.contains(&Overlay::CoverDisk) {
        let p = need_reduced(scene, "cover")?;
        let (z, _) = boundary_cover_point(p).map_err(|e| RenderError::Geometry(e.to_string()))?;
        let disk = HCircle::new(z, p.width()).map_err(|e| RenderError::Geometry(e.to_string()))?;
        circle_element(
            &mut out,
            &disk,
            "fill=\"none\" stroke=\"#66a366\" stroke-width=\"0.006\" stroke-dasharray=\"0.03 0.02\"",
        );
        dot(&mut out, &z, 0.012, "#336633");
    }

    if scene.overlays.contains(&Overlay::Circumcircle) {
        let disk = scene.polygon.min_enclosing_disk();
        if disk.radius > 0.0 {
            let circle = HCircle::new(disk.center, disk.radius)
                .map_err(|e| RenderError::Geometry(e.to_string()))?;
            circle_element(
                &mut out,
                &circle,
                "fill=\"none\" stroke=\"#a366a3\" stroke-width=\"0.005\"",
            );
            dot(&mut out, &disk.center, 0.01, "#663366");
        }
    }

    // Polygon outline.
    let _ = writeln!(
        out,
        "  <path d=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"0.008\"/>",
        closed_path(scene.polygon.vertices())
    );

    if scene.overlays.contains(&Overlay::Feet) {
        let p = need_reduced(scene, "feet")?;
        for i in 0..p.n() {
            let _ = writeln!(
                out,
                "  <path d=\"{}\" fill=\"none\" stroke=\"#cc4444\" stroke-width=\"0.004\"/>",
                open_path(p.polygon().vertex(i), p.foot(i))
            );
            dot(&mut out, p.foot(i), 0.01, "#cc4444");
        }
    }

    for v in scene.polygon.vertices() {
        dot(&mut out, v, 0.012, "#222222");
    }

    out.push_str("</svg>\n");
    Ok(out)
}
