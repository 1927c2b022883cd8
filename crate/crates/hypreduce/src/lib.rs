//! Ordinary reduced polygons in the hyperbolic plane.
//!
//! An *ordinary reduced polygon* is a convex odd-gon in `H²` whose every
//! vertex sits at distance exactly `w` (the polygon's minimal width) from
//! the line of the opposite side, with the perpendicular foot in the
//! relative interior of that side. This crate builds, validates and
//! measures such polygons, evaluates the sharp diameter / circumradius
//! bounds they satisfy, and runs perturbation experiments around the
//! regular ones.
//!
//! # Layout
//!
//! | Module | What lives there |
//! |--------|------------------|
//! | [`hyperbolic`] | points, geodesics, isometries, circles, right-triangle solver |
//! | [`polygon`] | convex polygons: hull, width, diameter, minimal enclosing disk |
//! | [`reduced`] | ordinary reduced polygons, butterflies, perimeter machinery, bounds |
//! | [`explorer`] | Newton solver for non-regular instances and sweep experiments |
//! | [`io`] | polygon JSON, report CSV/JSON |
//! | [`render`] | Poincaré-disk SVG figures |
//!
//! Internally every point is stored on the hyperboloid sheet
//! `x₀² − x₁² − x₂² = 1`, `x₀ ≥ 1`; the Poincaré disk is the I/O chart and
//! the Klein disk the convexity chart.
//!
//! # Quick start
//!
//! ```
//! use hypreduce::reduced::{regular_ngon, bounds_report};
//!
//! let pentagon = regular_ngon(5, 1.0).unwrap();
//! let report = bounds_report(&pentagon);
//! assert!(report.checks.iter().all(|c| c.satisfied));
//! ```

pub mod explorer;
pub mod hyperbolic;
pub mod io;
pub mod polygon;
pub mod reduced;
pub mod render;

pub use hyperbolic::{HCircle, Geodesic, HPoint, Isometry};
pub use polygon::ConvexPolygon;
pub use reduced::OrdinaryReducedPolygon;

#[cfg(doctest)]
mod book {
    //! Runs every code block in the mdbook guide as a doctest, so the book
    //! cannot drift from the API.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(hyperbolic_plane, "../../../book/src/hyperbolic-plane.md");
    chapter!(polygons_and_width, "../../../book/src/polygons-and-width.md");
    chapter!(reduced_polygons, "../../../book/src/reduced-polygons.md");
    chapter!(perimeter, "../../../book/src/perimeter.md");
    chapter!(bounds, "../../../book/src/bounds.md");
    chapter!(explorer_ch, "../../../book/src/explorer.md");
}
