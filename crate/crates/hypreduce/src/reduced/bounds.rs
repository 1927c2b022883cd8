//! Closed-form bounds for ordinary reduced polygons of width `w` and the
//! aggregated [`BoundsReport`].
//!
//! * `diam_upper(w) = 2 arcosh((cosh w + √(cosh²w + 8))/4)` — the sharp
//!   diameter bound, attained exactly by the regular triangle (whose side
//!   this is).
//! * `circ_upper(w)` — the sharp circumradius bound, obtained by pushing
//!   `diam_upper` through the hyperbolic Jung inequality.
//! * `jung_upper(d) = arsinh((2/√3) sinh(d/2))` — Jung's bound from the
//!   measured diameter.
//! * `lassak_upper(w) = arcosh(cosh w (1 + (√2/2) sinh w))` — the cruder
//!   diameter bound that `diam_upper` strengthens.

use serde::{Deserialize, Serialize};

use super::{gamma_of_width, OrdinaryReducedPolygon};

/// Sharp upper bound for the diameter of an ordinary reduced polygon of
/// width `w`; equality holds exactly for the regular triangle.
///
/// Evaluated as `2 arsinh √(u(u+2))` with the cancellation-free
/// `u = cosh(diam_upper/2) − 1`, which keeps full precision as `w → 0`.
pub fn diam_upper(w: f64) -> f64 {
    let u = q_minus_one(w);
    2.0 * (u * (u + 2.0)).sqrt().asinh()
}

/// `cosh(diam_upper/2) − 1`, in a cancellation-free arrangement (used for
/// the circumradius bound near `w = 0`, where the naive difference loses
/// all digits).
fn q_minus_one(w: f64) -> f64 {
    let c = w.cosh();
    let s = w.sinh();
    (2.0 * (w / 2.0).sinh().powi(2) + s * s / ((c * c + 8.0).sqrt() + 3.0)) / 4.0
}

/// Sharp upper bound for the circumradius of an ordinary reduced polygon
/// of width `w`; equality holds exactly for the regular triangle.
pub fn circ_upper(w: f64) -> f64 {
    let qm1 = q_minus_one(w);
    let sinh_half_diam = (qm1 * (qm1 + 2.0)).sqrt();
    (2.0 / 3.0f64.sqrt() * sinh_half_diam).asinh()
}

/// Hyperbolic Jung bound: a set of diameter `d` fits in a disk of this
/// radius.
pub fn jung_upper(d: f64) -> f64 {
    (2.0 / 3.0f64.sqrt() * (d / 2.0).sinh()).asinh()
}

/// The non-sharp diameter bound `arcosh(cosh w (1 + (√2/2) sinh w))` for
/// ordinary reduced polygons, which [`diam_upper`] strengthens for every
/// width.
pub fn lassak_upper(w: f64) -> f64 {
    (w.cosh() * (1.0 + std::f64::consts::FRAC_1_SQRT_2 * w.sinh())).acosh()
}

/// One checked inequality with its signed margin (the exact difference
/// `bound − value`; satisfied means margin above the stated slack).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub satisfied: bool,
    pub margin: f64,
}

/// Every measured quantity of a validated polygon next to every bound it
/// must satisfy.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub width: f64,
    pub diameter: f64,
    pub diameter_pair: (usize, usize),
    pub circumradius: f64,
    pub perimeter_direct: f64,
    pub perimeter_formula: f64,
    pub area: f64,
    pub phi_sum: f64,
    pub gamma: f64,
    pub phi: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub lassak_upper: f64,
    pub diam_upper: f64,
    pub circ_upper: f64,
    pub jung_upper: f64,
    pub ratio_diam_width: f64,
    pub ratio_circ_width: f64,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }
}

/// Measure `p` and evaluate every inequality it is guaranteed to satisfy,
/// reporting signed margins.
pub fn bounds_report(p: &OrdinaryReducedPolygon) -> BoundsReport {
    let w = p.width();
    let (d, pair) = p.polygon().diameter();
    let disk = p.polygon().min_enclosing_disk();
    let r = disk.radius;
    let perim_direct = p.polygon().perimeter_direct();
    let perim_formula = p.perimeter_formula();
    let area = p.polygon().area();
    let phi_sum = p.phi_sum();
    let gamma = gamma_of_width(w).expect("validated width is positive");

    let lassak = lassak_upper(w);
    let d_up = diam_upper(w);
    let c_up = circ_upper(w);
    let jung = jung_upper(d);

    let mut checks = Vec::new();
    let mut push = |name: &str, margin: f64, slack: f64| {
        checks.push(BoundCheck {
            name: name.to_string(),
            satisfied: margin >= -slack,
            margin,
        });
    };
    // Strict lower/upper diameter window.
    push("width_lt_diam", d - w, 0.0);
    push("diam_lt_lassak", lassak - d, 0.0);
    push("diam_le_diam_upper", d_up - d, 1e-9);
    push("circ_le_circ_upper", c_up - r, 1e-9);
    push("circ_le_jung", jung - r, 1e-9);
    push("diam_ratio_gt_1", d / w - 1.0, 0.0);
    push("diam_ratio_lt_2", 2.0 - d / w, 0.0);
    push("circ_ratio_gt_half", r / w - 0.5, 0.0);
    push("circ_ratio_lt_1", 1.0 - r / w, 0.0);
    push(
        "angle_sum_le_pi",
        std::f64::consts::PI - phi_sum,
        1e-9,
    );
    let beta_margin = p
        .butterflies()
        .iter()
        .map(|b| gamma - b.beta)
        .fold(f64::INFINITY, f64::min);
    let alpha_margin = p
        .butterflies()
        .iter()
        .map(|b| b.alpha - gamma)
        .fold(f64::INFINITY, f64::min);
    push("beta_le_gamma", beta_margin, 1e-9);
    push("gamma_le_alpha", alpha_margin, 1e-9);
    push(
        "perimeter_formula_agrees",
        -(perim_direct - perim_formula).abs(),
        1e-9,
    );

    BoundsReport {
        n: p.n(),
        width: w,
        diameter: d,
        diameter_pair: pair,
        circumradius: r,
        perimeter_direct: perim_direct,
        perimeter_formula: perim_formula,
        area,
        phi_sum,
        gamma,
        phi: p.butterflies().iter().map(|b| b.phi).collect(),
        alpha: p.butterflies().iter().map(|b| b.alpha).collect(),
        beta: p.butterflies().iter().map(|b| b.beta).collect(),
        lassak_upper: lassak,
        diam_upper: d_up,
        circ_upper: c_up,
        jung_upper: jung,
        ratio_diam_width: d / w,
        ratio_circ_width: r / w,
        checks,
    }
}
