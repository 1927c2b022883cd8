//! Exact solver for hyperbolic right triangles.
//!
//! Conventions: legs `a`, `b`, hypotenuse `c`, acute angle `A` opposite
//! leg `a`, acute angle `B` opposite leg `b`. The governing identities are
//!
//! ```text
//! cosh c = cosh a · cosh b          sinh a = sinh c · sin A
//! tanh a = tanh c · cos B           cosh a = cos A / sin B
//! cosh c = cot A · cot B
//! ```

use super::HyperbolicError;

/// Two known quantities of a hyperbolic right triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RightTriangleGiven {
    Legs { a: f64, b: f64 },
    LegAHypotenuse { a: f64, c: f64 },
    LegBHypotenuse { b: f64, c: f64 },
    LegAAngleA { a: f64, angle_a: f64 },
    LegAAngleB { a: f64, angle_b: f64 },
    LegBAngleA { b: f64, angle_a: f64 },
    LegBAngleB { b: f64, angle_b: f64 },
    HypotenuseAngleA { c: f64, angle_a: f64 },
    HypotenuseAngleB { c: f64, angle_b: f64 },
    Angles { angle_a: f64, angle_b: f64 },
}

/// All five quantities of a solved right triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangle {
    pub leg_a: f64,
    pub leg_b: f64,
    pub hypotenuse: f64,
    pub angle_a: f64,
    pub angle_b: f64,
}

impl RightTriangle {
    fn swapped(self) -> Self {
        RightTriangle {
            leg_a: self.leg_b,
            leg_b: self.leg_a,
            hypotenuse: self.hypotenuse,
            angle_a: self.angle_b,
            angle_b: self.angle_a,
        }
    }

    /// Largest residual of the three independent identities; a solved
    /// triangle keeps this below `1e-11`.
    pub fn consistency_residual(&self) -> f64 {
        let r1 = self.hypotenuse.cosh() - self.leg_a.cosh() * self.leg_b.cosh();
        let r2 = self.leg_a.sinh() - self.hypotenuse.sinh() * self.angle_a.sin();
        let r3 = self.leg_b.cosh() - self.angle_b.cos() / self.angle_a.sin();
        r1.abs().max(r2.abs()).max(r3.abs())
    }
}

fn check_length(name: &str, v: f64) -> Result<(), HyperbolicError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(HyperbolicError::Unrealizable(format!(
            "{name} must be a positive length (got {v})"
        )))
    }
}

fn check_angle(name: &str, v: f64) -> Result<(), HyperbolicError> {
    if v.is_finite() && v > 0.0 && v < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(HyperbolicError::Unrealizable(format!(
            "{name} must be an acute angle in (0, π/2) (got {v})"
        )))
    }
}

/// Solve a hyperbolic right triangle from any two of
/// `{a, b, c, A, B}`.
///
/// The returned data satisfies all governing identities to `1e-11`.
/// Infeasible inputs (e.g. a hypotenuse not exceeding a given leg, or
/// `A + B ≥ π/2`) report [`HyperbolicError::Unrealizable`].
pub fn solve_right_triangle(given: RightTriangleGiven) -> Result<RightTriangle, HyperbolicError> {
    use RightTriangleGiven::*;
    match given {
        Legs { a, b } => {
            check_length("leg a", a)?;
            check_length("leg b", b)?;
            let c = (a.cosh() * b.cosh()).acosh();
            let angle_a = (a.tanh() / b.sinh()).atan();
            let angle_b = (b.tanh() / a.sinh()).atan();
            Ok(RightTriangle {
                leg_a: a,
                leg_b: b,
                hypotenuse: c,
                angle_a,
                angle_b,
            })
        }
        LegAHypotenuse { a, c } => {
            check_length("leg a", a)?;
            check_length("hypotenuse", c)?;
            if c.cosh() <= a.cosh() {
                return Err(HyperbolicError::Unrealizable(format!(
                    "hypotenuse {c} must exceed leg {a}"
                )));
            }
            let b = (c.cosh() / a.cosh()).acosh();
            solve_right_triangle(Legs { a, b })
        }
        LegBHypotenuse { b, c } => {
            Ok(solve_right_triangle(LegAHypotenuse { a: b, c })?.swapped())
        }
        LegAAngleA { a, angle_a } => {
            check_length("leg a", a)?;
            check_angle("angle A", angle_a)?;
            // tan A = tanh a / sinh b
            let b = (a.tanh() / angle_a.tan()).asinh();
            solve_right_triangle(Legs { a, b })
        }
        LegAAngleB { a, angle_b } => {
            check_length("leg a", a)?;
            check_angle("angle B", angle_b)?;
            // tanh a = tanh c · cos B, so cos B must exceed tanh a.
            let t = a.tanh() / angle_b.cos();
            if t >= 1.0 {
                return Err(HyperbolicError::Unrealizable(format!(
                    "no right triangle with leg a = {a} and adjacent angle B = {angle_b}"
                )));
            }
            let c = t.atanh();
            solve_right_triangle(LegAHypotenuse { a, c })
        }
        LegBAngleB { b, angle_b } => {
            Ok(solve_right_triangle(LegAAngleA { a: b, angle_a: angle_b })?.swapped())
        }
        LegBAngleA { b, angle_a } => {
            Ok(solve_right_triangle(LegAAngleB { a: b, angle_b: angle_a })?.swapped())
        }
        HypotenuseAngleA { c, angle_a } => {
            check_length("hypotenuse", c)?;
            check_angle("angle A", angle_a)?;
            let a = (c.sinh() * angle_a.sin()).asinh();
            solve_right_triangle(LegAHypotenuse { a, c })
        }
        HypotenuseAngleB { c, angle_b } => {
            Ok(solve_right_triangle(HypotenuseAngleA { c, angle_a: angle_b })?.swapped())
        }
        Angles { angle_a, angle_b } => {
            check_angle("angle A", angle_a)?;
            check_angle("angle B", angle_b)?;
            if angle_a + angle_b >= std::f64::consts::FRAC_PI_2 {
                return Err(HyperbolicError::Unrealizable(format!(
                    "angles {angle_a} + {angle_b} must sum below π/2"
                )));
            }
            let a = (angle_a.cos() / angle_b.sin()).acosh();
            let b = (angle_b.cos() / angle_a.sin()).acosh();
            Ok(RightTriangle {
                leg_a: a,
                leg_b: b,
                hypotenuse: (a.cosh() * b.cosh()).acosh(),
                angle_a,
                angle_b,
            })
        }
    }
}
