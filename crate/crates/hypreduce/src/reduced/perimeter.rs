//! The scalar machinery behind the perimeter of an ordinary reduced
//! polygon of width `w`: the auxiliary function `g_w`, the per-butterfly
//! half-edge length `p_w`, and its closed-form derivatives.
//!
//! The perimeter identity is `perim(P) = 2 Σᵢ p_w(φᵢ)` over the butterfly
//! vertical angles. `g_w(φᵢ)` is `tanh` of the crossing-to-foot leg, so
//! the two legs satisfy `b + c = w`.
//!
//! All formulas are evaluated in rearranged, cancellation-free forms. With
//! `c = cos x` and `T = tanh² w`:
//!
//! ```text
//! r²(x) = (1−c)² + 4c(1−T)          (c ≥ 0)
//!       = (1+c)² − 4Tc              (c < 0)
//! p_w(x) = arcosh( cosh w · (1 − c + r) / 2 )
//! s²(x) = 2T + r − (1+c) = 4T(1−T) / (r + 1 + c − 2T)
//! p_w'(x)  = cos(x/2) · s / r
//! p_w''(x) = −sin(x/2) s / (2r) + cos(x/2) (s'r − s r') / r²
//! r'(x) = −sin x (1 + c − 2T) / r,   s' = (r' + sin x) / (2s)
//! ```

use super::ReducedError;

fn check_width(w: f64) -> Result<(), ReducedError> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(ReducedError::NonPositiveWidth(w))
    }
}

fn check_domain(x: f64, open: bool) -> Result<(), ReducedError> {
    let inside = if open {
        x > 0.0 && x < std::f64::consts::PI
    } else {
        (0.0..=std::f64::consts::PI).contains(&x)
    };
    if inside {
        Ok(())
    } else {
        Err(ReducedError::DomainError { x })
    }
}

/// `1 − tanh²w` evaluated as `sech²w` (no cancellation for large `w`).
#[inline]
fn sech2(w: f64) -> f64 {
    let c = w.cosh();
    1.0 / (c * c)
}

/// `r(x) = √((1+cos x)² − 4 tanh²w cos x)` with the cancellation-free
/// branch per sign of `cos x`. `sech2w` and `tanh2w` are both computed
/// directly (never one from the other, which would throw digits away at
/// either end of the width range).
#[inline]
fn r_w(cos_x: f64, sech2w: f64, tanh2w: f64) -> f64 {
    if cos_x >= 0.0 {
        let a = 1.0 - cos_x;
        (a * a + 4.0 * cos_x * sech2w).sqrt()
    } else {
        let a = 1.0 + cos_x;
        (a * a - 4.0 * tanh2w * cos_x).sqrt()
    }
}

#[inline]
fn tanh2(w: f64) -> f64 {
    let t = w.tanh();
    t * t
}

/// Half the interior angle of the regular triangle of minimal width `w`:
/// `sin γ = (−cosh w + √(cosh²w + 8)) / 4`, evaluated in the stable form
/// `2 / (cosh w + √(cosh²w + 8))`.
pub fn gamma_of_width(w: f64) -> Result<f64, ReducedError> {
    check_width(w)?;
    let c = w.cosh();
    let sin_gamma = 2.0 / (c + (c * c + 8.0).sqrt());
    Ok(sin_gamma.asin())
}

/// `g_w(x) = (1 + cos x − r(x)) / (2 tanh w)`: `tanh` of the
/// crossing-to-foot butterfly leg at vertical angle `x`.
///
/// Strictly decreasing on `(0, π)`, from `tanh(w/2)` at `0` to `−1`
/// at `π`.
pub fn g_w(w: f64, x: f64) -> Result<f64, ReducedError> {
    check_width(w)?;
    check_domain(x, false)?;
    let c = x.cos();
    Ok((1.0 + c - r_w(c, sech2(w), tanh2(w))) / (2.0 * w.tanh()))
}

/// `p_w(x) = arcosh((1 − g_w(x) tanh w)/√(1 − tanh²w))`, evaluated as
/// `arcosh(cosh w · (1 − cos x + r(x))/2)`.
///
/// `2 Σ p_w(φᵢ)` is the polygon perimeter; `p_w(0) = 0` and
/// `p_w(π) = arcosh(eʷ)`. The `arcosh` argument is kept as
/// `1 + u` with `u = 2 sinh²(w/2)·A − 2 tanh²w · cos x / (r + 1 + cos x)`
/// (`A` the half-sum above), so precision survives `u → 0` at small
/// widths and small angles.
pub fn p_w(w: f64, x: f64) -> Result<f64, ReducedError> {
    check_width(w)?;
    check_domain(x, false)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let c = x.cos();
    let t2 = tanh2(w);
    let r = r_w(c, sech2(w), t2);
    let a = 0.5 * (1.0 - c + r);
    let u = (2.0 * (w / 2.0).sinh().powi(2) * a - 2.0 * t2 * c / (r + 1.0 + c)).max(0.0);
    Ok((u * (u + 2.0)).sqrt().asinh())
}

/// Closed-form first and second derivatives of [`p_w`] on the open
/// interval `(0, π)`.
///
/// The first derivative is positive on the whole interval and vanishes at
/// `π`; consequently the second derivative changes sign at an inflection
/// point `x*(w) < π` (the function is convex only left of it).
pub fn p_w_derivatives(w: f64, x: f64) -> Result<(f64, f64), ReducedError> {
    check_width(w)?;
    check_domain(x, true)?;
    let s2 = sech2(w);
    let t2 = tanh2(w);
    let c = x.cos();
    let sin_x = x.sin();
    let r = r_w(c, s2, t2);
    // s² = 2T + r − (1+c) = 4T(1−T)/(r + 1 + c − 2T); the second form has
    // no cancellation (the denominator is proven positive).
    let denom = r + 1.0 + c - 2.0 * t2;
    let s = 2.0 * (t2 * s2).sqrt() / denom.sqrt();
    let dr = -sin_x * (1.0 + c - 2.0 * t2) / r;
    let ds = (dr + sin_x) / (2.0 * s);
    let (half_sin, half_cos) = (0.5 * x).sin_cos();
    let p1 = half_cos * s / r;
    let p2 = -0.5 * half_sin * s / r + half_cos * (ds * r - s * dr) / (r * r);
    Ok((p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    // High-precision anchors (50-digit evaluation of the defining
    // formulas).
    const GAMMA_1: f64 = 0.433_139_696_085_761_906_4;
    const G_1_PI3: f64 = 0.299_368_057_192_142_827_2;
    const P_1_PI3: f64 = 0.609_030_503_821_693_845_7;
    const DP_1_PI3: f64 = 0.696_035_895_252_061_874_8;
    const DDP_1_PI3: f64 = 0.275_765_165_824_428_274_1;

    #[test]
    fn gamma_euclidean_limit_is_pi_over_six() {
        let g = gamma_of_width(1e-9).unwrap();
        assert_relative_eq!(g, PI / 6.0, epsilon = 1e-9);
    }

    #[test]
    fn gamma_at_one() {
        assert_relative_eq!(gamma_of_width(1.0).unwrap(), GAMMA_1, epsilon = 1e-14);
    }

    #[test]
    fn gamma_round_trips_through_cos2g_over_sing() {
        for w in [0.05, 0.3, 1.0, 2.5, 7.0, 20.0] {
            let g = gamma_of_width(w).unwrap();
            assert_relative_eq!((2.0 * g).cos() / g.sin(), w.cosh(), max_relative = 1e-11);
        }
    }

    #[test]
    fn gamma_rejects_nonpositive_width() {
        assert!(matches!(
            gamma_of_width(0.0),
            Err(ReducedError::NonPositiveWidth(_))
        ));
        assert!(matches!(
            gamma_of_width(-1.0),
            Err(ReducedError::NonPositiveWidth(_))
        ));
    }

    #[test]
    fn g_endpoint_values() {
        for w in [0.1, 1.0, 3.0] {
            assert_relative_eq!(g_w(w, PI).unwrap(), -1.0, epsilon = 1e-14);
            assert_relative_eq!(g_w(w, 0.0).unwrap(), (w / 2.0).tanh(), epsilon = 1e-14);
        }
        assert_relative_eq!(g_w(1.0, PI / 3.0).unwrap(), G_1_PI3, epsilon = 1e-14);
    }

    #[test]
    fn g_is_strictly_decreasing() {
        for w in [0.1, 1.0, 2.0] {
            let mut prev = f64::INFINITY;
            for k in 0..=400 {
                let x = PI * k as f64 / 400.0;
                let v = g_w(w, x).unwrap();
                assert!(v < prev, "g_w not decreasing at w={w}, x={x}");
                assert!(v > -1.0 - 1e-12 && v <= (w / 2.0).tanh() + 1e-12);
                prev = v;
            }
        }
        // Finite-difference slope at a sample point.
        let h = 1e-6;
        let slope = (g_w(1.0, PI / 3.0 + h).unwrap() - g_w(1.0, PI / 3.0 - h).unwrap()) / (2.0 * h);
        assert!(slope < 0.0);
    }

    #[test]
    fn g_rejects_out_of_domain() {
        assert!(matches!(
            g_w(1.0, -0.1),
            Err(ReducedError::DomainError { .. })
        ));
        assert!(matches!(
            g_w(1.0, PI + 0.1),
            Err(ReducedError::DomainError { .. })
        ));
    }

    #[test]
    fn p_endpoint_values() {
        for w in [0.1, 1.0, 3.0, 5.0] {
            assert_eq!(p_w(w, 0.0).unwrap(), 0.0);
            assert_relative_eq!(p_w(w, PI).unwrap(), w.exp().acosh(), max_relative = 1e-13);
        }
        assert_relative_eq!(p_w(1.0, PI / 3.0).unwrap(), P_1_PI3, epsilon = 1e-14);
    }

    #[test]
    fn derivatives_match_anchors() {
        let (p1, p2) = p_w_derivatives(1.0, PI / 3.0).unwrap();
        assert_relative_eq!(p1, DP_1_PI3, epsilon = 1e-13);
        assert_relative_eq!(p2, DDP_1_PI3, epsilon = 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Chained check: p' against central differences of p_w, and p''
        // against central differences of the (already validated) closed
        // form p'. Differencing p_w twice at this step would sit on the
        // f64 noise floor ε/h² and say nothing.
        let h = 1e-5;
        for w in [0.1, 0.5, 1.0, 2.0, 5.0] {
            for k in 1..100 {
                let x = PI * k as f64 / 100.0;
                if x - h <= 0.0 || x + h >= PI {
                    continue;
                }
                let (p1, p2) = p_w_derivatives(w, x).unwrap();
                let f = |t: f64| p_w(w, t).unwrap();
                let d1 = |t: f64| p_w_derivatives(w, t).unwrap().0;
                let fd1 = (f(x + h) - f(x - h)) / (2.0 * h);
                let fd2 = (d1(x + h) - d1(x - h)) / (2.0 * h);
                assert!(
                    (p1 - fd1).abs() / fd1.abs() < 1e-5,
                    "p' mismatch at w={w}, x={x}: {p1} vs {fd1}"
                );
                assert!(
                    (p2 - fd2).abs() / fd2.abs() < 1e-5,
                    "p'' mismatch at w={w}, x={x}: {p2} vs {fd2}"
                );
            }
        }
    }

    #[test]
    fn first_derivative_positive_and_near_zero_limit() {
        // p'(0⁺) = sinh(w/2); the closed form approaches it smoothly.
        for w in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let (p1, _) = p_w_derivatives(w, 1e-8).unwrap();
            assert_relative_eq!(p1, (w / 2.0).sinh(), max_relative = 1e-6);
            for k in 1..500 {
                let x = PI * k as f64 / 500.0;
                let (d1, _) = p_w_derivatives(w, x).unwrap();
                assert!(d1 > 0.0, "p' must be positive at w={w}, x={x}");
            }
        }
    }

    #[test]
    fn second_derivative_changes_sign_before_pi() {
        // p' vanishes at π while staying positive inside, so convexity
        // must fail near π: an inflection point exists for every width.
        for (w, inflection) in [
            (0.1, 2.652_145_660_812_727_6),
            (0.5, 1.986_564_226_462_615_3),
            (1.0, 1.463_479_963_321_403_5),
            (2.0, 0.829_878_448_820_130_1),
            (5.0, 0.176_868_672_351_710_8),
        ] {
            let (_, before) = p_w_derivatives(w, inflection - 1e-6).unwrap();
            let (_, after) = p_w_derivatives(w, inflection + 1e-6).unwrap();
            assert!(
                before > 0.0 && after < 0.0,
                "inflection of p_w at w={w} expected at {inflection}"
            );
        }
    }

    #[test]
    fn derivative_domain_is_open() {
        assert!(matches!(
            p_w_derivatives(1.0, 0.0),
            Err(ReducedError::DomainError { .. })
        ));
        assert!(matches!(
            p_w_derivatives(1.0, PI),
            Err(ReducedError::DomainError { .. })
        ));
    }
}
