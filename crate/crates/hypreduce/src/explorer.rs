//! Numerical search for non-regular ordinary reduced polygons and the
//! sweep experiments around the regular baseline.
//!
//! The solver perturbs the regular `n`-gon in Klein coordinates and runs
//! a damped Newton iteration on the `n` defining width equations
//! `dist(vᵢ, opposite side) = w` plus 3 gauge constraints (vertex 0
//! pinned to its seed azimuth, Klein centroid at the origin) that remove
//! the isometry freedom. The system is underdetermined for `n > 3`
//! (solution manifold of expected dimension `n − 3`), so each step is the
//! minimum-norm solution of the linearized system.
//!
//! Everything here is deterministic: identical specs (including seeds)
//! produce bitwise-identical reports.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::{Geodesic, HPoint};
use crate::polygon::ConvexPolygon;
use crate::reduced::{
    p_w, regular_ngon, validate, OrdinaryReducedPolygon, ReducedError, DEFAULT_VALIDATE_TOL,
};

/// A valid sample must beat the regular baseline by more than this margin
/// to count as a counterexample candidate (above validation noise, below
/// anything geometrically meaningful).
pub const COUNTEREXAMPLE_MARGIN: f64 = 1e-7;

/// Default per-coordinate perturbation scale, as a fraction of the seed
/// polygon's Klein circumradius.
pub const DEFAULT_PERTURBATION_SCALE: f64 = 0.05;

#[derive(Debug, Clone, Error)]
pub enum ExplorerError {
    #[error("invalid solve spec: {0}")]
    InvalidSpec(String),
    #[error("Newton iteration did not converge ({iterations} iterations, residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("perturbation pushed foot {index} out of the open side (margin {margin:e}); shrink the perturbation")]
    FeetLeftInterior { index: usize, margin: f64 },
    #[error("converged point failed validation: {0}")]
    ValidationFailed(ReducedError),
    #[error("could not construct the regular seed: {0}")]
    Seed(ReducedError),
}

/// Specification of one solve: seed polygon, perturbation, gauge anchors
/// and Newton tolerances.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolveSpec {
    pub n: usize,
    pub width: f64,
    /// Klein-coordinate offsets, length `2n`, interleaved `(x, y)` per
    /// vertex, applied to the regular seed.
    pub perturbation: Vec<f64>,
    /// Max allowed per-coordinate perturbation magnitude.
    pub trust_radius: f64,
    /// Azimuth at which vertex 0 is pinned (the seed places it at 0).
    pub azimuth_anchor: f64,
    /// Convergence threshold on the sup norm of the residual.
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// RNG seed recorded for reproduction (the perturbation it drew).
    pub seed: u64,
}

impl SolveSpec {
    /// Zero-perturbation spec: the solver reproduces the regular polygon.
    pub fn regular(n: usize, width: f64) -> Result<Self, ExplorerError> {
        if n < 3 || n % 2 == 0 {
            return Err(ExplorerError::InvalidSpec(format!(
                "n must be odd and at least 3 (got {n})"
            )));
        }
        if !(width > 0.0) {
            return Err(ExplorerError::InvalidSpec(format!(
                "width must be positive (got {width})"
            )));
        }
        Ok(SolveSpec {
            n,
            width,
            perturbation: vec![0.0; 2 * n],
            trust_radius: 0.2 * width,
            azimuth_anchor: 0.0,
            residual_tol: 1e-12,
            max_iterations: 50,
            seed: 0,
        })
    }

    /// Replace the perturbation, enforcing the trust-radius invariant.
    pub fn with_perturbation(mut self, perturbation: Vec<f64>) -> Result<Self, ExplorerError> {
        if perturbation.len() != 2 * self.n {
            return Err(ExplorerError::InvalidSpec(format!(
                "perturbation must have length {} (got {})",
                2 * self.n,
                perturbation.len()
            )));
        }
        let magnitude = perturbation.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if magnitude > self.trust_radius {
            return Err(ExplorerError::InvalidSpec(format!(
                "perturbation magnitude {magnitude} exceeds trust radius {}",
                self.trust_radius
            )));
        }
        self.perturbation = perturbation;
        Ok(self)
    }

    /// Draw a perturbation of the given `scale` (fraction of the seed's
    /// Klein circumradius, per coordinate, uniform) from `seed`.
    pub fn sampled(n: usize, width: f64, scale: f64, seed: u64) -> Result<Self, ExplorerError> {
        let mut spec = SolveSpec::regular(n, width)?;
        if !(scale >= 0.0) {
            return Err(ExplorerError::InvalidSpec(format!(
                "perturbation scale must be nonnegative (got {scale})"
            )));
        }
        let reg = regular_ngon(n, width).map_err(ExplorerError::Seed)?;
        let (kx, ky) = reg.polygon().vertex(0).klein();
        let klein_rho = (kx * kx + ky * ky).sqrt();
        let kick = scale * klein_rho;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perturbation: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-kick..=kick)).collect();
        spec.seed = seed;
        spec.trust_radius = spec.trust_radius.max(kick);
        spec.with_perturbation(perturbation)
    }
}

/// A converged, validated solve with its convergence trace.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub polygon: OrdinaryReducedPolygon,
    pub iterations: usize,
    /// Sup-norm residuals, one entry per iterate (including the start).
    pub residual_history: Vec<f64>,
}

struct ResidualSystem {
    n: usize,
    width: f64,
    azimuth_anchor: f64,
}

impl ResidualSystem {
    fn points(&self, x: &DVector<f64>) -> Option<Vec<HPoint>> {
        (0..self.n)
            .map(|i| HPoint::from_klein(x[2 * i], x[2 * i + 1]).ok())
            .collect()
    }

    fn eval(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        let n = self.n;
        let pts = self.points(x)?;
        let mut f = DVector::zeros(n + 3);
        for i in 0..n {
            let a = &pts[(i + (n - 1) / 2) % n];
            let b = &pts[(i + (n + 1) / 2) % n];
            let side = Geodesic::through(a, b).ok()?;
            f[i] = side.dist(&pts[i]) - self.width;
        }
        // Gauge: vertex 0 stays at its seed azimuth, centroid at origin.
        let (s, c) = self.azimuth_anchor.sin_cos();
        f[n] = x[1] * c - x[0] * s;
        f[n + 1] = (0..n).map(|i| x[2 * i]).sum();
        f[n + 2] = (0..n).map(|i| x[2 * i + 1]).sum();
        Some(f)
    }

    fn jacobian(&self, x: &DVector<f64>) -> Option<DMatrix<f64>> {
        let rows = self.n + 3;
        let cols = 2 * self.n;
        let h = 1e-7;
        let mut j = DMatrix::zeros(rows, cols);
        let mut xp = x.clone();
        for col in 0..cols {
            let orig = x[col];
            xp[col] = orig + h;
            let fp = self.eval(&xp)?;
            xp[col] = orig - h;
            let fm = self.eval(&xp)?;
            xp[col] = orig;
            for row in 0..rows {
                j[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        Some(j)
    }
}

/// Solve the width system from the perturbed regular seed by damped
/// Newton with minimum-norm steps; the converged vertex cycle is then
/// run through the full validation suite. Non-convergence and validation
/// failures are errors, never silent results.
pub fn solve_ordinary_reduced(spec: &SolveSpec) -> Result<SolveOutcome, ExplorerError> {
    let seed_polygon = regular_ngon(spec.n, spec.width).map_err(ExplorerError::Seed)?;
    let n = spec.n;
    let mut x = DVector::zeros(2 * n);
    for i in 0..n {
        let (kx, ky) = seed_polygon.polygon().vertex(i).klein();
        x[2 * i] = kx + spec.perturbation[2 * i];
        x[2 * i + 1] = ky + spec.perturbation[2 * i + 1];
    }
    let system = ResidualSystem {
        n,
        width: spec.width,
        azimuth_anchor: spec.azimuth_anchor,
    };

    let mut residual_history = Vec::new();
    let mut f = system.eval(&x).ok_or(ExplorerError::NoConvergence {
        iterations: 0,
        residual: f64::INFINITY,
    })?;
    let mut res = f.amax();
    residual_history.push(res);

    let mut iterations = 0;
    while res > spec.residual_tol {
        if iterations >= spec.max_iterations {
            return Err(ExplorerError::NoConvergence {
                iterations,
                residual: res,
            });
        }
        iterations += 1;
        let j = system.jacobian(&x).ok_or(ExplorerError::NoConvergence {
            iterations,
            residual: res,
        })?;
        // Minimum-norm Newton step: s = Jᵀ (J Jᵀ)⁻¹ (−f).
        let jjt = &j * j.transpose();
        let rhs = -&f;
        let y = jjt
            .clone()
            .cholesky()
            .map(|ch| ch.solve(&rhs))
            .or_else(|| jjt.lu().solve(&rhs))
            .ok_or(ExplorerError::NoConvergence {
                iterations,
                residual: res,
            })?;
        let step = j.transpose() * y;

        // Backtracking damping on the residual norm.
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda >= 1e-6 {
            let candidate = &x + &step * lambda;
            if let Some(fc) = system.eval(&candidate) {
                let rc = fc.amax();
                if rc < res * (1.0 - 1e-4 * lambda) || rc <= spec.residual_tol {
                    x = candidate;
                    f = fc;
                    res = rc;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(ExplorerError::NoConvergence {
                iterations,
                residual: res,
            });
        }
        residual_history.push(res);
    }

    let pts = system.points(&x).ok_or(ExplorerError::NoConvergence {
        iterations,
        residual: res,
    })?;
    let polygon = ConvexPolygon::try_new(pts)
        .map_err(|e| ExplorerError::ValidationFailed(ReducedError::Polygon(e)))?;
    match validate(polygon, spec.width, DEFAULT_VALIDATE_TOL) {
        Ok(p) => Ok(SolveOutcome {
            polygon: p,
            iterations,
            residual_history,
        }),
        Err(ReducedError::FootNotInterior { index, margin }) => {
            Err(ExplorerError::FeetLeftInterior { index, margin })
        }
        Err(e) => Err(ExplorerError::ValidationFailed(e)),
    }
}

/// Empirical dimension of the solution manifold at the regular seed:
/// `2n` coordinates minus the numerical rank of the Jacobian of the
/// width-plus-gauge system. Constraint counting predicts `n − 3`; this
/// measures it instead of assuming it.
pub fn solution_manifold_dimension(n: usize, width: f64) -> Result<usize, ExplorerError> {
    let seed = regular_ngon(n, width).map_err(ExplorerError::Seed)?;
    let mut x = DVector::zeros(2 * n);
    for i in 0..n {
        let (kx, ky) = seed.polygon().vertex(i).klein();
        x[2 * i] = kx;
        x[2 * i + 1] = ky;
    }
    let system = ResidualSystem {
        n,
        width,
        azimuth_anchor: 0.0,
    };
    let j = system.jacobian(&x).ok_or(ExplorerError::NoConvergence {
        iterations: 0,
        residual: f64::INFINITY,
    })?;
    let svd = j.svd(false, false);
    let max_sv = svd.singular_values.iter().fold(0.0f64, |a, s| a.max(*s));
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-7 * max_sv.max(1.0))
        .count();
    Ok(2 * n - rank)
}

/// Which quantity a sweep compares against the regular baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMetric {
    Perimeter,
    DiameterCircumradius,
}

impl SweepMetric {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMetric::Perimeter => "perimeter",
            SweepMetric::DiameterCircumradius => "diameter-circumradius",
        }
    }
}

/// Metrics of the regular `n`-gon the samples are compared against.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepBaseline {
    pub perimeter: f64,
    pub diameter: f64,
    pub circumradius: f64,
    pub phi_sum: f64,
}

/// One sample of a sweep. Failed solves record the error and keep every
/// metric empty; they are never retried, so the statistics stay unbiased
/// with respect to the sampler.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub perimeter: Option<f64>,
    pub diameter: Option<f64>,
    pub circumradius: Option<f64>,
    pub phi_sum: Option<f64>,
    pub perimeter_ratio: Option<f64>,
    pub diameter_ratio: Option<f64>,
    pub circumradius_ratio: Option<f64>,
}

/// Full sweep output, including the reproduction block (`n`, `width`,
/// `samples`, `seed`, `scale`).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepReport {
    pub metric: SweepMetric,
    pub n: usize,
    pub width: f64,
    pub samples: usize,
    pub seed: u64,
    pub scale: f64,
    pub baseline: SweepBaseline,
    pub records: Vec<SampleRecord>,
    pub valid_count: usize,
    pub skipped_count: usize,
    pub max_perimeter_ratio: Option<f64>,
    pub min_diameter_ratio: Option<f64>,
    pub max_diameter_ratio: Option<f64>,
    pub min_circumradius_ratio: Option<f64>,
    pub max_circumradius_ratio: Option<f64>,
    /// True iff some valid sample strictly beats the regular baseline in
    /// the swept metric by more than [`COUNTEREXAMPLE_MARGIN`].
    pub counterexample: bool,
    pub counterexample_indices: Vec<usize>,
}

fn sample_seed(master: u64, index: usize) -> u64 {
    master.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run_sweep(
    metric: SweepMetric,
    n: usize,
    width: f64,
    samples: usize,
    seed: u64,
    scale: f64,
) -> Result<SweepReport, ExplorerError> {
    let regular = regular_ngon(n, width).map_err(ExplorerError::Seed)?;
    let baseline = SweepBaseline {
        perimeter: 2.0 * n as f64
            * p_w(width, std::f64::consts::PI / n as f64).map_err(ExplorerError::Seed)?,
        diameter: regular.polygon().diameter().0,
        circumradius: regular.polygon().min_enclosing_disk().radius,
        phi_sum: regular.phi_sum(),
    };

    let mut records = Vec::with_capacity(samples);
    let mut counterexample_indices = Vec::new();
    for index in 0..samples {
        let s = sample_seed(seed, index);
        let record = match SolveSpec::sampled(n, width, scale, s)
            .and_then(|spec| solve_ordinary_reduced(&spec))
        {
            Ok(outcome) => {
                let p = &outcome.polygon;
                let perimeter = p.polygon().perimeter_direct();
                let diameter = p.polygon().diameter().0;
                let circumradius = p.polygon().min_enclosing_disk().radius;
                let beats = match metric {
                    SweepMetric::Perimeter => {
                        perimeter > baseline.perimeter + COUNTEREXAMPLE_MARGIN
                    }
                    SweepMetric::DiameterCircumradius => {
                        diameter > baseline.diameter + COUNTEREXAMPLE_MARGIN
                            || circumradius > baseline.circumradius + COUNTEREXAMPLE_MARGIN
                    }
                };
                if beats {
                    counterexample_indices.push(index);
                }
                SampleRecord {
                    index,
                    seed: s,
                    converged: true,
                    error: None,
                    perimeter: Some(perimeter),
                    diameter: Some(diameter),
                    circumradius: Some(circumradius),
                    phi_sum: Some(p.phi_sum()),
                    perimeter_ratio: Some(perimeter / baseline.perimeter),
                    diameter_ratio: Some(diameter / baseline.diameter),
                    circumradius_ratio: Some(circumradius / baseline.circumradius),
                }
            }
            Err(e) => SampleRecord {
                index,
                seed: s,
                converged: false,
                error: Some(e.to_string()),
                perimeter: None,
                diameter: None,
                circumradius: None,
                phi_sum: None,
                perimeter_ratio: None,
                diameter_ratio: None,
                circumradius_ratio: None,
            },
        };
        records.push(record);
    }

    let valid_count = records.iter().filter(|r| r.converged).count();
    let fold = |get: fn(&SampleRecord) -> Option<f64>, max: bool| -> Option<f64> {
        let it = records.iter().filter_map(get);
        if max {
            it.fold(None, |a: Option<f64>, x| Some(a.map_or(x, |v| v.max(x))))
        } else {
            it.fold(None, |a: Option<f64>, x| Some(a.map_or(x, |v| v.min(x))))
        }
    };
    Ok(SweepReport {
        metric,
        n,
        width,
        samples,
        seed,
        scale,
        baseline,
        valid_count,
        skipped_count: samples - valid_count,
        max_perimeter_ratio: fold(|r| r.perimeter_ratio, true),
        min_diameter_ratio: fold(|r| r.diameter_ratio, false),
        max_diameter_ratio: fold(|r| r.diameter_ratio, true),
        min_circumradius_ratio: fold(|r| r.circumradius_ratio, false),
        max_circumradius_ratio: fold(|r| r.circumradius_ratio, true),
        counterexample: !counterexample_indices.is_empty(),
        counterexample_indices,
        records,
    })
}

/// Sweep the perimeter of solved non-regular samples against the regular
/// baseline `2n·p_w(π/n)`. A strict exceedance raises the counterexample
/// flag with full reproduction data.
pub fn sweep_perimeter(
    n: usize,
    width: f64,
    samples: usize,
    seed: u64,
    scale: f64,
) -> Result<SweepReport, ExplorerError> {
    run_sweep(SweepMetric::Perimeter, n, width, samples, seed, scale)
}

/// Sweep diameter and circumradius of solved samples against the regular
/// polygon's values, recording the empirical direction of extremality.
pub fn sweep_diameter_circumradius(
    n: usize,
    width: f64,
    samples: usize,
    seed: u64,
    scale: f64,
) -> Result<SweepReport, ExplorerError> {
    run_sweep(
        SweepMetric::DiameterCircumradius,
        n,
        width,
        samples,
        seed,
        scale,
    )
}

/// One row of the regular-polygon-versus-circle perimeter scan.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScanRow {
    pub width: f64,
    /// Circumference `2π sinh(w/2)` of the circle of minimal width `w`.
    pub circle: f64,
    /// Regular `n`-gon perimeters `2n·p_w(π/n)`, aligned with
    /// [`ScanTable::ns`].
    pub ngon: Vec<f64>,
    pub triangle_exceeds_circle: bool,
    pub nonmonotone_in_n: bool,
}

/// Perimeter comparison of regular `n`-gons against the circle of the
/// same minimal width over a width grid.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScanTable {
    pub ns: Vec<usize>,
    pub rows: Vec<ScanRow>,
    /// First adjacent grid pair where `perim(triangle) − perim(circle)`
    /// changes sign.
    pub triangle_circle_crossover: Option<(f64, f64)>,
}

pub fn regular_vs_circle_scan(w_grid: &[f64]) -> Result<ScanTable, ExplorerError> {
    let ns: Vec<usize> = vec![3, 5, 7, 9, 11, 13, 15];
    let mut rows = Vec::with_capacity(w_grid.len());
    for &w in w_grid {
        if !(w > 0.0) {
            return Err(ExplorerError::InvalidSpec(format!(
                "scan grid values must be positive (got {w})"
            )));
        }
        let circle = 2.0 * std::f64::consts::PI * (w / 2.0).sinh();
        let ngon: Vec<f64> = ns
            .iter()
            .map(|&n| {
                Ok(2.0 * n as f64 * p_w(w, std::f64::consts::PI / n as f64)?)
            })
            .collect::<Result<_, ReducedError>>()
            .map_err(ExplorerError::Seed)?;
        let increasing = ngon.windows(2).all(|p| p[1] >= p[0]);
        let decreasing = ngon.windows(2).all(|p| p[1] <= p[0]);
        rows.push(ScanRow {
            width: w,
            circle,
            triangle_exceeds_circle: ngon[0] > circle,
            nonmonotone_in_n: !(increasing || decreasing),
            ngon,
        });
    }
    let mut crossover = None;
    for pair in rows.windows(2) {
        let a = pair[0].ngon[0] - pair[0].circle;
        let b = pair[1].ngon[0] - pair[1].circle;
        if a.signum() != b.signum() {
            crossover = Some((pair[0].width, pair[1].width));
            break;
        }
    }
    Ok(ScanTable {
        ns,
        rows,
        triangle_circle_crossover: crossover,
    })
}
