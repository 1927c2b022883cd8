//! `hypreduce` — construct, validate, measure and render ordinary reduced
//! polygons in the hyperbolic plane, and run the sweep experiments.
//!
//! Exit codes: 0 success, 1 domain/validation error, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypreduce::explorer::{
    regular_vs_circle_scan, solve_ordinary_reduced, sweep_diameter_circumradius, sweep_perimeter,
    SolveSpec, SweepReport, DEFAULT_PERTURBATION_SCALE,
};
use hypreduce::io;
use hypreduce::polygon::ConvexPolygon;
use hypreduce::reduced::{
    bounds_report, boundary_cover_point, covering_center_set, p_w, p_w_derivatives, regular_ngon,
    validate, CenterRegion, OrdinaryReducedPolygon, DEFAULT_VALIDATE_TOL,
};
use hypreduce::render::{render_svg, Overlay, Scene};

#[derive(Parser)]
#[command(name = "hypreduce", version, about = "Ordinary reduced polygons in the hyperbolic plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the regular ordinary reduced n-gon of a given width.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        width: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve for a perturbed (non-regular) ordinary reduced polygon.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        width: f64,
        /// Perturbation scale as a fraction of the seed circumradius.
        #[arg(long, default_value_t = DEFAULT_PERTURBATION_SCALE)]
        scale: f64,
        /// RNG seed (HYPREDUCE_SEED overrides when set).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate a polygon file as an ordinary reduced polygon of the
    /// given width.
    Validate {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = DEFAULT_VALIDATE_TOL)]
        tol: f64,
    },
    /// Measure a polygon: perimeter, area, diameter, minimal width,
    /// circumradius.
    Measure {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full bounds report for a validated ordinary reduced polygon.
    Bounds {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = DEFAULT_VALIDATE_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Butterfly data (crossings, angles, legs) of a validated polygon.
    Butterflies {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = DEFAULT_VALIDATE_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Covering center set C(P, r) and the boundary covering point.
    Cover {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        width: f64,
        /// Covering radius (defaults to the width).
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_VALIDATE_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep solved samples against the regular baseline perimeter.
    SweepPerimeter {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PERTURBATION_SCALE)]
        scale: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep diameter and circumradius against the regular baseline.
    SweepExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PERTURBATION_SCALE)]
        scale: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare regular n-gon perimeters against the circle of the same
    /// width over a width grid.
    ScanCircle {
        #[arg(long, default_value_t = 0.1)]
        w_min: f64,
        #[arg(long, default_value_t = 4.0)]
        w_max: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate g_w, p_w and its derivatives over the angle interval.
    PwTable {
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Render a polygon (with optional overlays) as an SVG figure.
    Render {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Width, required by overlays that need the validated structure.
        #[arg(long)]
        width: Option<f64>,
        /// Overlays: butterflies, feet, circumcircle, cover, region.
        #[arg(long, value_delimiter = ',')]
        overlay: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_VALIDATE_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum AppError {
    /// Domain or validation failure: exit code 1, message names the
    /// violated condition.
    Domain(String),
    /// Bad flag combination: exit code 2.
    Usage(String),
}

impl AppError {
    fn domain(e: impl std::fmt::Display) -> Self {
        AppError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), AppError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_polygon(path: &PathBuf) -> Result<ConvexPolygon, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Domain(format!("cannot read {}: {e}", path.display())))?;
    io::polygon_from_json(&text).map_err(AppError::domain)
}

fn effective_seed(flag: u64) -> u64 {
    match std::env::var("HYPREDUCE_SEED") {
        Ok(v) => v.parse().unwrap_or(flag),
        Err(_) => flag,
    }
}

fn reject_svg(output: &OutputArgs, what: &str) -> Result<(), AppError> {
    if output.format == Format::Svg {
        return Err(AppError::Usage(format!(
            "{what} cannot be rendered as SVG; use the render subcommand"
        )));
    }
    Ok(())
}

fn sweep_output(report: &SweepReport, output: &OutputArgs) -> Result<(), AppError> {
    reject_svg(output, "a sweep report")?;
    let text = match output.format {
        Format::Json => io::sweep_to_json(report),
        Format::Csv => io::sweep_to_csv(report),
        Format::Svg => unreachable!(),
    };
    emit(&output.out, &text)
}

fn polygon_output(p: &OrdinaryReducedPolygon, output: &OutputArgs) -> Result<(), AppError> {
    match output.format {
        Format::Json => emit(&output.out, &io::polygon_to_json(p.polygon())),
        Format::Csv => Err(AppError::Usage(
            "polygons are emitted as JSON; use --format json".into(),
        )),
        Format::Svg => {
            let scene = Scene {
                polygon: p.polygon(),
                reduced: Some(p),
                overlays: &[],
            };
            emit(&output.out, &render_svg(&scene).map_err(AppError::domain)?)
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Regular { n, width, output } => {
            let p = regular_ngon(n, width).map_err(AppError::domain)?;
            polygon_output(&p, &output)
        }
        Command::Solve {
            n,
            width,
            scale,
            seed,
            output,
        } => {
            let spec = SolveSpec::sampled(n, width, scale, effective_seed(seed))
                .map_err(AppError::domain)?;
            let outcome = solve_ordinary_reduced(&spec).map_err(AppError::domain)?;
            polygon_output(&outcome.polygon, &output)
        }
        Command::Validate { input, width, tol } => {
            let polygon = read_polygon(&input)?;
            let p = validate(polygon, width, tol).map_err(AppError::domain)?;
            let summary = serde_json::json!({
                "valid": true,
                "n": p.n(),
                "width": p.width(),
                "phi_sum": p.phi_sum(),
                "gamma": p.gamma(),
            });
            println!("{summary}");
            Ok(())
        }
        Command::Measure { input, output } => {
            reject_svg(&output, "measurements")?;
            let polygon = read_polygon(&input)?;
            let (diameter, pair) = polygon.diameter();
            let disk = polygon.min_enclosing_disk();
            match output.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "n": polygon.n(),
                        "perimeter": polygon.perimeter_direct(),
                        "area": polygon.area(),
                        "diameter": diameter,
                        "diameter_pair": pair,
                        "min_width": polygon.min_width(),
                        "circumradius": disk.radius,
                        "circumcenter_support": disk.support,
                    });
                    let mut text = serde_json::to_string_pretty(&doc).expect("plain data");
                    text.push('\n');
                    emit(&output.out, &text)
                }
                Format::Csv => {
                    let text = format!(
                        "n,perimeter,area,diameter,min_width,circumradius\n{},{},{},{},{},{}\n",
                        polygon.n(),
                        io::fmt_f64(polygon.perimeter_direct()),
                        io::fmt_f64(polygon.area()),
                        io::fmt_f64(diameter),
                        io::fmt_f64(polygon.min_width()),
                        io::fmt_f64(disk.radius),
                    );
                    emit(&output.out, &text)
                }
                Format::Svg => unreachable!(),
            }
        }
        Command::Bounds {
            input,
            width,
            tol,
            output,
        } => {
            reject_svg(&output, "a bounds report")?;
            let polygon = read_polygon(&input)?;
            let p = validate(polygon, width, tol).map_err(AppError::domain)?;
            let report = bounds_report(&p);
            let text = match output.format {
                Format::Json => io::bounds_to_json(&report),
                Format::Csv => io::bounds_to_csv(&report),
                Format::Svg => unreachable!(),
            };
            emit(&output.out, &text)
        }
        Command::Butterflies {
            input,
            width,
            tol,
            output,
        } => {
            reject_svg(&output, "butterfly data")?;
            if output.format == Format::Csv {
                return Err(AppError::Usage(
                    "butterfly data is emitted as JSON; use --format json".into(),
                ));
            }
            let polygon = read_polygon(&input)?;
            let p = validate(polygon, width, tol).map_err(AppError::domain)?;
            emit(&output.out, &io::butterflies_to_json(&p))
        }
        Command::Cover {
            input,
            width,
            radius,
            tol,
            output,
        } => {
            reject_svg(&output, "covering data")?;
            if output.format == Format::Csv {
                return Err(AppError::Usage(
                    "covering data is emitted as JSON; use --format json".into(),
                ));
            }
            let polygon = read_polygon(&input)?;
            let p = validate(polygon, width, tol).map_err(AppError::domain)?;
            let r = radius.unwrap_or(width);
            let region = covering_center_set(&p, r);
            let (z, maxdist) = boundary_cover_point(&p).map_err(AppError::domain)?;
            let (zx, zy) = z.poincare();
            let region_json = match &region {
                CenterRegion::Empty => serde_json::json!({ "empty": true }),
                CenterRegion::Region {
                    arcs,
                    estar,
                    witness,
                    ..
                } => {
                    let (wx, wy) = witness.poincare();
                    serde_json::json!({
                        "empty": false,
                        "estar": estar,
                        "witness": [wx, wy],
                        "arcs": arcs.iter().map(|a| {
                            let (sx, sy) = a.start.poincare();
                            let (ex, ey) = a.end.poincare();
                            serde_json::json!({
                                "vertex": a.vertex,
                                "start": [sx, sy],
                                "end": [ex, ey],
                            })
                        }).collect::<Vec<_>>(),
                    })
                }
            };
            let doc = serde_json::json!({
                "radius": r,
                "center_region": region_json,
                "boundary_cover_point": [zx, zy],
                "boundary_cover_maxdist": maxdist,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("plain data");
            text.push('\n');
            emit(&output.out, &text)
        }
        Command::SweepPerimeter {
            n,
            width,
            samples,
            seed,
            scale,
            output,
        } => {
            let report = sweep_perimeter(n, width, samples, effective_seed(seed), scale)
                .map_err(AppError::domain)?;
            sweep_output(&report, &output)
        }
        Command::SweepExtremal {
            n,
            width,
            samples,
            seed,
            scale,
            output,
        } => {
            let report =
                sweep_diameter_circumradius(n, width, samples, effective_seed(seed), scale)
                    .map_err(AppError::domain)?;
            sweep_output(&report, &output)
        }
        Command::ScanCircle {
            w_min,
            w_max,
            steps,
            output,
        } => {
            reject_svg(&output, "a scan table")?;
            if steps < 2 || !(w_min > 0.0) || !(w_max > w_min) {
                return Err(AppError::Usage(
                    "scan needs 0 < w-min < w-max and at least 2 steps".into(),
                ));
            }
            let grid: Vec<f64> = (0..steps)
                .map(|k| w_min + (w_max - w_min) * k as f64 / (steps - 1) as f64)
                .collect();
            let table = regular_vs_circle_scan(&grid).map_err(AppError::domain)?;
            let text = match output.format {
                Format::Json => io::scan_to_json(&table),
                Format::Csv => io::scan_to_csv(&table),
                Format::Svg => unreachable!(),
            };
            emit(&output.out, &text)
        }
        Command::PwTable {
            width,
            steps,
            output,
        } => {
            reject_svg(&output, "a p_w table")?;
            if steps < 2 {
                return Err(AppError::Usage("the table needs at least 2 steps".into()));
            }
            let mut text = String::from("x,g_w,p_w,p_w_prime,p_w_second\n");
            for k in 0..steps {
                let x = std::f64::consts::PI * (k as f64 + 0.5) / steps as f64;
                let g = hypreduce::reduced::g_w(width, x).map_err(AppError::domain)?;
                let p = p_w(width, x).map_err(AppError::domain)?;
                let (d1, d2) = p_w_derivatives(width, x).map_err(AppError::domain)?;
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    io::fmt_f64(x),
                    io::fmt_f64(g),
                    io::fmt_f64(p),
                    io::fmt_f64(d1),
                    io::fmt_f64(d2)
                ));
            }
            match output.format {
                Format::Csv => emit(&output.out, &text),
                Format::Json => Err(AppError::Usage(
                    "the p_w table is emitted as CSV; use --format csv".into(),
                )),
                Format::Svg => unreachable!(),
            }
        }
        Command::Render {
            input,
            width,
            overlay,
            tol,
            out,
        } => {
            let overlays: Vec<Overlay> = overlay
                .iter()
                .map(|s| s.parse::<Overlay>())
                .collect::<Result<_, _>>()
                .map_err(AppError::Usage)?;
            let polygon = read_polygon(&input)?;
            let reduced = match width {
                Some(w) => Some(validate(polygon.clone(), w, tol).map_err(AppError::domain)?),
                None => None,
            };
            let scene = Scene {
                polygon: &polygon,
                reduced: reduced.as_ref(),
                overlays: &overlays,
            };
            let svg = render_svg(&scene).map_err(AppError::domain)?;
            emit(&out, &svg)
        }
    }
}
