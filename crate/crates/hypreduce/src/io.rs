//! Serialization: polygon JSON, report JSON, and the CSV formats.
//!
//! Polygon files use Poincaré coordinates:
//! `{"model":"poincare","vertices":[[x,y],...]}` with the vertices in
//! positive orientation (the reader re-orients if needed).
//!
//! CSV files are comma-separated with `\n` line endings and UTF-8 text.
//! Numbers are printed with 17 significant digits (`{:.16e}`), so a
//! written file parses back to bitwise-identical values. Sweep and scan
//! files carry their reproduction block as leading `# key=value` comment
//! lines, which the bundled readers skip and restore.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::explorer::{SampleRecord, ScanRow, ScanTable, SweepBaseline, SweepMetric, SweepReport};
use crate::hyperbolic::HPoint;
use crate::polygon::{ConvexPolygon, PolygonError};
use crate::reduced::{BoundCheck, BoundsReport, OrdinaryReducedPolygon};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unsupported polygon model {0:?} (expected \"poincare\")")]
    UnsupportedModel(String),
    #[error("vertex {index} is not inside the unit disk")]
    VertexOutsideDisk { index: usize },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct PolygonJson {
    model: String,
    vertices: Vec<[f64; 2]>,
}

/// Serialize a polygon to the JSON wire format (Poincaré chart).
pub fn polygon_to_json(p: &ConvexPolygon) -> String {
    let doc = PolygonJson {
        model: "poincare".to_string(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = v.poincare();
                [x, y]
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Read and validate a polygon from the JSON wire format, re-orienting a
/// negatively oriented vertex cycle.
pub fn polygon_from_json(text: &str) -> Result<ConvexPolygon, IoError> {
    let doc: PolygonJson = serde_json::from_str(text)?;
    if doc.model != "poincare" {
        return Err(IoError::UnsupportedModel(doc.model));
    }
    let vertices: Vec<HPoint> = doc
        .vertices
        .iter()
        .enumerate()
        .map(|(index, &[x, y])| {
            HPoint::from_poincare(x, y).map_err(|_| IoError::VertexOutsideDisk { index })
        })
        .collect::<Result<_, _>>()?;
    Ok(ConvexPolygon::try_new(vertices)?)
}

/// 17-significant-digit float formatting; parses back bitwise-exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64, IoError> {
    s.parse::<f64>()
        .map_err(|e| IoError::Csv(format!("bad float {s:?}: {e}")))
}

fn parse_bool(s: &str) -> Result<bool, IoError> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(IoError::Csv(format!("bad bool {s:?}"))),
    }
}

fn parse_opt_f64(s: &str) -> Result<Option<f64>, IoError> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(s).map(Some)
    }
}

pub fn bounds_to_json(report: &BoundsReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("plain data serializes");
    s.push('\n');
    s
}

/// Bounds report as a two-line CSV (header + row). Per-vertex angles get
/// one column each (`phi_0..`, `alpha_0..`, `beta_0..`), every check two
/// columns (`<name>_ok`, `<name>_margin`).
pub fn bounds_to_csv(report: &BoundsReport) -> String {
    let mut header: Vec<String> = vec![
        "n".into(),
        "width".into(),
        "diameter".into(),
        "diameter_i".into(),
        "diameter_j".into(),
        "circumradius".into(),
        "perimeter_direct".into(),
        "perimeter_formula".into(),
        "area".into(),
        "phi_sum".into(),
        "gamma".into(),
        "lassak_upper".into(),
        "diam_upper".into(),
        "circ_upper".into(),
        "jung_upper".into(),
        "ratio_diam_width".into(),
        "ratio_circ_width".into(),
    ];
    let mut row: Vec<String> = vec![
        report.n.to_string(),
        fmt_f64(report.width),
        fmt_f64(report.diameter),
        report.diameter_pair.0.to_string(),
        report.diameter_pair.1.to_string(),
        fmt_f64(report.circumradius),
        fmt_f64(report.perimeter_direct),
        fmt_f64(report.perimeter_formula),
        fmt_f64(report.area),
        fmt_f64(report.phi_sum),
        fmt_f64(report.gamma),
        fmt_f64(report.lassak_upper),
        fmt_f64(report.diam_upper),
        fmt_f64(report.circ_upper),
        fmt_f64(report.jung_upper),
        fmt_f64(report.ratio_diam_width),
        fmt_f64(report.ratio_circ_width),
    ];
    for (name, values) in [
        ("phi", &report.phi),
        ("alpha", &report.alpha),
        ("beta", &report.beta),
    ] {
        for (i, v) in values.iter().enumerate() {
            header.push(format!("{name}_{i}"));
            row.push(fmt_f64(*v));
        }
    }
    for check in &report.checks {
        header.push(format!("{}_ok", check.name));
        header.push(format!("{}_margin", check.name));
        row.push(check.satisfied.to_string());
        row.push(fmt_f64(check.margin));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}

/// Parse a bounds CSV produced by [`bounds_to_csv`] back into the exact
/// in-memory report.
pub fn bounds_from_csv(text: &str) -> Result<BoundsReport, IoError> {
    let mut lines = text.lines().filter(|l| !l.is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| IoError::Csv("missing header".into()))?
        .split(',')
        .collect();
    let row: Vec<&str> = lines
        .next()
        .ok_or_else(|| IoError::Csv("missing data row".into()))?
        .split(',')
        .collect();
    if header.len() != row.len() {
        return Err(IoError::Csv(format!(
            "header has {} fields, row has {}",
            header.len(),
            row.len()
        )));
    }
    let field = |name: &str| -> Result<&str, IoError> {
        header
            .iter()
            .position(|h| *h == name)
            .map(|i| row[i])
            .ok_or_else(|| IoError::Csv(format!("missing column {name}")))
    };
    let n: usize = field("n")?
        .parse()
        .map_err(|e| IoError::Csv(format!("bad n: {e}")))?;
    let angles = |prefix: &str| -> Result<Vec<f64>, IoError> {
        (0..n)
            .map(|i| field(&format!("{prefix}_{i}")).and_then(parse_f64))
            .collect()
    };
    let phi = angles("phi")?;
    let alpha = angles("alpha")?;
    let beta = angles("beta")?;
    let mut checks = Vec::new();
    for (i, h) in header.iter().enumerate() {
        if let Some(name) = h.strip_suffix("_ok") {
            if matches!(name, "phi" | "alpha" | "beta") {
                continue;
            }
            let margin = field(&format!("{name}_margin")).and_then(parse_f64)?;
            checks.push(BoundCheck {
                name: name.to_string(),
                satisfied: parse_bool(row[i])?,
                margin,
            });
        }
    }
    Ok(BoundsReport {
        n,
        width: field("width").and_then(parse_f64)?,
        diameter: field("diameter").and_then(parse_f64)?,
        diameter_pair: (
            field("diameter_i")?
                .parse()
                .map_err(|e| IoError::Csv(format!("bad diameter_i: {e}")))?,
            field("diameter_j")?
                .parse()
                .map_err(|e| IoError::Csv(format!("bad diameter_j: {e}")))?,
        ),
        circumradius: field("circumradius").and_then(parse_f64)?,
        perimeter_direct: field("perimeter_direct").and_then(parse_f64)?,
        perimeter_formula: field("perimeter_formula").and_then(parse_f64)?,
        area: field("area").and_then(parse_f64)?,
        phi_sum: field("phi_sum").and_then(parse_f64)?,
        gamma: field("gamma").and_then(parse_f64)?,
        phi,
        alpha,
        beta,
        lassak_upper: field("lassak_upper").and_then(parse_f64)?,
        diam_upper: field("diam_upper").and_then(parse_f64)?,
        circ_upper: field("circ_upper").and_then(parse_f64)?,
        jung_upper: field("jung_upper").and_then(parse_f64)?,
        ratio_diam_width: field("ratio_diam_width").and_then(parse_f64)?,
        ratio_circ_width: field("ratio_circ_width").and_then(parse_f64)?,
        checks,
    })
}

pub fn sweep_to_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("plain data serializes");
    s.push('\n');
    s
}

const SWEEP_COLUMNS: &str = "index,seed,converged,error,perimeter,diameter,circumradius,phi_sum,\
perimeter_ratio,diameter_ratio,circumradius_ratio";

/// Sweep report as CSV: a `# key=value` reproduction block followed by
/// one row per sample.
pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::new();
    let mut meta = |k: &str, v: String| out.push_str(&format!("# {k}={v}\n"));
    meta("metric", report.metric.as_str().to_string());
    meta("n", report.n.to_string());
    meta("width", fmt_f64(report.width));
    meta("samples", report.samples.to_string());
    meta("seed", report.seed.to_string());
    meta("scale", fmt_f64(report.scale));
    meta("baseline_perimeter", fmt_f64(report.baseline.perimeter));
    meta("baseline_diameter", fmt_f64(report.baseline.diameter));
    meta(
        "baseline_circumradius",
        fmt_f64(report.baseline.circumradius),
    );
    meta("baseline_phi_sum", fmt_f64(report.baseline.phi_sum));
    meta("counterexample", report.counterexample.to_string());
    out.push_str(SWEEP_COLUMNS);
    out.push('\n');
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for r in &report.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.index,
            r.seed,
            r.converged,
            r.error.as_deref().unwrap_or("").replace(',', ";"),
            opt(r.perimeter),
            opt(r.diameter),
            opt(r.circumradius),
            opt(r.phi_sum),
            opt(r.perimeter_ratio),
            opt(r.diameter_ratio),
            opt(r.circumradius_ratio),
        ));
    }
    out
}

/// Parse a sweep CSV produced by [`sweep_to_csv`], restoring the full
/// report (summary statistics are recomputed from the rows).
pub fn sweep_from_csv(text: &str) -> Result<SweepReport, IoError> {
    let mut meta = std::collections::BTreeMap::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| IoError::Csv(format!("bad meta line {line:?}")))?;
            meta.insert(k.to_string(), v.to_string());
        } else if !seen_header {
            if line != SWEEP_COLUMNS {
                return Err(IoError::Csv(format!("unexpected header {line:?}")));
            }
            seen_header = true;
        } else {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(IoError::Csv(format!("expected 11 fields, got {}", f.len())));
            }
            rows.push(SampleRecord {
                index: f[0]
                    .parse()
                    .map_err(|e| IoError::Csv(format!("bad index: {e}")))?,
                seed: f[1]
                    .parse()
                    .map_err(|e| IoError::Csv(format!("bad seed: {e}")))?,
                converged: parse_bool(f[2])?,
                error: if f[3].is_empty() {
                    None
                } else {
                    Some(f[3].to_string())
                },
                perimeter: parse_opt_f64(f[4])?,
                diameter: parse_opt_f64(f[5])?,
                circumradius: parse_opt_f64(f[6])?,
                phi_sum: parse_opt_f64(f[7])?,
                perimeter_ratio: parse_opt_f64(f[8])?,
                diameter_ratio: parse_opt_f64(f[9])?,
                circumradius_ratio: parse_opt_f64(f[10])?,
            });
        }
    }
    let get = |k: &str| -> Result<&String, IoError> {
        meta.get(k)
            .ok_or_else(|| IoError::Csv(format!("missing meta key {k}")))
    };
    let metric = match get("metric")?.as_str() {
        "perimeter" => SweepMetric::Perimeter,
        "diameter-circumradius" => SweepMetric::DiameterCircumradius,
        other => return Err(IoError::Csv(format!("unknown metric {other:?}"))),
    };
    let baseline = SweepBaseline {
        perimeter: parse_f64(get("baseline_perimeter")?)?,
        diameter: parse_f64(get("baseline_diameter")?)?,
        circumradius: parse_f64(get("baseline_circumradius")?)?,
        phi_sum: parse_f64(get("baseline_phi_sum")?)?,
    };
    let valid_count = rows.iter().filter(|r| r.converged).count();
    let fold = |get: fn(&SampleRecord) -> Option<f64>, max: bool| -> Option<f64> {
        let it = rows.iter().filter_map(get);
        if max {
            it.fold(None, |a: Option<f64>, x| Some(a.map_or(x, |v| v.max(x))))
        } else {
            it.fold(None, |a: Option<f64>, x| Some(a.map_or(x, |v| v.min(x))))
        }
    };
    let margin = crate::explorer::COUNTEREXAMPLE_MARGIN;
    let counterexample_indices: Vec<usize> = rows
        .iter()
        .filter(|r| {
            r.converged
                && match metric {
                    SweepMetric::Perimeter => r
                        .perimeter
                        .is_some_and(|p| p > baseline.perimeter + margin),
                    SweepMetric::DiameterCircumradius => {
                        r.diameter.is_some_and(|d| d > baseline.diameter + margin)
                            || r.circumradius
                                .is_some_and(|c| c > baseline.circumradius + margin)
                    }
                }
        })
        .map(|r| r.index)
        .collect();
    Ok(SweepReport {
        metric,
        n: get("n")?
            .parse()
            .map_err(|e| IoError::Csv(format!("bad n: {e}")))?,
        width: parse_f64(get("width")?)?,
        samples: get("samples")?
            .parse()
            .map_err(|e| IoError::Csv(format!("bad samples: {e}")))?,
        seed: get("seed")?
            .parse()
            .map_err(|e| IoError::Csv(format!("bad seed: {e}")))?,
        scale: parse_f64(get("scale")?)?,
        baseline,
        valid_count,
        skipped_count: rows.len() - valid_count,
        max_perimeter_ratio: fold(|r| r.perimeter_ratio, true),
        min_diameter_ratio: fold(|r| r.diameter_ratio, false),
        max_diameter_ratio: fold(|r| r.diameter_ratio, true),
        min_circumradius_ratio: fold(|r| r.circumradius_ratio, false),
        max_circumradius_ratio: fold(|r| r.circumradius_ratio, true),
        counterexample: !counterexample_indices.is_empty(),
        counterexample_indices,
        records: rows,
    })
}

pub fn scan_to_json(table: &ScanTable) -> String {
    let mut s = serde_json::to_string_pretty(table).expect("plain data serializes");
    s.push('\n');
    s
}

/// Scan table as CSV with the n-gon list in the comment block.
pub fn scan_to_csv(table: &ScanTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# ns={}\n",
        table
            .ns
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(";")
    ));
    if let Some((lo, hi)) = table.triangle_circle_crossover {
        out.push_str(&format!(
            "# triangle_circle_crossover={};{}\n",
            fmt_f64(lo),
            fmt_f64(hi)
        ));
    }
    let mut header = vec!["width".to_string(), "circle".to_string()];
    for n in &table.ns {
        header.push(format!("perim_n{n}"));
    }
    header.push("triangle_exceeds_circle".into());
    header.push("nonmonotone_in_n".into());
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut fields = vec![fmt_f64(row.width), fmt_f64(row.circle)];
        fields.extend(row.ngon.iter().map(|v| fmt_f64(*v)));
        fields.push(row.triangle_exceeds_circle.to_string());
        fields.push(row.nonmonotone_in_n.to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Parse a scan CSV produced by [`scan_to_csv`].
pub fn scan_from_csv(text: &str) -> Result<ScanTable, IoError> {
    let mut ns: Vec<usize> = Vec::new();
    let mut crossover = None;
    let mut rows = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ns=") {
            ns = rest
                .split(';')
                .map(|s| s.parse().map_err(|e| IoError::Csv(format!("bad n: {e}"))))
                .collect::<Result<_, _>>()?;
        } else if let Some(rest) = line.strip_prefix("# triangle_circle_crossover=") {
            let (lo, hi) = rest
                .split_once(';')
                .ok_or_else(|| IoError::Csv("bad crossover".into()))?;
            crossover = Some((parse_f64(lo)?, parse_f64(hi)?));
        } else if !seen_header {
            seen_header = true;
        } else {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != ns.len() + 4 {
                return Err(IoError::Csv(format!(
                    "expected {} fields, got {}",
                    ns.len() + 4,
                    f.len()
                )));
            }
            rows.push(ScanRow {
                width: parse_f64(f[0])?,
                circle: parse_f64(f[1])?,
                ngon: f[2..2 + ns.len()]
                    .iter()
                    .map(|s| parse_f64(s))
                    .collect::<Result<_, _>>()?,
                triangle_exceeds_circle: parse_bool(f[2 + ns.len()])?,
                nonmonotone_in_n: parse_bool(f[3 + ns.len()])?,
            });
        }
    }
    Ok(ScanTable {
        ns,
        rows,
        triangle_circle_crossover: crossover,
    })
}

/// Butterfly data of a validated polygon in wire form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ButterflyJson {
    pub index: usize,
    pub opposite: usize,
    pub crossing: [f64; 2],
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub leg_b: f64,
    pub leg_c: f64,
}

pub fn butterflies_to_json(p: &OrdinaryReducedPolygon) -> String {
    let data: Vec<ButterflyJson> = p
        .butterflies()
        .iter()
        .map(|b| {
            let (x, y) = b.crossing.poincare();
            ButterflyJson {
                index: b.index,
                opposite: b.opposite,
                crossing: [x, y],
                phi: b.phi,
                alpha: b.alpha,
                beta: b.beta,
                leg_b: b.leg_b,
                leg_c: b.leg_c,
            }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&data).expect("plain data serializes");
    s.push('\n');
    s
}
