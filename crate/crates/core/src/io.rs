//! File formats: the sample CSV schema, curve specification JSON, and the
//! classification/duality report structures.
//!
//! CSV numbers are written with 17 significant digits so identical runs
//! produce byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, SampledCurve, Vec3};
use crate::cylinder::circular_normal_helix;
use crate::error::{Error, Result};
use crate::frenet::FrenetSample;

/// Core CSV columns for Frenet sample series.
pub const SAMPLE_HEADERS: [&str; 18] = [
    "s", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau",
    "Dx", "Dy", "Dz",
];

/// Full-precision decimal formatting (17 significant digits).
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A sample table: the 18 core columns plus optional named extras.
#[derive(Debug, Clone, Default)]
pub struct SampleTable {
    pub samples: Vec<FrenetSample>,
    /// Extra columns in insertion order (e.g. Wx/Wy/Wz, surface coords).
    pub extras: Vec<(String, Vec<f64>)>,
}

impl SampleTable {
    pub fn new(samples: Vec<FrenetSample>) -> Self {
        Self { samples, extras: Vec::new() }
    }

    pub fn with_column(mut self, name: &str, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.samples.len(), "column length mismatch");
        self.extras.push((name.to_string(), values));
        self
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut headers: Vec<&str> = SAMPLE_HEADERS.to_vec();
        for (name, _) in &self.extras {
            headers.push(name);
        }
        writeln!(out, "{}", headers.join(","))?;
        for (i, x) in self.samples.iter().enumerate() {
            let mut fields = vec![
                fmt_g17(x.s),
                fmt_g17(x.position.x),
                fmt_g17(x.position.y),
                fmt_g17(x.position.z),
                fmt_g17(x.tangent.x),
                fmt_g17(x.tangent.y),
                fmt_g17(x.tangent.z),
                fmt_g17(x.normal.x),
                fmt_g17(x.normal.y),
                fmt_g17(x.normal.z),
                fmt_g17(x.binormal.x),
                fmt_g17(x.binormal.y),
                fmt_g17(x.binormal.z),
                fmt_g17(x.kappa),
                fmt_g17(x.tau),
                fmt_g17(x.darboux.x),
                fmt_g17(x.darboux.y),
                fmt_g17(x.darboux.z),
            ];
            for (_, col) in &self.extras {
                fields.push(fmt_g17(col[i]));
            }
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Reads a sample CSV produced by this crate (or any file carrying at least
/// the core columns). Extra columns are returned by name.
pub fn read_samples_csv(path: &Path) -> Result<SampleTable> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut index = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        index.insert(n.to_string(), i);
    }
    for required in SAMPLE_HEADERS {
        if !index.contains_key(required) {
            return Err(Error::Parse(format!("missing CSV column `{required}`")));
        }
    }
    let extra_names: Vec<String> = names
        .iter()
        .filter(|n| !SAMPLE_HEADERS.contains(&n.trim()))
        .map(|n| n.to_string())
        .collect();

    let mut samples = Vec::new();
    let mut extras: Vec<(String, Vec<f64>)> =
        extra_names.iter().map(|n| (n.clone(), Vec::new())).collect();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != names.len() {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, got {}",
                lineno + 2,
                names.len(),
                fields.len()
            )));
        }
        let get = |name: &str| -> Result<f64> {
            fields[index[name]]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))
        };
        samples.push(FrenetSample {
            s: get("s")?,
            position: Vec3::new(get("x")?, get("y")?, get("z")?),
            tangent: Vec3::new(get("Tx")?, get("Ty")?, get("Tz")?),
            normal: Vec3::new(get("Nx")?, get("Ny")?, get("Nz")?),
            binormal: Vec3::new(get("Bx")?, get("By")?, get("Bz")?),
            kappa: get("kappa")?,
            tau: get("tau")?,
            darboux: Vec3::new(get("Dx")?, get("Dy")?, get("Dz")?),
        });
        for (name, col) in &mut extras {
            col.push(get(name)?);
        }
    }
    Ok(SampleTable { samples, extras })
}

/// Curve specification file: either a named analytic curve with parameters
/// or a list of (t, x, y, z) samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    /// "analytic" or "samples".
    pub kind: String,
    pub name: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

fn param_f64(params: &serde_json::Value, key: &str) -> Result<f64> {
    params
        .get(key)
        .and_then(|v| v.as_f64())
        .ok_or_else(|| Error::InvalidInput(format!("curve spec: missing numeric param `{key}`")))
}

fn param_range(params: &serde_json::Value, key: &str, default: (f64, f64)) -> Result<(f64, f64)> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidInput(format!("`{key}` must be [lo, hi]")))?;
            let lo = arr[0].as_f64().ok_or_else(|| Error::InvalidInput(format!("bad `{key}`")))?;
            let hi = arr[1].as_f64().ok_or_else(|| Error::InvalidInput(format!("bad `{key}`")))?;
            Ok((lo, hi))
        }
    }
}

/// Instantiates a curve model from a specification.
///
/// Builtin analytic names: `circular_helix` (r, h), `circle` (radius),
/// `paper_normal_helix` (theta, t0, z0) for the closed-form normal helix on
/// the unit cylinder, and `custom_samples` (samples: [[t, x, y, z], ...]).
pub fn curve_from_spec(spec: &CurveSpec) -> Result<Arc<dyn CurveModel>> {
    let p = &spec.params;
    match spec.name.as_str() {
        "circular_helix" => {
            let r = param_f64(p, "r")?;
            let h = param_f64(p, "h")?;
            let domain = param_range(p, "t_range", (0.0, 2.0 * std::f64::consts::TAU))?;
            Ok(Arc::new(crate::curve::AnalyticCurve::circular_helix(r, h, domain)?))
        }
        "circle" => {
            let radius = param_f64(p, "radius").or_else(|_| param_f64(p, "R"))?;
            let domain = param_range(p, "t_range", (0.0, std::f64::consts::TAU))?;
            Ok(Arc::new(crate::curve::AnalyticCurve::circle(radius, domain)?))
        }
        "paper_normal_helix" => {
            let theta = param_f64(p, "theta")?;
            let t0 = param_f64(p, "t0").unwrap_or(0.0);
            let z0 = param_f64(p, "z0").unwrap_or(0.0);
            let domain = param_range(p, "t_range", (-5.0, 5.0))?;
            Ok(Arc::new(circular_normal_helix(theta, t0, z0, domain)?))
        }
        "custom_samples" => {
            let rows = p
                .get("samples")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidInput("custom_samples needs `samples`".into()))?;
            let mut samples = Vec::with_capacity(rows.len());
            for row in rows {
                let vals: Option<Vec<f64>> = row
                    .as_array()
                    .map(|a| a.iter().filter_map(|x| x.as_f64()).collect::<Vec<_>>())
                    .filter(|v| v.len() == 4);
                let v = vals.ok_or_else(|| {
                    Error::InvalidInput("each sample must be [t, x, y, z]".into())
                })?;
                samples.push((v[0], Vec3::new(v[1], v[2], v[3])));
            }
            Ok(Arc::new(SampledCurve::new(samples)?))
        }
        other => Err(Error::InvalidInput(format!("unknown curve name `{other}`"))),
    }
}

/// Classification report as written to JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ClassReportJson {
    pub class: crate::classify::HelixClass,
    pub theta: Option<f64>,
    pub abc: Option<[f64; 3]>,
    pub residual_rms: f64,
    pub axis: Option<[f64; 3]>,
    pub axis_drift: Option<f64>,
    pub stage_scores: crate::classify::StageScores,
    pub per_sample_residuals_csv: Option<String>,
}

impl ClassReportJson {
    pub fn from_report(report: &crate::classify::ClassReport, residuals_csv: Option<String>) -> Self {
        Self {
            class: report.class,
            theta: report.theta,
            abc: report.abc,
            residual_rms: report.residual_rms,
            axis: report.axis.map(|v| [v.x, v.y, v.z]),
            axis_drift: report.axis_drift,
            stage_scores: report.stage_scores.clone(),
            per_sample_residuals_csv: residuals_csv,
        }
    }
}

/// Duality report: the four residual maxima of the swap relations.
#[derive(Debug, Clone, Serialize)]
pub struct DualReportJson {
    pub tangent_residual: f64,
    pub normal_residual: f64,
    pub binormal_residual: f64,
    pub kappa_swap_residual: f64,
    pub tau_swap_residual: f64,
    pub speed_error: f64,
}

impl DualReportJson {
    pub fn from_result(result: &crate::dual::DualCurveResult) -> Self {
        Self {
            tangent_residual: result.frame_residuals[0],
            normal_residual: result.frame_residuals[1],
            binormal_residual: result.frame_residuals[2],
            kappa_swap_residual: result.swap_residuals[0],
            tau_swap_residual: result.swap_residuals[1],
            speed_error: result.speed_error,
        }
    }
}
