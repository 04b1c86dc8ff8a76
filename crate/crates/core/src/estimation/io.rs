//! On-disk formats for calibration tables, count tables and estimates.
//!
//! * Calibration: CSV `theta1_deg,theta2_deg,p_DH,p_DV,p_AH,p_AV`, one row
//!   per node with `theta2` varying fastest, plus a TOML sidecar holding
//!   `K`, `shots_per_node`, `model`, `seed` and the optics parameters.
//! * Counts: JSON `{theta1_deg?, theta2_deg?, K, shots, counts: {DH, DV, AH,
//!   AV}, seed?}`.
//! * Estimates: JSON with angles in degrees and covariance in rad².

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::bootstrap::BootstrapResult;
use super::calibration::{CalibrationSource, CalibrationTable};
use super::estimator::{EstimateResult, Objective};
use super::sampling::CountTable;
use crate::error::{Error, Result};
use crate::optics::PpbsModel;
use crate::protocol::PhasePair;

pub const CALIBRATION_HEADER: [&str; 6] =
    ["theta1_deg", "theta2_deg", "p_DH", "p_DV", "p_AH", "p_AV"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationMeta {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shots_per_node: Option<u64>,
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optics: Option<PpbsModel>,
}

impl CalibrationMeta {
    pub fn of(table: &CalibrationTable) -> Self {
        Self {
            k: table.strength,
            shots_per_node: table.shots_per_node,
            model: table.source.name().to_string(),
            seed: table.seed,
            optics: match table.source {
                CalibrationSource::Optics(m) => Some(m),
                CalibrationSource::Ideal => None,
            },
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.line() as usize);
    Error::schema(path, row, "", e.to_string())
}

/// Degrees rounded to 1e-9 so that grid nodes print as typed.
fn degrees(rad: f64) -> f64 {
    (rad.to_degrees() * 1e9).round() / 1e9
}

/// Shortest round-trip text for a float: scientific below 1e-4, `inf` for
/// infinities, no negative zero.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn calibration_csv(table: &CalibrationTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(CALIBRATION_HEADER).map_err(err)?;
    for (i, t1) in table.grid1.iter().enumerate() {
        for (j, t2) in table.grid2.iter().enumerate() {
            let p = table.node(i, j);
            let row = [degrees(*t1), degrees(*t2), p[0], p[1], p[2], p[3]];
            w.write_record(row.iter().map(|&v| format_number(v)))
                .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_calibration(
    table: &CalibrationTable,
    csv_path: &Path,
    meta_path: &Path,
) -> Result<()> {
    write_file(csv_path, &calibration_csv(table)?)?;
    let meta =
        toml::to_string(&CalibrationMeta::of(table)).map_err(|e| Error::Config(e.to_string()))?;
    write_file(meta_path, &meta)
}

pub fn read_calibration(csv_path: &Path, meta_path: &Path) -> Result<CalibrationTable> {
    let meta: CalibrationMeta = toml::from_str(&read_file(meta_path)?)
        .map_err(|e| Error::schema(meta_path, 0, "", e.to_string()))?;
    let source = match (meta.model.as_str(), meta.optics) {
        ("ideal", _) => CalibrationSource::Ideal,
        ("optics", Some(m)) => CalibrationSource::Optics(m),
        ("optics", None) => {
            return Err(Error::schema(
                meta_path,
                0,
                "optics",
                "optics model parameters missing",
            ))
        }
        (other, _) => {
            return Err(Error::schema(
                meta_path,
                0,
                "model",
                format!("unknown model `{other}`"),
            ))
        }
    };
    if !(0.0..=1.0).contains(&meta.k) {
        return Err(Error::schema(
            meta_path,
            0,
            "K",
            format!("{} outside [0, 1]", meta.k),
        ));
    }

    let text = read_file(csv_path)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| csv_error(csv_path, e))?
        .clone();
    for (i, want) in CALIBRATION_HEADER.iter().enumerate() {
        if header.get(i) != Some(*want) || header.len() != CALIBRATION_HEADER.len() {
            return Err(Error::schema(
                csv_path,
                1,
                *want,
                format!("expected header `{}`", CALIBRATION_HEADER.join(",")),
            ));
        }
    }
    let mut rows: Vec<[f64; 6]> = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row_no = idx + 2;
        let record = record.map_err(|e| csv_error(csv_path, e))?;
        let mut vals = [0.0; 6];
        for (k, field) in CALIBRATION_HEADER.iter().enumerate() {
            let raw = record.get(k).unwrap_or("");
            vals[k] = raw.trim().parse::<f64>().map_err(|_| {
                Error::schema(csv_path, row_no, *field, format!("`{raw}` is not a number"))
            })?;
            if !vals[k].is_finite() {
                return Err(Error::schema(csv_path, row_no, *field, "not finite"));
            }
        }
        for (k, v) in vals[2..].iter().enumerate() {
            if *v < 0.0 {
                return Err(Error::schema(
                    csv_path,
                    row_no,
                    CALIBRATION_HEADER[k + 2],
                    "negative probability",
                ));
            }
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(Error::schema(csv_path, 2, "", "no calibration rows"));
    }

    // theta2 varies fastest; its axis is the run of rows sharing the first theta1.
    let n2 = rows.iter().take_while(|r| r[0] == rows[0][0]).count();
    if rows.len() % n2 != 0 {
        return Err(Error::schema(
            csv_path,
            rows.len() + 1,
            "theta2_deg",
            "rows do not form a full grid",
        ));
    }
    let n1 = rows.len() / n2;
    let grid2: Vec<f64> = rows[..n2].iter().map(|r| r[1]).collect();
    let grid1: Vec<f64> = (0..n1).map(|i| rows[i * n2][0]).collect();
    for (idx, r) in rows.iter().enumerate() {
        let (i, j) = (idx / n2, idx % n2);
        if r[0] != grid1[i] {
            return Err(Error::schema(
                csv_path,
                idx + 2,
                "theta1_deg",
                "rows do not form a full grid",
            ));
        }
        if r[1] != grid2[j] {
            return Err(Error::schema(
                csv_path,
                idx + 2,
                "theta2_deg",
                "rows do not form a full grid",
            ));
        }
    }
    for (name, axis) in [("theta1_deg", &grid1), ("theta2_deg", &grid2)] {
        if axis.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::schema(
                csv_path,
                2,
                name,
                "grid not strictly increasing",
            ));
        }
    }
    let mut probs = Vec::with_capacity(rows.len());
    for (idx, r) in rows.iter().enumerate() {
        let p = [r[2], r[3], r[4], r[5]];
        if p.iter().any(|&x| x < 0.0) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-6 {
            return Err(Error::schema(
                csv_path,
                idx + 2,
                "p_DH",
                "probabilities must be non-negative and sum to 1",
            ));
        }
        probs.push(p);
    }
    Ok(CalibrationTable {
        grid1: grid1.iter().map(|d| d.to_radians()).collect(),
        grid2: grid2.iter().map(|d| d.to_radians()).collect(),
        probs,
        shots_per_node: meta.shots_per_node,
        strength: meta.k,
        source,
        seed: meta.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomeCounts {
    #[serde(rename = "DH")]
    dh: u64,
    #[serde(rename = "DV")]
    dv: u64,
    #[serde(rename = "AH")]
    ah: u64,
    #[serde(rename = "AV")]
    av: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theta1_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theta2_deg: Option<f64>,
    #[serde(rename = "K")]
    k: f64,
    shots: u64,
    counts: OutcomeCounts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    seed: Option<u64>,
}

pub fn counts_json(table: &CountTable) -> String {
    let truth = table.truth.map(|p| p.to_degrees());
    let c = table.counts;
    let record = CountRecord {
        theta1_deg: truth.map(|t| t.0),
        theta2_deg: truth.map(|t| t.1),
        k: table.strength,
        shots: table.shots(),
        counts: OutcomeCounts {
            dh: c[0],
            dv: c[1],
            ah: c[2],
            av: c[3],
        },
        seed: table.seed,
    };
    let mut s = serde_json::to_string_pretty(&record).expect("plain record serializes");
    s.push('\n');
    s
}

pub fn write_counts(table: &CountTable, path: &Path) -> Result<()> {
    write_file(path, &counts_json(table))
}

pub fn read_counts(path: &Path) -> Result<CountTable> {
    let text = read_file(path)?;
    let record: CountRecord = serde_json::from_str(&text)
        .map_err(|e| Error::schema(path, e.line(), "", e.to_string()))?;
    let c = &record.counts;
    let counts = [c.dh, c.dv, c.ah, c.av];
    if counts.iter().sum::<u64>() != record.shots {
        return Err(Error::schema(
            path,
            0,
            "shots",
            "does not equal the sum of counts",
        ));
    }
    if !(0.0..=1.0).contains(&record.k) {
        return Err(Error::schema(
            path,
            0,
            "K",
            format!("{} outside [0, 1]", record.k),
        ));
    }
    let truth = match (record.theta1_deg, record.theta2_deg) {
        (Some(a), Some(b)) => Some(
            PhasePair::from_degrees(a, b)
                .map_err(|e| Error::schema(path, 0, "theta1_deg", e.to_string()))?,
        ),
        (None, None) => None,
        _ => {
            return Err(Error::schema(
                path,
                0,
                "theta2_deg",
                "truth needs both angles",
            ))
        }
    };
    Ok(CountTable {
        counts,
        strength: record.k,
        truth,
        seed: record.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub covariance_rad2: Option<[[f64; 2]; 2]>,
    pub objective: Objective,
    pub objective_value: f64,
    pub degenerate: bool,
    pub bootstrap_replicas: usize,
}

impl EstimateRecord {
    pub fn new(result: &EstimateResult, objective: Objective) -> Self {
        let (a, b) = result.phases().to_degrees();
        Self {
            theta1_deg: a,
            theta2_deg: b,
            covariance_rad2: result.covariance,
            objective,
            objective_value: result.objective_value,
            degenerate: result.degenerate,
            bootstrap_replicas: result.bootstrap_replicas,
        }
    }
}

pub fn estimate_json(result: &EstimateResult, objective: Objective) -> String {
    let mut s = serde_json::to_string_pretty(&EstimateRecord::new(result, objective))
        .expect("plain record serializes");
    s.push('\n');
    s
}

pub fn read_estimate(path: &Path) -> Result<EstimateRecord> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::schema(path, e.line(), "", e.to_string()))
}

/// `replica,DH,DV,AH,AV,theta1_deg,theta2_deg`.
pub fn replicas_csv(boot: &BootstrapResult) -> String {
    let mut out = String::from("replica,DH,DV,AH,AV,theta1_deg,theta2_deg\n");
    for (r, (c, p)) in boot.counts.iter().zip(boot.estimates.iter()).enumerate() {
        let (a, b) = p.to_degrees();
        let (a, b) = (format_number(a), format_number(b));
        out.push_str(&format!(
            "{r},{},{},{},{},{a},{b}\n",
            c[0], c[1], c[2], c[3]
        ));
    }
    out
}
