//! File formats written by the CLI.

use std::fs;
use std::io::Write;
use std::path::Path;

use eigenfilter::analysis::{to_db, MetricsReport, ResponseGrid};
use eigenfilter::{DesignResult, Mode};
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::{CliError, Result};
use crate::spec::Kind;

/// Contents of `weights.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    #[serde(with = "mode_name")]
    pub method: Mode,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint_residual: Option<f64>,
    pub degenerate_flag: bool,
    #[serde(default)]
    pub regularized: bool,
}

impl From<&DesignResult> for WeightsFile {
    fn from(r: &DesignResult) -> Self {
        Self {
            method: r.method,
            weights: r.weights.clone(),
            min_eigenvalue: r.min_eigenvalue,
            constraint_residual: r.constraint_residual,
            degenerate_flag: r.degenerate,
            regularized: r.regularized,
        }
    }
}

/// One flat row of metrics. Filter-only and beamformer-only columns are
/// empty for the other kind; `*_norm_db` columns are relative to the
/// response peak.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub kind: Kind,
    #[serde(with = "mode_name")]
    pub mode: Mode,
    pub passband_mean_db: Option<f64>,
    pub passband_min_db: Option<f64>,
    pub passband_max_db: Option<f64>,
    pub passband_ripple_db: Option<f64>,
    pub stopband_mean_db: Option<f64>,
    pub stopband_peak_db: Option<f64>,
    pub pb_sb_ratio_db: Option<f64>,
    pub pb_sb_worst_ratio_db: Option<f64>,
    pub look_mean_db: Option<f64>,
    pub look_min_db: Option<f64>,
    pub look_max_db: Option<f64>,
    pub look_ripple_db: Option<f64>,
    pub sidelobe_mean_db: Option<f64>,
    pub sidelobe_peak_db: Option<f64>,
    pub look_sl_ratio_db: Option<f64>,
    pub response_peak_db: f64,
    pub passband_mean_norm_db: Option<f64>,
    pub stopband_mean_norm_db: Option<f64>,
    pub look_mean_norm_db: Option<f64>,
    pub sidelobe_peak_norm_db: Option<f64>,
    pub group_delay_samples: Option<f64>,
    /// `|H(reference) - desired(reference)|`.
    pub reference_error: f64,
    pub min_eigenvalue: Option<f64>,
    pub constraint_residual: Option<f64>,
    pub degenerate_flag: bool,
    pub regularized: bool,
}

impl MetricsRecord {
    pub fn new(report: &MetricsReport, weights: &WeightsFile, reference_error: f64) -> Self {
        let mut r = Self {
            preset: None,
            kind: Kind::Filter,
            mode: weights.method,
            passband_mean_db: None,
            passband_min_db: None,
            passband_max_db: None,
            passband_ripple_db: None,
            stopband_mean_db: None,
            stopband_peak_db: None,
            pb_sb_ratio_db: None,
            pb_sb_worst_ratio_db: None,
            look_mean_db: None,
            look_min_db: None,
            look_max_db: None,
            look_ripple_db: None,
            sidelobe_mean_db: None,
            sidelobe_peak_db: None,
            look_sl_ratio_db: None,
            response_peak_db: 0.0,
            passband_mean_norm_db: None,
            stopband_mean_norm_db: None,
            look_mean_norm_db: None,
            sidelobe_peak_norm_db: None,
            group_delay_samples: None,
            reference_error,
            min_eigenvalue: weights.min_eigenvalue,
            constraint_residual: weights.constraint_residual,
            degenerate_flag: weights.degenerate_flag,
            regularized: weights.regularized,
        };
        match report {
            MetricsReport::Filter(m) => {
                r.passband_mean_db = Some(m.passband_mean_db);
                r.passband_min_db = Some(m.passband_min_db);
                r.passband_max_db = Some(m.passband_max_db);
                r.passband_ripple_db = Some(m.passband_ripple_db);
                r.stopband_mean_db = Some(m.stopband_mean_db);
                r.stopband_peak_db = Some(m.stopband_peak_db);
                r.pb_sb_ratio_db = Some(m.pb_sb_ratio_db);
                r.pb_sb_worst_ratio_db = Some(m.pb_sb_worst_ratio_db);
                r.response_peak_db = m.response_peak_db;
                r.passband_mean_norm_db = Some(m.passband_mean_db - m.response_peak_db);
                r.stopband_mean_norm_db = Some(m.stopband_mean_db - m.response_peak_db);
                r.group_delay_samples = m.group_delay_samples;
            }
            MetricsReport::Beam(m) => {
                r.kind = Kind::Beamformer;
                r.look_mean_db = Some(m.look_mean_db);
                r.look_min_db = Some(m.look_min_db);
                r.look_max_db = Some(m.look_max_db);
                r.look_ripple_db = Some(m.look_ripple_db);
                r.sidelobe_mean_db = Some(m.sidelobe_mean_db);
                r.sidelobe_peak_db = Some(m.sidelobe_peak_db);
                r.look_sl_ratio_db = Some(m.look_sl_ratio_db);
                r.response_peak_db = m.response_peak_db;
                r.look_mean_norm_db = Some(m.look_mean_db - m.response_peak_db);
                r.sidelobe_peak_norm_db = Some(m.sidelobe_peak_db - m.response_peak_db);
                r.group_delay_samples = m.group_delay_samples;
            }
        }
        r
    }

    /// JSON object without the columns that do not apply to this kind.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("plain data");
        if let serde_json::Value::Object(map) = &mut value {
            map.retain(|_, v| !v.is_null());
        }
        serde_json::to_string_pretty(&value).expect("plain data")
    }
}

mod mode_name {
    use eigenfilter::Mode;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Mode, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(m.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mode, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::io("csv", std::io::Error::other(e.to_string()))
}

/// Response grid as CSV. Filters: `omega_over_pi, magnitude_db, phase_rad`;
/// beamformers: `omega_over_pi, theta_deg, magnitude_db`, frequency-major.
pub fn response_csv(r: &ResponseGrid) -> Result<Vec<u8>> {
    let pi = std::f64::consts::PI;
    let mut w = csv_writer();
    match &r.angles {
        None => {
            w.write_record(["omega_over_pi", "magnitude_db", "phase_rad"])
                .map_err(csv_error)?;
            for (x, v) in r.freqs.iter().zip(&r.values) {
                w.serialize((x / pi, to_db(v.norm()), v.arg()))
                    .map_err(csv_error)?;
            }
        }
        Some(angles) => {
            w.write_record(["omega_over_pi", "theta_deg", "magnitude_db"])
                .map_err(csv_error)?;
            for (i, x) in r.freqs.iter().enumerate() {
                for (j, t) in angles.iter().enumerate() {
                    w.serialize((x / pi, t, to_db(r.value(i, j).norm())))
                        .map_err(csv_error)?;
                }
            }
        }
    }
    w.into_inner().map_err(csv_error)
}

pub fn summary_csv(rows: &[MetricsRecord]) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.into_inner().map_err(csv_error)
}

pub fn weights_json(w: &WeightsFile) -> String {
    let mut s = serde_json::to_string_pretty(w).expect("plain data");
    s.push('\n');
    s
}
