//! JSON design documents.
//!
//! Frequencies are written as multiples of pi (`0.35` means `0.35 pi`) and
//! angles in degrees. Unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use eigenfilter::beam::DEFAULT_MU;
use eigenfilter::fir::{Band, FilterProblem};
use eigenfilter::{ArraySpec, BeamProblem, Mode};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Filter,
    Beamformer,
}

/// Which formulations a document asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSelection {
    Unconstrained,
    Constrained,
    #[default]
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            ModeSelection::Unconstrained => &[Mode::Unconstrained],
            ModeSelection::Constrained => &[Mode::Constrained],
            ModeSelection::Both => &Mode::ALL,
        }
    }
}

/// A single `[lo, hi]` pair or a list of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Intervals {
    One([f64; 2]),
    Many(Vec<[f64; 2]>),
}

impl Intervals {
    pub fn to_vec(&self) -> Vec<[f64; 2]> {
        match self {
            Intervals::One(x) => vec![*x],
            Intervals::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSpec {
    pub kind: Kind,
    pub taps: usize,
    pub passband: Intervals,
    pub stopband: Intervals,
    pub alpha: f64,
    pub omega_r: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passband_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopband_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    /// In samples; defaults to `(taps - 1) / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_delay: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nulls: Vec<f64>,
    #[serde(default)]
    pub mode: ModeSelection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSpec {
    pub kind: Kind,
    pub sensors: usize,
    pub taps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    pub theta0: f64,
    pub omega_pb: [f64; 2],
    pub sidelobes: Intervals,
    pub omega_r: f64,
    pub theta_r: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freq_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_points: Option<usize>,
    /// In samples; defaults to `taps / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_delay: Option<f64>,
    #[serde(default)]
    pub mode: ModeSelection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DesignSpec {
    Filter(FilterSpec),
    Beam(BeamSpec),
}

/// A validated problem ready for the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Filter(FilterProblem),
    Beam(BeamProblem),
}

impl Problem {
    pub fn kind(&self) -> Kind {
        match self {
            Problem::Filter(_) => Kind::Filter,
            Problem::Beam(_) => Kind::Beamformer,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Problem::Filter(p) => p.taps(),
            Problem::Beam(p) => p.array().len(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Filter => "filter",
            Kind::Beamformer => "beamformer",
        })
    }
}

fn scale_grid(points: usize, scale: usize) -> usize {
    (points - 1) * scale + 1
}

impl FilterSpec {
    pub fn to_problem(&self, grid_scale: usize) -> eigenfilter::Result<FilterProblem> {
        let band = |[lo, hi]: [f64; 2], make: fn(f64, f64) -> Band, weight: Option<f64>| {
            let b = make(lo * PI, hi * PI);
            weight.map_or(b, |w| b.with_weight(w))
        };
        let mut bands: Vec<Band> = self
            .passband
            .to_vec()
            .into_iter()
            .map(|x| band(x, Band::passband, self.passband_weight))
            .collect();
        bands.extend(
            self.stopband
                .to_vec()
                .into_iter()
                .map(|x| band(x, Band::stopband, self.stopband_weight)),
        );
        let mut p = FilterProblem::new(self.taps, bands, self.alpha, self.omega_r * PI)?;
        let points = self.grid_points.unwrap_or(p.grid_points());
        if points < 2 {
            return p.with_grid_points(points);
        }
        p = p.with_grid_points(scale_grid(points, grid_scale))?;
        if let Some(d) = self.group_delay {
            p = p.with_group_delay(d)?;
        }
        if !self.nulls.is_empty() {
            p = p.with_nulls(self.nulls.iter().map(|z| z * PI).collect())?;
        }
        Ok(p)
    }
}

impl BeamSpec {
    pub fn to_problem(&self, grid_scale: usize) -> eigenfilter::Result<BeamProblem> {
        let array = ArraySpec::new(self.sensors, self.taps, self.mu.unwrap_or(DEFAULT_MU))?;
        let sidelobes = self
            .sidelobes
            .to_vec()
            .into_iter()
            .map(|[a, b]| (a, b))
            .collect();
        let mut p = BeamProblem::new(
            array,
            self.theta0,
            (self.omega_pb[0] * PI, self.omega_pb[1] * PI),
            sidelobes,
            (self.omega_r * PI, self.theta_r),
            self.alpha,
        )?;
        let f = self.freq_points.unwrap_or(p.freq_points());
        let a = self.angle_points.unwrap_or(p.angle_points());
        p = if f < 2 || a < 2 {
            p.with_grid(f, a)?
        } else {
            p.with_grid(scale_grid(f, grid_scale), scale_grid(a, grid_scale))?
        };
        if let Some(d) = self.group_delay {
            p = p.with_group_delay(d)?;
        }
        Ok(p)
    }
}

impl DesignSpec {
    pub fn kind(&self) -> Kind {
        match self {
            DesignSpec::Filter(_) => Kind::Filter,
            DesignSpec::Beam(_) => Kind::Beamformer,
        }
    }

    pub fn mode(&self) -> ModeSelection {
        match self {
            DesignSpec::Filter(s) => s.mode,
            DesignSpec::Beam(s) => s.mode,
        }
    }

    pub fn out(&self) -> Option<&str> {
        match self {
            DesignSpec::Filter(s) => s.out.as_deref(),
            DesignSpec::Beam(s) => s.out.as_deref(),
        }
    }

    /// Builds the problem with every grid density multiplied by `grid_scale`.
    pub fn to_problem(&self, grid_scale: usize) -> eigenfilter::Result<Problem> {
        Ok(match self {
            DesignSpec::Filter(s) => Problem::Filter(s.to_problem(grid_scale)?),
            DesignSpec::Beam(s) => Problem::Beam(s.to_problem(grid_scale)?),
        })
    }

    pub fn to_json(&self) -> String {
        match self {
            DesignSpec::Filter(s) => serde_json::to_string_pretty(s),
            DesignSpec::Beam(s) => serde_json::to_string_pretty(s),
        }
        .expect("plain data")
    }
}

#[derive(Deserialize)]
struct KindProbe {
    kind: Kind,
}

fn parse_error(e: serde_json::Error) -> CliError {
    CliError::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    }
}

impl FromStr for DesignSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self> {
        let probe: KindProbe = serde_json::from_str(text).map_err(parse_error)?;
        Ok(match probe.kind {
            Kind::Filter => DesignSpec::Filter(serde_json::from_str(text).map_err(parse_error)?),
            Kind::Beamformer => DesignSpec::Beam(serde_json::from_str(text).map_err(parse_error)?),
        })
    }
}

/// Document key that holds the value a problem field came from.
fn document_key(field: &str) -> &str {
    match field {
        "bands" => "passband",
        "input" => "kind",
        other => other,
    }
}

/// 1-based line of the first `"key"` in `text`.
fn key_line(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&needle))
        .map(|i| i + 1)
}

/// Parses and validates a design document.
pub fn parse_spec(text: &str) -> Result<(DesignSpec, Problem)> {
    parse_spec_scaled(text, 1)
}

pub fn parse_spec_scaled(text: &str, grid_scale: usize) -> Result<(DesignSpec, Problem)> {
    let spec: DesignSpec = text.parse()?;
    let problem = spec
        .to_problem(grid_scale)
        .map_err(|e| anchor(e.into(), text))?;
    Ok((spec, problem))
}

/// Attaches the document line of the offending key to a validation error.
pub fn anchor(err: CliError, text: &str) -> CliError {
    match err {
        CliError::Validation { field, message, .. } => {
            let line = key_line(text, document_key(&field));
            CliError::Validation {
                field,
                message,
                line,
            }
        }
        other => other,
    }
}
