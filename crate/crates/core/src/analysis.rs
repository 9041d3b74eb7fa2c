//! Response evaluation and quality metrics.
//!
//! All ratios are reported in dB. Filter ratios compare the mean passband
//! magnitude with the mean stopband magnitude; beamformer ratios compare the
//! mean look-direction magnitude with the peak sidelobe magnitude. Worst-case
//! variants and the overall response peak are reported alongside.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::beam::{steering_vector, ArraySpec, BeamProblem};
use crate::error::{Error, Result};
use crate::fir::FilterProblem;
use crate::grid::{merge_points, uniform_grid};

/// Magnitudes below this are clamped before conversion to dB.
pub const MAGNITUDE_FLOOR: f64 = 1e-12;

/// Evaluation grids are this many times denser than the design grids.
pub const EVAL_OVERSAMPLING: usize = 4;

const COVERAGE_TOLERANCE: f64 = 1e-9;

pub fn to_db(magnitude: f64) -> f64 {
    20.0 * magnitude.max(MAGNITUDE_FLOOR).log10()
}

/// Complex response sampled on a frequency axis and, for beamformers, an
/// angle axis. Values are frequency-major: `values[f * n_angles + a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseGrid {
    pub freqs: Vec<f64>,
    pub angles: Option<Vec<f64>>,
    pub values: Vec<Complex64>,
}

impl ResponseGrid {
    pub fn angle_count(&self) -> usize {
        self.angles.as_ref().map_or(1, Vec::len)
    }

    pub fn value(&self, freq_index: usize, angle_index: usize) -> Complex64 {
        self.values[freq_index * self.angle_count() + angle_index]
    }

    /// Largest magnitude on the grid, in dB.
    pub fn peak_db(&self) -> f64 {
        to_db(self.values.iter().map(|v| v.norm()).fold(0.0, f64::max))
    }
}

/// `W(e^{j omega}) = sum_n w_n e^{-j n omega}` at one frequency.
pub fn filter_response_at(w: &[f64], omega: f64) -> Complex64 {
    w.iter()
        .enumerate()
        .map(|(n, &c)| c * Complex64::from_polar(1.0, -(n as f64) * omega))
        .sum()
}

pub fn filter_response(w: &[f64], grid: &[f64]) -> ResponseGrid {
    ResponseGrid {
        freqs: grid.to_vec(),
        angles: None,
        values: grid
            .iter()
            .map(|&omega| filter_response_at(w, omega))
            .collect(),
    }
}

/// `P(omega, theta) = sum_i w_i d_i(omega, theta)` at one point.
pub fn beam_response_at(
    w: &[f64],
    omega: f64,
    theta_deg: f64,
    array: &ArraySpec,
) -> Result<Complex64> {
    if w.len() != array.len() {
        return Err(Error::Dimension(format!(
            "{} weights for an array with {} coefficients",
            w.len(),
            array.len()
        )));
    }
    Ok(steering_vector(omega, theta_deg, array)
        .iter()
        .zip(w)
        .map(|(d, &c)| d * c)
        .sum())
}

pub fn beam_pattern(
    w: &[f64],
    freqs: &[f64],
    angles: &[f64],
    array: &ArraySpec,
) -> Result<ResponseGrid> {
    let mut values = Vec::with_capacity(freqs.len() * angles.len());
    for &omega in freqs {
        for &theta in angles {
            values.push(beam_response_at(w, omega, theta, array)?);
        }
    }
    Ok(ResponseGrid {
        freqs: freqs.to_vec(),
        angles: Some(angles.to_vec()),
        values,
    })
}

/// Dense `[0, pi]` grid for evaluating a filter, with band edges, the
/// reference frequency and any nulls inserted.
pub fn filter_eval_grid(p: &FilterProblem) -> Vec<f64> {
    let count = EVAL_OVERSAMPLING * (p.grid_points() - 1) + 1;
    let base = uniform_grid(0.0, PI, count).expect("validated grid size");
    let mut extra: Vec<f64> = p.bands().iter().flat_map(|b| [b.lo, b.hi]).collect();
    extra.push(p.omega_r());
    extra.extend_from_slice(p.nulls());
    merge_points(&base, &extra)
}

/// Dense frequency (over the passband) and angle (over `[-90, 90]`) grids
/// for evaluating a beamformer.
pub fn beam_eval_grid(p: &BeamProblem) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = p.omega_pb();
    let fcount = EVAL_OVERSAMPLING * (p.freq_points() - 1) + 1;
    let freqs = merge_points(
        &uniform_grid(lo, hi, fcount).expect("validated"),
        &[p.omega_r()],
    );
    let acount = EVAL_OVERSAMPLING * (p.angle_points() - 1) + 1;
    let mut extra = vec![p.theta0(), p.theta_r()];
    extra.extend(p.sidelobes().iter().flat_map(|&(a, b)| [a, b]));
    let angles = merge_points(
        &uniform_grid(-90.0, 90.0, acount).expect("validated"),
        &extra,
    );
    (freqs, angles)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterMetrics {
    pub passband_mean_db: f64,
    pub passband_min_db: f64,
    pub passband_max_db: f64,
    pub passband_ripple_db: f64,
    pub stopband_mean_db: f64,
    pub stopband_peak_db: f64,
    /// `passband_mean_db - stopband_mean_db`.
    pub pb_sb_ratio_db: f64,
    /// `passband_min_db - stopband_peak_db`.
    pub pb_sb_worst_ratio_db: f64,
    pub response_peak_db: f64,
    pub group_delay_samples: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamMetrics {
    pub look_mean_db: f64,
    pub look_min_db: f64,
    pub look_max_db: f64,
    pub look_ripple_db: f64,
    pub sidelobe_mean_db: f64,
    pub sidelobe_peak_db: f64,
    /// `look_mean_db - sidelobe_peak_db`.
    pub look_sl_ratio_db: f64,
    pub response_peak_db: f64,
    pub group_delay_samples: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricsReport {
    Filter(FilterMetrics),
    Beam(BeamMetrics),
}

struct Summary {
    mean_db: f64,
    min_db: f64,
    max_db: f64,
}

fn summarize(magnitudes: &[f64]) -> Summary {
    let mean = magnitudes.iter().sum::<f64>() / magnitudes.len() as f64;
    let (lo, hi) = magnitudes
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &m| {
            (lo.min(m), hi.max(m))
        });
    Summary {
        mean_db: to_db(mean),
        min_db: to_db(lo),
        max_db: to_db(hi),
    }
}

/// Least-squares slope of the unwrapped phase, negated: the group delay in
/// samples. Each segment is unwrapped on its own and gets its own intercept.
pub fn group_delay(segments: &[Vec<(f64, Complex64)>]) -> Option<f64> {
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for seg in segments {
        if seg.len() < 2 {
            continue;
        }
        let phase = unwrap(&seg.iter().map(|(_, v)| v.arg()).collect::<Vec<_>>());
        let n = seg.len() as f64;
        let xm = seg.iter().map(|(x, _)| x).sum::<f64>() / n;
        let ym = phase.iter().sum::<f64>() / n;
        for ((x, _), y) in seg.iter().zip(&phase) {
            sxy += (x - xm) * (y - ym);
            sxx += (x - xm) * (x - xm);
        }
    }
    (sxx > 0.0).then(|| -sxy / sxx)
}

fn unwrap(phase: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phase.len());
    let mut offset = 0.0;
    for (k, &p) in phase.iter().enumerate() {
        if k > 0 {
            let step = p - phase[k - 1];
            offset -= 2.0 * PI * ((step + PI) / (2.0 * PI)).floor();
        }
        out.push(p + offset);
    }
    out
}

fn in_range(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo - COVERAGE_TOLERANCE && x <= hi + COVERAGE_TOLERANCE
}

pub fn band_metrics(r: &ResponseGrid, p: &FilterProblem) -> Result<FilterMetrics> {
    if r.angles.is_some() {
        return Err(Error::Dimension(
            "filter metrics need a one-dimensional grid".into(),
        ));
    }
    let mut pass = Vec::new();
    let mut stop = Vec::new();
    let mut segments = Vec::new();
    for band in p.bands() {
        let samples: Vec<(f64, Complex64)> = r
            .freqs
            .iter()
            .zip(&r.values)
            .filter(|(&x, _)| in_range(x, band.lo, band.hi))
            .map(|(&x, &v)| (x, v))
            .collect();
        if samples.is_empty() {
            return Err(Error::Coverage(format!(
                "band [{:.4}pi, {:.4}pi]",
                band.lo / PI,
                band.hi / PI
            )));
        }
        match band.kind {
            crate::fir::BandKind::Passband => {
                pass.extend(samples.iter().map(|(_, v)| v.norm()));
                segments.push(samples);
            }
            crate::fir::BandKind::Stopband => stop.extend(samples.iter().map(|(_, v)| v.norm())),
        }
    }
    let ps = summarize(&pass);
    let ss = summarize(&stop);
    Ok(FilterMetrics {
        passband_mean_db: ps.mean_db,
        passband_min_db: ps.min_db,
        passband_max_db: ps.max_db,
        passband_ripple_db: ps.max_db - ps.min_db,
        stopband_mean_db: ss.mean_db,
        stopband_peak_db: ss.max_db,
        pb_sb_ratio_db: ps.mean_db - ss.mean_db,
        pb_sb_worst_ratio_db: ps.min_db - ss.max_db,
        response_peak_db: r.peak_db(),
        group_delay_samples: group_delay(&segments),
    })
}

pub fn beam_metrics(r: &ResponseGrid, p: &BeamProblem) -> Result<BeamMetrics> {
    let angles = r
        .angles
        .as_ref()
        .ok_or_else(|| Error::Dimension("beam metrics need an angle axis".into()))?;
    let (lo, hi) = p.omega_pb();
    let freq_idx: Vec<usize> = (0..r.freqs.len())
        .filter(|&i| in_range(r.freqs[i], lo, hi))
        .collect();
    if freq_idx.is_empty() {
        return Err(Error::Coverage("passband frequencies".into()));
    }
    let look = angles
        .iter()
        .position(|&a| (a - p.theta0()).abs() <= COVERAGE_TOLERANCE)
        .ok_or_else(|| Error::Coverage(format!("look direction {} deg", p.theta0())))?;

    let look_samples: Vec<(f64, Complex64)> = freq_idx
        .iter()
        .map(|&i| (r.freqs[i], r.value(i, look)))
        .collect();
    let look_mag: Vec<f64> = look_samples.iter().map(|(_, v)| v.norm()).collect();

    let mut side = Vec::new();
    for &(a, b) in p.sidelobes() {
        let cols: Vec<usize> = (0..angles.len())
            .filter(|&j| in_range(angles[j], a, b))
            .collect();
        if cols.is_empty() {
            return Err(Error::Coverage(format!("sidelobe region [{a}, {b}] deg")));
        }
        for &i in &freq_idx {
            side.extend(cols.iter().map(|&j| r.value(i, j).norm()));
        }
    }
    let ls = summarize(&look_mag);
    let ss = summarize(&side);
    Ok(BeamMetrics {
        look_mean_db: ls.mean_db,
        look_min_db: ls.min_db,
        look_max_db: ls.max_db,
        look_ripple_db: ls.max_db - ls.min_db,
        sidelobe_mean_db: ss.mean_db,
        sidelobe_peak_db: ss.max_db,
        look_sl_ratio_db: ls.mean_db - ss.max_db,
        response_peak_db: r.peak_db(),
        group_delay_samples: group_delay(&[look_samples]),
    })
}
