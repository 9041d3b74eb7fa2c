//! Eigenfilter design of linear-phase FIR filters.
//!
//! The cost is `alpha * E_p + (1 - alpha) * E_s`, where `E_s` is the stopband
//! energy and `E_p` measures how far the passband response strays from the
//! response at a reference frequency `omega_r` (after compensating for the
//! linear-phase shift). Both are quadratic forms in the real tap vector.
//! Minimising the Rayleigh quotient gives the classic eigenfilter; pinning
//! `W(e^{j omega_r})` to the desired response gives the constrained design.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::design::{DesignResult, Mode};
use crate::error::{Error, Result};
use crate::grid::{uniform_grid, Quadrature};
use crate::linalg::{ConstraintSystem, OuterAccumulator, SymmetricMatrix};

/// Default number of points on the global `[0, pi]` design grid.
pub const DEFAULT_GRID_POINTS: usize = 400;

/// Constraint rows whose entries all fall below this (times the tap count)
/// are treated as identically zero and dropped.
pub const ZERO_ROW_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BandKind {
    Passband,
    Stopband,
}

/// Frequency interval `[lo, hi]` (radians, within `[0, pi]`) with its
/// weighting level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub kind: BandKind,
    pub lo: f64,
    pub hi: f64,
    pub weight: f64,
}

impl Band {
    pub fn passband(lo: f64, hi: f64) -> Self {
        Self {
            kind: BandKind::Passband,
            lo,
            hi,
            weight: 1.0,
        }
    }

    pub fn stopband(lo: f64, hi: f64) -> Self {
        Self {
            kind: BandKind::Stopband,
            lo,
            hi,
            weight: 1.0,
        }
    }

    pub fn with_weight(self, weight: f64) -> Self {
        Self { weight, ..self }
    }

    pub fn contains(&self, omega: f64) -> bool {
        omega >= self.lo && omega <= self.hi
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite())
            || self.lo < 0.0
            || self.hi > PI
            || self.lo >= self.hi
        {
            return Err(Error::spec(
                "bands",
                format!(
                    "band [{}, {}] must satisfy 0 <= lo < hi <= pi",
                    self.lo, self.hi
                ),
            ));
        }
        if !(self.weight >= 0.0 && self.weight.is_finite()) {
            return Err(Error::spec(
                "bands",
                format!(
                    "band weight must be finite and nonnegative, got {}",
                    self.weight
                ),
            ));
        }
        Ok(())
    }
}

/// Filter design problem: taps, bands, trade-off and reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterProblem {
    taps: usize,
    bands: Vec<Band>,
    alpha: f64,
    omega_r: f64,
    grid_points: usize,
    group_delay: f64,
    nulls: Vec<f64>,
}

impl FilterProblem {
    /// Validated problem with the default grid and a group delay of
    /// `(taps - 1) / 2` samples.
    pub fn new(taps: usize, bands: Vec<Band>, alpha: f64, omega_r: f64) -> Result<Self> {
        let p = Self {
            taps,
            bands,
            alpha,
            omega_r,
            grid_points: DEFAULT_GRID_POINTS,
            group_delay: taps.saturating_sub(1) as f64 / 2.0,
            nulls: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Result<Self> {
        self.grid_points = grid_points;
        self.validate()?;
        Ok(self)
    }

    pub fn with_group_delay(mut self, group_delay: f64) -> Result<Self> {
        self.group_delay = group_delay;
        self.validate()?;
        Ok(self)
    }

    /// Adds exact-zero response constraints at the given stopband
    /// frequencies (constrained mode only).
    pub fn with_nulls(mut self, nulls: Vec<f64>) -> Result<Self> {
        self.nulls = nulls;
        self.validate()?;
        Ok(self)
    }

    pub fn taps(&self) -> usize {
        self.taps
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn passbands(&self) -> impl Iterator<Item = &Band> {
        self.bands.iter().filter(|b| b.kind == BandKind::Passband)
    }

    pub fn stopbands(&self) -> impl Iterator<Item = &Band> {
        self.bands.iter().filter(|b| b.kind == BandKind::Stopband)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn group_delay(&self) -> f64 {
        self.group_delay
    }

    pub fn nulls(&self) -> &[f64] {
        &self.nulls
    }

    /// Desired passband response `e^{-j omega tau}`.
    pub fn desired(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, -omega * self.group_delay)
    }

    fn validate(&self) -> Result<()> {
        if self.taps == 0 {
            return Err(Error::spec("taps", "must be at least 1"));
        }
        for b in &self.bands {
            b.validate()?;
        }
        if self.passbands().next().is_none() {
            return Err(Error::spec("bands", "at least one passband is required"));
        }
        if self.stopbands().next().is_none() {
            return Err(Error::spec("bands", "at least one stopband is required"));
        }
        let mut sorted = self.bands.clone();
        sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for pair in sorted.windows(2) {
            if pair[1].lo <= pair[0].hi {
                return Err(Error::spec(
                    "bands",
                    format!(
                        "bands [{}, {}] and [{}, {}] overlap",
                        pair[0].lo, pair[0].hi, pair[1].lo, pair[1].hi
                    ),
                ));
            }
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::spec(
                "alpha",
                format!("{} is outside [0, 1]", self.alpha),
            ));
        }
        if !self.omega_r.is_finite()
            || self
                .passbands()
                .filter(|b| b.contains(self.omega_r))
                .count()
                != 1
        {
            return Err(Error::spec(
                "omega_r",
                format!("omega_r outside passband ({})", self.omega_r),
            ));
        }
        if self.grid_points < 2 {
            return Err(Error::spec("grid_points", "must be at least 2"));
        }
        if !self.group_delay.is_finite() {
            return Err(Error::spec("group_delay", "must be finite"));
        }
        for &z in &self.nulls {
            if !self.stopbands().any(|b| b.contains(z)) {
                return Err(Error::spec(
                    "nulls",
                    format!("{z} is not inside a stopband"),
                ));
            }
        }
        Ok(())
    }

    /// The global `[0, pi]` design grid.
    pub fn design_grid(&self) -> Vec<f64> {
        uniform_grid(0.0, PI, self.grid_points).expect("grid_points validated")
    }

    /// Trapezoidal rule for one band on the design grid.
    pub fn band_quadrature(&self, band: &Band) -> Quadrature {
        Quadrature::on_interval(&self.design_grid(), band.lo, band.hi)
    }
}

/// `c(omega) = [1, e^{-j omega}, ..., e^{-j (n-1) omega}]`.
pub fn freq_vector(omega: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, -(k as f64) * omega))
        .collect()
}

/// Adds `weight * Re[c(w) c(w)^H]` over the rule to `acc`.
pub fn stopband_term(acc: &mut OuterAccumulator, quad: &Quadrature, weight: f64) -> Result<()> {
    let n = acc.dim();
    for (&omega, &q) in quad.nodes.iter().zip(&quad.weights) {
        acc.add(&freq_vector(omega, n), weight * q)?;
    }
    Ok(())
}

/// Adds the phase-compensated difference term
/// `weight * Re[a a^H]`, `a = e^{-j tau (w - w_r)} c(w_r) - c(w)`, over the rule.
pub fn passband_term(
    acc: &mut OuterAccumulator,
    quad: &Quadrature,
    weight: f64,
    omega_r: f64,
    delay: f64,
) -> Result<()> {
    let n = acc.dim();
    let reference = freq_vector(omega_r, n);
    let mut diff = vec![Complex64::new(0.0, 0.0); n];
    for (&omega, &q) in quad.nodes.iter().zip(&quad.weights) {
        let shift = Complex64::from_polar(1.0, -delay * (omega - omega_r));
        for (k, d) in diff.iter_mut().enumerate() {
            *d = shift * reference[k] - Complex64::from_polar(1.0, -(k as f64) * omega);
        }
        acc.add(&diff, weight * q)?;
    }
    Ok(())
}

/// `P_s`: trapezoidal approximation of the weighted stopband energy matrix.
pub fn stopband_matrix(p: &FilterProblem) -> Result<SymmetricMatrix> {
    let mut acc = OuterAccumulator::new(p.taps);
    for band in p.stopbands() {
        stopband_term(&mut acc, &p.band_quadrature(band), band.weight)?;
    }
    Ok(acc.finish())
}

/// `P_p`: passband deviation matrix relative to the reference frequency.
pub fn passband_matrix(p: &FilterProblem) -> Result<SymmetricMatrix> {
    let mut acc = OuterAccumulator::new(p.taps);
    for band in p.passbands() {
        passband_term(
            &mut acc,
            &p.band_quadrature(band),
            band.weight,
            p.omega_r,
            p.group_delay,
        )?;
    }
    Ok(acc.finish())
}

/// `P = alpha P_p + (1 - alpha) P_s`.
pub fn combined_matrix(p: &FilterProblem) -> Result<SymmetricMatrix> {
    let pass = passband_matrix(p)?;
    let stop = stopband_matrix(p)?;
    if p.alpha == 1.0 {
        return Ok(pass);
    }
    if p.alpha == 0.0 {
        return Ok(stop);
    }
    SymmetricMatrix::linear_combination(p.alpha, &pass, 1.0 - p.alpha, &stop)
}

/// Real rows for one complex equality `c(omega)^T w = value`, skipping rows
/// that vanish.
fn push_complex_row(
    columns: &mut Vec<Vec<f64>>,
    values: &mut Vec<f64>,
    vector: &[Complex64],
    value: Complex64,
) {
    let zero_tol = ZERO_ROW_TOLERANCE * vector.len().max(1) as f64;
    let re: Vec<f64> = vector.iter().map(|z| z.re).collect();
    let im: Vec<f64> = vector.iter().map(|z| z.im).collect();
    for (row, v) in [(re, value.re), (im, value.im)] {
        if row.iter().any(|x| x.abs() > zero_tol) {
            columns.push(row);
            values.push(v);
        }
    }
}

/// Pins `W(e^{j omega_r})` to `e^{-j omega_r tau}`, plus any requested
/// stopband nulls.
pub fn reference_constraint(p: &FilterProblem) -> Result<ConstraintSystem> {
    let mut columns = Vec::new();
    let mut values = Vec::new();
    push_complex_row(
        &mut columns,
        &mut values,
        &freq_vector(p.omega_r, p.taps),
        p.desired(p.omega_r),
    );
    for &z in &p.nulls {
        push_complex_row(
            &mut columns,
            &mut values,
            &freq_vector(z, p.taps),
            Complex64::new(0.0, 0.0),
        );
    }
    ConstraintSystem::new(columns, values)
}

pub fn design_filter(p: &FilterProblem, mode: Mode) -> Result<DesignResult> {
    let cost = combined_matrix(p)?;
    DesignResult::solve(mode, &cost, || reference_constraint(p))
}
