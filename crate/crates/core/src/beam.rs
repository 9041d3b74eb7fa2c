//! Eigenfilter design of wideband beamformers: a uniform linear array of
//! `M` sensors, each followed by a `J`-tap delay line.
//!
//! Weights are ordered tap-major, `w = [w_{0,0} .. w_{M-1,0}, w_{0,1} ..]`,
//! so coefficient `k * M + m` belongs to sensor `m`, tap `k`. Angles are in
//! degrees from broadside at the API boundary.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::design::{DesignResult, Mode};
use crate::error::{Error, Result};
use crate::grid::{uniform_grid, Quadrature};
use crate::linalg::{ConstraintSystem, OuterAccumulator, SymmetricMatrix};

/// Half-wavelength spacing at `omega = pi`.
pub const DEFAULT_MU: f64 = 1.0;
pub const DEFAULT_FREQ_POINTS: usize = 20;
pub const DEFAULT_ANGLE_POINTS: usize = 360;

/// Array geometry: `mu = d / (c T_s)` is the inter-sensor delay in samples
/// for an endfire arrival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySpec {
    sensors: usize,
    taps: usize,
    mu: f64,
}

impl ArraySpec {
    pub fn new(sensors: usize, taps: usize, mu: f64) -> Result<Self> {
        if sensors < 2 {
            return Err(Error::spec(
                "sensors",
                format!("need at least 2, got {sensors}"),
            ));
        }
        if taps < 1 {
            return Err(Error::spec("taps", "need at least 1"));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::spec("mu", format!("must be positive, got {mu}")));
        }
        Ok(Self { sensors, taps, mu })
    }

    pub fn sensors(&self) -> usize {
        self.sensors
    }

    pub fn taps(&self) -> usize {
        self.taps
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Number of coefficients, `M * J`.
    pub fn len(&self) -> usize {
        self.sensors * self.taps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `d(omega, theta) = d_T(omega) (x) d_tau(omega, theta)`.
pub fn steering_vector(omega: f64, theta_deg: f64, array: &ArraySpec) -> Vec<Complex64> {
    let spatial = array.mu * omega * theta_deg.to_radians().sin();
    let mut out = Vec::with_capacity(array.len());
    for k in 0..array.taps {
        let temporal = Complex64::from_polar(1.0, -(k as f64) * omega);
        for m in 0..array.sensors {
            out.push(temporal * Complex64::from_polar(1.0, -(m as f64) * spatial));
        }
    }
    out
}

/// Beamformer design problem over a passband and sidelobe sectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamProblem {
    array: ArraySpec,
    theta0: f64,
    omega_pb: (f64, f64),
    sidelobes: Vec<(f64, f64)>,
    omega_r: f64,
    theta_r: f64,
    alpha: f64,
    freq_points: usize,
    angle_points: usize,
    group_delay: f64,
}

impl BeamProblem {
    /// Validated problem with default grids (20 frequencies, 360 angles) and
    /// a desired look-direction response of `e^{-j (J/2) omega}`.
    pub fn new(
        array: ArraySpec,
        theta0: f64,
        omega_pb: (f64, f64),
        sidelobes: Vec<(f64, f64)>,
        (omega_r, theta_r): (f64, f64),
        alpha: f64,
    ) -> Result<Self> {
        let p = Self {
            array,
            theta0,
            omega_pb,
            sidelobes,
            omega_r,
            theta_r,
            alpha,
            freq_points: DEFAULT_FREQ_POINTS,
            angle_points: DEFAULT_ANGLE_POINTS,
            group_delay: array.taps as f64 / 2.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_grid(mut self, freq_points: usize, angle_points: usize) -> Result<Self> {
        self.freq_points = freq_points;
        self.angle_points = angle_points;
        self.validate()?;
        Ok(self)
    }

    pub fn with_group_delay(mut self, group_delay: f64) -> Result<Self> {
        self.group_delay = group_delay;
        self.validate()?;
        Ok(self)
    }

    pub fn array(&self) -> &ArraySpec {
        &self.array
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn omega_pb(&self) -> (f64, f64) {
        self.omega_pb
    }

    pub fn sidelobes(&self) -> &[(f64, f64)] {
        &self.sidelobes
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn theta_r(&self) -> f64 {
        self.theta_r
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn freq_points(&self) -> usize {
        self.freq_points
    }

    pub fn angle_points(&self) -> usize {
        self.angle_points
    }

    pub fn group_delay(&self) -> f64 {
        self.group_delay
    }

    /// Desired look-direction response `e^{-j tau omega}`.
    pub fn desired(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.group_delay * omega)
    }

    fn validate(&self) -> Result<()> {
        let angle_ok = |t: f64| t.is_finite() && (-90.0..=90.0).contains(&t);
        if !angle_ok(self.theta0) {
            return Err(Error::spec(
                "theta0",
                format!("{} is outside [-90, 90]", self.theta0),
            ));
        }
        let (lo, hi) = self.omega_pb;
        if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi > PI || lo >= hi {
            return Err(Error::spec(
                "omega_pb",
                format!("[{lo}, {hi}] must satisfy 0 <= lo < hi <= pi"),
            ));
        }
        if self.sidelobes.is_empty() {
            return Err(Error::spec(
                "sidelobes",
                "at least one sidelobe region is required",
            ));
        }
        for &(a, b) in &self.sidelobes {
            if !(angle_ok(a) && angle_ok(b)) || a >= b {
                return Err(Error::spec(
                    "sidelobes",
                    format!("region [{a}, {b}] must satisfy -90 <= lo < hi <= 90"),
                ));
            }
            if self.theta0 > a && self.theta0 < b {
                return Err(Error::spec(
                    "theta0",
                    format!(
                        "look direction {} lies inside sidelobe region [{a}, {b}]",
                        self.theta0
                    ),
                ));
            }
        }
        if !(lo..=hi).contains(&self.omega_r) {
            return Err(Error::spec(
                "omega_r",
                format!("omega_r outside passband ({})", self.omega_r),
            ));
        }
        if !angle_ok(self.theta_r) {
            return Err(Error::spec(
                "theta_r",
                format!("{} is outside [-90, 90]", self.theta_r),
            ));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::spec(
                "alpha",
                format!("{} is outside [0, 1]", self.alpha),
            ));
        }
        if self.freq_points < 2 {
            return Err(Error::spec("freq_points", "must be at least 2"));
        }
        if self.angle_points < 2 {
            return Err(Error::spec("angle_points", "must be at least 2"));
        }
        if !self.group_delay.is_finite() {
            return Err(Error::spec("group_delay", "must be finite"));
        }
        Ok(())
    }

    /// Trapezoidal rule over the passband frequencies.
    pub fn freq_quadrature(&self) -> Quadrature {
        let (lo, hi) = self.omega_pb;
        Quadrature::trapezoid(uniform_grid(lo, hi, self.freq_points).expect("validated"))
    }

    /// Trapezoidal rules over each sidelobe region; nodes in degrees,
    /// weights in radians.
    pub fn sidelobe_quadratures(&self) -> Vec<Quadrature> {
        let grid = uniform_grid(-90.0, 90.0, self.angle_points).expect("validated");
        let to_rad = PI / 180.0;
        self.sidelobes
            .iter()
            .map(|&(a, b)| {
                let q = Quadrature::on_interval(&grid, a, b);
                Quadrature {
                    weights: q.weights.iter().map(|w| w * to_rad).collect(),
                    nodes: q.nodes,
                }
            })
            .collect()
    }
}

/// Adds `Re[a a^H]`, `a = d(w, theta0) - e^{-j tau (w - w_r)} d(w_r, theta_r)`,
/// over the frequency rule.
pub fn mainlobe_term(
    acc: &mut OuterAccumulator,
    freqs: &Quadrature,
    p: &BeamProblem,
    weight: f64,
) -> Result<()> {
    let reference = steering_vector(p.omega_r, p.theta_r, &p.array);
    for (&omega, &q) in freqs.nodes.iter().zip(&freqs.weights) {
        let shift = Complex64::from_polar(1.0, -p.group_delay * (omega - p.omega_r));
        let diff: Vec<Complex64> = steering_vector(omega, p.theta0, &p.array)
            .into_iter()
            .zip(&reference)
            .map(|(d, r)| d - shift * r)
            .collect();
        acc.add(&diff, weight * q)?;
    }
    Ok(())
}

/// Adds `Re[d d^H]` over the frequency rule times each angle rule.
pub fn sidelobe_term(
    acc: &mut OuterAccumulator,
    freqs: &Quadrature,
    angles: &[Quadrature],
    array: &ArraySpec,
    weight: f64,
) -> Result<()> {
    for (&omega, &qf) in freqs.nodes.iter().zip(&freqs.weights) {
        for region in angles {
            for (&theta, &qa) in region.nodes.iter().zip(&region.weights) {
                acc.add(&steering_vector(omega, theta, array), weight * qf * qa)?;
            }
        }
    }
    Ok(())
}

/// Space-time eigenfilter matrix for real coefficients:
/// `alpha * mainlobe + (1 - alpha) * sidelobe`.
pub fn gef_matrix(p: &BeamProblem) -> Result<SymmetricMatrix> {
    let freqs = p.freq_quadrature();
    let mut acc = OuterAccumulator::new(p.array.len());
    if p.alpha > 0.0 {
        mainlobe_term(&mut acc, &freqs, p, p.alpha)?;
    }
    if p.alpha < 1.0 {
        sidelobe_term(
            &mut acc,
            &freqs,
            &p.sidelobe_quadratures(),
            &p.array,
            1.0 - p.alpha,
        )?;
    }
    Ok(acc.finish())
}

/// Pins the response at `(omega_r, theta_r)` to `e^{-j tau omega_r}`.
///
/// Responses are `sum_i w_i d_i`; with real weights this is the same as
/// `w^H d`, and its real and imaginary parts give the two constraint rows.
pub fn look_constraint(p: &BeamProblem) -> Result<ConstraintSystem> {
    let d = steering_vector(p.omega_r, p.theta_r, &p.array);
    let target = p.desired(p.omega_r);
    let zero_tol = crate::fir::ZERO_ROW_TOLERANCE * d.len() as f64;
    let mut columns = Vec::with_capacity(2);
    let mut values = Vec::with_capacity(2);
    let re: Vec<f64> = d.iter().map(|z| z.re).collect();
    let im: Vec<f64> = d.iter().map(|z| z.im).collect();
    for (row, v) in [(re, target.re), (im, target.im)] {
        if row.iter().any(|x| x.abs() > zero_tol) {
            columns.push(row);
            values.push(v);
        }
    }
    ConstraintSystem::new(columns, values)
}

pub fn design_beamformer(p: &BeamProblem, mode: Mode) -> Result<DesignResult> {
    let cost = gef_matrix(p)?;
    DesignResult::solve(mode, &cost, || look_constraint(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf10_look10() -> BeamProblem {
        BeamProblem::new(
            ArraySpec::new(10, 10, 0.5).unwrap(),
            10.0,
            (0.4 * PI, PI),
            vec![(-90.0, -10.0), (30.0, 90.0)],
            (0.7 * PI, 10.0),
            0.6,
        )
        .unwrap()
    }

    #[test]
    fn steering_at_dc_is_all_ones() {
        let a = ArraySpec::new(3, 4, 0.5).unwrap();
        for z in steering_vector(0.0, 37.0, &a) {
            assert_eq!(z, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn steering_at_broadside_is_temporal_only() {
        let a = ArraySpec::new(3, 4, 0.5).unwrap();
        let d = steering_vector(1.1, 0.0, &a);
        for k in 0..4 {
            for m in 0..3 {
                let expect = Complex64::from_polar(1.0, -(k as f64) * 1.1);
                assert!((d[k * 3 + m] - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn steering_hand_evaluated() {
        // M = 2, J = 2, omega = pi, theta = 90 deg, mu = 1/2:
        // d_T = [1, -1], d_tau = [1, e^{-j pi/2}] = [1, -j]
        let a = ArraySpec::new(2, 2, 0.5).unwrap();
        let d = steering_vector(PI, 90.0, &a);
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ];
        for (x, y) in d.iter().zip(&expect) {
            assert!((x - y).norm() < 1e-15, "{x} vs {y}");
        }
    }

    #[test]
    fn array_validation() {
        assert!(ArraySpec::new(1, 4, 0.5).is_err());
        assert!(ArraySpec::new(2, 0, 0.5).is_err());
        assert!(ArraySpec::new(2, 1, 0.0).is_err());
    }

    #[test]
    fn problem_validation() {
        let a = ArraySpec::new(4, 3, 0.5).unwrap();
        let field = |r: Result<BeamProblem>| match r {
            Err(Error::Spec { field, .. }) => field,
            other => panic!("expected spec error, got {other:?}"),
        };
        let sl = vec![(-90.0, -20.0), (20.0, 90.0)];
        assert_eq!(
            field(BeamProblem::new(
                a,
                30.0,
                (0.4 * PI, PI),
                sl.clone(),
                (0.7 * PI, 0.0),
                0.6
            )),
            "theta0"
        );
        assert_eq!(
            field(BeamProblem::new(
                a,
                0.0,
                (0.4 * PI, PI),
                vec![],
                (0.7 * PI, 0.0),
                0.6
            )),
            "sidelobes"
        );
        assert_eq!(
            field(BeamProblem::new(
                a,
                0.0,
                (0.4 * PI, PI),
                sl.clone(),
                (0.2 * PI, 0.0),
                0.6
            )),
            "omega_r"
        );
        assert_eq!(
            field(BeamProblem::new(
                a,
                0.0,
                (0.4 * PI, PI),
                sl.clone(),
                (0.7 * PI, 0.0),
                -0.1
            )),
            "alpha"
        );
        // edge of a region is allowed
        assert!(BeamProblem::new(a, 20.0, (0.4 * PI, PI), sl, (0.7 * PI, 20.0), 0.6).is_ok());
    }

    #[test]
    fn mainlobe_vanishes_at_reference() {
        let p = bf10_look10();
        let q = Quadrature {
            nodes: vec![p.omega_r()],
            weights: vec![1.0],
        };
        let mut acc = OuterAccumulator::new(100);
        mainlobe_term(&mut acc, &q, &p, 1.0).unwrap();
        assert!(acc.finish().frobenius_norm() < 1e-13);
    }

    #[test]
    fn look_constraint_phase() {
        let p = bf10_look10();
        let cs = look_constraint(&p).unwrap();
        assert_eq!(cs.len(), 2);
        // e^{-j 3.5 pi} = j
        assert!(cs.values()[0].abs() < 1e-15);
        assert!((cs.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn look_constraint_at_dc() {
        let a = ArraySpec::new(3, 2, 0.5).unwrap();
        let p = BeamProblem::new(a, 0.0, (0.0, PI), vec![(30.0, 90.0)], (0.0, 0.0), 0.5).unwrap();
        let cs = look_constraint(&p).unwrap();
        assert_eq!(cs.columns(), &[vec![1.0; 6]]);
        assert_eq!(cs.values(), &[1.0]);
    }

    #[test]
    fn alpha_one_drops_sidelobes() {
        let a = ArraySpec::new(3, 2, 0.5).unwrap();
        let p = BeamProblem::new(
            a,
            0.0,
            (0.4 * PI, PI),
            vec![(30.0, 90.0)],
            (0.7 * PI, 0.0),
            1.0,
        )
        .unwrap();
        let g = gef_matrix(&p).unwrap();
        let mut acc = OuterAccumulator::new(6);
        mainlobe_term(&mut acc, &p.freq_quadrature(), &p, 1.0).unwrap();
        assert_eq!(g, acc.finish());
        // any weights reproducing the compensated reference response on the
        // grid are annihilated: w = e_0 has response 1 everywhere, and with
        // zero group delay the compensated reference is also 1.
        let p = p.with_group_delay(0.0).unwrap();
        let g = gef_matrix(&p).unwrap();
        let mut e0 = vec![0.0; 6];
        e0[0] = 1.0;
        assert!(g.quadratic_form(&e0).abs() < 1e-14);
    }

    #[test]
    fn sidelobe_rules_cover_regions() {
        let p = bf10_look10();
        let q = p.sidelobe_quadratures();
        assert_eq!(q.len(), 2);
        assert!((q[0].measure() - 80f64.to_radians()).abs() < 1e-12);
        assert!((q[1].measure() - 60f64.to_radians()).abs() < 1e-12);
        assert_eq!(q[0].nodes[0], -90.0);
        assert_eq!(*q[0].nodes.last().unwrap(), -10.0);
    }
}
