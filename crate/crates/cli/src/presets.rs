//! Named design problems from the published examples.

use crate::spec::{BeamSpec, DesignSpec, FilterSpec, Intervals, Kind, ModeSelection};

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub spec: DesignSpec,
}

fn filter(
    taps: usize,
    pass: Vec<[f64; 2]>,
    stop: Vec<[f64; 2]>,
    alpha: f64,
    omega_r: f64,
) -> DesignSpec {
    let list = |v: Vec<[f64; 2]>| {
        if v.len() == 1 {
            Intervals::One(v[0])
        } else {
            Intervals::Many(v)
        }
    };
    DesignSpec::Filter(FilterSpec {
        kind: Kind::Filter,
        taps,
        passband: list(pass),
        stopband: list(stop),
        alpha,
        omega_r,
        passband_weight: None,
        stopband_weight: None,
        grid_points: None,
        group_delay: None,
        nulls: Vec::new(),
        mode: ModeSelection::Both,
        out: None,
    })
}

fn beam(sensors: usize, theta0: f64, sidelobes: [[f64; 2]; 2], theta_r: f64) -> DesignSpec {
    DesignSpec::Beam(BeamSpec {
        kind: Kind::Beamformer,
        sensors,
        taps: 10,
        mu: None,
        theta0,
        omega_pb: [0.4, 1.0],
        sidelobes: Intervals::Many(sidelobes.to_vec()),
        omega_r: 0.7,
        theta_r,
        alpha: 0.6,
        freq_points: None,
        angle_points: None,
        group_delay: None,
        mode: ModeSelection::Both,
        out: None,
    })
}

pub const NAMES: [&str; 11] = [
    "lp70",
    "lp76",
    "hp81a",
    "hp81b",
    "bp91a",
    "bp91b",
    "bf10-look10",
    "bf10-look0",
    "bf11-look0",
    "bf11-look0-refsame",
    "bf11-look10",
];

/// Looks up a preset by name.
pub fn find(name: &str) -> Option<Preset> {
    let spec = match name {
        "lp70" => filter(70, vec![[0.0, 0.5]], vec![[0.8, 1.0]], 0.97, 0.35),
        "lp76" => filter(76, vec![[0.0, 0.5]], vec![[0.8, 1.0]], 0.97, 0.35),
        "hp81a" => filter(81, vec![[0.7, 1.0]], vec![[0.0, 0.4]], 0.71, 0.74),
        "hp81b" => filter(81, vec![[0.7, 1.0]], vec![[0.0, 0.4]], 0.71, 0.94),
        "bp91a" => filter(
            91,
            vec![[0.35, 0.65]],
            vec![[0.0, 0.15], [0.85, 1.0]],
            0.96,
            0.55,
        ),
        "bp91b" => filter(
            91,
            vec![[0.35, 0.65]],
            vec![[0.0, 0.15], [0.85, 1.0]],
            0.96,
            0.49,
        ),
        "bf10-look10" => beam(10, 10.0, [[-90.0, -10.0], [30.0, 90.0]], 10.0),
        "bf10-look0" => beam(10, 0.0, [[-90.0, -20.0], [20.0, 90.0]], 10.0),
        "bf11-look0" => beam(11, 0.0, [[-90.0, -30.0], [30.0, 90.0]], 10.0),
        "bf11-look0-refsame" => beam(11, 0.0, [[-90.0, -30.0], [30.0, 90.0]], 0.0),
        "bf11-look10" => beam(11, 10.0, [[-90.0, -20.0], [40.0, 90.0]], 10.0),
        _ => return None,
    };
    let name = NAMES.iter().find(|n| **n == name)?;
    Some(Preset { name, spec })
}

/// Every preset in catalog order.
pub fn catalog() -> Vec<Preset> {
    NAMES.iter().map(|n| find(n).expect("listed")).collect()
}
