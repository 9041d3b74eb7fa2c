use std::f64::consts::PI;

use eigenfilter::fir::BandKind;
use eigenfilter_cli::presets::{self, catalog};
use eigenfilter_cli::spec::{parse_spec, Problem};

fn bands(p: &Problem, kind: BandKind) -> Vec<(f64, f64)> {
    let Problem::Filter(f) = p else {
        panic!("not a filter")
    };
    f.bands()
        .iter()
        .filter(|b| b.kind == kind)
        .map(|b| (b.lo / PI, b.hi / PI))
        .collect()
}

type FilterRow = (
    &'static str,
    usize,
    &'static [(f64, f64)],
    &'static [(f64, f64)],
    f64,
    f64,
);
type BeamRow = (&'static str, usize, f64, [(f64, f64); 2], f64);

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

#[test]
fn catalog_has_every_entry_once() {
    let names: Vec<&str> = catalog().iter().map(|p| p.name).collect();
    assert_eq!(names, presets::NAMES);
    assert!(presets::find("lp71").is_none());
}

#[test]
fn filter_presets_are_verbatim() {
    // (name, taps, passbands, stopbands, alpha, omega_r), frequencies in units of pi
    let expected: [FilterRow; 6] = [
        ("lp70", 70, &[(0.0, 0.5)], &[(0.8, 1.0)], 0.97, 0.35),
        ("lp76", 76, &[(0.0, 0.5)], &[(0.8, 1.0)], 0.97, 0.35),
        ("hp81a", 81, &[(0.7, 1.0)], &[(0.0, 0.4)], 0.71, 0.74),
        ("hp81b", 81, &[(0.7, 1.0)], &[(0.0, 0.4)], 0.71, 0.94),
        (
            "bp91a",
            91,
            &[(0.35, 0.65)],
            &[(0.0, 0.15), (0.85, 1.0)],
            0.96,
            0.55,
        ),
        (
            "bp91b",
            91,
            &[(0.35, 0.65)],
            &[(0.0, 0.15), (0.85, 1.0)],
            0.96,
            0.49,
        ),
    ];
    for (name, taps, pass, stop, alpha, omega_r) in expected {
        let p = presets::find(name).unwrap().spec.to_problem(1).unwrap();
        let Problem::Filter(f) = &p else {
            panic!("{name}")
        };
        assert_eq!(f.taps(), taps, "{name}");
        assert_eq!(f.alpha(), alpha, "{name}");
        assert!(close(f.omega_r() / PI, omega_r), "{name}");
        assert_eq!(f.grid_points(), 400, "{name}");
        assert!(close(f.group_delay(), (taps as f64 - 1.0) / 2.0));
        for (got, want) in [
            (bands(&p, BandKind::Passband), pass),
            (bands(&p, BandKind::Stopband), stop),
        ] {
            assert_eq!(got.len(), want.len(), "{name}");
            for (g, w) in got.iter().zip(want) {
                assert!(close(g.0, w.0) && close(g.1, w.1), "{name}: {g:?} vs {w:?}");
            }
        }
    }
}

#[test]
fn beam_presets_are_verbatim() {
    // (name, sensors, theta0, sidelobes, theta_r)
    let expected: [BeamRow; 5] = [
        (
            "bf10-look10",
            10,
            10.0,
            [(-90.0, -10.0), (30.0, 90.0)],
            10.0,
        ),
        ("bf10-look0", 10, 0.0, [(-90.0, -20.0), (20.0, 90.0)], 10.0),
        ("bf11-look0", 11, 0.0, [(-90.0, -30.0), (30.0, 90.0)], 10.0),
        (
            "bf11-look0-refsame",
            11,
            0.0,
            [(-90.0, -30.0), (30.0, 90.0)],
            0.0,
        ),
        (
            "bf11-look10",
            11,
            10.0,
            [(-90.0, -20.0), (40.0, 90.0)],
            10.0,
        ),
    ];
    for (name, sensors, theta0, sidelobes, theta_r) in expected {
        let p = presets::find(name).unwrap().spec.to_problem(1).unwrap();
        let Problem::Beam(b) = &p else {
            panic!("{name}")
        };
        assert_eq!(b.array().sensors(), sensors, "{name}");
        assert_eq!(b.array().taps(), 10, "{name}");
        assert_eq!(b.array().mu(), 1.0, "{name}");
        assert_eq!(b.theta0(), theta0, "{name}");
        assert_eq!(b.sidelobes(), &sidelobes[..], "{name}");
        assert_eq!(b.theta_r(), theta_r, "{name}");
        assert!(close(b.omega_r() / PI, 0.7));
        let (lo, hi) = b.omega_pb();
        assert!(close(lo / PI, 0.4) && close(hi / PI, 1.0));
        assert_eq!(b.alpha(), 0.6);
        assert_eq!((b.freq_points(), b.angle_points()), (20, 360));
        assert_eq!(b.group_delay(), 5.0);
    }
}

#[test]
fn minimal_lowpass_document_equals_preset() {
    let text = r#"{"kind": "filter", "taps": 70, "passband": [0, 0.5], "stopband": [0.8, 1.0],
                   "alpha": 0.97, "omega_r": 0.35}"#;
    let (_, parsed) = parse_spec(text).unwrap();
    let preset = presets::find("lp70").unwrap().spec.to_problem(1).unwrap();
    assert_eq!(parsed, preset);
}

#[test]
fn preset_documents_round_trip() {
    for p in catalog() {
        let (spec, problem) = parse_spec(&p.spec.to_json()).unwrap();
        assert_eq!(spec, p.spec, "{}", p.name);
        assert_eq!(problem, p.spec.to_problem(1).unwrap(), "{}", p.name);
    }
}
