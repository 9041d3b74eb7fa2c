use eigenfilter::beam::gef_matrix;
use eigenfilter::fir::combined_matrix;
use eigenfilter::linalg::SymmetricMatrix;
use eigenfilter_cli::presets::catalog;
use eigenfilter_cli::spec::Problem;
use testkit::{rel_frobenius, Dense};

fn dense(m: SymmetricMatrix) -> Dense {
    Dense {
        n: m.dim(),
        data: m.to_dense(),
    }
}

#[test]
fn doubling_grids_barely_moves_matrices() {
    for preset in catalog() {
        let (base, doubled, tol) = match preset.spec.to_problem(1).unwrap() {
            Problem::Filter(p) => {
                let n = p.grid_points();
                let fine = p.clone().with_grid_points(2 * n).unwrap();
                (
                    combined_matrix(&p).unwrap(),
                    combined_matrix(&fine).unwrap(),
                    1e-3,
                )
            }
            Problem::Beam(p) => {
                let fine = p
                    .clone()
                    .with_grid(2 * p.freq_points(), 2 * p.angle_points())
                    .unwrap();
                (gef_matrix(&p).unwrap(), gef_matrix(&fine).unwrap(), 1e-2)
            }
        };
        let change = rel_frobenius(&dense(doubled), &dense(base));
        assert!(change < tol, "{}: {change:e}", preset.name);
    }
}

#[test]
fn grid_scale_converges_metrics() {
    // a denser design grid leaves the constrained lp70 passband at 0 dB
    let spec = eigenfilter_cli::presets::find("lp70").unwrap().spec;
    for scale in [1, 2] {
        let p = spec.to_problem(scale).unwrap();
        let o = eigenfilter_cli::run::design(&p, eigenfilter::Mode::Constrained).unwrap();
        assert!(o.record.passband_mean_db.unwrap().abs() < 1e-3);
        assert!(o.record.pb_sb_ratio_db.unwrap() > 100.0);
    }
}
