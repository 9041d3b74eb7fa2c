use std::f64::consts::PI;

use eigenfilter::analysis::{beam_pattern, filter_response_at};
use eigenfilter::beam::{steering_vector, ArraySpec};
use eigenfilter::fir::{combined_matrix, passband_term, stopband_term, Band, FilterProblem};
use eigenfilter::grid::{uniform_grid, Quadrature};
use eigenfilter::linalg::{
    constrained_min, min_eigenpair, ConstraintSystem, OuterAccumulator, SymmetricMatrix,
};
use eigenfilter::{design_filter, Mode};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testkit::{dot, min_eigenvalue_bisect, norm, random_psd, random_symmetric, Dense};

fn sym(d: &Dense) -> SymmetricMatrix {
    SymmetricMatrix::from_dense(d.n, &d.data).unwrap()
}

fn dense(m: &SymmetricMatrix) -> Dense {
    Dense {
        n: m.dim(),
        data: m.to_dense(),
    }
}

prop_compose! {
    fn filter_problem()(
        taps in 1usize..24,
        pass_hi in 0.15f64..0.6,
        gap in 0.05f64..0.3,
        alpha in 0.0f64..=1.0,
        r in 0.0f64..1.0,
    ) -> FilterProblem {
        let stop_lo = (pass_hi + gap).min(0.95);
        FilterProblem::new(
            taps,
            vec![Band::passband(0.0, pass_hi * PI), Band::stopband(stop_lo * PI, PI)],
            alpha,
            r * pass_hi * PI,
        )
        .unwrap()
        .with_grid_points(200)
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenpair_contract(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_symmetric(&mut rng, n);
        let pair = min_eigenpair(&sym(&a)).unwrap();
        let av = a.mul_vec(&pair.vector);
        let residual: f64 = av.iter().zip(&pair.vector)
            .map(|(x, v)| (x - pair.value * v).powi(2)).sum::<f64>().sqrt();
        prop_assert!(residual <= 1e-8 * (1.0 + a.frobenius()));
        prop_assert!((norm(&pair.vector) - 1.0).abs() < 1e-12);
        let first = pair.vector.iter().find(|x| x.abs() > 1e-12).unwrap();
        prop_assert!(*first > 0.0);
        // Rayleigh quotient of any vector is at least the minimum
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        prop_assert!(a.quad(&x) / dot(&x, &x) >= pair.value - 1e-12 * (1.0 + a.frobenius()));
        prop_assert!((pair.value - min_eigenvalue_bisect(&a)).abs() <= 1e-10 * (1.0 + a.frobenius()));
    }

    #[test]
    fn eigenpair_scales(seed in any::<u64>(), n in 2usize..8, c in 0.1f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sym(&random_symmetric(&mut rng, n));
        let p = min_eigenpair(&a).unwrap();
        let q = min_eigenpair(&a.scaled(c)).unwrap();
        prop_assert!((q.value - c * p.value).abs() <= 1e-10 * c * (1.0 + a.frobenius_norm()));
        if !p.degenerate {
            for (x, y) in p.vector.iter().zip(&q.vector) {
                prop_assert!((x - y).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn constrained_is_feasible_and_optimal(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=2.min(n - 1));
        let m = random_psd(&mut rng, n, 0.05);
        let columns: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let values: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let cs = ConstraintSystem::new(columns.clone(), values).unwrap();
        let sol = constrained_min(&sym(&m), &cs).unwrap();
        prop_assert!(sol.residual <= 1e-10);
        prop_assert!(cs.residual(&sol.weights) <= 1e-10);
        // any feasible perturbation raises the cost
        let mut z: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.1..0.1)).collect();
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for c in &columns {
            let mut q = c.clone();
            for b in &basis {
                let t = dot(&q, b);
                q.iter_mut().zip(b).for_each(|(x, y)| *x -= t * y);
            }
            let len = norm(&q);
            basis.push(q.into_iter().map(|x| x / len).collect());
        }
        for b in &basis {
            let t = dot(&z, b);
            z.iter_mut().zip(b).for_each(|(x, y)| *x -= t * y);
        }
        let moved: Vec<f64> = sol.weights.iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert!(m.quad(&moved) >= m.quad(&sol.weights) - 1e-9);
    }

    #[test]
    fn filter_matrix_structure(p in filter_problem()) {
        let m = combined_matrix(&p).unwrap();
        let n = m.dim();
        let d = dense(&m);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(d.at(i, j), d.at(j, i));
                prop_assert!((d.at(i, j) - d.at(n - 1 - i, n - 1 - j)).abs() <= 1e-10);
            }
        }
        prop_assert!(min_eigenvalue_bisect(&d) >= -1e-9 * m.trace());
    }

    #[test]
    fn nondegenerate_eigenvector_has_parity(p in filter_problem()) {
        let r = design_filter(&p, Mode::Unconstrained).unwrap();
        if !r.degenerate {
            let w = &r.weights;
            let n = w.len();
            let even: f64 = (0..n).map(|i| (w[n - 1 - i] - w[i]).powi(2)).sum::<f64>().sqrt();
            let odd: f64 = (0..n).map(|i| (w[n - 1 - i] + w[i]).powi(2)).sum::<f64>().sqrt();
            prop_assert!(even.min(odd) <= 1e-6, "{} {}", even, odd);
        }
    }

    #[test]
    fn response_is_linear_and_conjugate_symmetric(
        seed in any::<u64>(), taps in 1usize..40, omega in -PI..PI, a in -3.0f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Vec<f64> = (0..taps).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..taps).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mix: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + y).collect();
        let lhs = filter_response_at(&mix, omega);
        let rhs = filter_response_at(&u, omega) * a + filter_response_at(&v, omega);
        prop_assert!((lhs - rhs).norm() < 1e-10);
        prop_assert!((filter_response_at(&u, -omega) - filter_response_at(&u, omega).conj()).norm() < 1e-12);
    }
}

#[test]
fn transition_band_points_are_ignored() {
    let taps = 16;
    let pass = (0.0, 0.4 * PI);
    let stop = (0.7 * PI, PI);
    let grid = uniform_grid(0.0, PI, 101).unwrap();
    let mut extended = grid.clone();
    extended.push(0.55 * PI);
    extended.push(0.61 * PI);
    extended.sort_by(f64::total_cmp);

    let build = |g: &[f64]| {
        let mut acc = OuterAccumulator::new(taps);
        passband_term(
            &mut acc,
            &Quadrature::on_interval(g, pass.0, pass.1),
            0.9,
            0.2 * PI,
            (taps as f64 - 1.0) / 2.0,
        )
        .unwrap();
        stopband_term(&mut acc, &Quadrature::on_interval(g, stop.0, stop.1), 0.1).unwrap();
        acc.finish()
    };
    assert_eq!(build(&grid), build(&extended));
}

#[test]
fn unit_weights_reproduce_steering_entries() {
    let array = ArraySpec::new(4, 3, 1.0).unwrap();
    let freqs = [0.4 * PI, 0.71 * PI, PI];
    let angles = [-90.0, -12.5, 0.0, 33.0, 90.0];
    for k in 0..array.taps() {
        for m in 0..array.sensors() {
            let mut w = vec![0.0; array.len()];
            w[k * array.sensors() + m] = 1.0;
            let r = beam_pattern(&w, &freqs, &angles, &array).unwrap();
            for (fi, &omega) in freqs.iter().enumerate() {
                for (ai, &theta) in angles.iter().enumerate() {
                    let phase = -(k as f64) * omega
                        - m as f64 * array.mu() * omega * theta.to_radians().sin();
                    let expected = Complex64::from_polar(1.0, phase);
                    assert_eq!(
                        r.value(fi, ai),
                        steering_vector(omega, theta, &array)[k * 4 + m]
                    );
                    assert!((r.value(fi, ai) - expected).norm() < 1e-13);
                }
            }
        }
    }
}
