//! Reference computations for tests. Everything here is written against
//! plain `Vec<f64>` row-major matrices and shares no code with the library
//! it checks.

use rand::Rng;

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * x[j]).sum())
            .collect()
    }

    pub fn quad(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Symmetric matrix with entries uniform in [-1, 1].
pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> Dense {
    let mut m = Dense::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-1.0..1.0);
            m.data[i * n + j] = v;
            m.data[j * n + i] = v;
        }
    }
    m
}

/// `B^T B` for a random `n x n` B, plus `floor * I`.
pub fn random_psd(rng: &mut impl Rng, n: usize, floor: f64) -> Dense {
    let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Dense::from_fn(n, |i, j| {
        let s: f64 = (0..n).map(|r| b[r * n + i] * b[r * n + j]).sum();
        if i == j {
            s + floor
        } else {
            s
        }
    })
}

/// Number of eigenvalues of symmetric `a` strictly below `x`, by counting
/// negative pivots of an LDL^T factorisation of `a - xI`.
pub fn count_below(a: &Dense, x: f64) -> usize {
    let n = a.n;
    let mut m = Dense::from_fn(n, |i, j| a.at(i, j) - if i == j { x } else { 0.0 });
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = m.at(k, k);
        if pivot == 0.0 {
            pivot = -f64::EPSILON * (1.0 + a.frobenius());
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let l = m.at(i, k) / pivot;
            for j in k + 1..n {
                m.data[i * n + j] -= l * m.at(k, j);
            }
        }
    }
    negatives
}

/// Smallest eigenvalue by bisection on the inertia count.
pub fn min_eigenvalue_bisect(a: &Dense) -> f64 {
    let bound = a.frobenius() + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(a, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))
            .unwrap();
        m.swap(k, p);
        let pivot = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let l = row[k] / pivot[k];
            row.iter_mut()
                .zip(&pivot)
                .skip(k)
                .for_each(|(x, p)| *x -= l * p);
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[k][j] * x[j]).sum();
        x[k] = (m[k][n] - s) / m[k][k];
    }
    x
}

/// Minimiser of `w^T m w` subject to `columns[i] . w = values[i]`, via a
/// particular solution plus an orthonormal null-space basis.
pub fn nullspace_min(m: &Dense, columns: &[Vec<f64>], values: &[f64]) -> Vec<f64> {
    let n = m.n;
    let k = columns.len();
    let gram: Vec<Vec<f64>> = columns
        .iter()
        .map(|a| columns.iter().map(|b| dot(a, b)).collect())
        .collect();
    let y = solve(&gram, values);
    let w0: Vec<f64> = (0..n)
        .map(|i| (0..k).map(|c| columns[c][i] * y[c]).sum())
        .collect();

    let mut basis: Vec<Vec<f64>> = Vec::new();
    for c in columns {
        push_orthonormal(&mut basis, c.clone());
    }
    let mut null: Vec<Vec<f64>> = Vec::new();
    for e in 0..n {
        let mut v = vec![0.0; n];
        v[e] = 1.0;
        for b in &basis {
            let d = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        if push_orthonormal(&mut basis, v.clone()) {
            null.push(basis.last().unwrap().clone());
        }
    }
    assert_eq!(null.len(), n - k, "constraint columns are rank deficient");

    let mz: Vec<Vec<f64>> = null.iter().map(|z| m.mul_vec(z)).collect();
    let reduced: Vec<Vec<f64>> = null
        .iter()
        .map(|zi| mz.iter().map(|mzj| dot(zi, mzj)).collect())
        .collect();
    let mw0 = m.mul_vec(&w0);
    let rhs: Vec<f64> = null.iter().map(|z| -dot(z, &mw0)).collect();
    let coef = solve(&reduced, &rhs);
    let mut w = w0;
    for (z, c) in null.iter().zip(&coef) {
        w.iter_mut().zip(z).for_each(|(x, y)| *x += c * y);
    }
    w
}

fn push_orthonormal(basis: &mut Vec<Vec<f64>>, mut v: Vec<f64>) -> bool {
    for _ in 0..2 {
        for b in basis.iter() {
            let d = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
    }
    let len = norm(&v);
    if len < 1e-8 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= len);
    basis.push(v);
    true
}

/// Composite Simpson rule over `[lo, hi]` with `intervals` (made even)
/// subintervals.
pub fn simpson(lo: f64, hi: f64, intervals: usize, f: impl Fn(f64) -> f64) -> f64 {
    let n = intervals + intervals % 2;
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        let c = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += c * f(lo + i as f64 * h);
    }
    s * h / 3.0
}

/// Simpson nodes and weights over `[lo, hi]`.
pub fn simpson_rule(lo: f64, hi: f64, intervals: usize) -> Vec<(f64, f64)> {
    let n = intervals + intervals % 2;
    let h = (hi - lo) / n as f64;
    (0..=n)
        .map(|i| {
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (lo + i as f64 * h, c * h / 3.0)
        })
        .collect()
}

/// Exact `integral_lo^hi cos(d x) dx`.
pub fn cos_integral(d: f64, lo: f64, hi: f64) -> f64 {
    if d == 0.0 {
        hi - lo
    } else {
        ((d * hi).sin() - (d * lo).sin()) / d
    }
}

/// Closed-form stopband matrix entries for bands given in radians:
/// `sum over bands of integral cos((i - j) w) dw`.
pub fn stopband_closed_form(n: usize, bands: &[(f64, f64)]) -> Dense {
    Dense::from_fn(n, |i, j| {
        let d = i as f64 - j as f64;
        bands.iter().map(|&(lo, hi)| cos_integral(d, lo, hi)).sum()
    })
}

/// Relative Frobenius distance `||a - b|| / ||b||`.
pub fn rel_frobenius(a: &Dense, b: &Dense) -> f64 {
    let diff: f64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).powi(2))
        .sum();
    diff.sqrt() / b.frobenius()
}
