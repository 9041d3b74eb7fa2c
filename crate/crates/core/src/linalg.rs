//! Dense real symmetric linear algebra.
//!
//! Quadratic-form matrices are accumulated from complex rank-one terms
//! (keeping only the real part), their smallest eigenpair is extracted with
//! cyclic Jacobi rotations, and linearly constrained minimisation is solved
//! through the KKT augmented system.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative gap below which the two smallest eigenvalues count as tied.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Maximum number of Jacobi sweeps before giving up.
pub const MAX_JACOBI_SWEEPS: usize = 60;

/// Diagonal shift applied (relative to `trace / n`) when the KKT system is
/// numerically singular.
pub const KKT_REGULARIZATION: f64 = 1e-12;

/// Real symmetric `n x n` matrix stored as its packed upper triangle, so
/// `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    upper: Vec<f64>,
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            upper: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds a matrix by evaluating `f(i, j)` on the upper triangle (`i <= j`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        Self { n, upper }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { 0.0 })
    }

    /// Builds a matrix from row-major dense entries, which must be exactly
    /// symmetric.
    pub fn from_dense(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::Dimension(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| entries[i * n + j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed_index(self.n, i, j)]
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                sum += v * v;
            }
        }
        sum.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            upper: self.upper.iter().map(|v| c * v).collect(),
        }
    }

    /// `a * x + b * y`, entry by entry.
    pub fn linear_combination(a: f64, x: &Self, b: f64, y: &Self) -> Result<Self> {
        if x.n != y.n {
            return Err(Error::Dimension(format!(
                "cannot combine {}x{} with {}x{}",
                x.n, x.n, y.n, y.n
            )));
        }
        Ok(Self {
            n: x.n,
            upper: x
                .upper
                .iter()
                .zip(&y.upper)
                .map(|(p, q)| a * p + b * q)
                .collect(),
        })
    }

    /// Returns `self + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.upper[packed_index(self.n, i, i)] += shift;
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix order");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// `x^T M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }
}

/// Incremental builder for `sum_k weight_k * Re[v_k v_k^H]`.
#[derive(Debug, Clone)]
pub struct OuterAccumulator {
    matrix: SymmetricMatrix,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl OuterAccumulator {
    pub fn new(n: usize) -> Self {
        Self {
            matrix: SymmetricMatrix::zeros(n),
            re: vec![0.0; n],
            im: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.n
    }

    pub fn add(&mut self, v: &[Complex64], weight: f64) -> Result<()> {
        let n = self.matrix.n;
        if v.len() != n {
            return Err(Error::Dimension(format!(
                "vector of length {} added to a {n}x{n} accumulator",
                v.len()
            )));
        }
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::Dimension(format!(
                "quadrature weight must be finite and nonnegative, got {weight}"
            )));
        }
        if weight == 0.0 {
            return Ok(());
        }
        for (k, z) in v.iter().enumerate() {
            self.re[k] = z.re;
            self.im[k] = z.im;
        }
        let mut idx = 0;
        for i in 0..n {
            let (ri, ii) = (weight * self.re[i], weight * self.im[i]);
            for j in i..n {
                self.matrix.upper[idx] += ri * self.re[j] + ii * self.im[j];
                idx += 1;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> SymmetricMatrix {
        self.matrix
    }
}

/// Returns `sum_k weights[k] * Re[v_k v_k^H]`.
pub fn accumulate_outer(vectors: &[Vec<Complex64>], weights: &[f64]) -> Result<SymmetricMatrix> {
    if vectors.len() != weights.len() {
        return Err(Error::Dimension(format!(
            "{} vectors but {} weights",
            vectors.len(),
            weights.len()
        )));
    }
    let n = vectors
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Dimension("no vectors to accumulate".into()))?;
    let mut acc = OuterAccumulator::new(n);
    for (v, &w) in vectors.iter().zip(weights) {
        acc.add(v, w)?;
    }
    Ok(acc.finish())
}

/// Full eigen-decomposition, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigen-decomposition.
///
/// Rotations are skipped when `|a_pq| <= eps * sqrt(|a_pp a_qq|)`, which keeps
/// small eigenvalues of well-scaled positive semidefinite matrices accurate
/// to high relative precision.
pub fn symmetric_eigen(m: &SymmetricMatrix) -> Result<SymmetricEigen> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix entries"));
    }
    let n = m.dim();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let mut a = m.to_dense();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let eps = f64::EPSILON;
    let tiny = f64::MIN_POSITIVE;
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq.abs() <= eps * (app.abs() * aqq.abs()).sqrt() || apq.abs() < tiny {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    a[r * n + p] = rp;
                    a[p * n + r] = rp;
                    a[r * n + q] = rq;
                    a[q * n + r] = rq;
                }
                for r in 0..n {
                    let g = v[r * n + p];
                    let h = v[r * n + q];
                    v[r * n + p] = g - s * (h + g * tau);
                    v[r * n + q] = h + s * (g - h * tau);
                }
            }
        }
        sweeps += 1;
        if !rotated {
            break;
        }
        if sweeps >= MAX_JACOBI_SWEEPS {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += a[i * n + j] * a[i * n + j];
                    }
                }
            }
            return Err(Error::Convergence {
                sweeps,
                off_norm: off.sqrt(),
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x * n + x].total_cmp(&a[y * n + y]).then(x.cmp(&y)));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            normalize_sign(&mut col);
            col
        })
        .collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Flips `x` so its first component with magnitude above 1e-12 is positive.
pub fn normalize_sign(x: &mut [f64]) {
    if let Some(&first) = x.iter().find(|c| c.abs() > 1e-12) {
        if first < 0.0 {
            x.iter_mut().for_each(|c| *c = -*c);
        }
    }
}

/// Smallest eigenvalue with its unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct MinEigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// Set when the two smallest eigenvalues are closer than
    /// `DEGENERACY_TOLERANCE * ||m||_F`; the vector is then one arbitrary
    /// member of a (numerically) multi-dimensional eigenspace.
    pub degenerate: bool,
}

pub fn min_eigenpair(m: &SymmetricMatrix) -> Result<MinEigenpair> {
    let eig = symmetric_eigen(m)?;
    let degenerate = eig.values.len() > 1
        && eig.values[1] - eig.values[0] < DEGENERACY_TOLERANCE * m.frobenius_norm();
    let SymmetricEigen {
        values,
        mut vectors,
        ..
    } = eig;
    Ok(MinEigenpair {
        value: values[0],
        vector: vectors.swap_remove(0),
        degenerate,
    })
}

/// Linear equality constraints `C^T w = f`, `C` held column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    columns: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl ConstraintSystem {
    pub fn new(columns: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Dimension(
                "at least one constraint is required".into(),
            ));
        }
        if columns.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} constraint columns but {} response values",
                columns.len(),
                values.len()
            )));
        }
        let n = columns[0].len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension(
                "constraint columns differ in length".into(),
            ));
        }
        if columns.len() >= n {
            return Err(Error::Dimension(format!(
                "{} constraints leave no freedom in dimension {n}",
                columns.len()
            )));
        }
        if columns
            .iter()
            .flatten()
            .chain(&values)
            .any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite("constraint system"));
        }
        Ok(Self { columns, values })
    }

    pub fn dim(&self) -> usize {
        self.columns[0].len()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `max_i |c_i . w - f_i|`.
    pub fn residual(&self, w: &[f64]) -> f64 {
        self.columns
            .iter()
            .zip(&self.values)
            .map(|(c, f)| (dot(c, w) - f).abs())
            .fold(0.0, f64::max)
    }

    /// Errors when the columns are (numerically) linearly dependent.
    pub fn check_rank(&self) -> Result<()> {
        let scale = self.columns.iter().map(|c| norm(c)).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::ConstraintRank(
                "all constraint columns are zero".into(),
            ));
        }
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(self.columns.len());
        for (k, col) in self.columns.iter().enumerate() {
            let mut q = col.clone();
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let r = dot(b, &q);
                    q.iter_mut().zip(b).for_each(|(x, y)| *x -= r * y);
                }
            }
            let r = norm(&q);
            if r <= 1e-10 * scale {
                return Err(Error::ConstraintRank(format!(
                    "column {k} lies in the span of the preceding columns"
                )));
            }
            q.iter_mut().for_each(|x| *x /= r);
            basis.push(q);
        }
        Ok(())
    }
}

/// Minimiser of `w^T m w` subject to `C^T w = f`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedSolution {
    pub weights: Vec<f64>,
    /// `||C^T w - f||_inf`.
    pub residual: f64,
    /// True when the diagonal shift had to be applied.
    pub regularized: bool,
}

/// Solves `[[m, C], [C^T, 0]] [w; -lambda] = [0; f]` by LU with partial
/// pivoting plus iterative refinement. A singular system is retried once
/// with `m + eps * trace(m) / n * I`.
pub fn constrained_min(m: &SymmetricMatrix, cs: &ConstraintSystem) -> Result<ConstrainedSolution> {
    let n = m.dim();
    if cs.dim() != n {
        return Err(Error::Dimension(format!(
            "constraints of length {} for a {n}x{n} objective",
            cs.dim()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("objective matrix"));
    }
    cs.check_rank()?;

    let (kkt, lu, regularized) = match Lu::factor(kkt_matrix(m, cs)) {
        Some(lu) => (kkt_matrix(m, cs), lu, false),
        None => {
            let shift = KKT_REGULARIZATION * m.trace() / n as f64;
            let shifted = m.shifted(shift);
            let kkt = kkt_matrix(&shifted, cs);
            let lu = Lu::factor(kkt.clone()).ok_or_else(|| {
                Error::Solver(format!(
                    "KKT system singular even after diagonal shift {shift:e}"
                ))
            })?;
            (kkt, lu, true)
        }
    };

    let size = n + cs.len();
    let mut rhs = vec![0.0; size];
    rhs[n..].copy_from_slice(cs.values());
    let mut x = lu.solve(&rhs);
    for _ in 0..3 {
        let r: Vec<f64> = (0..size)
            .map(|i| rhs[i] - dot(&kkt[i * size..(i + 1) * size], &x))
            .collect();
        let dx = lu.solve(&r);
        x.iter_mut().zip(&dx).for_each(|(a, b)| *a += b);
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Solver("KKT solution is not finite".into()));
    }
    x.truncate(n);
    let residual = cs.residual(&x);
    Ok(ConstrainedSolution {
        weights: x,
        residual,
        regularized,
    })
}

fn kkt_matrix(m: &SymmetricMatrix, cs: &ConstraintSystem) -> Vec<f64> {
    let n = m.dim();
    let size = n + cs.len();
    let mut k = vec![0.0; size * size];
    for i in 0..n {
        for j in 0..n {
            k[i * size + j] = m.get(i, j);
        }
    }
    for (c, col) in cs.columns().iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            k[i * size + n + c] = v;
            k[(n + c) * size + i] = v;
        }
    }
    k
}

/// Dense LU factorisation with partial pivoting.
struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` when a pivot falls below `n * eps * max|a_ij|`.
    fn factor(mut a: Vec<f64>) -> Option<Self> {
        let n = (a.len() as f64).sqrt() as usize;
        debug_assert_eq!(n * n, a.len());
        let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return None;
        }
        let tol = n as f64 * f64::EPSILON * scale;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (piv, pmax) =
                (k..n)
                    .map(|r| (r, a[r * n + k].abs()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmax <= tol {
                return None;
            }
            if piv != k {
                for c in 0..n {
                    a.swap(k * n + c, piv * n + c);
                }
                perm.swap(k, piv);
            }
            let d = a[k * n + k];
            for r in (k + 1)..n {
                let f = a[r * n + k] / d;
                a[r * n + k] = f;
                if f != 0.0 {
                    for c in (k + 1)..n {
                        a[r * n + c] -= f * a[k * n + c];
                    }
                }
            }
        }
        Some(Self { n, lu: a, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = ((i + 1)..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn packed_storage_is_symmetric() {
        let m = SymmetricMatrix::from_fn(4, |i, j| (10 * i + j) as f64);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert_eq!(m.get(3, 1), 13.0);
    }

    #[test]
    fn from_dense_rejects_asymmetry() {
        assert!(SymmetricMatrix::from_dense(2, &[1.0, 2.0, 2.5, 1.0]).is_err());
        assert!(SymmetricMatrix::from_dense(2, &[1.0, 2.0, 2.0]).is_err());
    }

    #[test]
    fn outer_of_all_ones() {
        let one = Complex64::new(1.0, 0.0);
        let m = accumulate_outer(&[vec![one, one]], &[1.0]).unwrap();
        assert_eq!(m.to_dense(), vec![1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn outer_takes_real_part() {
        let v = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)];
        let m = accumulate_outer(&[v], &[1.0]).unwrap();
        assert_eq!(m.to_dense(), vec![1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn outer_rejects_mismatch() {
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(
            accumulate_outer(&[vec![one, one], vec![one]], &[1.0, 1.0]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            accumulate_outer(&[vec![one]], &[1.0, 2.0]),
            Err(Error::Dimension(_))
        ));
        assert!(accumulate_outer(&[vec![one]], &[-1.0]).is_err());
    }

    #[test]
    fn min_eigenpair_of_diagonal() {
        let m = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let e = min_eigenpair(&m).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.vector, vec![0.0, 1.0, 0.0]);
        assert!(!e.degenerate);
    }

    #[test]
    fn min_eigenpair_two_by_two() {
        let m = SymmetricMatrix::from_dense(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = min_eigenpair(&m).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(approx(e.value, 1.0, 1e-14));
        assert!(approx(e.vector[0], h, 1e-14));
        assert!(approx(e.vector[1], -h, 1e-14));
    }

    #[test]
    fn identity_is_degenerate() {
        let e = min_eigenpair(&SymmetricMatrix::identity(3)).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn single_entry_matrix() {
        let e = min_eigenpair(&SymmetricMatrix::from_diagonal(&[-2.5])).unwrap();
        assert_eq!(e.value, -2.5);
        assert_eq!(e.vector, vec![1.0]);
    }

    #[test]
    fn non_finite_is_rejected() {
        let m = SymmetricMatrix::from_diagonal(&[1.0, f64::NAN]);
        assert_eq!(
            min_eigenpair(&m).unwrap_err(),
            Error::NonFinite("matrix entries")
        );
    }

    #[test]
    fn sign_convention_skips_negligible_components() {
        let mut x = vec![1e-13, -0.5, 0.2];
        normalize_sign(&mut x);
        assert_eq!(x, vec![-1e-13, 0.5, -0.2]);
    }

    #[test]
    fn constrained_identity_objective() {
        let cs = ConstraintSystem::new(vec![vec![1.0, 1.0, 1.0]], vec![1.0]).unwrap();
        let s = constrained_min(&SymmetricMatrix::identity(3), &cs).unwrap();
        for w in &s.weights {
            assert!(approx(*w, 1.0 / 3.0, 1e-15));
        }
        assert!(!s.regularized);
    }

    #[test]
    fn constrained_weighted_objective() {
        // min w1^2 + 2 w2^2 s.t. w1 + w2 = 1: stationarity gives w1 = 2 w2.
        let cs = ConstraintSystem::new(vec![vec![1.0, 1.0]], vec![1.0]).unwrap();
        let m = SymmetricMatrix::from_diagonal(&[1.0, 2.0]);
        let s = constrained_min(&m, &cs).unwrap();
        assert!(approx(s.weights[0], 2.0 / 3.0, 1e-15));
        assert!(approx(s.weights[1], 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn rank_deficient_constraints() {
        let cs = ConstraintSystem::new(
            vec![vec![1.0, 2.0, 0.0, 1.0], vec![2.0, 4.0, 0.0, 2.0]],
            vec![1.0, 2.0],
        )
        .unwrap();
        let err = constrained_min(&SymmetricMatrix::identity(4), &cs).unwrap_err();
        assert!(matches!(err, Error::ConstraintRank(_)));
    }

    #[test]
    fn constraint_count_must_leave_freedom() {
        assert!(ConstraintSystem::new(vec![vec![1.0]], vec![1.0]).is_err());
        assert!(ConstraintSystem::new(vec![], vec![]).is_err());
        assert!(ConstraintSystem::new(vec![vec![1.0, 0.0]], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn singular_objective_is_regularized() {
        // m = 0 on the feasible set's complement only: KKT is singular
        // because m has a null direction orthogonal to C.
        let m = SymmetricMatrix::from_diagonal(&[1.0, 1.0, 0.0]);
        let cs = ConstraintSystem::new(vec![vec![1.0, 0.0, 0.0]], vec![1.0]).unwrap();
        let s = constrained_min(&m, &cs).unwrap();
        assert!(s.regularized);
        assert!(s.residual <= 1e-10);
        assert!(approx(s.weights[0], 1.0, 1e-12));
        assert!(s.weights[1].abs() < 1e-12 && s.weights[2].abs() < 1e-12);
    }

    #[test]
    fn zero_objective_is_a_solver_error() {
        let cs = ConstraintSystem::new(vec![vec![1.0, 0.0]], vec![1.0]).unwrap();
        let err = constrained_min(&SymmetricMatrix::zeros(2), &cs).unwrap_err();
        assert!(matches!(err, Error::Solver(_)));
    }
}
