//! Sampling grids and trapezoidal quadrature.

use crate::error::{Error, Result};

/// Two samples closer than this (absolute) are treated as the same point.
const MERGE_TOLERANCE: f64 = 1e-12;

/// `count` equally spaced points from `lo` to `hi`, both included.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {count}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidGrid(format!("empty interval [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (count - 1) as f64;
    let mut points: Vec<f64> = (0..count).map(|k| lo + k as f64 * step).collect();
    points[count - 1] = hi;
    Ok(points)
}

/// Nodes and weights of a composite trapezoidal rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Trapezoidal weights for sorted, possibly non-uniform nodes. A single
    /// node gets weight zero.
    pub fn trapezoid(nodes: Vec<f64>) -> Self {
        let n = nodes.len();
        let mut weights = vec![0.0; n];
        for k in 1..n {
            let half = 0.5 * (nodes[k] - nodes[k - 1]);
            weights[k - 1] += half;
            weights[k] += half;
        }
        Self { nodes, weights }
    }

    /// Samples of `grid` inside `[lo, hi]`, with both edges added as
    /// explicit nodes.
    pub fn on_interval(grid: &[f64], lo: f64, hi: f64) -> Self {
        Self::trapezoid(interval_samples(grid, lo, hi))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total measure covered by the rule.
    pub fn measure(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Same rule with every node and weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            nodes: self.nodes.iter().map(|x| x * factor).collect(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }
}

/// `lo`, the points of `grid` strictly inside `(lo, hi)`, then `hi`.
pub fn interval_samples(grid: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![lo];
    out.extend(
        grid.iter()
            .copied()
            .filter(|&x| x > lo + MERGE_TOLERANCE && x < hi - MERGE_TOLERANCE),
    );
    if hi > lo {
        out.push(hi);
    }
    out
}

/// Sorted union of `grid` and `extra`. A grid point within the merge
/// tolerance of an extra point is replaced by that point.
pub fn merge_points(grid: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut all = grid.to_vec();
    all.sort_by(f64::total_cmp);
    for &x in extra {
        let idx = all.partition_point(|&y| y < x - MERGE_TOLERANCE);
        match all.get(idx) {
            Some(&y) if (y - x).abs() <= MERGE_TOLERANCE => all[idx] = x,
            _ => all.insert(idx, x),
        }
    }
    all
}
