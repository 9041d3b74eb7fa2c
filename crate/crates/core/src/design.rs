use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{constrained_min, min_eigenpair, ConstraintSystem, SymmetricMatrix};

/// Which formulation produced a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Minimum eigenvector of the cost matrix, unit norm.
    Unconstrained,
    /// Cost minimised subject to the reference-point response constraint.
    Constrained,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Unconstrained, Mode::Constrained];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Unconstrained => "unconstrained",
            Mode::Constrained => "constrained",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unconstrained" => Ok(Mode::Unconstrained),
            "constrained" => Ok(Mode::Constrained),
            other => Err(Error::spec(
                "mode",
                format!("expected unconstrained or constrained, got {other:?}"),
            )),
        }
    }
}

/// Weight vector plus solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub weights: Vec<f64>,
    pub method: Mode,
    /// Smallest eigenvalue of the cost matrix (unconstrained only).
    pub min_eigenvalue: Option<f64>,
    /// `||C^T w - f||_inf` (constrained only).
    pub constraint_residual: Option<f64>,
    /// Two smallest eigenvalues tied (unconstrained only).
    pub degenerate: bool,
    /// KKT system needed the diagonal shift (constrained only).
    pub regularized: bool,
}

impl DesignResult {
    pub(crate) fn solve(
        mode: Mode,
        cost: &SymmetricMatrix,
        constraint: impl FnOnce() -> Result<ConstraintSystem>,
    ) -> Result<Self> {
        match mode {
            Mode::Unconstrained => {
                let pair = min_eigenpair(cost)?;
                Ok(Self {
                    weights: pair.vector,
                    method: mode,
                    min_eigenvalue: Some(pair.value),
                    constraint_residual: None,
                    degenerate: pair.degenerate,
                    regularized: false,
                })
            }
            Mode::Constrained => {
                let cs = constraint()?;
                let sol = constrained_min(cost, &cs)?;
                Ok(Self {
                    weights: sol.weights,
                    method: mode,
                    min_eigenvalue: None,
                    constraint_residual: Some(sol.residual),
                    degenerate: false,
                    regularized: sol.regularized,
                })
            }
        }
    }
}
