//! Least-squares eigenfilter design for FIR filters and wideband
//! tapped-delay-line beamformers.
//!
//! The classic eigenfilter takes the weights as the minimum eigenvector of a
//! quadratic cost built around a reference point in the passband (or look
//! direction). Because the cost only measures variation relative to that
//! point, the absolute passband level is left free and can collapse towards
//! zero. [`Mode::Constrained`] fixes the response at the reference point with
//! a linear constraint and solves the resulting equality-constrained
//! quadratic program instead.
//!
//! ```
//! use std::f64::consts::PI;
//! use eigenfilter::{design_filter, Band, FilterProblem, Mode};
//!
//! let problem = FilterProblem::new(
//!     30,
//!     vec![Band::passband(0.0, 0.4 * PI), Band::stopband(0.6 * PI, PI)],
//!     0.5,
//!     0.2 * PI,
//! )?;
//! let design = design_filter(&problem, Mode::Constrained)?;
//! assert!(design.constraint_residual.unwrap() < 1e-10);
//! # Ok::<(), eigenfilter::Error>(())
//! ```

pub mod analysis;
pub mod beam;
mod design;
mod error;
pub mod fir;
pub mod grid;
pub mod linalg;

pub use analysis::{
    band_metrics, beam_metrics, beam_pattern, filter_response, BeamMetrics, FilterMetrics,
    MetricsReport, ResponseGrid,
};
pub use beam::{
    design_beamformer, gef_matrix, look_constraint, steering_vector, ArraySpec, BeamProblem,
};
pub use design::{DesignResult, Mode};
pub use error::{Error, Result};
pub use fir::{
    combined_matrix, design_filter, freq_vector, passband_matrix, reference_constraint,
    stopband_matrix, Band, BandKind, FilterProblem,
};
pub use grid::uniform_grid;
pub use linalg::{
    accumulate_outer, constrained_min, min_eigenpair, ConstraintSystem, MinEigenpair,
    SymmetricMatrix,
};
