//! Command-line front end for the `eigenfilter` crate: JSON design
//! documents, a catalog of reference presets, and result files.

pub mod error;
pub mod output;
pub mod presets;
pub mod run;
pub mod spec;

pub use error::{CliError, Result};
pub use spec::{parse_spec, DesignSpec, Problem};
