//! File formats, parallel sweeps and the command line for `flatsic-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;

pub use error::{Error, Result};
