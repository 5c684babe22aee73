//! File formats, parallel drivers and the command-line front end for
//! [`schottky_core`].
//!
//! * [`config`]: the versioned JSON configuration document.
//! * [`parallel`]: subtree-parallel orbit enumeration with deterministic merging.
//! * [`report`] and [`format`]: JSON and CSV reports with 17-digit floats.
//! * [`svg`]: deterministic figures.
//! * [`trials`]: seeded random checks of the annulus derivative bound.
//! * [`cli`]: the `schottky` binary.

pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod io;
pub mod parallel;
pub mod report;
pub mod svg;
pub mod trials;

pub use config::{load_config, parse_config, ConfigDocument, RunOptions};
pub use error::{CliError, Result};
