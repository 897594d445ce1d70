//! File formats, configuration, report emission and the `fiveq` command line
//! on top of [`fiveq_core`].
//!
//! - [`circuit_text`]: the circuit text format.
//! - [`coupling`]: coupling-map files and the bundled `ibmqx2`/`ibmqx4` maps.
//! - [`config`]: run configuration and noise blocks.
//! - [`report`]: JSON (with `schema_version`), CSV and text tables.
//! - [`runner`]: running experiments, transpiling files and fitting noise.

pub mod circuit_text;
pub mod config;
pub mod coupling;
pub mod error;
pub mod report;
pub mod runner;

pub use error::{Error, Result};
