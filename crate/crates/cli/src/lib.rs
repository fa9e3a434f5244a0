//! Command-line front end for `poincare-charges`: scene files, reports,
//! the SI radius table and the verification runner.

pub mod commands;
pub mod constants;
pub mod error;
pub mod radii;
pub mod report;
pub mod scene;
pub mod verify;

pub use error::{CliError, CliResult};
pub use scene::Scene;
