//! Command-line front end, file formats and rendering for patternforge.

pub mod commands;
pub mod document;
pub mod error;
pub mod shapes;
pub mod svg;

pub use document::PointSetDocument;
pub use error::{CliError, CliResult};
