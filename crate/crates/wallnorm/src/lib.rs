//! File formats, reports, SVG output and the command-line front end for
//! [`wallnorm_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod report;
pub mod svg;

pub use error::AppError;
