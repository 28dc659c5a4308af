//! Command-line front end for `madic-core`: JSON group specs, element
//! words, and renderers for portraits and conjugacy verdicts.

pub mod app;
pub mod error;
pub mod render;
pub mod spec;
pub mod word;

pub use app::run;
pub use error::CliError;
