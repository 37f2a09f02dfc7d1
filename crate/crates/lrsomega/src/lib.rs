//! Command-line surface, file formats, and the external-solver client for
//! the sign-description model checker.

pub mod commands;
pub mod formats;
pub mod report;
pub mod solver;

pub use lrsomega_core as core;
