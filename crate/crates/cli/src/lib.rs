//! Command-line front end for `edgereg-core`: JSON formats, a parallel
//! Betti-table oracle, seeded campaigns and subcommand dispatch.

pub mod campaign;
pub mod cli;
pub mod formats;
pub mod parallel;
pub mod reports;

pub use cli::{run, RunConfig};
