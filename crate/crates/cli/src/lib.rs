//! File formats, JSON reports and the command line for `majority-core`.

pub mod bench;
pub mod cli;
pub mod formats;
pub mod report;

pub use cli::{run, ExitStatus};
