//! Command-line layer over `abelab-core`: input formats, JSON reports,
//! and the acceptance suite. The binary in `main.rs` is a thin dispatch
//! over these modules.

pub mod acceptance;
pub mod format;
pub mod report;

pub use abelab_core as core;
