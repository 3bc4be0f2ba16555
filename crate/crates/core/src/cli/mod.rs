//! Front end: spec files, analysis reports and the bundled example checks.

pub mod report;
pub mod spec;
pub mod verify;
