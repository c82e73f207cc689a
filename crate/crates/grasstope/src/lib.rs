//! File formats, JSON reports, SVG pictures and the command line for
//! [`grasstope_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;
pub mod svg;
pub mod tables;

pub use grasstope_core as core;
