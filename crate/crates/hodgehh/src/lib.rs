//! File formats, reports and job drivers for the `hodgehh` command line.

pub mod error;
pub mod format;
pub mod jobs;
pub mod report;
pub mod space;
