//! Command-line harness for the riesz-lab finite models.

pub mod demo;
pub mod probe;
pub mod report;
pub mod spec;
pub mod suite;
