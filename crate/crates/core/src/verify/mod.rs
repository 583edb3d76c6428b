//! Seeded sampling and the geometric property suite.

pub mod report;
pub mod sample;
pub mod suite;

pub use report::{Counterexample, PropertyReport, PropertyResult};
pub use sample::{corner_battery, sample_point, sample_points, SampleConfig};
pub use suite::{run_property_suite, PROPERTIES};
