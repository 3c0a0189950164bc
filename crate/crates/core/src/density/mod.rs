//! Empirical verification: classify every odd prime up to a bound, tally by
//! class and by cell, and compare with the exact densities.

pub mod cache;
mod census;
mod cells;
mod report;

pub use census::{
    empirical_partition, empirical_partition_with, CacheStatus, CensusOptions, ClassCount,
    PartitionCensus,
};
pub use cells::{cell_census, CellCensus, CellLevel, GAMMA_SPAN};
pub use report::{
    compare, compare_census, compare_with, ClassDensity, DensityReport, DyadicRatio,
    DEFAULT_TOLERANCE,
};
