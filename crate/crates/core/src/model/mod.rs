//! Instances, allocations and the on-disk formats.

mod allocation;
mod instance;
mod io;
mod stats;

pub use allocation::{verify_allocation, Allocation, BundleReport, FeasibilityReport, NotAPartition};
pub use instance::{validate_instance, Instance, ValidationError, ValuationMode, Valuations, Violation};
pub use io::{RawAllocation, RawInstance, RawValues};
pub use stats::{compute_stats, InstanceStats};
pub(crate) use allocation::{meets_relaxed_cost, meets_relaxed_profit};
pub(crate) use stats::type_table;
