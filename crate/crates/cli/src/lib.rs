//! Library side of the `bcfea` command: solver selection and dispatch,
//! reports, cross-check and benchmark campaigns.

pub mod bench;
pub mod cross_check;
mod error;
pub mod select;
pub mod solve;

pub use error::{CliError, ExitCode};
pub use select::{select_algorithm, Selection};
pub use solve::{load_instance, parse_ratio, run_solve, SolveReport, SolveRequest, SolverChoice};
