//! Command-line front end of `record-aging`: distribution-spec parsing,
//! command execution and CSV/JSON emitters.

pub mod cli;
pub mod emit;
pub mod run;
pub mod spec;

pub use cli::Cli;
pub use run::{exit_code, overall_exit_code, run, CliError};
pub use spec::{parse_dist_spec, SpecError};
