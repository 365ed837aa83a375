//! Library side of the subangle CLI: pair-file format, report
//! assembly, seeded generation, and the directory compare harness.

pub mod check;
pub mod error;
pub mod generate;
pub mod pairspec;
pub mod report;

pub use error::CliError;
pub use pairspec::SubspacePairSpec;
