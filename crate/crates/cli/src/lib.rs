//! Front end for the minimum-diameter solvers: instance files, command
//! dispatch, JSON reports, SVG figures and a seeded instance generator.

pub mod error;
pub mod gen;
pub mod instance;
pub mod run;
pub mod svg;

pub use error::CliError;
pub use instance::{parse_instance, InstanceFile, Model, RegionSpec};
pub use run::{run, Command, RunOptions, RunOutput, RunReport};
