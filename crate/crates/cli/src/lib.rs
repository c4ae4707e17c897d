//! Command-line front end for `thermowit`: scenario files, sweeps,
//! compiled-in reproductions and the verification suite.

pub mod error;
pub mod record;
pub mod reproduce;
pub mod scenario;
pub mod units;
pub mod verify;

pub use error::{CliError, ParseError};
