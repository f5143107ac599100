//! IO, file formats, configuration, parallel drivers and the command line
//! for the Yamada polynomial library.

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod output;
pub mod parallel;
pub mod selftest;

pub use error::{Error, Result};
