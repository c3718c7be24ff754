//! File formats, parallel enumeration and the `fracdesign` command line on
//! top of [`fracdesign_core`].

pub mod cli;
pub mod error;
pub mod formats;
pub mod parallel;
pub mod spec;
pub mod table;

pub use error::{Error, Result};
