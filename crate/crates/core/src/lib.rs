pub mod cli;
pub mod diagnostics;
pub mod diskmap;
pub mod error;
pub mod evolution;
pub mod hamel;

pub use error::{Error, Result};
