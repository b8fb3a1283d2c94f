pub mod cli;
pub mod density;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod moments;
pub mod spectral;

pub use error::{Error, Result};
