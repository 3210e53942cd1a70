pub mod cli;
pub mod complex;
pub mod components;
pub mod error;
pub mod maps;
pub mod paths;
pub mod tc;

pub use error::{Error, Result};
