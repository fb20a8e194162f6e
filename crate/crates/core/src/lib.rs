pub mod cli;
pub mod error;
pub mod extension;
pub mod oracle;
pub mod problem;
pub mod relation;
pub mod sigma;
pub mod verify;

pub use error::{Error, Result};
