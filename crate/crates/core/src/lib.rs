pub mod algebra;
pub mod cli;
pub mod conditions;
pub mod constructions;
pub mod error;
pub mod frames;
pub mod linalg;
pub mod registry;
pub mod tabulate;

pub use error::{Error, Result};
