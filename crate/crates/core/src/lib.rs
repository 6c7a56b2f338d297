pub mod algebra;
pub mod annular;
pub mod cells;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod json;
pub mod scalars;

pub use error::{Error, Result};
