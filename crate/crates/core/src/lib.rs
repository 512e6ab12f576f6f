pub mod complex;
pub mod error;
pub mod exactalg;
pub mod gauging;
pub mod manifold;
pub mod bordism;
pub mod cli;
pub mod report;
pub mod tqft;

pub use error::{Error, Result};
