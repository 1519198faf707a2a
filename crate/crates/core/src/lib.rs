//! Least-eigenvalue frameworks of graphs, exact universal completability,
//! dominated frameworks and unique vector colorings.

pub mod cli;
pub mod color;
pub mod error;
pub mod exact;
pub mod framework;
pub mod graph;
pub mod survey;
pub mod uc;

pub use error::{Error, Result};
