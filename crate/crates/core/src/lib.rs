//! Qubit channels, the quantum switch, and the tests built on them.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod qchannel;
pub mod random;
pub mod report;
pub mod scan;
pub mod switch;
pub mod tasks;

pub use error::{Error, Result};
