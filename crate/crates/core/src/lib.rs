//! Groups generated by involutions acting on linear Schreier graphs built by
//! substitution.

pub mod analysis;
pub mod error;
pub mod exec;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod symbolic;

pub use error::{Error, Result};
pub use exec::Exec;
