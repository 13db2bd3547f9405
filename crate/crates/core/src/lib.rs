pub mod arith;
pub mod basis;
pub mod chow;
pub mod cli;
pub mod corpus;
pub mod crosscheck;
pub mod error;
pub mod eulerian;
pub mod invariants;
pub mod matroid;
pub mod poly;

pub use error::{Error, Result};
pub use matroid::Matroid;
