pub mod arith;
pub mod cd_graph;
pub mod classifier;
pub mod cremona;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod quad_points;
pub mod report;
pub mod trace;

pub use error::{Error, Result};
