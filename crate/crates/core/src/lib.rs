pub mod arrangement;
pub mod covers;
pub mod error;
pub mod gmodule;
pub mod graph;
pub mod group;
pub mod harness;
pub mod linalg;
pub mod ss;

pub use error::{Error, Result};
