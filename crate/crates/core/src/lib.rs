pub mod error;
pub mod graph;
pub mod group;

pub use error::{Error, Limits, Result};
pub mod generators;
pub mod oracle;
pub mod structures;
pub mod decompose;
pub mod reduce;
pub mod flows;
pub mod duality;
