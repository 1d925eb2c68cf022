pub mod auxiliary;
pub mod c5;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod projection;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::CycloScalar;
