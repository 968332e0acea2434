//! Exact reconstruction of homogeneous forms from covariants.

pub mod checks;
pub mod covariant;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod pipeline;
pub mod recon;
pub mod sample;
pub mod transvectant;

pub use error::{Error, Result};
pub use field::{Field, Quad, Rational};
pub use linalg::Matrix;
pub use poly::{Form, Space};
