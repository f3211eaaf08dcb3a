pub mod autgroup;
pub mod cli;
pub mod design;
pub mod drg;
pub mod error;
pub mod export;
pub mod geometry;
pub mod gf;
pub mod graph;
pub mod linalg;
pub mod polarity;
pub mod subspace;
pub mod verify;

pub use design::{Design, DesignParameters};
pub use error::{Error, Result};
pub use geometry::Instance;
pub use gf::{Field, FieldElement};
pub use graph::Graph;
pub use linalg::Matrix;
pub use polarity::Polarity;
pub use subspace::{gaussian_binomial, PointTable, ProjectivePoint, Subspace};
