//! Finite classical polar spaces over GF(q), their projective embeddings, and
//! exhaustive or sampled checks that subspaces of non-degenerate rank at least 2
//! arise from the universal embedding.

pub mod bits;
pub mod embed;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod polar;
pub mod shell;
pub mod verify;

pub use bits::PointSet;
pub use field::Field;
pub use polar::PolarSpace;
