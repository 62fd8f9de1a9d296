//! Exact linear algebra over F_p and Q.

mod canonical;
mod factor;
mod field;
mod matrix;
mod poly;
pub mod sparse;
mod subspace;

pub use canonical::{canonical_form, companion, CanonicalBlock, CanonicalBlocks};
pub use factor::factor;
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::Poly;
pub use subspace::Subspace;
