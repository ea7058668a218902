//! Exact arithmetic and linear algebra over small prime-power fields.

mod field;
mod matrix;
mod subspaces;

pub use field::{Field, FieldElem, MAX_FIELD_ORDER};
pub use matrix::{Echelon, MatrixGF, Rref};
pub use subspaces::SubspaceEnum;
