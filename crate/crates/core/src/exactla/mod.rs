//! Exact arithmetic over a prime field and the dense matrix kernel everything
//! else is built on.

mod field;
pub mod local;
mod mat;

pub use field::{is_prime, Field, FieldElem, DEFAULT_PRIME};
pub use mat::{span_basis, Mat, Rref, Solution};
