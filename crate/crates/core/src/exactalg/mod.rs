//! Exact integer and modular linear algebra.
//!
//! Everything here works over arbitrary-precision integers; there is no
//! floating point anywhere in this module.

mod f2;
pub mod lattice;
mod matrix;
mod quotient;
mod smith;

pub use f2::{f2_jordan_counts, F2Matrix};
pub use matrix::{big_vec, IntMatrix};
pub use quotient::{
    hom_kernel, kernel_basis, quotient_structure, quotient_structure_sparse, solve_integer, solve_mod, span_contains,
    AbelianGroupStructure,
};
pub use smith::{smith_normal_form, SmithDecomposition};

pub(crate) use smith::{SmithReduction, Track};
