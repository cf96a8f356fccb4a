//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::AbelianGroup;
pub use lattice::{cokernel, gcd_all, gcd_maximal_minors, is_saturated, kernel_basis, maximal_minors, rank, solve};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, hnf_with_transform, snf, HermiteForm, SmithForm};
