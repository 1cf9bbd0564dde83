//! Exact integer linear algebra for finitely generated abelian groups.

mod diophantine;
mod group;
mod matrix;
mod snf;

pub use diophantine::{
    enumerate_nonneg_solutions, hilbert_basis, monoid_coset_membership, nonneg_feasible,
    NonnegSolutions,
};
pub use group::{
    quotient_invariants, subgroup_membership, FgAbelianGroup, GroupElement, QuotientInvariants,
    Subgroup,
};
pub use matrix::IntMatrix;
pub use snf::{row_hermite_form, smith_normal_form, SmithForm};
