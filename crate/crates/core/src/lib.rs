//! Atom spectra of graded polynomial rings and the sheafification kernel of
//! finitely presented modules over toric Cox rings.
//!
//! Everything is exact: integers are arbitrary precision, coefficients are
//! rationals, and the lattice questions are answered by normal forms rather
//! than by sampling.

pub mod atoms;
pub mod corpus;
pub mod error;
pub mod filt;
pub mod gring;
pub mod io;
pub mod sample;
pub mod sheafkern;
pub mod toric;
pub mod zlin;

pub use atoms::{
    atom_equal, atom_support_generators, fiber_classes, fiber_invariants, gp_subgroup, is_standard,
    support_minimal_primes, AtomPoint,
};
pub use error::{Error, Result};
pub use filt::{prime_filtration, prime_filtration_cyclic, verify_filtration, FiltrationFactor, PrimeFiltration};
pub use gring::{GradedRing, Monomial, MonomialIdeal, MonomialPrime, PieceDim, PresentedModule, Term};
pub use sheafkern::{
    brute_force_loc_piece, kernel_decomposition_check, main2_identity_check, module_in_loc_kernel,
    point_in_loc_kernel, point_in_ud, sheafifies_to_zero, sheafifies_to_zero_loc, Reason, ZeroDecision,
};
pub use toric::{cox_from_fan, irrelevant_ideal, CoxData, FanInput, SigmaComplex};
pub use zlin::{FgAbelianGroup, GroupElement, IntMatrix, QuotientInvariants, Subgroup};
