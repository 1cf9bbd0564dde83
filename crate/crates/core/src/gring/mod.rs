//! Graded polynomial rings, monomial ideals and presented modules.

mod ideal;
mod module;
mod monomial;
mod ring;

pub use ideal::{ideal_colon_monomial, ideal_saturate_monomial, minimal_primes, MonomialIdeal, MonomialPrime};
pub(crate) use ideal::minimal_sets;
pub use module::{degree_piece_dimension, module_shift, ColumnSpec, PieceDim, PresentedModule, RelationColumn};
pub use monomial::{Monomial, Term};
pub use ring::{GradedRing, MAX_VARIABLES};
