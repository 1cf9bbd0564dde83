//! Prime filtrations of monomial-presented modules, with twists.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gring::{GradedRing, Monomial, MonomialIdeal, MonomialPrime, PieceDim, PresentedModule};
use crate::zlin::GroupElement;

/// One factor `S/p(twist)` of a filtration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiltrationFactor {
    pub prime: MonomialPrime,
    pub twist: GroupElement,
}

/// Factors listed bottom-up: the first one is the smallest submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFiltration {
    ring: Arc<GradedRing>,
    factors: Vec<FiltrationFactor>,
}

impl PrimeFiltration {
    pub fn new(ring: Arc<GradedRing>, factors: Vec<FiltrationFactor>) -> Result<Self> {
        for f in &factors {
            if f.prime.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: f.prime.nvars(),
                });
            }
            ring.group().check(&f.twist)?;
        }
        Ok(PrimeFiltration { ring, factors })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn factors(&self) -> &[FiltrationFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Same factors with every twist increased by `g`.
    pub fn shifted(&self, g: &GroupElement) -> Result<Self> {
        let group = self.ring.group();
        group.check(g)?;
        Ok(PrimeFiltration {
            ring: self.ring.clone(),
            factors: self
                .factors
                .iter()
                .map(|f| FiltrationFactor {
                    prime: f.prime,
                    twist: group.add(&f.twist, g),
                })
                .collect(),
        })
    }
}

/// Factors of a prime filtration of `S/I(twist)`.
///
/// Splits along `0 → S/(I:x)(twist − deg x) → S/I(twist) → S/(I+x)(twist) → 0`
/// with `x` the lowest-index variable dividing a minimal generator and not in `I`.
pub fn prime_filtration_cyclic(
    ring: &GradedRing,
    ideal: &MonomialIdeal,
    twist: &GroupElement,
) -> Result<Vec<FiltrationFactor>> {
    if ideal.nvars() != ring.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            found: ideal.nvars(),
        });
    }
    ring.group().check(twist)?;
    let mut out = Vec::new();
    cyclic_into(ring, ideal, twist.clone(), &mut out);
    Ok(out)
}

fn cyclic_into(ring: &GradedRing, ideal: &MonomialIdeal, twist: GroupElement, out: &mut Vec<FiltrationFactor>) {
    if ideal.is_unit() {
        return;
    }
    let n = ring.nvars();
    if let Some(mask) = ideal.variable_mask() {
        out.push(FiltrationFactor {
            prime: MonomialPrime::new(n, mask),
            twist,
        });
        return;
    }
    let in_ideal = ideal.variable_mask_part();
    let candidates = ideal
        .generators()
        .iter()
        .fold(0u64, |acc, g| acc | g.support())
        & !in_ideal;
    // Some generator has degree ≥ 2, so its support meets no variable of I
    // (minimality) and the candidate set is nonempty.
    let i = candidates.trailing_zeros() as usize;
    let x = Monomial::var(n, i);
    let lower_twist = ring.group().sub(&twist, ring.degree(i));
    cyclic_into(ring, &ideal.colon(&x), lower_twist, out);
    cyclic_into(ring, &ideal.with_generator(x), twist, out);
}

/// Prime filtration of a monomial-presented module.
///
/// Generators are processed in order; generator `k` contributes the cyclic
/// factor `S/J_k(−b_k)` with `J_k` generated by the entries of the relation
/// columns supported in row `k`. Columns with entries in several rows would
/// need elimination and are rejected.
pub fn prime_filtration(m: &PresentedModule) -> Result<PrimeFiltration> {
    let ring = m.ring();
    let n = ring.nvars();
    let mut per_row: Vec<Vec<Monomial>> = vec![Vec::new(); m.generator_degrees().len()];
    for (j, col) in m.relations().iter().enumerate() {
        match col.entries() {
            [] => {}
            [(row, term)] => per_row[*row].push(term.monomial().clone()),
            _ => {
                return Err(Error::Unsupported(format!(
                    "relation {j} has entries in several rows; prime filtrations need one entry per relation"
                )))
            }
        }
    }
    let group = ring.group();
    let mut factors = Vec::new();
    for (b, gens) in m.generator_degrees().iter().zip(per_row) {
        let j = MonomialIdeal::new(n, gens)?;
        cyclic_into(ring, &j, group.neg(b), &mut factors);
    }
    PrimeFiltration::new(ring.clone(), factors)
}

/// `dim (S/p(twist))_g`.
pub fn factor_piece_dimension(ring: &Arc<GradedRing>, factor: &FiltrationFactor, g: &GroupElement) -> Result<PieceDim> {
    PresentedModule::cyclic(ring.clone(), &factor.prime.as_ideal(), &factor.twist)?.degree_piece_dimension(g)
}

/// Compares `dim M_g` with the sum over the factors at each sampled degree.
pub fn verify_filtration(m: &PresentedModule, f: &PrimeFiltration, sample_degrees: &[GroupElement]) -> Result<bool> {
    if m.ring() != f.ring() {
        return Err(Error::Input("filtration and module use different rings".into()));
    }
    for g in sample_degrees {
        let PieceDim::Finite(total) = m.degree_piece_dimension(g)? else {
            return Err(Error::NeedsBound);
        };
        let mut sum = 0;
        for factor in f.factors() {
            match factor_piece_dimension(m.ring(), factor, g)? {
                PieceDim::Finite(d) => sum += d,
                _ => return Err(Error::NeedsBound),
            }
        }
        if sum != total {
            return Ok(false);
        }
    }
    Ok(true)
}
