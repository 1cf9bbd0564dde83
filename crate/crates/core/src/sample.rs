//! Seeded random monomial ideals and monomial-presented modules.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::gring::{ColumnSpec, GradedRing, Monomial, MonomialIdeal, PresentedModule, Term};
use crate::zlin::GroupElement;

pub use rand_chacha::ChaCha8Rng as SampleRng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct IdealShape {
    pub max_generators: usize,
    pub max_exponent: u32,
}

impl Default for IdealShape {
    fn default() -> Self {
        IdealShape {
            max_generators: 5,
            max_exponent: 3,
        }
    }
}

/// A random monomial ideal; may be zero, never contains `1`.
pub fn random_monomial_ideal(rng: &mut SampleRng, nvars: usize, shape: IdealShape) -> MonomialIdeal {
    let count = rng.gen_range(0..=shape.max_generators);
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        let mut e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=shape.max_exponent)).collect();
        if nvars > 0 && e.iter().all(|&x| x == 0) {
            e[rng.gen_range(0..nvars)] = 1;
        }
        gens.push(Monomial::new(e));
    }
    if nvars == 0 {
        return MonomialIdeal::zero(0);
    }
    MonomialIdeal::new(nvars, gens).expect("generators have the ring's length")
}

/// A random group element with ambient coordinates in `[−bound, bound]`.
pub fn random_element(rng: &mut SampleRng, ring: &GradedRing, bound: i64) -> GroupElement {
    let g = ring.group();
    let c: Vec<i64> = (0..g.ambient_rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.element_i64(&c).expect("ambient length")
}

#[derive(Clone, Copy, Debug)]
pub struct ModuleShape {
    pub max_generators: usize,
    pub ideal: IdealShape,
    pub twist_bound: i64,
}

impl Default for ModuleShape {
    fn default() -> Self {
        ModuleShape {
            max_generators: 3,
            ideal: IdealShape {
                max_generators: 4,
                max_exponent: 2,
            },
            twist_bound: 2,
        }
    }
}

/// A random monomial-presented module `⊕ S/J_k(−b_k)` with random nonzero
/// rational coefficients on the relations.
pub fn random_module(rng: &mut SampleRng, ring: &Arc<GradedRing>, shape: ModuleShape) -> PresentedModule {
    let n = ring.nvars();
    let count = rng.gen_range(1..=shape.max_generators.max(1));
    let mut generators = Vec::with_capacity(count);
    let mut columns = Vec::new();
    for row in 0..count {
        generators.push(random_element(rng, ring, shape.twist_bound));
        for m in random_monomial_ideal(rng, n, shape.ideal).generators() {
            let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=3i64);
            let coeff = BigRational::new(BigInt::from(num), BigInt::from(den));
            columns.push(ColumnSpec {
                degree: None,
                entries: vec![(row, Term::new(coeff, m.clone()).expect("nonzero coefficient"))],
            });
        }
    }
    PresentedModule::new(ring.clone(), generators, columns).expect("homogeneous by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_output_is_reproducible() {
        let ring = Arc::new(GradedRing::weighted(&[1, 1, 2]));
        let a: Vec<_> = {
            let mut r = rng(7);
            (0..5).map(|_| random_module(&mut r, &ring, ModuleShape::default())).collect()
        };
        let b: Vec<_> = {
            let mut r = rng(7);
            (0..5).map(|_| random_module(&mut r, &ring, ModuleShape::default())).collect()
        };
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..50 {
            assert!(!random_monomial_ideal(&mut r, 3, IdealShape::default()).is_unit());
        }
    }
}
