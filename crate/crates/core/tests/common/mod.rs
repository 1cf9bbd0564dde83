//! Shared seeded instance generators for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use atomspec::atoms::AtomPoint;
use atomspec::gring::{GradedRing, Monomial, MonomialIdeal, MonomialPrime};
use atomspec::sample::{random_element, random_monomial_ideal, IdealShape, SampleRng};
use atomspec::zlin::GroupElement;
use rand::Rng;

/// A non-standard atom `(p, g)`, an ideal `J ⊇ p` and a monomial `m ∉ J`.
pub struct Subquotient {
    pub ring: Arc<GradedRing>,
    pub prime: MonomialPrime,
    pub g: GroupElement,
    pub j: MonomialIdeal,
    pub m: Monomial,
}

impl Subquotient {
    /// `⟨m̄⟩ ⊆ S/J(g)` is `S/(J:m)(g − deg m)`.
    pub fn cyclic(&self) -> (MonomialIdeal, GroupElement) {
        let group = self.ring.group();
        let d = self.ring.monomial_degree(&self.m).unwrap();
        (self.j.colon(&self.m), group.sub(&self.g, &d))
    }
}

/// Draws until a non-standard atom with a valid `(J, m)` turns up.
pub fn random_subquotient(rng: &mut SampleRng, rings: &[Arc<GradedRing>]) -> Subquotient {
    loop {
        let ring = rings[rng.gen_range(0..rings.len())].clone();
        let n = ring.nvars();
        let prime = MonomialPrime::new(n, rng.gen_range(0..1u64 << n));
        let g = random_element(rng, &ring, 3);
        let atom = AtomPoint::new(ring.clone(), prime, &g).unwrap();
        if atom.is_standard() {
            continue;
        }
        let extra = random_monomial_ideal(rng, n, IdealShape { max_generators: 3, max_exponent: 2 });
        let j = prime.as_ideal().sum(&extra);
        let m = Monomial::new((0..n).map(|_| rng.gen_range(0..=2)).collect());
        if j.contains(&m) {
            continue;
        }
        return Subquotient { ring, prime, g, j, m };
    }
}

/// Minimal primes of a monomial ideal by brute force over all variable subsets.
pub fn transversal_minimal_primes(i: &MonomialIdeal) -> Vec<u64> {
    let n = i.nvars();
    let covers: Vec<u64> = (0..1u64 << n)
        .filter(|s| i.generators().iter().all(|g| g.support() & s != 0))
        .collect();
    let mut out: Vec<u64> = covers
        .iter()
        .copied()
        .filter(|s| !covers.iter().any(|t| t != s && t & s == *t))
        .collect();
    out.sort();
    out
}
