use std::cmp::Ordering;
use std::fmt;

use super::Monomial;
use crate::error::{Error, Result};

/// Monomial ideal kept as its minimal generating set, sorted by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            g.check(nvars)?;
        }
        Ok(Self::minimalized(nvars, gens))
    }

    fn minimalized(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let mut keep: Vec<Monomial> = Vec::with_capacity(gens.len());
        // A divisor has smaller total degree, so it is already in `keep`.
        for g in gens {
            if !keep.iter().any(|k| k.divides(&g)) {
                keep.push(g);
            }
        }
        MonomialIdeal { nvars, gens: keep }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// `⟨x_i : i ∈ mask⟩`.
    pub fn generated_by_variables(nvars: usize, mask: u64) -> Self {
        let gens = (0..nvars)
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| Monomial::var(nvars, i))
            .collect();
        Self::minimalized(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Mask of the variables in the ideal, if it is generated by variables
    /// (the zero ideal gives `Some(0)`).
    pub fn variable_mask(&self) -> Option<u64> {
        let mut mask = 0;
        for g in &self.gens {
            if g.total_degree() != 1 {
                return None;
            }
            mask |= g.support();
        }
        Some(mask)
    }

    /// Mask of the variables that are themselves minimal generators.
    pub fn variable_mask_part(&self) -> u64 {
        self.gens
            .iter()
            .filter(|g| g.total_degree() == 1)
            .fold(0, |m, g| m | g.support())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::minimalized(self.nvars, gens)
    }

    pub fn with_generator(&self, m: Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(m);
        Self::minimalized(self.nvars, gens)
    }

    /// `I : m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        Self::minimalized(self.nvars, self.gens.iter().map(|g| g.strip(m)).collect())
    }

    /// `I : m^∞` together with the least `e` with `I : m^e = I : m^{e+1}`.
    pub fn saturate(&self, m: &Monomial) -> (MonomialIdeal, u32) {
        let mut current = self.clone();
        let mut e = 0;
        loop {
            let next = current.colon(m);
            if next == current {
                return (current, e);
            }
            current = next;
            e += 1;
        }
    }

    /// Minimal primes, as minimal transversals of the generator supports.
    pub fn minimal_primes(&self) -> Vec<MonomialPrime> {
        if self.is_unit() {
            return Vec::new();
        }
        let mut transversals: Vec<u64> = vec![0];
        for g in &self.gens {
            let s = g.support();
            let mut next = Vec::new();
            for &t in &transversals {
                if t & s != 0 {
                    next.push(t);
                } else {
                    let mut bits = s;
                    while bits != 0 {
                        let b = bits & bits.wrapping_neg();
                        next.push(t | b);
                        bits ^= b;
                    }
                }
            }
            transversals = minimal_sets(next);
        }
        let mut primes: Vec<MonomialPrime> = transversals
            .into_iter()
            .map(|mask| MonomialPrime::new(self.nvars, mask))
            .collect();
        primes.sort();
        primes
    }
}

/// Inclusion-minimal members of a family of bitsets, deduplicated.
pub(crate) fn minimal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut keep: Vec<u64> = Vec::new();
    for s in sets {
        if !keep.iter().any(|&k| k & !s == 0) {
            keep.push(s);
        }
    }
    keep
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `I : m`, minimalized.
pub fn ideal_colon_monomial(i: &MonomialIdeal, m: &Monomial) -> Result<MonomialIdeal> {
    m.check(i.nvars)?;
    Ok(i.colon(m))
}

/// `I : m^∞` and the stabilization exponent.
pub fn ideal_saturate_monomial(i: &MonomialIdeal, m: &Monomial) -> Result<(MonomialIdeal, u32)> {
    m.check(i.nvars)?;
    Ok(i.saturate(m))
}

pub fn minimal_primes(i: &MonomialIdeal) -> Vec<MonomialPrime> {
    i.minimal_primes()
}

/// The prime `⟨x_i : i ∈ I⟩`; the empty set encodes the zero ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    nvars: usize,
    mask: u64,
}

impl MonomialPrime {
    pub fn new(nvars: usize, mask: u64) -> Self {
        debug_assert!(nvars == 64 || mask >> nvars == 0);
        MonomialPrime { nvars, mask }
    }

    pub fn from_indices(nvars: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= nvars {
                return Err(Error::Input(format!(
                    "variable index {i} out of range for {nvars} variables"
                )));
            }
            mask |= 1 << i;
        }
        Ok(MonomialPrime { nvars, mask })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialPrime { nvars, mask: 0 }
    }

    /// `⟨x_0, ..., x_n⟩`.
    pub fn maximal(nvars: usize) -> Self {
        let mask = if nvars == 64 { u64::MAX } else { (1u64 << nvars) - 1 };
        MonomialPrime { nvars, mask }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.nvars).filter(|i| (self.mask >> i) & 1 == 1).collect()
    }

    pub fn contains_var(&self, i: usize) -> bool {
        (self.mask >> i) & 1 == 1
    }

    /// A monomial lies in the prime iff one of its variables does.
    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        m.support() & self.mask != 0
    }

    /// `B ⊆ p`: every generator of `B` has a variable in the prime.
    pub fn contains_ideal(&self, ideal: &MonomialIdeal) -> bool {
        ideal.generators().iter().all(|g| self.contains_monomial(g))
    }

    pub fn is_subset_of(&self, other: &MonomialPrime) -> bool {
        self.mask & other.mask == self.mask
    }

    pub fn as_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::generated_by_variables(self.nvars, self.mask)
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| format!("x{i}")).collect();
        if parts.is_empty() {
            write!(f, "<0>")
        } else {
            write!(f, "<{}>", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| mono(g)).collect()).unwrap()
    }

    #[test]
    fn generators_are_minimalized() {
        let i = ideal(2, &[&[2, 1], &[1, 0], &[0, 3]]);
        assert_eq!(i.generators(), &[mono(&[1, 0]), mono(&[0, 3])]);
    }

    #[test]
    fn colon_examples() {
        assert_eq!(ideal(1, &[&[2]]).colon(&mono(&[1])), ideal(1, &[&[1]]));
        assert_eq!(ideal(2, &[&[1, 1]]).colon(&mono(&[1, 0])), ideal(2, &[&[0, 1]]));
        let i = ideal(2, &[&[1, 1]]);
        assert!(i.colon(&mono(&[2, 3])).is_unit());
    }

    #[test]
    fn saturation_examples() {
        let x0 = mono(&[1, 0, 0]);
        let (s, e) = ideal(3, &[&[2, 1, 0], &[1, 0, 1]]).saturate(&x0);
        assert_eq!(s, ideal(3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(e, 2);

        let p = MonomialIdeal::generated_by_variables(3, 0b011);
        assert_eq!(p.saturate(&mono(&[0, 0, 1])), (p.clone(), 0));

        assert!(ideal(2, &[&[1, 0]]).saturate(&mono(&[1, 0])).0.is_unit());
    }

    #[test]
    fn minimal_prime_examples() {
        let primes = |i: &MonomialIdeal| -> Vec<Vec<usize>> {
            i.minimal_primes().iter().map(MonomialPrime::indices).collect()
        };
        assert_eq!(primes(&ideal(2, &[&[1, 1]])), vec![vec![0], vec![1]]);
        assert_eq!(primes(&ideal(2, &[&[1, 0], &[0, 1]])), vec![vec![0, 1]]);
        assert_eq!(
            primes(&ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(primes(&MonomialIdeal::zero(2)), vec![Vec::<usize>::new()]);
        assert!(MonomialIdeal::unit(2).minimal_primes().is_empty());
    }

    #[test]
    fn prime_containment() {
        let p = MonomialPrime::from_indices(3, &[0, 1]).unwrap();
        let m = MonomialIdeal::generated_by_variables(3, 0b111);
        assert!(!p.contains_ideal(&m));
        assert!(MonomialPrime::maximal(3).contains_ideal(&m));
        assert!(!MonomialPrime::maximal(3).contains_ideal(&MonomialIdeal::unit(3)));
        assert!(MonomialPrime::from_indices(3, &[3]).is_err());
    }
}
