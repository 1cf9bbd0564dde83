//! Points `p̃(g)` of the atom spectrum, the subgroups `G_p` and the fibers of
//! the projection to homogeneous primes.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filt::prime_filtration;
use crate::gring::{minimal_sets, GradedRing, MonomialPrime, PresentedModule};
use crate::zlin::{GroupElement, QuotientInvariants, Subgroup};

pub const DEFAULT_FIBER_CLASS_CAP: usize = 20;

/// The atom `p̃(g)`, stored as `(p, canonical representative of g + G_p)`.
#[derive(Clone)]
pub struct AtomPoint {
    ring: Arc<GradedRing>,
    prime: MonomialPrime,
    rep: GroupElement,
    gp: Subgroup,
}

impl AtomPoint {
    pub fn new(ring: Arc<GradedRing>, prime: MonomialPrime, g: &GroupElement) -> Result<Self> {
        let gp = gp_subgroup(&ring, &prime)?;
        let rep = gp.canonical_rep(g)?;
        Ok(AtomPoint { ring, prime, rep, gp })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn prime(&self) -> MonomialPrime {
        self.prime
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn gp(&self) -> &Subgroup {
        &self.gp
    }

    /// `p̃(g + s)`.
    pub fn shifted(&self, s: &GroupElement) -> Result<Self> {
        let group = self.ring.group();
        group.check(s)?;
        Ok(AtomPoint {
            ring: self.ring.clone(),
            prime: self.prime,
            rep: self.gp.canonical_rep(&group.add(&self.rep, s))?,
            gp: self.gp.clone(),
        })
    }

    pub fn is_standard(&self) -> bool {
        self.rep.is_zero()
    }
}

impl PartialEq for AtomPoint {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.prime == other.prime && self.rep == other.rep
    }
}

impl Eq for AtomPoint {}

impl std::hash::Hash for AtomPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.prime.hash(state);
        self.rep.hash(state);
    }
}

impl fmt::Debug for AtomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomPoint")
            .field("prime", &self.prime.indices())
            .field("rep", &self.rep.coords())
            .finish()
    }
}

impl fmt::Display for AtomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}", self.prime, self.rep)
    }
}

/// `G_p = ⟨deg x_i : i ∉ I⟩`.
pub fn gp_subgroup(ring: &GradedRing, p: &MonomialPrime) -> Result<Subgroup> {
    if p.nvars() != ring.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            found: p.nvars(),
        });
    }
    Subgroup::new(ring.group(), ring.degrees_in(ring.all_vars_mask() & !p.mask()))
}

pub fn atom_equal(a: &AtomPoint, b: &AtomPoint) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::Input("atoms belong to different rings".into()));
    }
    Ok(a.prime == b.prime && a.rep == b.rep)
}

pub fn is_standard(a: &AtomPoint) -> bool {
    a.is_standard()
}

/// Invariants of the fiber `G/G_p`.
pub fn fiber_invariants(ring: &GradedRing, p: &MonomialPrime) -> Result<QuotientInvariants> {
    Ok(gp_subgroup(ring, p)?.quotient_invariants())
}

/// The distinct fiber types `G/G_p` over all monomial primes.
pub fn fiber_classes(ring: &GradedRing, cap: usize) -> Result<BTreeSet<QuotientInvariants>> {
    let n = ring.nvars();
    if n > cap || n >= 64 {
        return Err(Error::Resource(format!(
            "{n} variables exceed the enumeration cap {cap}"
        )));
    }
    let mut out = BTreeSet::new();
    for mask in 0..(1u64 << n) {
        out.insert(fiber_invariants(ring, &MonomialPrime::new(n, mask))?);
    }
    Ok(out)
}

/// The factor atoms `p̃_i(g_i)` of the prime filtration, deduplicated in
/// filtration order. `ASupp(M)` is the union of their atom supports.
pub fn atom_support_generators(m: &PresentedModule) -> Result<Vec<AtomPoint>> {
    let f = prime_filtration(m)?;
    let mut out: Vec<AtomPoint> = Vec::new();
    for factor in f.factors() {
        let a = AtomPoint::new(m.ring().clone(), factor.prime, &factor.twist)?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Minimal primes (by inclusion) among the filtration primes, i.e. `Supp(M)`'s
/// minimal elements.
pub fn support_minimal_primes(m: &PresentedModule) -> Result<Vec<MonomialPrime>> {
    let n = m.ring().nvars();
    let masks = prime_filtration(m)?.factors().iter().map(|f| f.prime.mask()).collect();
    let mut out: Vec<MonomialPrime> = minimal_sets(masks)
        .into_iter()
        .map(|mask| MonomialPrime::new(n, mask))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{Monomial, MonomialIdeal};
    use num_bigint::BigInt;

    fn p112() -> Arc<GradedRing> {
        Arc::new(GradedRing::weighted(&[1, 1, 2]))
    }

    fn z(r: &GradedRing, x: i64) -> GroupElement {
        r.group().element_i64(&[x]).unwrap()
    }

    fn prime(n: usize, idx: &[usize]) -> MonomialPrime {
        MonomialPrime::from_indices(n, idx).unwrap()
    }

    fn inv(free_rank: usize, torsion: &[i64]) -> QuotientInvariants {
        QuotientInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn gp_examples() {
        let r = p112();
        let g = gp_subgroup(&r, &prime(3, &[0, 1])).unwrap();
        assert!(g.contains(&z(&r, 2)) && !g.contains(&z(&r, 1)));
        assert!(!gp_subgroup(&r, &prime(3, &[0, 1, 2])).unwrap().contains(&z(&r, 1)));
        assert!(gp_subgroup(&r, &prime(3, &[])).unwrap().contains(&z(&r, 1)));
    }

    #[test]
    fn atom_equality() {
        let r = p112();
        let p = prime(3, &[0, 1]);
        let a0 = AtomPoint::new(r.clone(), p, &z(&r, 0)).unwrap();
        let a1 = AtomPoint::new(r.clone(), p, &z(&r, 1)).unwrap();
        let a2 = AtomPoint::new(r.clone(), p, &z(&r, 2)).unwrap();
        assert!(atom_equal(&a0, &a2).unwrap());
        assert!(!atom_equal(&a0, &a1).unwrap());
        let q = AtomPoint::new(r.clone(), prime(3, &[0]), &z(&r, 0)).unwrap();
        assert!(!atom_equal(&a0, &q).unwrap());
        let other = Arc::new(GradedRing::weighted(&[1, 1, 1]));
        let b = AtomPoint::new(other.clone(), p, &z(&other, 0)).unwrap();
        assert!(atom_equal(&a0, &b).is_err());
    }

    #[test]
    fn standard_points() {
        let r = p112();
        assert!(AtomPoint::new(r.clone(), prime(3, &[0]), &z(&r, 0)).unwrap().is_standard());
        assert!(!AtomPoint::new(r.clone(), prime(3, &[0, 1, 2]), &z(&r, 1)).unwrap().is_standard());
        assert!(AtomPoint::new(r.clone(), prime(3, &[0, 1]), &z(&r, 2)).unwrap().is_standard());
    }

    #[test]
    fn fibers() {
        let r = p112();
        assert_eq!(fiber_invariants(&r, &prime(3, &[0, 1, 2])).unwrap(), inv(1, &[]));
        assert_eq!(fiber_invariants(&r, &prime(3, &[0, 1])).unwrap(), inv(0, &[2]));
        assert_eq!(fiber_invariants(&r, &prime(3, &[])).unwrap(), inv(0, &[]));

        let classes = fiber_classes(&r, DEFAULT_FIBER_CLASS_CAP).unwrap();
        assert_eq!(classes, [inv(0, &[]), inv(0, &[2]), inv(1, &[])].into_iter().collect());
        let p1 = GradedRing::weighted(&[1, 1]);
        assert_eq!(fiber_classes(&p1, 20).unwrap(), [inv(0, &[]), inv(1, &[])].into_iter().collect());
        let empty = GradedRing::weighted(&[]);
        assert_eq!(fiber_classes(&empty, 20).unwrap(), [inv(1, &[])].into_iter().collect());
        assert!(matches!(fiber_classes(&r, 2), Err(Error::Resource(_))));
    }

    #[test]
    fn support_generators() {
        let t = Arc::new(GradedRing::weighted(&[1]));
        let i = MonomialIdeal::new(1, vec![Monomial::new(vec![2])]).unwrap();
        let m = PresentedModule::cyclic(t.clone(), &i, &t.group().zero()).unwrap();
        let atoms = atom_support_generators(&m).unwrap();
        let reps: Vec<_> = atoms.iter().map(|a| a.rep().clone()).collect();
        assert_eq!(reps, vec![z(&t, -1), z(&t, 0)]);
        assert_eq!(support_minimal_primes(&m).unwrap(), vec![prime(1, &[0])]);

        let r = Arc::new(GradedRing::weighted(&[1, 1]));
        let i = MonomialIdeal::new(2, vec![Monomial::new(vec![1, 1])]).unwrap();
        let m = PresentedModule::cyclic(r.clone(), &i, &r.group().zero()).unwrap();
        let atoms = atom_support_generators(&m).unwrap();
        assert_eq!(atoms[0], AtomPoint::new(r.clone(), prime(2, &[1]), &z(&r, -1)).unwrap());
        assert_eq!(atoms[1], AtomPoint::new(r.clone(), prime(2, &[0]), &z(&r, 0)).unwrap());
        assert_eq!(support_minimal_primes(&m).unwrap(), vec![prime(2, &[0]), prime(2, &[1])]);

        let p = prime(2, &[0]);
        let m = PresentedModule::cyclic(r.clone(), &p.as_ideal(), &z(&r, 4)).unwrap();
        assert_eq!(
            atom_support_generators(&m).unwrap(),
            vec![AtomPoint::new(r.clone(), p, &z(&r, 4)).unwrap()]
        );
    }

    #[test]
    fn shifting_atoms() {
        let r = p112();
        let a = AtomPoint::new(r.clone(), prime(3, &[0, 1]), &z(&r, 1)).unwrap();
        assert!(a.shifted(&z(&r, 1)).unwrap().is_standard());
        assert_eq!(a.shifted(&z(&r, 2)).unwrap(), a);
    }
}
