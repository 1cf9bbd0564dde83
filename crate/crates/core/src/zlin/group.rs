use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::{smith_normal_form, SmithForm};
use super::IntMatrix;
use crate::error::{check_len, Error, Result};

/// Reduction data for the lattice spanned by the columns of a `k × m` matrix.
///
/// With `u * M * v = d` (rank `r`), quotient coordinates of a vector `x` are
/// `q = u * x`; coordinates `i < r` live in `Z/d_i`, the rest are free.
#[derive(Clone, Debug)]
pub(crate) struct LatticeReducer {
    snf: SmithForm,
    diag: Vec<BigInt>,
    rank: usize,
    ambient: usize,
}

impl LatticeReducer {
    pub(crate) fn new(spanning: &IntMatrix) -> Self {
        let snf = smith_normal_form(spanning);
        let diag = snf.diagonal();
        let rank = diag.iter().take_while(|d| !d.is_zero()).count();
        LatticeReducer {
            ambient: spanning.rows(),
            snf,
            diag,
            rank,
        }
    }

    /// Modulus of quotient coordinate `i`: `Some(d_i)` (possibly 1) for
    /// `i < rank`, `None` for free coordinates.
    pub(crate) fn modulus(&self, i: usize) -> Option<&BigInt> {
        (i < self.rank).then(|| &self.diag[i])
    }

    pub(crate) fn quotient_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.snf.u.mul_vec(x)
    }

    pub(crate) fn lift(&self, q: &[BigInt]) -> Vec<BigInt> {
        self.snf.u_inv.mul_vec(q)
    }

    /// Unique lift of the class of `x`: torsion coordinates reduced into
    /// `[0, d_i)`, killed coordinates zeroed, free coordinates kept.
    pub(crate) fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut q = self.quotient_coords(x);
        for (i, qi) in q.iter_mut().enumerate().take(self.rank) {
            *qi = qi.mod_floor(&self.diag[i]);
        }
        self.lift(&q)
    }

    /// Integer coefficients `c` with `M * c = x`, if `x` lies in the lattice.
    pub(crate) fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let q = self.quotient_coords(x);
        let mut z = vec![BigInt::zero(); self.snf.v.rows()];
        for (i, qi) in q.iter().enumerate() {
            if i < self.rank {
                let (quo, rem) = qi.div_mod_floor(&self.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                z[i] = quo;
            } else if !qi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub(crate) fn invariants(&self) -> QuotientInvariants {
        QuotientInvariants {
            free_rank: self.ambient - self.rank,
            torsion: self.diag[..self.rank]
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }
}

/// Invariant-factor decomposition `Z^free_rank ⊕ Z/t_1 ⊕ ...` with `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn trivial() -> Self {
        QuotientInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for QuotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

struct GroupInner {
    ambient_rank: usize,
    relations: IntMatrix,
    lattice: LatticeReducer,
}

/// Finitely generated abelian group `Z^k / L`, `L` spanned by the columns of
/// `relations`.
#[derive(Clone)]
pub struct FgAbelianGroup {
    inner: Arc<GroupInner>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ambient_rank == other.inner.ambient_rank
                && self.inner.relations == other.inner.relations)
    }
}

impl Eq for FgAbelianGroup {}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FgAbelianGroup")
            .field("ambient_rank", &self.inner.ambient_rank)
            .field("relations", &self.inner.relations)
            .finish()
    }
}

/// Element of an [`FgAbelianGroup`], always stored as the canonical lift of
/// its class modulo the relation lattice, so `==` is congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FgAbelianGroup {
    pub fn new(ambient_rank: usize, relations: IntMatrix) -> Result<Self> {
        check_len(ambient_rank, relations.rows())?;
        let lattice = LatticeReducer::new(&relations);
        Ok(FgAbelianGroup {
            inner: Arc::new(GroupInner {
                ambient_rank,
                relations,
                lattice,
            }),
        })
    }

    /// `Z^rank` with no relations.
    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("shape is consistent")
    }

    /// `Z^free_rank ⊕ Z/t_1 ⊕ ...` realized on `free_rank + torsion.len()`
    /// coordinates with relations `diag(0, ..., 0, t_1, ...)`.
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Result<Self> {
        let k = free_rank + torsion.len();
        let mut rel = IntMatrix::zeros(k, torsion.len());
        for (j, t) in torsion.iter().enumerate() {
            if t.is_zero() || t < &BigInt::zero() {
                return Err(Error::Input(format!(
                    "torsion orders must be positive, got {t}"
                )));
            }
            rel.set(free_rank + j, j, t.clone());
        }
        Self::new(k, rel)
    }

    pub fn ambient_rank(&self) -> usize {
        self.inner.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.inner.relations
    }

    pub(crate) fn lattice(&self) -> &LatticeReducer {
        &self.inner.lattice
    }

    pub fn invariants(&self) -> QuotientInvariants {
        self.inner.lattice.invariants()
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        check_len(self.ambient_rank(), coords.len())?;
        Ok(GroupElement {
            coords: self.inner.lattice.reduce(&coords),
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.ambient_rank()],
        }
    }

    fn combine(&self, coords: Vec<BigInt>) -> GroupElement {
        GroupElement {
            coords: self.inner.lattice.reduce(&coords),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.combine(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.combine(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.combine(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.combine(a.coords.iter().map(|x| x * k).collect())
    }

    /// `Σ k_i · a_i`.
    pub fn combination<'a, I>(&self, terms: I) -> GroupElement
    where
        I: IntoIterator<Item = (BigInt, &'a GroupElement)>,
    {
        let mut acc = vec![BigInt::zero(); self.ambient_rank()];
        for (k, a) in terms {
            for (s, x) in acc.iter_mut().zip(&a.coords) {
                *s += &k * x;
            }
        }
        self.combine(acc)
    }

    pub(crate) fn check(&self, g: &GroupElement) -> Result<()> {
        check_len(self.ambient_rank(), g.len())
    }
}

/// Subgroup `⟨generators⟩ ≤ G`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: FgAbelianGroup,
    generators: Vec<GroupElement>,
    lattice: LatticeReducer,
}

impl Subgroup {
    pub fn new(group: &FgAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        for g in &generators {
            group.check(g)?;
        }
        let k = group.ambient_rank();
        let gens = IntMatrix::from_columns(
            k,
            &generators.iter().map(|g| g.coords.clone()).collect::<Vec<_>>(),
        )?;
        let spanning = gens.hcat(group.relations())?;
        Ok(Subgroup {
            group: group.clone(),
            generators,
            lattice: LatticeReducer::new(&spanning),
        })
    }

    pub fn trivial(group: &FgAbelianGroup) -> Self {
        Self::new(group, Vec::new()).expect("no generators to check")
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Integer coefficients `c` with `Σ c_i · gen_i ≡ g (mod L)`, if any.
    pub fn membership(&self, g: &GroupElement) -> Result<Option<Vec<BigInt>>> {
        self.group.check(g)?;
        Ok(self.lattice.solve(&g.coords).map(|mut c| {
            c.truncate(self.generators.len());
            c
        }))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.group.check(g).is_ok() && self.lattice.solve(&g.coords).is_some()
    }

    /// Canonical representative of `g + H`.
    pub fn canonical_rep(&self, g: &GroupElement) -> Result<GroupElement> {
        self.group.check(g)?;
        Ok(self.group.combine(self.lattice.reduce(&g.coords)))
    }

    pub fn quotient_invariants(&self) -> QuotientInvariants {
        self.lattice.invariants()
    }

    /// Canonical coset representatives of `G/H` whose free quotient
    /// coordinates lie in `[-window, window]` (all torsion residues).
    ///
    /// Fails with a resource error if more than `limit` representatives
    /// would be produced.
    pub fn coset_representatives(&self, window: u64, limit: usize) -> Result<Vec<GroupElement>> {
        let k = self.group.ambient_rank();
        let mut ranges: Vec<(BigInt, BigInt)> = Vec::with_capacity(k);
        let mut total: u128 = 1;
        for i in 0..k {
            let (lo, hi) = match self.lattice.modulus(i) {
                Some(m) => (BigInt::zero(), m - 1),
                None => (-BigInt::from(window), BigInt::from(window)),
            };
            let width: u128 = u128::try_from(&hi - &lo + 1u32).unwrap_or(u128::MAX);
            total = total.saturating_mul(width);
            ranges.push((lo, hi));
        }
        if total > limit as u128 {
            return Err(Error::Resource(format!(
                "{total} coset representatives exceed the limit {limit}"
            )));
        }
        let mut out = Vec::new();
        let mut q: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            out.push(self.group.combine(self.lattice.lift(&q)));
            let mut i = 0;
            loop {
                if i == k {
                    out.sort();
                    out.dedup();
                    return Ok(out);
                }
                if q[i] < ranges[i].1 {
                    q[i] += 1;
                    break;
                }
                q[i] = ranges[i].0.clone();
                i += 1;
            }
        }
    }
}

/// Whether `g ∈ H + L`, with witness coefficients on the generators of `H`.
pub fn subgroup_membership(h: &Subgroup, g: &GroupElement) -> Result<Option<Vec<BigInt>>> {
    h.membership(g)
}

/// Invariants of `G / (⟨H⟩ + L)`.
pub fn quotient_invariants(g: &FgAbelianGroup, h: &Subgroup) -> Result<QuotientInvariants> {
    if h.group() != g {
        return Err(Error::Input("subgroup belongs to a different group".into()));
    }
    Ok(h.quotient_invariants())
}
