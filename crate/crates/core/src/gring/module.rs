use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GradedRing, Monomial, MonomialIdeal, Term};
use crate::error::{Error, Result};
use crate::zlin::{monoid_coset_membership, GroupElement};

/// One column of a presentation matrix: term entries `(row, term)`, sorted by
/// row, homogeneous of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationColumn {
    degree: GroupElement,
    entries: Vec<(usize, Term)>,
}

impl RelationColumn {
    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn entries(&self) -> &[(usize, Term)] {
        &self.entries
    }
}

/// Unvalidated column as read from input: optional degree plus entries.
#[derive(Clone, Debug)]
pub struct ColumnSpec {
    pub degree: Option<GroupElement>,
    pub entries: Vec<(usize, Term)>,
}

/// `coker( ⊕_j S(-a_j) → ⊕_i S(-b_i) )` with single-term entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    ring: Arc<GradedRing>,
    generators: Vec<GroupElement>,
    relations: Vec<RelationColumn>,
}

/// `dim_ℚ M_g`, or why it could not be given as a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceDim {
    Finite(usize),
    Infinite,
    NeedsBound,
}

impl PresentedModule {
    pub fn new(ring: Arc<GradedRing>, generators: Vec<GroupElement>, columns: Vec<ColumnSpec>) -> Result<Self> {
        let group = ring.group().clone();
        for b in &generators {
            group.check(b)?;
        }
        let mut relations = Vec::with_capacity(columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            let mut entries = col.entries;
            entries.sort_by_key(|(r, _)| *r);
            for w in entries.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Unsupported(format!(
                        "relation {j} has several terms in row {}; entries must be single terms",
                        w[0].0
                    )));
                }
            }
            let mut degree = col.degree;
            if let Some(d) = &degree {
                group.check(d)?;
            }
            for (row, term) in &entries {
                let b = generators.get(*row).ok_or_else(|| {
                    Error::Input(format!("relation {j} refers to missing generator {row}"))
                })?;
                let d = group.add(b, &ring.monomial_degree(term.monomial())?);
                match &degree {
                    None => degree = Some(d),
                    Some(a) if *a != d => {
                        return Err(Error::Input(format!(
                            "relation {j} is not homogeneous: entry in row {row} has degree {d}, expected {a}"
                        )))
                    }
                    Some(_) => {}
                }
            }
            relations.push(RelationColumn {
                degree: degree.unwrap_or_else(|| group.zero()),
                entries,
            });
        }
        Ok(PresentedModule {
            ring,
            generators,
            relations,
        })
    }

    /// `⊕_i S(-b_i)`.
    pub fn free(ring: Arc<GradedRing>, generators: Vec<GroupElement>) -> Result<Self> {
        Self::new(ring, generators, Vec::new())
    }

    pub fn zero(ring: Arc<GradedRing>) -> Self {
        PresentedModule {
            ring,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// `S/I(twist)`: one generator in degree `-twist`, one relation per
    /// minimal generator of `I`.
    pub fn cyclic(ring: Arc<GradedRing>, ideal: &MonomialIdeal, twist: &GroupElement) -> Result<Self> {
        let g = ring.group().neg(twist);
        let columns = ideal
            .generators()
            .iter()
            .map(|m| ColumnSpec {
                degree: None,
                entries: vec![(0, Term::monic(m.clone()))],
            })
            .collect();
        Self::new(ring, vec![g], columns)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &PresentedModule) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Input("direct sum of modules over different rings".into()));
        }
        let offset = self.generators.len();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|c| RelationColumn {
            degree: c.degree.clone(),
            entries: c.entries.iter().map(|(r, t)| (r + offset, t.clone())).collect(),
        }));
        Ok(PresentedModule {
            ring: self.ring.clone(),
            generators,
            relations,
        })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generator_degrees(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn relations(&self) -> &[RelationColumn] {
        &self.relations
    }

    /// `M(g)`: generator and column degrees decrease by `g`.
    pub fn shift(&self, g: &GroupElement) -> Result<Self> {
        let group = self.ring.group();
        group.check(g)?;
        Ok(PresentedModule {
            ring: self.ring.clone(),
            generators: self.generators.iter().map(|b| group.sub(b, g)).collect(),
            relations: self
                .relations
                .iter()
                .map(|c| RelationColumn {
                    degree: group.sub(&c.degree, g),
                    entries: c.entries.clone(),
                })
                .collect(),
        })
    }

    /// Permutes generators: new generator `k` is old generator `order[k]`.
    pub fn reorder_generators(&self, order: &[usize]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.generators.len()).collect::<Vec<_>>() {
            return Err(Error::Input("generator order is not a permutation".into()));
        }
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        Ok(PresentedModule {
            ring: self.ring.clone(),
            generators: order.iter().map(|&i| self.generators[i].clone()).collect(),
            relations: self
                .relations
                .iter()
                .map(|c| {
                    let mut entries: Vec<(usize, Term)> =
                        c.entries.iter().map(|(r, t)| (inverse[*r], t.clone())).collect();
                    entries.sort_by_key(|(r, _)| *r);
                    RelationColumn {
                        degree: c.degree.clone(),
                        entries,
                    }
                })
                .collect(),
        })
    }

    /// `dim_ℚ M_g`: monomial basis count of the free module in degree `g`
    /// minus the rank of the relation images landing there.
    pub fn degree_piece_dimension(&self, g: &GroupElement) -> Result<PieceDim> {
        let group = self.ring.group();
        group.check(g)?;
        if !self.ring.is_pointed() {
            return self.non_pointed_dimension(g);
        }
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for (i, b) in self.generators.iter().enumerate() {
            for m in self.ring.monomials_of_degree(&group.sub(g, b))? {
                let n = index.len();
                index.insert((i, m), n);
            }
        }
        let basis = index.len();
        if basis == 0 {
            return Ok(PieceDim::Finite(0));
        }
        let mut echelon = SparseEchelon::default();
        for col in &self.relations {
            if col.entries.is_empty() {
                continue;
            }
            for mu in self.ring.monomials_of_degree(&group.sub(g, &col.degree))? {
                let mut v: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (row, term) in &col.entries {
                    let key = (*row, mu.mul(term.monomial()));
                    let k = index
                        .get(&key)
                        .ok_or_else(|| Error::Invariant("relation image outside degree piece".into()))?;
                    *v.entry(*k).or_insert_with(BigRational::zero) += term.coeff();
                }
                echelon.insert(v);
                if echelon.rank() == basis {
                    return Ok(PieceDim::Finite(0));
                }
            }
        }
        Ok(PieceDim::Finite(basis - echelon.rank()))
    }

    fn non_pointed_dimension(&self, g: &GroupElement) -> Result<PieceDim> {
        if !self.relations.is_empty() {
            return Ok(PieceDim::NeedsBound);
        }
        let group = self.ring.group();
        for b in &self.generators {
            if monoid_coset_membership(group, self.ring.degrees(), &group.zero(), &group.sub(g, b))? {
                return Ok(PieceDim::Infinite);
            }
        }
        Ok(PieceDim::Finite(0))
    }
}

/// `M(g)`.
pub fn module_shift(m: &PresentedModule, g: &GroupElement) -> Result<PresentedModule> {
    m.shift(g)
}

pub fn degree_piece_dimension(m: &PresentedModule, g: &GroupElement) -> Result<PieceDim> {
    m.degree_piece_dimension(g)
}

/// Row echelon form over ℚ, kept sparse and keyed by leading column.
#[derive(Default)]
struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl SparseEchelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) {
        v.retain(|_, x| !x.is_zero());
        while let Some((&lead, c)) = v.iter().next() {
            let Some(pivot) = self.rows.get(&lead) else {
                let inv = BigRational::one() / c;
                for x in v.values_mut() {
                    *x *= &inv;
                }
                self.rows.insert(lead, v);
                return;
            };
            let f = c.clone();
            for (k, p) in pivot {
                let e = v.entry(*k).or_insert_with(BigRational::zero);
                *e -= &f * p;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }
}
