//! Cox data: a graded polynomial ring with a downward-closed family `Σ`,
//! either given directly or derived from a fan.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gring::{GradedRing, Monomial, MonomialIdeal, MAX_VARIABLES};
use crate::zlin::{row_hermite_form, smith_normal_form, FgAbelianGroup, IntMatrix};

// Downward closure enumerates every subset of every member.
const CLOSURE_LIMIT: u128 = 1 << 22;

/// Nonempty downward-closed family of subsets of `{0, ..., n}`, stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaComplex {
    ground: usize,
    members: BTreeSet<u64>,
}

impl SigmaComplex {
    /// Downward closure of the given subsets.
    pub fn new(ground: usize, subsets: &[Vec<usize>]) -> Result<Self> {
        let masks = subsets
            .iter()
            .map(|s| index_mask(ground, s))
            .collect::<Result<Vec<u64>>>()?;
        Self::from_masks(ground, &masks)
    }

    pub fn from_masks(ground: usize, masks: &[u64]) -> Result<Self> {
        if ground > MAX_VARIABLES {
            return Err(Error::Input(format!("ground set of size {ground} is too large")));
        }
        if masks.is_empty() {
            return Err(Error::Input("the family of cones must be nonempty".into()));
        }
        let full = full_mask(ground);
        if masks.iter().any(|m| m & !full != 0) {
            return Err(Error::Input(format!("subset out of range for ground set of size {ground}")));
        }
        let total: u128 = masks.iter().map(|m| 1u128 << m.count_ones()).sum();
        if total > CLOSURE_LIMIT {
            return Err(Error::Resource(format!(
                "downward closure would enumerate {total} subsets"
            )));
        }
        let mut members = BTreeSet::new();
        for &m in masks {
            // All submasks of m, including 0.
            let mut s = m;
            loop {
                members.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & m;
            }
        }
        Ok(SigmaComplex { ground, members })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.contains(&mask)
    }

    /// Members not strictly contained in another member.
    pub fn maximal(&self) -> Vec<u64> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !self.members.iter().any(|&t| t != s && t & s == s))
            .collect()
    }

    /// Members as sorted index lists.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| mask_indices(self.ground, m)).collect()
    }

    /// `x^σ̂ = ∏_{i ∉ σ} x_i`.
    pub fn complement_monomial(&self, sigma: u64) -> Monomial {
        Monomial::product_of(self.ground, full_mask(self.ground) & !sigma)
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_indices(n: usize, m: u64) -> Vec<usize> {
    (0..n).filter(|i| (m >> i) & 1 == 1).collect()
}

fn index_mask(n: usize, s: &[usize]) -> Result<u64> {
    s.iter().try_fold(0u64, |m, &i| {
        if i >= n {
            Err(Error::Input(format!("index {i} out of range for {n} variables")))
        } else {
            Ok(m | (1 << i))
        }
    })
}

/// A Cox ring together with its family `Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxData {
    ring: Arc<GradedRing>,
    sigma: SigmaComplex,
}

impl CoxData {
    pub fn new(ring: Arc<GradedRing>, sigma: SigmaComplex) -> Result<Self> {
        if sigma.ground() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: sigma.ground(),
            });
        }
        Ok(CoxData { ring, sigma })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn sigma(&self) -> &SigmaComplex {
        &self.sigma
    }
}

/// Rays are the columns of `rays` (a `d × (n+1)` matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanInput {
    pub rays: IntMatrix,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanInput {
    pub fn from_rays(rays: &[Vec<i64>], max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let d = rays.first().map_or(0, Vec::len);
        let cols: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| {
                if r.len() != d {
                    Err(Error::DimensionMismatch { expected: d, found: r.len() })
                } else {
                    Ok(r.iter().map(|&x| BigInt::from(x)).collect())
                }
            })
            .collect::<Result<_>>()?;
        Ok(FanInput {
            rays: IntMatrix::from_columns(d, &cols)?,
            max_cones,
        })
    }
}

/// Cox data of the toric variety of a fan.
///
/// `G = ℤ^{n+1} / {(⟨m, v_0⟩, ..., ⟨m, v_n⟩)}` presented as `ℤ^r ⊕ ⊕ ℤ/t_j`
/// (free coordinates first), `deg x_i` the image of `e_i`.
pub fn cox_from_fan(f: &FanInput) -> Result<CoxData> {
    let d = f.rays.rows();
    let n1 = f.rays.cols();
    let rays = f.rays.columns();
    for (i, r) in rays.iter().enumerate() {
        let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            return Err(Error::Input(format!("ray {i} is not primitive")));
        }
        if rays[..i].contains(r) {
            return Err(Error::Input(format!("ray {i} is repeated")));
        }
    }
    // Rows of the pairing matrix are the rays.
    let pairing = f.rays.transpose();
    let snf = smith_normal_form(&pairing);
    let rank = snf.rank();
    if rank != d {
        return Err(Error::TorusFactor { rank, dim: d });
    }
    let diag = snf.diagonal();
    let torsion_rows: Vec<usize> = (0..rank).filter(|&i| diag[i] > BigInt::one()).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
    let free_rank = n1 - rank;

    // Column j of U is the image of e_j in the quotient coordinates.
    let free_block = IntMatrix::try_from_rows(
        &(rank..n1).map(|i| snf.u.row(i).to_vec()).collect::<Vec<_>>(),
    )?;
    let free_block = if free_rank == 0 {
        IntMatrix::zeros(0, n1)
    } else {
        row_hermite_form(&free_block)
    };
    let group = FgAbelianGroup::from_invariants(free_rank, &torsion)?;
    let degrees = (0..n1)
        .map(|j| {
            let mut c: Vec<BigInt> = (0..free_rank).map(|i| free_block.get(i, j).clone()).collect();
            c.extend(torsion_rows.iter().map(|&i| snf.u.get(i, j).clone()));
            group.element(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let ring = Arc::new(GradedRing::with_degrees(group, degrees)?);
    let sigma = SigmaComplex::new(n1, &f.max_cones)?;
    CoxData::new(ring, sigma)
}

/// `B(Σ) = ⟨x^σ̂ : σ ∈ Σ⟩`, generated by the maximal members.
pub fn irrelevant_ideal(c: &CoxData) -> MonomialIdeal {
    let s = c.sigma();
    let gens = s.maximal().into_iter().map(|m| s.complement_monomial(m)).collect();
    MonomialIdeal::new(s.ground(), gens).expect("monomials built over the ground set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlin::QuotientInvariants;

    fn fan(rays: &[Vec<i64>], cones: &[&[usize]]) -> FanInput {
        FanInput::from_rays(rays, cones.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn degree_coords(c: &CoxData) -> Vec<Vec<BigInt>> {
        c.ring().degrees().iter().map(|d| d.coords().to_vec()).collect()
    }

    fn ints(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn projective_plane() {
        let c = cox_from_fan(&fan(&[vec![1, 0], vec![0, 1], vec![-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])).unwrap();
        assert_eq!(c.ring().group().invariants(), QuotientInvariants { free_rank: 1, torsion: vec![] });
        assert_eq!(degree_coords(&c), ints(&[&[1], &[1], &[1]]));
        assert_eq!(irrelevant_ideal(&c), MonomialIdeal::generated_by_variables(3, 0b111));
    }

    #[test]
    fn weighted_fan() {
        let c = cox_from_fan(&fan(&[vec![1, 0], vec![0, 1], vec![-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]])).unwrap();
        assert_eq!(degree_coords(&c), ints(&[&[1], &[2], &[1]]));
    }

    #[test]
    fn torsion_fan() {
        let c = cox_from_fan(&fan(&[vec![1, 1], vec![1, -1]], &[&[0, 1]])).unwrap();
        assert_eq!(
            c.ring().group().invariants(),
            QuotientInvariants { free_rank: 0, torsion: vec![BigInt::from(2)] }
        );
        assert_eq!(degree_coords(&c), ints(&[&[1], &[1]]));
        assert!(irrelevant_ideal(&c).is_unit());
    }

    #[test]
    fn fan_errors() {
        let f = fan(&[vec![1, 0], vec![-1, 0]], &[&[0], &[1]]);
        assert_eq!(cox_from_fan(&f), Err(Error::TorusFactor { rank: 1, dim: 2 }));
        let f = fan(&[vec![2, 0], vec![0, 1]], &[&[0, 1]]);
        assert!(matches!(cox_from_fan(&f), Err(Error::Input(_))));
        let f = fan(&[vec![1, 0], vec![1, 0], vec![0, 1]], &[&[0, 2]]);
        assert!(matches!(cox_from_fan(&f), Err(Error::Input(_))));
        let f = fan(&[vec![1, 0], vec![0, 1]], &[&[0, 5]]);
        assert!(matches!(cox_from_fan(&f), Err(Error::Input(_))));
    }

    #[test]
    fn product_of_lines() {
        let r = Arc::new(GradedRing::with_degrees(
            FgAbelianGroup::free(2),
            [[1, 0], [1, 0], [0, 1], [0, 1]]
                .iter()
                .map(|d| FgAbelianGroup::free(2).element_i64(d).unwrap())
                .collect(),
        )
        .unwrap());
        let s = SigmaComplex::new(4, &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
        let c = CoxData::new(r, s).unwrap();
        let m = |e: [u32; 4]| Monomial::new(e.to_vec());
        let expected = MonomialIdeal::new(4, vec![m([0, 1, 0, 1]), m([0, 1, 1, 0]), m([1, 0, 0, 1]), m([1, 0, 1, 0])]).unwrap();
        assert_eq!(irrelevant_ideal(&c), expected);
    }

    #[test]
    fn closure() {
        let s = SigmaComplex::new(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(s.subsets(), vec![vec![], vec![0], vec![1], vec![0, 1], vec![2]]);
        assert_eq!(s.maximal(), vec![0b011, 0b100]);
        let again = SigmaComplex::from_masks(3, &s.members().collect::<Vec<_>>()).unwrap();
        assert_eq!(again, s);
        assert!(SigmaComplex::new(3, &[]).is_err());
        assert!(SigmaComplex::new(3, &[vec![3]]).is_err());
    }
}
