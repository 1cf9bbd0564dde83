use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::Monomial;
use crate::error::{check_len, Error, Result};
use crate::zlin::{
    enumerate_nonneg_solutions, hilbert_basis, FgAbelianGroup, GroupElement, IntMatrix,
    NonnegSolutions,
};

pub const MAX_VARIABLES: usize = 64;

/// Variable degrees rewritten in the quotient coordinates of the group:
/// free rows give linear equations, torsion rows congruences.
#[derive(Clone, Debug)]
struct DegreeSystem {
    free_rows: Vec<usize>,
    torsion_rows: Vec<(usize, BigInt)>,
    free: IntMatrix,
    torsion: Vec<Vec<BigInt>>,
    homogeneous_witness: Option<Vec<u64>>,
    // Row combination `y` with `yᵀA > 0` entrywise, plus `A` and `yᵀA` as i64.
    positive: Option<PositiveFunctional>,
}

#[derive(Clone, Debug)]
struct PositiveFunctional {
    y: Vec<i64>,
    weights: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl PositiveFunctional {
    /// Tries every sign pattern on the rows (few rows in practice).
    fn find(free: &IntMatrix) -> Option<Self> {
        let r = free.rows();
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| free.row(i).iter().map(|x| i64::try_from(x).ok()).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        if r == 0 || r > 6 {
            return None;
        }
        for pattern in 0..3usize.pow(r as u32) {
            let mut p = pattern;
            let y: Vec<i64> = (0..r)
                .map(|_| {
                    let c = [0, 1, -1][p % 3];
                    p /= 3;
                    c
                })
                .collect();
            let weights: Vec<i64> = (0..free.cols())
                .map(|j| rows.iter().zip(&y).map(|(row, c)| row[j] * c).sum())
                .collect();
            if weights.iter().all(|&w| w > 0) {
                return Some(PositiveFunctional { y, weights, rows });
            }
        }
        None
    }

    /// Nonnegative solutions of `A e = b` by bounded search on `yᵀA e = y·b`.
    fn solutions(&self, b: &[BigInt]) -> Option<Vec<Vec<u64>>> {
        let b: Vec<i64> = b.iter().map(|x| i64::try_from(x).ok()).collect::<Option<_>>()?;
        let total: i64 = self.y.iter().zip(&b).map(|(c, x)| c * x).sum();
        let mut out = Vec::new();
        if total < 0 {
            return Some(out);
        }
        let mut e = vec![0u64; self.weights.len()];
        self.search(0, total, &mut e, &b, &mut out);
        Some(out)
    }

    fn search(&self, j: usize, left: i64, e: &mut Vec<u64>, b: &[i64], out: &mut Vec<Vec<u64>>) {
        if j == e.len() {
            let ok = left == 0
                && self
                    .rows
                    .iter()
                    .zip(b)
                    .all(|(row, &t)| row.iter().zip(e.iter()).map(|(a, &x)| a * x as i64).sum::<i64>() == t);
            if ok {
                out.push(e.clone());
            }
            return;
        }
        let w = self.weights[j];
        for k in 0..=left / w {
            e[j] = k as u64;
            self.search(j + 1, left - k * w, e, b, out);
        }
        e[j] = 0;
    }
}

/// `ℚ[x_0, ..., x_n]` graded by a finitely generated abelian group.
#[derive(Clone)]
pub struct GradedRing {
    group: FgAbelianGroup,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    system: DegreeSystem,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.names == other.names && self.degrees == other.degrees
    }
}

impl Eq for GradedRing {}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRing")
            .field("group", &self.group)
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .finish()
    }
}

impl GradedRing {
    pub fn new(group: FgAbelianGroup, names: Vec<String>, degrees: Vec<GroupElement>) -> Result<Self> {
        check_len(names.len(), degrees.len())?;
        if names.len() > MAX_VARIABLES {
            return Err(Error::Input(format!(
                "{} variables exceed the supported maximum of {MAX_VARIABLES}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::Input(format!("variable name {n:?} is empty or repeated")));
            }
        }
        for d in &degrees {
            group.check(d)?;
        }
        let system = Self::degree_system(&group, &degrees)?;
        Ok(GradedRing {
            group,
            names,
            degrees,
            system,
        })
    }

    /// Variables named `x0, x1, ...`.
    pub fn with_degrees(group: FgAbelianGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        let names = (0..degrees.len()).map(|i| format!("x{i}")).collect();
        Self::new(group, names, degrees)
    }

    /// `ℤ`-graded ring with the given integer weights.
    pub fn weighted(weights: &[i64]) -> Self {
        let g = FgAbelianGroup::free(1);
        let degrees = weights
            .iter()
            .map(|&w| g.element_i64(&[w]).expect("rank one"))
            .collect();
        Self::with_degrees(g, degrees).expect("weights form a valid ring")
    }

    fn degree_system(group: &FgAbelianGroup, degrees: &[GroupElement]) -> Result<DegreeSystem> {
        let lattice = group.lattice();
        let images: Vec<Vec<BigInt>> = degrees
            .iter()
            .map(|d| lattice.quotient_coords(d.coords()))
            .collect();
        let mut free_rows = Vec::new();
        let mut torsion_rows = Vec::new();
        for i in 0..group.ambient_rank() {
            match lattice.modulus(i) {
                None => free_rows.push(i),
                Some(m) if m > &BigInt::from(1) => torsion_rows.push((i, m.clone())),
                Some(_) => {}
            }
        }
        let row = |i: usize| -> Vec<BigInt> { images.iter().map(|c| c[i].clone()).collect() };
        let mut free = IntMatrix::zeros(free_rows.len(), degrees.len());
        for (r, &i) in free_rows.iter().enumerate() {
            for (j, x) in row(i).into_iter().enumerate() {
                free.set(r, j, x);
            }
        }
        let torsion = torsion_rows.iter().map(|(i, _)| row(*i)).collect();
        let homogeneous_witness = hilbert_basis(&free).into_iter().next();
        let positive = PositiveFunctional::find(&free);
        Ok(DegreeSystem {
            positive,
            free_rows,
            torsion_rows,
            free,
            torsion,
            homogeneous_witness,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    /// Degrees of the variables in `mask`.
    pub fn degrees_in(&self, mask: u64) -> Vec<GroupElement> {
        (0..self.nvars())
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| self.degrees[i].clone())
            .collect()
    }

    pub fn all_vars_mask(&self) -> u64 {
        match self.nvars() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Result<GroupElement> {
        m.check(self.nvars())?;
        Ok(self.group.combination(
            m.exponents()
                .iter()
                .zip(&self.degrees)
                .map(|(&e, d)| (BigInt::from(e), d)),
        ))
    }

    /// True when `deg(m) = 0` forces `m = 1`, i.e. every graded piece of `S`
    /// is finite dimensional.
    pub fn is_pointed(&self) -> bool {
        self.system.homogeneous_witness.is_none()
    }

    /// A nonconstant monomial of degree zero, if the grading is not pointed.
    pub fn degree_zero_witness(&self) -> Option<Monomial> {
        let w = self.system.homogeneous_witness.as_ref()?;
        // Kill the torsion part as well: scale by the torsion exponent.
        let e = self
            .system
            .torsion_rows
            .iter()
            .fold(BigInt::from(1), |acc, (_, m)| acc.lcm(m));
        let e = u32::try_from(&e).unwrap_or(u32::MAX);
        Some(Monomial::new(w.iter().map(|&x| x as u32 * e).collect()))
    }

    /// All monomials of degree `g`; requires a pointed grading.
    pub fn monomials_of_degree(&self, g: &GroupElement) -> Result<Vec<Monomial>> {
        self.group.check(g)?;
        if !self.is_pointed() {
            return Err(Error::NeedsBound);
        }
        let q = self.group.lattice().quotient_coords(g.coords());
        let b: Vec<BigInt> = self.system.free_rows.iter().map(|&i| q[i].clone()).collect();
        let fast = self.system.positive.as_ref().and_then(|p| p.solutions(&b));
        let sols = match fast {
            Some(s) => s,
            None => match enumerate_nonneg_solutions(&self.system.free, &b)? {
                NonnegSolutions::Finite(s) => s,
                NonnegSolutions::Infinite { .. } => {
                    return Err(Error::Invariant("pointed grading reported infinite".into()))
                }
            },
        };
        let targets: Vec<BigInt> = self.system.torsion_rows.iter().map(|(i, _)| q[*i].clone()).collect();
        let mut out: Vec<Monomial> = sols
            .into_iter()
            .filter(|e| {
                self.system
                    .torsion
                    .iter()
                    .zip(&self.system.torsion_rows)
                    .zip(&targets)
                    .all(|((row, (_, m)), t)| {
                        let s: BigInt = row.iter().zip(e).map(|(a, &x)| a * x).sum();
                        (s - t).is_multiple_of(m)
                    })
            })
            .map(|e| Monomial::new(e.into_iter().map(|x| x as u32).collect()))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Monomials of degree `g` with total degree at most `cap`; works for any grading.
    pub fn monomials_of_degree_capped(&self, g: &GroupElement, cap: u32) -> Result<Vec<Monomial>> {
        self.group.check(g)?;
        let mut out = Vec::new();
        self.for_each_monomial_up_to(cap, &mut |m| {
            if &self.monomial_degree(m).expect("length matches") == g {
                out.push(m.clone());
            }
        });
        out.sort();
        Ok(out)
    }

    /// Visits every monomial of total degree `≤ cap`.
    pub(crate) fn for_each_monomial_up_to(&self, cap: u32, visit: &mut dyn FnMut(&Monomial)) {
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, visit: &mut dyn FnMut(&Monomial)) {
            if i == exps.len() {
                visit(&Monomial::new(exps.clone()));
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, visit);
            }
            exps[i] = 0;
        }
        let mut exps = vec![0; self.nvars()];
        rec(0, cap, &mut exps, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_degrees() {
        let r = GradedRing::weighted(&[1, 1, 2]);
        let g = r.group().clone();
        assert_eq!(r.monomial_degree(&Monomial::new(vec![1, 1, 0])).unwrap(), g.element_i64(&[2]).unwrap());
        assert_eq!(r.monomial_degree(&Monomial::one(3)).unwrap(), g.zero());
        assert!(r.monomial_degree(&Monomial::one(2)).is_err());

        let z2 = FgAbelianGroup::from_invariants(0, &[BigInt::from(2)]).unwrap();
        let one = z2.element_i64(&[1]).unwrap();
        let r = GradedRing::with_degrees(z2.clone(), vec![one.clone(), one]).unwrap();
        assert_eq!(r.monomial_degree(&Monomial::new(vec![1, 1])).unwrap(), z2.zero());
        assert!(!r.is_pointed());
        assert_eq!(r.degree_zero_witness().map(|m| r.monomial_degree(&m).unwrap()), Some(z2.zero()));
    }

    #[test]
    fn bounded_search_matches_generic_solver() {
        let g = FgAbelianGroup::free(2);
        let degrees = [[1, 0], [1, 1], [0, 1], [2, -1]]
            .iter()
            .map(|d| g.element_i64(d).unwrap())
            .collect();
        let r = GradedRing::with_degrees(g.clone(), degrees).unwrap();
        assert!(r.system.positive.is_some());
        for a in -2..=5 {
            for b in -2..=5 {
                let t = g.element_i64(&[a, b]).unwrap();
                let q = r.group.lattice().quotient_coords(t.coords());
                let NonnegSolutions::Finite(mut s) = enumerate_nonneg_solutions(&r.system.free, &q).unwrap() else {
                    panic!("pointed");
                };
                s.sort();
                let mut got: Vec<Vec<u64>> = r
                    .monomials_of_degree(&t)
                    .unwrap()
                    .iter()
                    .map(|m| m.exponents().iter().map(|&x| x as u64).collect())
                    .collect();
                got.sort();
                assert_eq!(got, s);
            }
        }
    }

    #[test]
    fn pieces_of_p112() {
        let r = GradedRing::weighted(&[1, 1, 2]);
        let two = r.group().element_i64(&[2]).unwrap();
        assert_eq!(r.monomials_of_degree(&two).unwrap().len(), 4);
        assert_eq!(r.monomials_of_degree_capped(&two, 10).unwrap(), r.monomials_of_degree(&two).unwrap());
        assert!(r.is_pointed());
    }

    #[test]
    fn degree_zero_variable_is_not_pointed() {
        let r = GradedRing::weighted(&[1, 1, 0]);
        assert!(!r.is_pointed());
        assert_eq!(r.monomials_of_degree(&r.group().zero()), Err(Error::NeedsBound));
    }

    #[test]
    fn repeated_names_rejected() {
        let g = FgAbelianGroup::free(1);
        let d = vec![g.element_i64(&[1]).unwrap(); 2];
        assert!(GradedRing::new(g, vec!["x".into(), "x".into()], d).is_err());
    }
}
