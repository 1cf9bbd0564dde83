//! Nonnegative integer solutions of `A x = b`.
//!
//! Everything here reduces to one search: the Contejean–Devie frontier
//! expansion, which enumerates the minimal nonzero solutions of a homogeneous
//! system `A x = 0, x ≥ 0`. A vector `x` with `A x ≠ 0` is only extended along
//! directions `e_j` with `⟨A x, A e_j⟩ < 0`, and vectors dominating an already
//! found solution are dropped. The search terminates and is complete.
//! Inhomogeneous systems are handled by homogenizing with a column `-b` whose
//! variable is capped at one.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::LatticeReducer;
use super::{FgAbelianGroup, GroupElement, IntMatrix};
use crate::error::{check_len, Error, Result};

/// Outcome of [`enumerate_nonneg_solutions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegSolutions {
    /// `A e = 0, e ≥ 0` has only the zero solution; the full solution set.
    Finite(Vec<Vec<u64>>),
    /// The system is not pointed; `witness` is a nonzero homogeneous solution.
    Infinite { witness: Vec<u64> },
}

fn dominates(x: &[u64], s: &[u64]) -> bool {
    x.iter().zip(s).all(|(a, b)| a >= b)
}

fn image(columns: &[Vec<BigInt>], rows: usize, x: &[u64]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); rows];
    for (c, &k) in columns.iter().zip(x) {
        if k == 0 {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(c) {
            *a += v * k;
        }
    }
    acc
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimal nonzero solutions of the homogeneous system given by `columns`.
///
/// `cap = Some((j, c))` bounds coordinate `j` by `c`. The search stops early
/// once `stop` returns true on a freshly found solution.
fn contejean_devie<F>(
    columns: &[Vec<BigInt>],
    rows: usize,
    cap: Option<(usize, u64)>,
    mut stop: F,
) -> Vec<Vec<u64>>
where
    F: FnMut(&[u64]) -> bool,
{
    let n = columns.len();
    let allowed = |x: &[u64], j: usize| cap.is_none_or(|(c, max)| c != j || x[j] < max);
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    let mut frontier: BTreeSet<Vec<u64>> = BTreeSet::new();
    for j in 0..n {
        let mut e = vec![0; n];
        if allowed(&e, j) {
            e[j] = 1;
            frontier.insert(e);
        }
    }
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for x in &frontier {
            if minimal.iter().any(|s| dominates(x, s)) {
                continue;
            }
            let ax = image(columns, rows, x);
            if ax.iter().all(Zero::is_zero) {
                minimal.push(x.clone());
                if stop(x) {
                    return minimal;
                }
                continue;
            }
            for j in 0..n {
                if allowed(x, j) && dot(&ax, &columns[j]).is_negative() {
                    let mut y = x.clone();
                    y[j] += 1;
                    next.insert(y);
                }
            }
        }
        frontier = next;
    }
    minimal
}

/// Hilbert basis (minimal nonzero solutions) of `A x = 0, x ≥ 0`.
pub fn hilbert_basis(a: &IntMatrix) -> Vec<Vec<u64>> {
    contejean_devie(&a.columns(), a.rows(), None, |_| false)
}

fn homogenized(a: &IntMatrix, b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut columns = a.columns();
    columns.push(b.iter().map(|x| -x).collect());
    columns
}

/// Some `x ≥ 0` with `A x = b`, or `None` if there is none. Exact.
pub fn nonneg_feasible(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<u64>>> {
    check_len(a.rows(), b.len())?;
    let n = a.cols();
    if b.iter().all(Zero::is_zero) {
        return Ok(Some(vec![0; n]));
    }
    let columns = homogenized(a, b);
    let found = contejean_devie(&columns, a.rows(), Some((n, 1)), |x| x[n] == 1);
    Ok(found.into_iter().find(|x| x[n] == 1).map(|mut x| {
        x.truncate(n);
        x
    }))
}

/// All `e ≥ 0` with `A e = b` when the system is pointed; otherwise the
/// infinite flag with a homogeneous witness. Solutions are sorted in
/// descending lexicographic order.
pub fn enumerate_nonneg_solutions(a: &IntMatrix, b: &[BigInt]) -> Result<NonnegSolutions> {
    check_len(a.rows(), b.len())?;
    if let Some(witness) = hilbert_basis(a).into_iter().next() {
        return Ok(NonnegSolutions::Infinite { witness });
    }
    let n = a.cols();
    let columns = homogenized(a, b);
    let mut sols: Vec<Vec<u64>> = contejean_devie(&columns, a.rows(), Some((n, 1)), |_| false)
        .into_iter()
        .filter(|x| x[n] == 1)
        .map(|mut x| {
            x.truncate(n);
            x
        })
        .collect();
    sols.sort_by(|x, y| y.cmp(x));
    Ok(NonnegSolutions::Finite(sols))
}

// Above this many residue classes the congruences are turned into equations
// with slack variables instead of being enumerated.
const RESIDUE_ENUMERATION_LIMIT: u64 = 4096;

/// Whether `g ∈ ℕ·D + ⟨d⟩ (mod L)`, i.e. `g ≡ Σ n_i D_i + m d` for some
/// `n ∈ ℕ^|D|`, `m ∈ ℤ`. Exact.
pub fn monoid_coset_membership(
    group: &FgAbelianGroup,
    monoid: &[GroupElement],
    d: &GroupElement,
    g: &GroupElement,
) -> Result<bool> {
    group.check(d)?;
    group.check(g)?;
    for x in monoid {
        group.check(x)?;
    }
    let k = group.ambient_rank();
    let spanning = IntMatrix::from_columns(k, &[d.coords().to_vec()])?.hcat(group.relations())?;
    let quotient = LatticeReducer::new(&spanning);

    let images: Vec<Vec<BigInt>> = monoid
        .iter()
        .map(|x| quotient.quotient_coords(x.coords()))
        .collect();
    let target = quotient.quotient_coords(g.coords());

    let mut free_rows = Vec::new();
    let mut torsion_rows = Vec::new();
    for i in 0..k {
        match quotient.modulus(i) {
            None => free_rows.push(i),
            Some(m) if m > &BigInt::from(1) => torsion_rows.push((i, m.clone())),
            Some(_) => {}
        }
    }
    let row_of = |i: usize| -> Vec<BigInt> { images.iter().map(|c| c[i].clone()).collect() };
    let free = IntMatrix::try_from_rows(&free_rows.iter().map(|&i| row_of(i)).collect::<Vec<_>>())
        .map(|m| if m.rows() == 0 { IntMatrix::zeros(0, monoid.len()) } else { m })?;
    let free_target: Vec<BigInt> = free_rows.iter().map(|&i| target[i].clone()).collect();

    if torsion_rows.is_empty() {
        return Ok(nonneg_feasible(&free, &free_target)?.is_some());
    }

    let exponent = torsion_rows
        .iter()
        .map(|(_, m)| m.clone())
        .fold(BigInt::from(1), |acc, m| acc.lcm(&m));
    let classes = u64::try_from(&exponent)
        .ok()
        .and_then(|e| e.checked_pow(monoid.len() as u32));

    match classes {
        Some(c) if c <= RESIDUE_ENUMERATION_LIMIT => {
            residue_search(&free, &free_target, &torsion_rows, &row_of, &target, &exponent)
        }
        _ => slack_search(&free, &free_target, &torsion_rows, &row_of, &target),
    }
}

/// Enumerate `n mod E`, keep classes satisfying the torsion congruences and
/// solve the free part `F (r + E n') = b` for `n' ≥ 0`.
fn residue_search(
    free: &IntMatrix,
    free_target: &[BigInt],
    torsion_rows: &[(usize, BigInt)],
    row_of: &dyn Fn(usize) -> Vec<BigInt>,
    target: &[BigInt],
    exponent: &BigInt,
) -> Result<bool> {
    let n = free.cols();
    let torsion: Vec<(Vec<BigInt>, BigInt, BigInt)> = torsion_rows
        .iter()
        .map(|(i, m)| (row_of(*i), m.clone(), target[*i].clone()))
        .collect();
    let scaled = IntMatrix::from_vec(
        free.rows(),
        n,
        free.entries().iter().map(|x| x * exponent).collect(),
    )?;
    let mut r = vec![BigInt::zero(); n];
    loop {
        let congruent = torsion.iter().all(|(row, m, t)| {
            let s: BigInt = row.iter().zip(&r).map(|(a, b)| a * b).sum();
            (s - t).is_multiple_of(m)
        });
        if congruent {
            let fr = free.mul_vec(&r);
            let rhs: Vec<BigInt> = free_target.iter().zip(&fr).map(|(b, x)| b - x).collect();
            if nonneg_feasible(&scaled, &rhs)?.is_some() {
                return Ok(true);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            r[i] += 1;
            if &r[i] < exponent {
                break;
            }
            r[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Congruences `T n ≡ t (mod m)` as equations `T n + m z⁺ - m z⁻ = t`.
fn slack_search(
    free: &IntMatrix,
    free_target: &[BigInt],
    torsion_rows: &[(usize, BigInt)],
    row_of: &dyn Fn(usize) -> Vec<BigInt>,
    target: &[BigInt],
) -> Result<bool> {
    let n = free.cols();
    let s = torsion_rows.len();
    let width = n + 2 * s;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs = Vec::new();
    for (i, t) in free_target.iter().enumerate().take(free.rows()) {
        let mut row = free.row(i).to_vec();
        row.resize(width, BigInt::zero());
        rows.push(row);
        rhs.push(t.clone());
    }
    for (j, (i, m)) in torsion_rows.iter().enumerate() {
        let mut row = row_of(*i);
        row.resize(width, BigInt::zero());
        row[n + 2 * j] = m.clone();
        row[n + 2 * j + 1] = -m.clone();
        rows.push(row);
        rhs.push(target[*i].clone());
    }
    let a = IntMatrix::try_from_rows(&rows).map_err(|_| Error::Invariant("slack system shape".into()))?;
    Ok(nonneg_feasible(&a, &rhs)?.is_some())
}
