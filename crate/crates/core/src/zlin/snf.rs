use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `u * a * v == d` with `u`, `v` unimodular.
///
/// `u_inv` is the inverse of `u`, tracked alongside so that quotient
/// coordinates can be lifted back without a separate inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal `d_1 | d_2 | ...` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smallest-magnitude nonzero entry of the trailing submatrix, ties broken by
/// lowest row then lowest column.
fn pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let m = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                best = Some((i, j, m));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form over the integers with unimodular transforms.
///
/// Deterministic: pivots are chosen by smallest magnitude in the trailing
/// block, and diagonal entries come out nonnegative with `d_i | d_{i+1}`.
pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let (rows, cols) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row op `row_i += q * row_t` is mirrored on u and, inverted, on u_inv.
    let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, t: usize, q: &BigInt| {
        a.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        u_inv.add_col_multiple(t, i, &-q);
    };

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = pivot(&a, t) else {
                return SmithForm { u, u_inv, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&p);
                row_op(&mut a, &mut u, &mut u_inv, i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            if let Some(i) = offending {
                row_op(&mut a, &mut u, &mut u_inv, t, i, &BigInt::from(1));
                continue;
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithForm { u, u_inv, d: a, v }
}

/// Row-style Hermite normal form `h = w * a` (w unimodular): pivots strictly
/// move right, pivots are positive and entries above a pivot lie in `[0, pivot)`.
/// Zero rows are moved to the bottom.
pub fn row_hermite_form(input: &IntMatrix) -> IntMatrix {
    let mut a = input.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows)
            .filter(|&i| !a.get(i, c).is_zero())
            .min_by_key(|&i| a.get(i, c).abs())
        {
            a.swap_rows(r, p);
            let piv = a.get(r, c).clone();
            let mut done = true;
            for i in r + 1..rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = -a.get(i, c).div_floor(&piv);
                a.add_row_multiple(i, r, &q);
                done &= a.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let piv = a.get(r, c).clone();
        for i in 0..r {
            let q = -a.get(i, c).div_floor(&piv);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    a
}
