//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d₁ | d₂ | …`, all diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_{ii}` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// The nonzero invariant factors.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

fn row_axpy(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    for j in 0..a.cols() {
        let v = &a[(dst, j)] + c * &a[(src, j)];
        a[(dst, j)] = v;
    }
}

fn col_axpy(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    for i in 0..a.rows() {
        let v = &a[(i, dst)] + c * &a[(i, src)];
        a[(i, dst)] = v;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        let v = -&a[(i, j)];
        a[(i, j)] = v;
    }
}

/// Smith normal form by elementary row and column operations, always
/// pivoting on an entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&p, &q| a[p].abs().cmp(&a[q].abs()));
            let Some((pi, pj)) = pivot else {
                return SmithForm { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot isolated; enforce that it divides the remaining block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { u, d: a, v }
}

/// Row-style Hermite normal form of the row lattice of `m`: zero rows are
/// dropped, pivots are positive, and entries above each pivot lie in
/// `[0, pivot)`. Two matrices have the same row lattice iff their Hermite
/// forms are equal.
pub fn hermite_normal_form_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let p = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &k| a[(i, c)].abs().cmp(&a[(k, c)].abs()));
            let Some(p) = p else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&a[(r, c)]);
                row_axpy(&mut a, i, r, &q);
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            negate_row(&mut a, r);
        }
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                row_axpy(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    a.submatrix(0..r, 0..cols)
}
