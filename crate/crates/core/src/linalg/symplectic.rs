//! Symplectic (Frobenius) normal form of integral alternating matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `uᵀ · e · u = [[0, D], [−D, 0]] ⊕ 0` with `D = diag(divisors)`,
/// `d₁ | d₂ | … | d_k`, all `dᵢ > 0`, and `2k + kernel_rank = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub u: IntMatrix,
    pub divisors: Vec<BigInt>,
    pub kernel_rank: usize,
}

impl SymplecticBasis {
    pub fn canonical_block(&self) -> IntMatrix {
        canonical_alternating(&self.divisors, self.kernel_rank)
    }
}

/// `[[0, D], [−D, 0]] ⊕ 0_{kernel_rank}`.
pub fn canonical_alternating(divisors: &[BigInt], kernel_rank: usize) -> IntMatrix {
    let k = divisors.len();
    let n = 2 * k + kernel_rank;
    IntMatrix::from_fn(n, n, |i, j| {
        if i < k && j == i + k {
            divisors[i].clone()
        } else if j < k && i == j + k {
            -divisors[j].clone()
        } else {
            BigInt::zero()
        }
    })
}

/// Working state: `a = uᵀ e u` is kept in sync under congruence moves.
struct Congruence {
    a: IntMatrix,
    u: IntMatrix,
}

impl Congruence {
    fn swap(&mut self, p: usize, q: usize) {
        if p == q {
            return;
        }
        self.a.swap_rows(p, q);
        self.a.swap_cols(p, q);
        self.u.swap_cols(p, q);
    }

    fn negate(&mut self, p: usize) {
        let n = self.a.rows();
        for k in 0..n {
            let v = -&self.a[(p, k)];
            self.a[(p, k)] = v;
            let v = -&self.a[(k, p)];
            self.a[(k, p)] = v;
            let v = -&self.u[(k, p)];
            self.u[(k, p)] = v;
        }
    }

    /// Basis move `b_dst ← b_dst + c · b_src`.
    fn add(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let n = self.a.rows();
        for k in 0..n {
            let v = &self.a[(k, dst)] + c * &self.a[(k, src)];
            self.a[(k, dst)] = v;
            let v = &self.u[(k, dst)] + c * &self.u[(k, src)];
            self.u[(k, dst)] = v;
        }
        for k in 0..n {
            let v = &self.a[(dst, k)] + c * &self.a[(src, k)];
            self.a[(dst, k)] = v;
        }
    }
}

/// Symplectic basis of an integral alternating matrix.
///
/// Panics if `e` is not alternating; callers validate first.
pub fn symplectic_reduce(e: &IntMatrix) -> SymplecticBasis {
    assert!(e.is_alternating(), "symplectic reduction needs an alternating matrix");
    let n = e.rows();
    let mut st = Congruence {
        a: e.clone(),
        u: IntMatrix::identity(n),
    };
    let mut s = 0;
    while s + 1 < n {
        let pivot = (s..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&p| !st.a[p].is_zero())
            .min_by(|&p, &q| st.a[p].abs().cmp(&st.a[q].abs()));
        let Some((i, mut j)) = pivot else { break };
        st.swap(s, i);
        if j == s {
            j = i;
        }
        st.swap(s + 1, j);
        if st.a[(s, s + 1)].is_negative() {
            st.negate(s + 1);
        }
        let d = st.a[(s, s + 1)].clone();

        let mut dirty = false;
        for k in s + 2..n {
            // E(x, b_k) with x = b_s, y = b_{s+1}, E(x, y) = d.
            let q = st.a[(s, k)].div_floor(&d);
            st.add(k, s + 1, &-q);
            let q = st.a[(s + 1, k)].div_floor(&d);
            st.add(k, s, &q);
            dirty |= !st.a[(s, k)].is_zero() || !st.a[(s + 1, k)].is_zero();
        }
        if dirty {
            continue;
        }
        let offender = (s + 2..n)
            .flat_map(|i| (s + 2..n).map(move |j| (i, j)))
            .find(|&p| !st.a[p].is_multiple_of(&d));
        match offender {
            Some((i, _)) => st.add(s, i, &BigInt::from(1)),
            None => s += 2,
        }
    }

    let k = s / 2;
    let mut order: Vec<usize> = (0..k).map(|t| 2 * t).collect();
    order.extend((0..k).map(|t| 2 * t + 1));
    order.extend(2 * k..n);
    let divisors = (0..k).map(|t| st.a[(2 * t, 2 * t + 1)].clone()).collect();
    SymplecticBasis {
        u: st.u.select_columns(&order),
        divisors,
        kernel_rank: n - 2 * k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(e: &IntMatrix) -> SymplecticBasis {
        let sb = symplectic_reduce(e);
        assert_eq!(sb.u.congruence(e), sb.canonical_block());
        assert!(sb.u.is_unimodular());
        for w in sb.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        sb
    }

    #[test]
    fn standard_form_is_fixed() {
        let sb = verify(&IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(sb.divisors, vec![BigInt::from(1)]);
        assert_eq!(sb.kernel_rank, 0);
    }

    #[test]
    fn type_two() {
        let sb = verify(&IntMatrix::from_i64(&[&[0, 2], &[-2, 0]]));
        assert_eq!(sb.divisors, vec![BigInt::from(2)]);
        let sb = verify(&IntMatrix::from_i64(&[&[0, -2], &[2, 0]]));
        assert_eq!(sb.divisors, vec![BigInt::from(2)]);
    }

    #[test]
    fn degenerate_block() {
        let e = IntMatrix::from_i64(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
        ]);
        let sb = verify(&e);
        assert_eq!(sb.divisors, vec![BigInt::from(1)]);
        assert_eq!(sb.kernel_rank, 2);
    }

    #[test]
    fn non_dividing_blocks_are_merged() {
        // diag blocks 2 and 3 give type (1, 6).
        let e = IntMatrix::from_i64(&[
            &[0, 2, 0, 0],
            &[-2, 0, 0, 0],
            &[0, 0, 0, 3],
            &[0, 0, -3, 0],
        ]);
        let sb = verify(&e);
        assert_eq!(sb.divisors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(verify(&IntMatrix::zeros(3, 3)).kernel_rank, 3);
        assert_eq!(verify(&IntMatrix::zeros(0, 0)).kernel_rank, 0);
    }
}
