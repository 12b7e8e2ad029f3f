//! Naive reference computations used to cross-check the exact routines.
//!
//! These are deliberately independent of the code they validate: they work
//! on machine integers or floats, use exhaustive enumeration, and share no
//! helpers with `linalg`. Exponential cost is capped by explicit bounds.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

/// Pivot magnitude below which floating Cholesky results are only advisory.
pub const PIVOT_THRESHOLD: f64 = 1e-6;

fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_i64().expect("oracle inputs must fit in i64"))
                .collect()
        })
        .collect()
}

/// Calls `f` on every point of `[lo, hi]^n`, odometer style.
fn for_each_point(n: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    let mut x = vec![lo; n];
    loop {
        f(&x);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            if x[k] < hi {
                x[k] += 1;
                break;
            }
            x[k] = lo;
            k += 1;
        }
    }
}

/// All `x ∈ [−bound, bound]ⁿ` with `M x = 0`.
pub fn brute_kernel(m: &IntMatrix, bound: i64) -> Vec<Vec<BigInt>> {
    assert!(bound >= 1, "box bound must be positive");
    let rows = to_i64_rows(m);
    let mut out = Vec::new();
    for_each_point(m.cols(), -bound, bound, |x| {
        let zero = rows
            .iter()
            .all(|r| r.iter().zip(x).map(|(a, b)| (*a as i128) * (*b as i128)).sum::<i128>() == 0);
        if zero {
            out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        }
    });
    out
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][c] * cofactor_det(&minor);
    }
    det
}

/// `|det E|` by cofactor expansion; for sizes up to 8.
pub fn brute_determinant(e: &IntMatrix) -> i128 {
    let rows: Vec<Vec<i128>> = to_i64_rows(e)
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    cofactor_det(&rows)
}

/// Order of `Λ(L)/Γ` by enumerating `(1/D)Z^{2g}/Z^{2g}` and keeping the `v`
/// with `E(v, γ) ∈ Z` for every basis vector `γ`. `D` must be a multiple of
/// every symplectic divisor of `E`.
pub fn brute_k_group(e: &IntMatrix, denominator: i64) -> Result<u64> {
    if brute_determinant(e) == 0 {
        return Err(Error::InvalidParameter("brute K-group needs det E ≠ 0".into()));
    }
    if denominator < 1 {
        return Err(Error::InvalidParameter("denominator bound must be positive".into()));
    }
    let rows: Vec<Vec<i128>> = to_i64_rows(e)
        .into_iter()
        .map(|r| r.into_iter().map(|x| (x as i128).rem_euclid(denominator as i128)).collect())
        .collect();
    let n = rows.len();
    let d = denominator as i128;
    // v = w / D and E(v, e_j) = Σ_i w_i E_ij / D. The sums s_j = Σ_i w_i E_ij
    // mod D are updated as the odometer over w ∈ [0, D)^n ticks.
    let mut w = vec![0i128; n];
    let mut s = vec![0i128; n];
    let mut count = 0u64;
    loop {
        if s.iter().all(|&x| x == 0) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            if w[k] + 1 < d {
                w[k] += 1;
                for (sj, ej) in s.iter_mut().zip(&rows[k]) {
                    *sj = (*sj + ej) % d;
                }
                break;
            }
            // w[k] wraps from D − 1 to 0, removing (D − 1)·row k ≡ −row k.
            w[k] = 0;
            for (sj, ej) in s.iter_mut().zip(&rows[k]) {
                *sj = (*sj + ej) % d;
            }
            k += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericPositivity {
    pub positive: bool,
    /// `false` when some pivot fell below [`PIVOT_THRESHOLD`] in magnitude.
    pub confident: bool,
}

/// Floating-point Cholesky factorisation.
pub fn numeric_positivity(s: &RatMatrix) -> Result<NumericPositivity> {
    if !s.is_square() {
        return Err(Error::Dimension("numeric positivity on non-square matrix".into()));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| s.row(i).iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let mut l = vec![vec![0.0f64; n]; n];
    let mut confident = true;
    for k in 0..n {
        let pivot = a[k][k] - (0..k).map(|j| l[k][j] * l[k][j]).sum::<f64>();
        if pivot.abs() < PIVOT_THRESHOLD {
            confident = false;
        }
        if pivot <= 0.0 || !pivot.is_finite() {
            return Ok(NumericPositivity {
                positive: false,
                confident,
            });
        }
        l[k][k] = pivot.sqrt();
        for i in k + 1..n {
            let v = a[i][k] - (0..k).map(|j| l[i][j] * l[k][j]).sum::<f64>();
            l[i][k] = v / l[k][k];
        }
    }
    Ok(NumericPositivity {
        positive: true,
        confident,
    })
}
