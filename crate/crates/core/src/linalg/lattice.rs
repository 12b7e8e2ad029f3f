use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::smith::{hermite_normal_form_rows, smith_normal_form};
use crate::error::{Error, Result};

/// A saturated sublattice of `Zⁿ`: the integer points of a rational subspace.
///
/// The basis is stored in a canonical form (the Hermite normal form of the
/// row lattice, transposed so basis vectors are columns), so two values are
/// equal exactly when they describe the same sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaturatedSublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl SaturatedSublattice {
    pub fn zero(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            basis: IntMatrix::zeros(ambient_rank, 0),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::from_saturated_columns(&IntMatrix::identity(ambient_rank))
    }

    /// Span of the standard basis vectors with the given (zero-based) indices.
    pub fn coordinate(ambient_rank: usize, indices: &[usize]) -> Self {
        let cols: Vec<Vec<BigInt>> = indices
            .iter()
            .map(|&k| {
                (0..ambient_rank)
                    .map(|i| if i == k { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self::from_saturated_columns(&IntMatrix::from_columns(ambient_rank, &cols).unwrap())
    }

    /// Canonicalises a basis already known to be independent and saturated.
    fn from_saturated_columns(cols: &IntMatrix) -> Self {
        let ambient_rank = cols.rows();
        let h = hermite_normal_form_rows(&cols.transpose());
        Self {
            ambient_rank,
            basis: if h.rows() == 0 {
                IntMatrix::zeros(ambient_rank, 0)
            } else {
                h.transpose()
            },
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// `ambient_rank × rank`, columns are basis vectors.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Lattice membership. For a saturated lattice this coincides with
    /// membership in the rational span.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let col = IntMatrix::from_columns(self.ambient_rank, &[v.to_vec()]).unwrap();
        self.basis.hstack(&col).unwrap().rank() == self.rank()
    }

    pub fn contains_lattice(&self, other: &SaturatedSublattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Every Smith invariant of the basis equals 1.
    pub fn is_saturated(&self) -> bool {
        smith_normal_form(&self.basis)
            .invariants()
            .iter()
            .all(One::is_one)
    }

    /// Image under a unimodular change of coordinates.
    pub fn image(&self, m: &IntMatrix) -> Result<Self> {
        if !m.is_unimodular() || m.cols() != self.ambient_rank {
            return Err(Error::Dimension(
                "lattice image requires a unimodular matrix of matching size".into(),
            ));
        }
        Ok(Self::from_saturated_columns(&(m * &self.basis)))
    }

    /// Stability under a rational endomorphism of the ambient space.
    pub fn is_stable_under(&self, j: &RatMatrix) -> bool {
        let n = self.ambient_rank;
        assert_eq!((j.rows(), j.cols()), (n, n));
        let b = self.basis.to_rational();
        let jb = j * &b;
        b.hstack(&jb).unwrap().rank() == self.rank()
    }
}

/// Saturated basis of `{x ∈ Zⁿ : M x = 0}`.
///
/// With `U M V = D` in Smith form and `r = rank M`, the last `n − r` columns
/// of `V` span the integer kernel; they extend to a unimodular basis, so the
/// span is saturated.
pub fn kernel_saturated(m: &IntMatrix) -> SaturatedSublattice {
    let n = m.cols();
    let s = smith_normal_form(m);
    let r = s.rank();
    SaturatedSublattice::from_saturated_columns(&s.v.submatrix(0..n, r..n))
}

/// Integer kernel of a rational matrix (rows are rescaled to integers first).
pub fn kernel_saturated_rat(m: &RatMatrix) -> SaturatedSublattice {
    kernel_saturated(&m.clear_row_denominators())
}

/// Smallest saturated sublattice containing the given independent columns.
///
/// Computed as a double annihilator: `N` = integer kernel of `Lᵀ`, then the
/// saturation is the integer kernel of `Nᵀ`.
pub fn saturate(cols: &IntMatrix) -> Result<SaturatedSublattice> {
    let n = cols.rows();
    if cols.rank() != cols.cols() {
        return Err(Error::DependentColumns);
    }
    if cols.cols() == 0 {
        return Ok(SaturatedSublattice::zero(n));
    }
    let annihilator = kernel_saturated(&cols.transpose());
    if annihilator.rank() == 0 {
        return Ok(SaturatedSublattice::full(n));
    }
    Ok(kernel_saturated(&annihilator.basis().transpose()))
}

/// Leading principal minors of a square rational matrix.
pub fn leading_principal_minors(s: &RatMatrix) -> Vec<BigRational> {
    assert!(s.is_square());
    (1..=s.rows())
        .map(|k| s.submatrix(0..k, 0..k).determinant())
        .collect()
}

/// Exact positive definiteness of a symmetric rational matrix via
/// Sylvester's criterion.
pub fn is_positive_definite(s: &RatMatrix) -> Result<bool> {
    if !s.is_square() {
        return Err(Error::Dimension("positivity test on non-square matrix".into()));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    // Stop at the first non-positive minor.
    for k in 1..=s.rows() {
        if !s.submatrix(0..k, 0..k).determinant().is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}
