//! Complex tori `V/Γ` modeled as `Γ = Z^{2g}` together with a rational
//! complex structure `J` on `Γ ⊗ Q` (`J² = −I`), and their homomorphisms.
//!
//! Only rational `J` is supported; transcendental period matrices are never
//! stored. Every quantity used downstream factors through `(Γ, J)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix, SaturatedSublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexTorus {
    genus: usize,
    j: RatMatrix,
}

impl ComplexTorus {
    /// Validates `J` as a complex structure on `Z^{2g}`.
    pub fn new(genus: usize, j: RatMatrix) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ComplexStructure("genus must be at least 1".into()));
        }
        if !j.is_square() || !j.rows().is_multiple_of(2) {
            return Err(Error::ComplexStructure(format!(
                "J must be square of even size, got {}x{}",
                j.rows(),
                j.cols()
            )));
        }
        if j.rows() != 2 * genus {
            return Err(Error::ComplexStructure(format!(
                "J is {}x{} but genus {} needs {}x{}",
                j.rows(),
                j.cols(),
                genus,
                2 * genus,
                2 * genus
            )));
        }
        let sq = &j * &j;
        let minus_id = -&RatMatrix::identity(2 * genus);
        if sq != minus_id {
            return Err(Error::ComplexStructure("J² ≠ −I".into()));
        }
        Ok(Self { genus, j })
    }

    /// Infers the genus from the size of `J`.
    pub fn from_structure(j: RatMatrix) -> Result<Self> {
        if !j.is_square() || !j.rows().is_multiple_of(2) {
            return Err(Error::ComplexStructure(format!(
                "odd or non-square complex structure {}x{}",
                j.rows(),
                j.cols()
            )));
        }
        Self::new(j.rows() / 2, j)
    }

    /// `g` copies of the square-lattice elliptic curve, `J = diag([[0,−1],[1,0]], …)`.
    pub fn square(genus: usize) -> Self {
        let block = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let mut j = block.clone();
        for _ in 1..genus {
            j = j.block_diag(&block);
        }
        Self::new(genus, j).expect("square lattice structure")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `Γ`, i.e. `2g`.
    pub fn lattice_rank(&self) -> usize {
        2 * self.genus
    }

    pub fn complex_structure(&self) -> &RatMatrix {
        &self.j
    }

    /// `T₁ × T₂`, with `J = diag(J₁, J₂)`.
    pub fn product(&self, other: &ComplexTorus) -> ComplexTorus {
        ComplexTorus {
            genus: self.genus + other.genus,
            j: self.j.block_diag(&other.j),
        }
    }

    /// The subtorus `N/(N ∩ Γ)` cut out by a `J`-stable saturated sublattice,
    /// with `J` restricted to the given basis. `None` for the zero lattice.
    pub fn subtorus(&self, sub: &SaturatedSublattice) -> Result<Option<(ComplexTorus, TorusHomomorphism)>> {
        if sub.ambient_rank() != self.lattice_rank() {
            return Err(Error::Dimension("sublattice rank does not match torus".into()));
        }
        if sub.is_zero() {
            return Ok(None);
        }
        if !sub.is_stable_under(&self.j) {
            return Err(Error::ComplexStructure("sublattice is not J-stable".into()));
        }
        let b = sub.basis().to_rational();
        // B has full column rank, so J' = (BᵀB)⁻¹ Bᵀ J B is the unique solution of J B = B J'.
        let bt = b.transpose();
        let gram_inv = (&bt * &b)
            .inverse()
            .expect("basis of a sublattice has invertible Gram matrix");
        let j_sub = &(&(&gram_inv * &bt) * &self.j) * &b;
        let sub_torus = ComplexTorus::from_structure(j_sub)?;
        let inclusion = TorusHomomorphism::new(sub.basis().clone(), &sub_torus, self)?;
        Ok(Some((sub_torus, inclusion)))
    }
}

/// A `C`-linear lattice map `F : Γ_source → Γ_target`,
/// i.e. `J_target · F = F · J_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusHomomorphism {
    source: ComplexTorus,
    target: ComplexTorus,
    matrix: IntMatrix,
}

impl TorusHomomorphism {
    /// Validates `F` against the two complex structures.
    pub fn new(matrix: IntMatrix, source: &ComplexTorus, target: &ComplexTorus) -> Result<Self> {
        if matrix.rows() != target.lattice_rank() || matrix.cols() != source.lattice_rank() {
            return Err(Error::Dimension(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.lattice_rank(),
                source.lattice_rank()
            )));
        }
        let f = matrix.to_rational();
        if &target.j * &f != &f * &source.j {
            return Err(Error::NotHomomorphism(
                "J_target · F ≠ F · J_source".into(),
            ));
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(t: &ComplexTorus) -> Self {
        Self::scalar(t, 1)
    }

    /// Multiplication by `n`.
    pub fn scalar(t: &ComplexTorus, n: i64) -> Self {
        Self {
            source: t.clone(),
            target: t.clone(),
            matrix: IntMatrix::identity(t.lattice_rank()).scale(&BigInt::from(n)),
        }
    }

    /// The group law `m : T × T → T`, `F = [I | I]`.
    pub fn multiplication(t: &ComplexTorus) -> Self {
        let id = IntMatrix::identity(t.lattice_rank());
        Self {
            source: t.product(t),
            target: t.clone(),
            matrix: id.hstack(&id).unwrap(),
        }
    }

    /// Diagonal `T → T × T`, `F = [I; I]`.
    pub fn diagonal(t: &ComplexTorus) -> Self {
        let id = IntMatrix::identity(t.lattice_rank());
        Self {
            source: t.clone(),
            target: t.product(t),
            matrix: id.vstack(&id).unwrap(),
        }
    }

    /// `e ↦ (e, 0)` into `T₁ × T₂`.
    pub fn first_inclusion(t1: &ComplexTorus, t2: &ComplexTorus) -> Self {
        let n1 = t1.lattice_rank();
        Self {
            source: t1.clone(),
            target: t1.product(t2),
            matrix: IntMatrix::identity(n1).vstack(&IntMatrix::zeros(t2.lattice_rank(), n1)).unwrap(),
        }
    }

    /// `e ↦ (0, e)` into `T₁ × T₂`.
    pub fn second_inclusion(t1: &ComplexTorus, t2: &ComplexTorus) -> Self {
        let n2 = t2.lattice_rank();
        Self {
            source: t2.clone(),
            target: t1.product(t2),
            matrix: IntMatrix::zeros(t1.lattice_rank(), n2).vstack(&IntMatrix::identity(n2)).unwrap(),
        }
    }

    /// `T₁ × T₂ → T₂ × T₁`, `(a, b) ↦ (b, a)`.
    pub fn swap(t1: &ComplexTorus, t2: &ComplexTorus) -> Self {
        let (n1, n2) = (t1.lattice_rank(), t2.lattice_rank());
        let matrix = IntMatrix::from_fn(n1 + n2, n1 + n2, |i, j| {
            let hit = if i < n2 { j == n1 + i } else { j == i - n2 };
            if hit {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Self {
            source: t1.product(t2),
            target: t2.product(t1),
            matrix,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TorusHomomorphism) -> Result<TorusHomomorphism> {
        if inner.target != self.source {
            return Err(Error::TorusMismatch);
        }
        Self::new(&self.matrix * &inner.matrix, &inner.source, &self.target)
    }

    pub fn source(&self) -> &ComplexTorus {
        &self.source
    }

    pub fn target(&self) -> &ComplexTorus {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// `true` when `J_target · F = F · J_source` holds exactly.
pub fn commutes_with_structures(f: &IntMatrix, source: &ComplexTorus, target: &ComplexTorus) -> bool {
    let f = f.to_rational();
    &target.j * &f == &f * &source.j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_curve_is_valid() {
        let j = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(ComplexTorus::new(1, j).is_ok());
    }

    #[test]
    fn identity_is_not_a_complex_structure() {
        let err = ComplexTorus::new(1, RatMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::ComplexStructure(_)));
    }

    #[test]
    fn odd_size_rejected() {
        assert!(ComplexTorus::from_structure(RatMatrix::identity(3)).is_err());
        assert!(ComplexTorus::new(0, RatMatrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn genuinely_rational_structure() {
        // a² + bc = −1 with a = b = 1/2, c = −5/2.
        let j = RatMatrix::from_fractions(&[&[(1, 2), (1, 2)], &[(-5, 2), (-1, 2)]]).unwrap();
        assert!(ComplexTorus::new(1, j).is_ok());
    }

    #[test]
    fn genus_two_block_structure() {
        let t = ComplexTorus::square(2);
        assert_eq!(t.lattice_rank(), 4);
        assert_eq!(ComplexTorus::square(1).product(&ComplexTorus::square(1)), t);
    }

    #[test]
    fn multiplication_map_shape() {
        let t = ComplexTorus::square(1);
        let m = TorusHomomorphism::multiplication(&t);
        assert_eq!(m.matrix(), &IntMatrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert!(commutes_with_structures(m.matrix(), m.source(), m.target()));
        let two = m.compose(&TorusHomomorphism::diagonal(&t)).unwrap();
        assert_eq!(two, TorusHomomorphism::scalar(&t, 2));
    }

    #[test]
    fn multiplication_restricted_to_factors_is_identity() {
        let t = ComplexTorus::square(2);
        let m = TorusHomomorphism::multiplication(&t);
        let id = TorusHomomorphism::identity(&t);
        assert_eq!(m.compose(&TorusHomomorphism::first_inclusion(&t, &t)).unwrap(), id);
        assert_eq!(m.compose(&TorusHomomorphism::second_inclusion(&t, &t)).unwrap(), id);
    }

    #[test]
    fn product_swap_is_an_isomorphism() {
        let t1 = ComplexTorus::square(1);
        let j2 = RatMatrix::from_fractions(&[&[(1, 2), (1, 2)], &[(-5, 2), (-1, 2)]]).unwrap();
        let t2 = ComplexTorus::new(1, j2).unwrap();
        let s = TorusHomomorphism::swap(&t1, &t2);
        assert!(commutes_with_structures(s.matrix(), s.source(), s.target()));
        let back = TorusHomomorphism::swap(&t2, &t1).compose(&s).unwrap();
        assert!(back.matrix().is_identity());
    }

    #[test]
    fn homomorphism_checks() {
        let t = ComplexTorus::square(1);
        assert!(TorusHomomorphism::new(IntMatrix::identity(2), &t, &t).is_ok());
        assert!(TorusHomomorphism::new(IntMatrix::identity(2).scale(&BigInt::from(5)), &t, &t).is_ok());
        let err = TorusHomomorphism::new(IntMatrix::from_i64(&[&[1, 0], &[0, 2]]), &t, &t);
        assert!(matches!(err, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn elliptic_subtorus_of_a_square_surface() {
        let t = ComplexTorus::square(2);
        let sub = SaturatedSublattice::coordinate(4, &[2, 3]);
        let (e, inc) = t.subtorus(&sub).unwrap().unwrap();
        assert_eq!(e, ComplexTorus::square(1));
        assert_eq!(inc.matrix().column(0), vec![0.into(), 0.into(), 1.into(), 0.into()]);
        let bad = SaturatedSublattice::coordinate(4, &[1, 2]);
        assert!(t.subtorus(&bad).is_err());
        assert!(t.subtorus(&SaturatedSublattice::zero(4)).unwrap().is_none());
    }
}
