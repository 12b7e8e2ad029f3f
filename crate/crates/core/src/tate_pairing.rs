//! The pairing `η_ω` attached to a degree-two class `ω` on `T × T`.
//!
//! On a single fiber the construction reduces to extracting the Künneth
//! `H¹ ⊗ H¹` component of `ω`, seen as an alternating form on `Γ ⊕ Γ`: the
//! block pairing the first factor with the second. Tate twists and duality
//! shifts carry no data here; pairings are plain integer bilinear forms on
//! `Γ`, normalised so that `η = E` for `ω = c₁(m*L(H, ρ))`.

use crate::appell_humbert::{chern_class, pullback, AppellHumbertBundle};
use crate::error::{Error, Result};
use crate::linalg::{kernel_saturated, IntMatrix, SaturatedSublattice};
use crate::torus::{ComplexTorus, TorusHomomorphism};

/// An alternating integral form on `Γ ⊕ Γ`, the lattice of `T × T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductClass {
    torus: ComplexTorus,
    omega: IntMatrix,
}

impl ProductClass {
    pub fn new(torus: &ComplexTorus, omega: IntMatrix) -> Result<Self> {
        let n = 2 * torus.lattice_rank();
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::Dimension(format!(
                "class on T×T must be {n}x{n}, got {}x{}",
                omega.rows(),
                omega.cols()
            )));
        }
        if !omega.is_alternating() {
            return Err(Error::NotAlternating("product class".into()));
        }
        Ok(Self {
            torus: torus.clone(),
            omega,
        })
    }

    /// `c₁(m*L)` for the group law `m : T × T → T`.
    pub fn from_multiplication_pullback(b: &AppellHumbertBundle) -> Self {
        let m = TorusHomomorphism::multiplication(b.torus());
        let pulled = pullback(&m, b).expect("multiplication targets the bundle's torus");
        Self {
            torus: b.torus().clone(),
            omega: chern_class(&pulled).matrix().clone(),
        }
    }

    pub fn torus(&self) -> &ComplexTorus {
        &self.torus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.omega
    }
}

/// An integer bilinear form on a lattice (not necessarily alternating).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm {
    matrix: IntMatrix,
}

impl PairingForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "pairing matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            matrix: IntMatrix::zeros(rank, rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `Mᵀ P M`: the pairing transported along a lattice map `M`.
    pub fn pullback(&self, m: &IntMatrix) -> PairingForm {
        PairingForm {
            matrix: m.congruence(&self.matrix),
        }
    }
}

/// `P[i][j] = Ω(eᵢ, e_{2g+j})`, the `(Γ ⊕ 0) ⊗ (0 ⊕ Γ)` block.
pub fn kunneth_project(c: &ProductClass) -> PairingForm {
    let n = c.torus.lattice_rank();
    PairingForm {
        matrix: c.omega.submatrix(0..n, n..2 * n),
    }
}

/// `η` for `ω = c₁(m*B)`; equal to `E` for every bundle.
pub fn eta_from_bundle(b: &AppellHumbertBundle) -> PairingForm {
    kunneth_project(&ProductClass::from_multiplication_pullback(b))
}

/// Common left and right kernel of a pairing.
pub fn pairing_kernel(p: &PairingForm) -> SaturatedSublattice {
    let stacked = p
        .matrix
        .vstack(&p.matrix.transpose())
        .expect("square pairing");
    kernel_saturated(&stacked)
}
