//! Semi-abelian fibers `1 → L → G → A → 1` with `L` a torus of rank `r`.
//!
//! In the canonical chart the Tate module is `Z^r ⊕ Γ_A`, and the first `r`
//! basis vectors span the weight sublattice `W ≅ T(L)`. Line bundles on `G`
//! are pulled back from `A`, so a model only carries a bundle on the abelian
//! part. The extension class of `G` is not modeled.

use num_bigint::BigInt;
use serde::Serialize;

use crate::appell_humbert::{is_ample, symplectic_normal_form, AppellHumbertBundle};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SaturatedSublattice};
use crate::tate_pairing::{eta_from_bundle, pairing_kernel, PairingForm};
use crate::torus::ComplexTorus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiabelianModel {
    toric_rank: usize,
    bundle: AppellHumbertBundle,
}

impl SemiabelianModel {
    pub fn new(toric_rank: usize, abelian: &ComplexTorus, bundle: AppellHumbertBundle) -> Result<Self> {
        if bundle.torus() != abelian {
            return Err(Error::TorusMismatch);
        }
        Ok(Self { toric_rank, bundle })
    }

    /// A purely abelian fiber.
    pub fn abelian(bundle: AppellHumbertBundle) -> Self {
        Self {
            toric_rank: 0,
            bundle,
        }
    }

    pub fn toric_rank(&self) -> usize {
        self.toric_rank
    }

    pub fn abelian_part(&self) -> &ComplexTorus {
        self.bundle.torus()
    }

    pub fn bundle(&self) -> &AppellHumbertBundle {
        &self.bundle
    }

    /// `r + 2g`.
    pub fn tate_rank(&self) -> usize {
        self.toric_rank + self.abelian_part().lattice_rank()
    }
}

/// `T(G)` with its weight sublattice `W = T(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateModule {
    rank: usize,
    weight: SaturatedSublattice,
}

impl TateModule {
    pub fn new(rank: usize, weight: SaturatedSublattice) -> Result<Self> {
        if weight.ambient_rank() != rank {
            return Err(Error::Dimension(format!(
                "weight sublattice lives in rank {}, module has rank {}",
                weight.ambient_rank(),
                rank
            )));
        }
        Ok(Self { rank, weight })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weight(&self) -> &SaturatedSublattice {
        &self.weight
    }

    /// Rank of `T(G)/W`, i.e. `2g`.
    pub fn abelian_rank(&self) -> usize {
        self.rank - self.weight.rank()
    }
}

pub fn tate_module(g: &SemiabelianModel) -> TateModule {
    let r = g.toric_rank;
    let idx: Vec<usize> = (0..r).collect();
    TateModule {
        rank: g.tate_rank(),
        weight: SaturatedSublattice::coordinate(g.tate_rank(), &idx),
    }
}

/// `[[0, 0], [0, η]]` in the canonical chart: zero on and against `W`, and
/// `η = E` on the abelian quotient.
pub fn polarization_from_bundle(g: &SemiabelianModel) -> PairingForm {
    let eta = eta_from_bundle(&g.bundle);
    let m = IntMatrix::zeros(g.toric_rank, g.toric_rank).block_diag(eta.matrix());
    PairingForm::new(m).expect("square block matrix")
}

/// Polarization condition: the kernel of `P` is exactly `W`.
pub fn check_polarization(p: &PairingForm, t: &TateModule) -> Result<bool> {
    if p.rank() != t.rank {
        return Err(Error::Dimension(format!(
            "pairing of rank {} on a Tate module of rank {}",
            p.rank(),
            t.rank
        )));
    }
    Ok(pairing_kernel(p) == t.weight)
}

/// Outcome of the fiberwise check for one semi-abelian model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub ample: bool,
    pub polarized: bool,
    pub toric_rank: usize,
    pub kernel_rank: usize,
    /// Kernel of the assembled pairing contains `W`.
    pub kernel_contains_weight: bool,
    /// Symplectic divisors of `E` (the polarization type when non-degenerate).
    #[serde(serialize_with = "crate::serde_util::bigints_as_json")]
    pub polarization_type: Vec<BigInt>,
    /// `ample ∧ ¬polarized`: would contradict the theorem being modeled,
    /// so it always indicates a library defect.
    pub violation: bool,
}

pub fn verify_main_theorem_fiber(g: &SemiabelianModel) -> FiberReport {
    let ample = is_ample(&g.bundle);
    let p = polarization_from_bundle(g);
    let t = tate_module(g);
    let kernel = pairing_kernel(&p);
    let polarized = kernel == t.weight;
    let sb = symplectic_normal_form(g.bundle.form());
    FiberReport {
        ample,
        polarized,
        toric_rank: g.toric_rank,
        kernel_rank: kernel.rank(),
        kernel_contains_weight: kernel.contains_lattice(&t.weight),
        polarization_type: sb.divisors,
        violation: ample && !polarized,
    }
}
