//! Appell–Humbert data `(H, ρ)` on a torus model.
//!
//! `H` is never materialised as a complex matrix. It is carried as the pair
//! of rational forms `(S, E)` with `H(x, y) = S(x, y) + i·E(x, y)`, where
//! `E = Im H` is integral and alternating on `Γ`, and the sign convention is
//!
//! ```text
//! S(x, y) = E(Jx, y),   i.e.   S = Jᵀ·E = −E·J   (using J⁻¹ = −J).
//! ```
//!
//! Ampleness is positive definiteness of `S`. The opposite orientation would
//! negate every reported pairing.
//!
//! Pseudo-characters take values in roots of unity: `ρ(γᵢ) = exp(2πi·aᵢ)`
//! with rational angles `aᵢ ∈ [0, 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    is_positive_definite, kernel_saturated, smith_normal_form, symplectic_reduce, IntMatrix,
    RatMatrix, SaturatedSublattice, SymplecticBasis,
};
use crate::torus::{ComplexTorus, TorusHomomorphism};

/// Reduces a rational angle into `[0, 1)`.
pub fn reduce_angle(a: &BigRational) -> BigRational {
    a - a.floor()
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// An integral alternating form `E` on the lattice of a torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    torus: ComplexTorus,
    e: IntMatrix,
}

impl AlternatingForm {
    pub fn new(torus: &ComplexTorus, e: IntMatrix) -> Result<Self> {
        let n = torus.lattice_rank();
        if e.rows() != n || e.cols() != n {
            return Err(Error::Dimension(format!(
                "form is {}x{} on a lattice of rank {}",
                e.rows(),
                e.cols(),
                n
            )));
        }
        if !e.is_alternating() {
            return Err(Error::NotAlternating("Eᵀ ≠ −E or nonzero diagonal".into()));
        }
        Ok(Self {
            torus: torus.clone(),
            e,
        })
    }

    pub fn zero(torus: &ComplexTorus) -> Self {
        let n = torus.lattice_rank();
        Self {
            torus: torus.clone(),
            e: IntMatrix::zeros(n, n),
        }
    }

    pub fn torus(&self) -> &ComplexTorus {
        &self.torus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.e
    }

    /// First basis pair `(i, j)` (1-based) with `E(Jeᵢ, Jeⱼ) ≠ E(eᵢ, eⱼ)`.
    pub fn compatibility_witness(&self) -> Option<(usize, usize)> {
        let j = self.torus.complex_structure();
        let e = self.e.to_rational();
        let pulled = j.congruence(&e);
        let n = e.rows();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| pulled[(a, b)] != e[(a, b)])
            .map(|(a, b)| (a + 1, b + 1))
    }

    /// `Jᵀ E J = E`.
    pub fn is_compatible(&self) -> bool {
        self.compatibility_witness().is_none()
    }

    fn check_compatible(&self) -> Result<()> {
        match self.compatibility_witness() {
            Some((i, j)) => Err(Error::Incompatible { i, j }),
            None => Ok(()),
        }
    }

    /// `E(x, y)` on lattice vectors.
    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.e.bilinear(x, y)
    }
}

/// `H = S + iE` carried as two real forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPresentation {
    s: RatMatrix,
    e: IntMatrix,
}

impl HermitianPresentation {
    pub fn real_part(&self) -> &RatMatrix {
        &self.s
    }

    pub fn imaginary_part(&self) -> &IntMatrix {
        &self.e
    }
}

/// `E ↦ H` with `Re H = S = −E·J`. Fails with a witness basis pair when `E`
/// is not `J`-invariant.
pub fn hermitian_from_alternating(form: &AlternatingForm) -> Result<HermitianPresentation> {
    form.check_compatible()?;
    let s = real_part(form);
    assert!(s.is_symmetric(), "compatible E must give a symmetric real part");
    Ok(HermitianPresentation {
        s,
        e: form.e.clone(),
    })
}

fn real_part(form: &AlternatingForm) -> RatMatrix {
    -&(&form.e.to_rational() * form.torus.complex_structure())
}

/// `H ↦ E = Im H`, after checking that `(S, E)` really is a hermitian pair on `torus`.
pub fn alternating_from_hermitian(
    s: &RatMatrix,
    e: &IntMatrix,
    torus: &ComplexTorus,
) -> Result<AlternatingForm> {
    let form = AlternatingForm::new(torus, e.clone())?;
    if s.rows() != e.rows() || s.cols() != e.cols() {
        return Err(Error::InconsistentHermitian("S and E differ in size".into()));
    }
    if !s.is_symmetric() {
        return Err(Error::InconsistentHermitian("S is not symmetric".into()));
    }
    if *s != real_part(&form) {
        return Err(Error::InconsistentHermitian("S ≠ −E·J".into()));
    }
    Ok(form)
}

impl From<HermitianPresentation> for (RatMatrix, IntMatrix) {
    fn from(h: HermitianPresentation) -> Self {
        (h.s, h.e)
    }
}

/// Angles of a pseudo-character on the chosen lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoCharacter {
    angles: Vec<BigRational>,
}

impl PseudoCharacter {
    pub fn new(angles: Vec<BigRational>) -> Result<Self> {
        if let Some(a) = angles
            .iter()
            .find(|a| a.is_negative() || **a >= BigRational::one())
        {
            return Err(Error::InvalidAngle(format!("{a} is outside [0, 1)")));
        }
        Ok(Self { angles })
    }

    pub fn trivial(rank: usize) -> Self {
        Self {
            angles: vec![BigRational::zero(); rank],
        }
    }

    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }
}

/// A line bundle `L(H, ρ)`: a compatible integral alternating form plus a
/// pseudo-character. Forms with `E = 0` model `Pic⁰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellHumbertBundle {
    form: AlternatingForm,
    rho: PseudoCharacter,
}

impl AppellHumbertBundle {
    pub fn new(form: AlternatingForm, rho: PseudoCharacter) -> Result<Self> {
        form.check_compatible()?;
        if rho.angles.len() != form.torus.lattice_rank() {
            return Err(Error::Dimension(format!(
                "{} angles for a lattice of rank {}",
                rho.angles.len(),
                form.torus.lattice_rank()
            )));
        }
        Ok(Self { form, rho })
    }

    /// Convenience constructor from raw matrices.
    pub fn from_parts(torus: &ComplexTorus, e: IntMatrix, angles: Vec<BigRational>) -> Result<Self> {
        Self::new(AlternatingForm::new(torus, e)?, PseudoCharacter::new(angles)?)
    }

    pub fn trivial(torus: &ComplexTorus) -> Self {
        Self {
            form: AlternatingForm::zero(torus),
            rho: PseudoCharacter::trivial(torus.lattice_rank()),
        }
    }

    pub fn torus(&self) -> &ComplexTorus {
        &self.form.torus
    }

    pub fn form(&self) -> &AlternatingForm {
        &self.form
    }

    pub fn rho(&self) -> &PseudoCharacter {
        &self.rho
    }

    pub fn hermitian(&self) -> HermitianPresentation {
        HermitianPresentation {
            s: real_part(&self.form),
            e: self.form.e.clone(),
        }
    }

    /// Angle of `ρ(u)` for `u = Σ nᵢγᵢ`:
    /// `Σ nᵢaᵢ + ½·Σ_{i<j} nᵢnⱼE(γᵢ,γⱼ) mod 1`, the unique extension of the
    /// basis values satisfying `ρ(u+v) = e^{iπE(u,v)}ρ(u)ρ(v)`.
    pub fn character_angle(&self, u: &[BigInt]) -> BigRational {
        assert_eq!(u.len(), self.rho.angles.len());
        let mut linear = BigRational::zero();
        for (n, a) in u.iter().zip(&self.rho.angles) {
            linear += to_rat(n) * a;
        }
        let e = &self.form.e;
        let mut quad = BigInt::zero();
        for i in 0..u.len() {
            if u[i].is_zero() {
                continue;
            }
            for j in i + 1..u.len() {
                quad += &u[i] * &u[j] * &e[(i, j)];
            }
        }
        reduce_angle(&(linear + to_rat(&quad) * half()))
    }

    /// `log a(u, v) / π` for the descent factor
    /// `a(u, v) = ρ(u)·exp(πH(v, u) + ½πH(u, u))`, using the reduced angle of `ρ(u)`.
    pub fn factor_exponent(&self, u: &[BigInt], v: &[BigInt]) -> CocycleExponent {
        self.factor_exponent_with_angle(u, v, &self.character_angle(u))
    }

    fn factor_exponent_with_angle(
        &self,
        u: &[BigInt],
        v: &[BigInt],
        angle: &BigRational,
    ) -> CocycleExponent {
        let s = real_part(&self.form);
        let (ur, vr) = (rat_vec(u), rat_vec(v));
        let x = s.bilinear(&vr, &ur) + s.bilinear(&ur, &ur) * half();
        // E(u, u) = 0, so the imaginary part of ½H(u, u) vanishes.
        let y = angle * BigRational::from_integer(2.into()) + to_rat(&self.form.eval(v, u));
        CocycleExponent { x, y }
    }
}

fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(to_rat).collect()
}

/// An exponent `π·x + iπ·y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleExponent {
    pub x: BigRational,
    pub y: BigRational,
}

impl CocycleExponent {
    pub fn zero() -> Self {
        Self {
            x: BigRational::zero(),
            y: BigRational::zero(),
        }
    }

    /// `exp(π·x + iπ·y) = 1`.
    pub fn is_trivial_factor(&self) -> bool {
        self.x.is_zero() && self.y.is_integer() && self.y.to_integer().is_even()
    }
}

impl std::ops::Sub for &CocycleExponent {
    type Output = CocycleExponent;
    fn sub(self, rhs: &CocycleExponent) -> CocycleExponent {
        CocycleExponent {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

/// `L(H₁, ρ₁) ⊗ L(H₂, ρ₂) = L(H₁ + H₂, ρ₁ρ₂)`.
pub fn tensor(b1: &AppellHumbertBundle, b2: &AppellHumbertBundle) -> Result<AppellHumbertBundle> {
    if b1.torus() != b2.torus() {
        return Err(Error::TorusMismatch);
    }
    let e = &b1.form.e + &b2.form.e;
    let angles = b1
        .rho
        .angles
        .iter()
        .zip(&b2.rho.angles)
        .map(|(a, b)| reduce_angle(&(a + b)))
        .collect();
    AppellHumbertBundle::new(
        AlternatingForm::new(b1.torus(), e)?,
        PseudoCharacter { angles },
    )
}

/// `f*L(H, ρ) = L(f*H, f*ρ)`: `E' = FᵀEF`, `ρ'(γ'ᵢ) = ρ(F·γ'ᵢ)`.
pub fn pullback(f: &TorusHomomorphism, b: &AppellHumbertBundle) -> Result<AppellHumbertBundle> {
    if f.target() != b.torus() {
        return Err(Error::TorusMismatch);
    }
    let fm = f.matrix();
    let e = fm.congruence(&b.form.e);
    let angles = fm
        .columns()
        .iter()
        .map(|col| b.character_angle(col))
        .collect();
    let form = AlternatingForm::new(f.source(), e)?;
    assert!(
        form.is_compatible(),
        "pullback along a C-linear map must stay compatible"
    );
    AppellHumbertBundle::new(form, PseudoCharacter { angles })
}

/// `c₁(L(H, ρ)) = E`.
pub fn chern_class(b: &AppellHumbertBundle) -> AlternatingForm {
    b.form.clone()
}

/// Positive definiteness of `S = −E·J`.
pub fn is_ample(b: &AppellHumbertBundle) -> bool {
    is_positive_definite(&real_part(&b.form)).expect("compatible forms have symmetric real part")
}

/// `K(L) = Λ(L)/Γ` with `Λ(L) = {v ∈ Γ⊗Q : E(v, Γ) ⊆ Z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KGroup {
    /// `⊕ Z/nᵢ` with the nontrivial invariant factors listed in duplicated
    /// pairs `(d, d, d', d', …)`; the empty list is the trivial group.
    Finite { invariant_factors: Vec<BigInt> },
    Infinite,
}

impl KGroup {
    pub fn order(&self) -> Option<BigInt> {
        match self {
            KGroup::Finite { invariant_factors } => {
                Some(invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d))
            }
            KGroup::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KGroup::Finite { .. })
    }
}

/// `Λ(L) = E⁻ᵀ·Z^{2g}`, so `K(L) ≅ coker(Eᵀ)`, read off the Smith form.
pub fn k_group(b: &AppellHumbertBundle) -> KGroup {
    k_group_of_form(&b.form.e)
}

pub(crate) fn k_group_of_form(e: &IntMatrix) -> KGroup {
    let snf = smith_normal_form(&e.transpose());
    if snf.rank() < e.rows() {
        return KGroup::Infinite;
    }
    KGroup::Finite {
        invariant_factors: snf.invariants().into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Symplectic normal form of `E`; the divisors are the polarization type.
pub fn symplectic_normal_form(form: &AlternatingForm) -> SymplecticBasis {
    symplectic_reduce(&form.e)
}

/// The subtorus on which `L` restricts to an element of `Pic⁰`.
#[derive(Clone, Debug)]
pub struct KernelSubtorus {
    /// Saturation of `ker E ∩ Γ`.
    pub sublattice: SaturatedSublattice,
    /// `None` when `E` is non-degenerate (the zero subtorus).
    pub subtorus: Option<Subtorus>,
}

#[derive(Clone, Debug)]
pub struct Subtorus {
    pub torus: ComplexTorus,
    pub inclusion: TorusHomomorphism,
    /// `L` restricted to the subtorus; always has `E = 0`.
    pub restricted: AppellHumbertBundle,
}

impl KernelSubtorus {
    pub fn is_zero(&self) -> bool {
        self.subtorus.is_none()
    }
}

pub fn kernel_subtorus(b: &AppellHumbertBundle) -> KernelSubtorus {
    let sublattice = kernel_saturated(&b.form.e);
    let subtorus = b
        .torus()
        .subtorus(&sublattice)
        .expect("kernel of a compatible form is J-stable")
        .map(|(torus, inclusion)| {
            let restricted = pullback(&inclusion, b).expect("inclusion targets the bundle's torus");
            assert!(restricted.form.e.is_zero());
            Subtorus {
                torus,
                inclusion,
                restricted,
            }
        });
    KernelSubtorus {
        sublattice,
        subtorus,
    }
}

/// `Δ = log a(u₁+u₂, v) − log a(u₁, u₂+v) − log a(u₂, v)`, in units of `π`.
///
/// The phase of `ρ(u₁+u₂)` is expanded by the pseudo-character law as
/// `a(u₁) + a(u₂) + ½E(u₁, u₂)`; it agrees with the reduced angle of
/// `u₁+u₂` modulo 1. With that expansion the defect is exactly
/// `(0, 2·E(u₁, u₂))`, an element of `2πiZ`.
pub fn cocycle_defect(
    b: &AppellHumbertBundle,
    u1: &[BigInt],
    u2: &[BigInt],
    v: &[BigInt],
) -> CocycleExponent {
    let add = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        x.iter().zip(y).map(|(a, c)| a + c).collect()
    };
    let u12 = add(u1, u2);
    let u2v = add(u2, v);
    let (a1, a2) = (b.character_angle(u1), b.character_angle(u2));
    let expanded = &a1 + &a2 + to_rat(&b.form.eval(u1, u2)) * half();
    assert_eq!(reduce_angle(&expanded), b.character_angle(&u12));

    let lhs = b.factor_exponent_with_angle(&u12, v, &expanded);
    let r1 = b.factor_exponent_with_angle(u1, &u2v, &a1);
    let r2 = b.factor_exponent_with_angle(u2, v, &a2);
    &(&lhs - &r1) - &r2
}
