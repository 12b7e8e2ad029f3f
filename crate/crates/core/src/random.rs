//! Seeded generation of valid models.
//!
//! Valid data is built in a canonical chart and then moved by a random change
//! of lattice basis, so every output satisfies its invariants by
//! construction. In the canonical chart `Γ = Z^g ⊕ Z^g` with
//! `J₀ = [[0, −I], [I, 0]]`, and a hermitian form `H = P + iQ` (`P`
//! symmetric, `Q` antisymmetric, both integral) has imaginary part
//! `E₀ = [[Q, P], [−P, Q]]` and real part `S₀ = [[−P, Q], [−Q, −P]]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::appell_humbert::AppellHumbertBundle;
use crate::error::{Error, Result};
use crate::family::{BaseEdge, BaseMap, FamilyEdge, TorusFamily};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::semiabelian::SemiabelianModel;
use crate::torus::ComplexTorus;

/// What kind of `E` to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `S` positive definite.
    Ample,
    /// `E` has a nontrivial kernel (possibly `E = 0`).
    Degenerate,
    /// Unconstrained small entries.
    Any,
}

/// Canonical complex structure `[[0, −I], [I, 0]]`.
pub fn canonical_structure(g: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * g, 2 * g, |i, j| {
        if i < g && j == i + g {
            BigInt::from(-1)
        } else if i >= g && j + g == i {
            BigInt::from(1)
        } else {
            BigInt::from(0)
        }
    })
}

fn hermitian_imaginary_part(p: &[Vec<i64>], q: &[Vec<i64>]) -> IntMatrix {
    let g = p.len();
    IntMatrix::from_fn(2 * g, 2 * g, |i, j| {
        let (bi, bj) = (i / g, j / g);
        let (a, b) = (i % g, j % g);
        BigInt::from(match (bi, bj) {
            (0, 0) | (1, 1) => q[a][b],
            (0, 1) => p[a][b],
            _ => -p[a][b],
        })
    })
}

/// Hermitian data `(P, Q)` in the canonical chart, supported on the first `support` coordinates.
fn random_hermitian<R: Rng>(rng: &mut R, g: usize, kind: FormKind) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let support = match kind {
        FormKind::Degenerate => rng.gen_range(0..g),
        _ => g,
    };
    let mut p = vec![vec![0i64; g]; g];
    let mut q = vec![vec![0i64; g]; g];
    for a in 0..support {
        for b in a + 1..support {
            let x = rng.gen_range(-2..=2);
            p[a][b] = x;
            p[b][a] = x;
            let y = rng.gen_range(-2..=2);
            q[a][b] = y;
            q[b][a] = -y;
        }
    }
    for a in 0..support {
        let off: i64 = (0..support)
            .filter(|&b| b != a)
            .map(|b| p[a][b].abs() + q[a][b].abs())
            .sum();
        p[a][a] = match kind {
            // −P diagonally dominant makes S₀ positive definite.
            FormKind::Ample => -(off + rng.gen_range(1..=3)),
            FormKind::Degenerate => {
                // Keep the supported block non-degenerate only sometimes.
                let d = off + rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    -d
                } else {
                    d
                }
            }
            FormKind::Any => rng.gen_range(-3..=3),
        };
    }
    (p, q)
}

/// Random unimodular matrix as a product of elementary moves; returns it with its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u[(0, 0)] = BigInt::from(-1);
            inv[(0, 0)] = BigInt::from(-1);
        }
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                // column i += c·column j; inverse gets row j −= c·row i.
                let c = BigInt::from(*[-1i64, 1, 2, -2].choose(rng).unwrap());
                for k in 0..n {
                    let v = &u[(k, i)] + &c * &u[(k, j)];
                    u[(k, i)] = v;
                }
                for k in 0..n {
                    let v = &inv[(j, k)] - &c * &inv[(i, k)];
                    inv[(j, k)] = v;
                }
            }
            1 => {
                u.swap_cols(i, j);
                inv.swap_rows(i, j);
            }
            _ => {
                for k in 0..n {
                    let v = -&u[(k, i)];
                    u[(k, i)] = v;
                    let w = -&inv[(i, k)];
                    inv[(i, k)] = w;
                }
            }
        }
    }
    (u, inv)
}

fn max_abs(m: &IntMatrix) -> i64 {
    m.entries()
        .map(|x| x.abs().to_i64().unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0)
}

fn random_angles<R: Rng>(rng: &mut R, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=12i64);
            BigRational::new(rng.gen_range(0..den).into(), den.into())
        })
        .collect()
}

/// A random compatible bundle on a random genus-`g` torus.
///
/// With `rational_structure`, the basis change may have determinant 2,
/// which gives a non-integral rational `J` while keeping `E` integral.
/// Draws are repeated until `|E| ≤ max_entry` when a bound is given.
pub fn random_bundle<R: Rng>(
    rng: &mut R,
    g: usize,
    kind: FormKind,
    max_entry: Option<i64>,
    rational_structure: bool,
) -> Result<AppellHumbertBundle> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    let n = 2 * g;
    loop {
        let (p, q) = random_hermitian(rng, g, kind);
        let e0 = hermitian_imaginary_part(&p, &q);
        let c = random_chart(rng, g, rational_structure);
        let e = c.congruence(&e0);
        if max_entry.is_some_and(|b| max_abs(&e) > b) {
            continue;
        }
        let torus = torus_in_chart(g, &c)?;
        return AppellHumbertBundle::from_parts(&torus, e, random_angles(rng, n));
    }
}

/// A basis change `C` from a random chart to the canonical one; unimodular,
/// or of determinant ±2 with `rational_structure`.
pub fn random_chart<R: Rng>(rng: &mut R, g: usize, rational_structure: bool) -> IntMatrix {
    let n = 2 * g;
    let steps = rng.gen_range(0..=2 * n);
    let (mut c, _) = random_unimodular(rng, n, steps);
    if rational_structure && rng.gen_bool(0.5) {
        let k = rng.gen_range(0..n);
        let mut scale = IntMatrix::identity(n);
        scale[(k, k)] = BigInt::from(2);
        c = &c * &scale;
    }
    c
}

/// The torus with structure `C⁻¹J₀C`.
pub fn torus_in_chart(g: usize, c: &IntMatrix) -> Result<ComplexTorus> {
    let cr = c.to_rational();
    let c_inv = cr
        .inverse()
        .ok_or_else(|| Error::InvalidParameter("chart matrix is singular".into()))?;
    let j: RatMatrix = &(&c_inv * &canonical_structure(g).to_rational()) * &cr;
    ComplexTorus::new(g, j)
}

/// Several bundles of the given kinds on one random torus.
pub fn random_bundles_on_torus<R: Rng>(
    rng: &mut R,
    g: usize,
    kinds: &[FormKind],
) -> Result<Vec<AppellHumbertBundle>> {
    let c = random_chart(rng, g, true);
    random_bundles_in_chart(rng, g, &c, kinds)
}

/// Bundles of the given kinds on the torus [`torus_in_chart`]`(g, c)`.
pub fn random_bundles_in_chart<R: Rng>(
    rng: &mut R,
    g: usize,
    c: &IntMatrix,
    kinds: &[FormKind],
) -> Result<Vec<AppellHumbertBundle>> {
    let torus = torus_in_chart(g, c)?;
    kinds
        .iter()
        .map(|&kind| {
            let (p, q) = random_hermitian(rng, g, kind);
            let e = c.congruence(&hermitian_imaginary_part(&p, &q));
            AppellHumbertBundle::from_parts(&torus, e, random_angles(rng, 2 * g))
        })
        .collect()
}

pub fn random_semiabelian<R: Rng>(
    rng: &mut R,
    g: usize,
    toric_rank: usize,
    kind: FormKind,
    max_entry: Option<i64>,
) -> Result<SemiabelianModel> {
    let b = random_bundle(rng, g, kind, max_entry, true)?;
    SemiabelianModel::new(toric_rank, &b.torus().clone(), b)
}

/// Moves a model to a new abelian chart `A` (unimodular): `J' = A⁻¹JA`, `E' = AᵀEA`.
fn rechart(g: &SemiabelianModel, a: &IntMatrix) -> SemiabelianModel {
    let b = g.bundle();
    let ar = a.to_rational();
    let a_inv = ar.inverse().expect("unimodular");
    let j = &(&a_inv * b.torus().complex_structure()) * &ar;
    let torus = ComplexTorus::new(b.torus().genus(), j).expect("conjugate structure");
    let bundle = AppellHumbertBundle::from_parts(
        &torus,
        a.congruence(b.form().matrix()),
        b.rho().angles().to_vec(),
    )
    .expect("conjugate form stays compatible");
    SemiabelianModel::new(g.toric_rank(), &torus, bundle).unwrap()
}

/// `[[T, X], [0, A]]`: preserves the weight sublattice spanned by the first `r` vectors.
fn filtered_matrix<R: Rng>(rng: &mut R, r: usize, a: &IntMatrix) -> IntMatrix {
    let (t, _) = random_unimodular(rng, r, 2 * r);
    let n = a.rows();
    IntMatrix::from_fn(r + n, r + n, |i, j| match (i < r, j < r) {
        (true, true) => t[(i, j)].clone(),
        (true, false) => BigInt::from(rng.gen_range(-1..=1)),
        (false, true) => BigInt::from(0),
        (false, false) => a[(i - r, j - r)].clone(),
    })
}

/// A family that admits a coherent global polarization: every node is the
/// same ample fiber seen in its own chart, and edges (including monodromy
/// loops by `−1` on the abelian part) transport the charts onto each other.
pub fn random_coherent_family<R: Rng>(rng: &mut R, max_nodes: usize) -> Result<TorusFamily> {
    let g = rng.gen_range(1..=2);
    let r = rng.gen_range(0..=2);
    let base = random_semiabelian(rng, g, r, FormKind::Ample, Some(8))?;
    let count = rng.gen_range(1..=max_nodes.max(1));
    let n = 2 * g;
    let mut charts = Vec::with_capacity(count);
    let mut nodes = BTreeMap::new();
    for k in 0..count {
        let (a, a_inv) = random_unimodular(rng, n, n);
        nodes.insert(format!("b{k}"), rechart(&base, &a));
        charts.push((a, a_inv));
    }
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(0..=count + 2) {
        let (s, d) = (rng.gen_range(0..count), rng.gen_range(0..count));
        // Coordinates of node s map to base coordinates by A_s, then to node d by A_d⁻¹.
        let mut abelian = &charts[d].1 * &charts[s].0;
        if (s == d || rng.gen_bool(0.3)) && rng.gen_bool(0.5) {
            abelian = -&abelian;
        }
        edges.push(FamilyEdge {
            src: format!("b{s}"),
            dst: format!("b{d}"),
            matrix: filtered_matrix(rng, r, &abelian),
        });
    }
    TorusFamily::new(nodes, edges)
}

/// A random graph map into `f`'s base.
pub fn random_base_map<R: Rng>(rng: &mut R, f: &TorusFamily, max_nodes: usize) -> BaseMap {
    let targets: Vec<&String> = f.nodes().keys().collect();
    let count = rng.gen_range(1..=max_nodes.max(1));
    let phi: BTreeMap<String, String> = (0..count)
        .map(|k| (format!("c{k}"), targets.choose(rng).unwrap().to_string()))
        .collect();
    let fiber = |b: &str| -> Vec<String> {
        phi.iter()
            .filter(|(_, v)| v.as_str() == b)
            .map(|(k, _)| k.clone())
            .collect()
    };
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(0..=2 * count) {
        if !f.edges().is_empty() && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..f.edges().len());
            let e = &f.edges()[i];
            let (srcs, dsts) = (fiber(&e.src), fiber(&e.dst));
            if let (Some(s), Some(d)) = (srcs.choose(rng), dsts.choose(rng)) {
                edges.push(BaseEdge {
                    src: s.clone(),
                    dst: d.clone(),
                    over: Some(i),
                });
            }
        } else {
            let b = targets.choose(rng).unwrap();
            let over_b = fiber(b);
            if let (Some(s), Some(d)) = (over_b.choose(rng), over_b.choose(rng)) {
                edges.push(BaseEdge {
                    src: s.clone(),
                    dst: d.clone(),
                    over: None,
                });
            }
        }
    }
    BaseMap { phi, edges }
}
