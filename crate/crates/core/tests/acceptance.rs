//! Acceptance suite: ten end-to-end criteria over seeded random data.
//!
//! Runs without the libtest harness so that each criterion prints exactly
//! one `PASS` or `FAIL` line. The process exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use abelpol::appell_humbert::{
    cocycle_defect, is_ample, k_group, kernel_subtorus, pullback, symplectic_normal_form, tensor,
    AppellHumbertBundle, CocycleExponent, KGroup,
};
use abelpol::family::{
    assemble_global_pairing, base_change, check_global_pairing, validate_family, FamilyEdge, TorusFamily,
};
use abelpol::linalg::{
    is_positive_definite, kernel_saturated, kernel_saturated_rat, symplectic_reduce, IntMatrix, RatMatrix,
};
use abelpol::oracles::{brute_determinant, brute_k_group, numeric_positivity};
use abelpol::random::{
    random_base_map, random_bundle, random_bundles_in_chart, random_chart, random_coherent_family,
    random_semiabelian, torus_in_chart, FormKind,
};
use abelpol::semiabelian::{tate_module, verify_main_theorem_fiber, SemiabelianModel};
use abelpol::tate_pairing::{eta_from_bundle, pairing_kernel};
use abelpol::torus::{ComplexTorus, TorusHomomorphism};
use abelpol::Error;

type Verdict = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Verdict);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn any_kind<R: Rng>(rng: &mut R) -> FormKind {
    [FormKind::Ample, FormKind::Degenerate, FormKind::Any][rng.gen_range(0..3)]
}

/// Bundles for the fuzzed criteria: all kinds, genus 1..=max_genus.
fn fuzzed_bundles(seed: u64, count: usize, max_genus: usize, max_entry: Option<i64>) -> Vec<AppellHumbertBundle> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let g = r.gen_range(1..=max_genus);
            let kind = any_kind(&mut r);
            random_bundle(&mut r, g, kind, max_entry, true).expect("generator output is valid")
        })
        .collect()
}

fn kunneth_pipeline() -> Verdict {
    let bundles = fuzzed_bundles(101, 250, 3, Some(10));
    for (k, b) in bundles.iter().enumerate() {
        let e = b.form().matrix();
        ensure(e.entries().all(|x| x.abs() <= BigInt::from(10)), || format!("sample {k}: entry bound"))?;
        ensure(eta_from_bundle(b).matrix() == e, || format!("sample {k}: η ≠ E for E = {e:?}"))?;
    }
    Ok(format!("{} bundles, g ≤ 3, η = E exactly", bundles.len()))
}

fn fiber_theorem() -> Verdict {
    let mut r = rng(202);
    let mut ample = 0;
    for k in 0..220 {
        let (g, t) = (r.gen_range(1..=3), r.gen_range(0..=3));
        let m = random_semiabelian(&mut r, g, t, FormKind::Ample, None).map_err(|e| e.to_string())?;
        let rep = verify_main_theorem_fiber(&m);
        ensure(rep.ample && rep.polarized && !rep.violation, || {
            format!("ample sample {k}: {rep:?}")
        })?;
        ample += 1;
    }
    let mut degenerate = 0;
    for k in 0..120 {
        let (g, t) = (r.gen_range(1..=3), r.gen_range(0..=3));
        let m = random_semiabelian(&mut r, g, t, FormKind::Degenerate, None).map_err(|e| e.to_string())?;
        let rep = verify_main_theorem_fiber(&m);
        let kernel = pairing_kernel(&abelpol::semiabelian::polarization_from_bundle(&m));
        let w = tate_module(&m).weight().clone();
        let strict = kernel.contains_lattice(&w) && kernel.rank() > w.rank();
        ensure(!rep.polarized && strict, || format!("degenerate sample {k}: {rep:?}"))?;
        degenerate += 1;
    }
    Ok(format!("{ample} ample fibers polarized, {degenerate} degenerate fibers rejected"))
}

fn kernel_dictionary() -> Verdict {
    let bundles = fuzzed_bundles(303, 300, 4, None);
    let mut nontrivial = 0;
    for (k, b) in bundles.iter().enumerate() {
        let e = b.form().matrix();
        let s = b.hermitian().real_part().clone();
        let stacked = e.to_rational().vstack(&s).expect("same width");
        let lhs = kernel_saturated(e);
        ensure(lhs == kernel_saturated_rat(&stacked), || format!("sample {k}: kernels differ"))?;
        if !lhs.is_zero() {
            nontrivial += 1;
        }
    }
    Ok(format!("{} pairs, g ≤ 4, {nontrivial} with nonzero kernel", bundles.len()))
}

fn k_group_agreement() -> Verdict {
    let mut r = rng(404);
    let (mut finite, mut infinite) = (0, 0);
    let mut drawn = 0;
    while finite < 150 {
        drawn += 1;
        ensure(drawn < 20_000, || "too few instances with |det E| ≤ 400".into())?;
        let g = r.gen_range(1..=3);
        let kind = any_kind(&mut r);
        let b = random_bundle(&mut r, g, kind, Some(12), true).map_err(|e| e.to_string())?;
        let e = b.form().matrix();
        let det = brute_determinant(e);
        ensure(BigInt::from(det) == e.determinant(), || format!("determinant mismatch on {e:?}"))?;
        if det == 0 {
            ensure(k_group(&b) == KGroup::Infinite, || format!("det 0 but finite K for {e:?}"))?;
            infinite += 1;
            continue;
        }
        if det.abs() > 400 {
            continue;
        }
        let order = k_group(&b).order().ok_or_else(|| format!("infinite K with det {det}"))?;
        let divisors = symplectic_normal_form(b.form()).divisors;
        let prod: BigInt = divisors.iter().product();
        let root = det.abs().sqrt();
        ensure(root * root == det.abs(), || format!("|det E| = {det} is not a square"))?;
        let brute = brute_k_group(e, root as i64).map_err(|e| e.to_string())?;
        ensure(
            order == BigInt::from(det.abs()) && &prod * &prod == order && BigInt::from(brute) == order,
            || format!("order {order}, |det| {det}, Πd = {prod}, brute {brute} on {e:?}"),
        )?;
        finite += 1;
    }
    Ok(format!("{finite} finite instances agree four ways, {infinite} degenerate instances infinite"))
}

fn random_alternating<R: Rng>(r: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    let dense = r.gen_bool(0.5);
    for i in 0..n {
        for j in i + 1..n {
            let v = if dense || r.gen_bool(0.3) { r.gen_range(-6..=6) } else { 0 };
            m[(i, j)] = BigInt::from(v);
            m[(j, i)] = BigInt::from(-v);
        }
    }
    if r.gen_bool(0.3) {
        // Low rank: Aᵀ M A with a thin A.
        let k = r.gen_range(0..=n);
        let a = IntMatrix::from_fn(k, n, |_, _| BigInt::from(r.gen_range(-2..=2)));
        let inner = m.submatrix(0..k, 0..k);
        m = a.congruence(&inner);
    }
    m
}

fn symplectic_soundness() -> Verdict {
    let mut r = rng(505);
    let count = 600;
    for k in 0..count {
        let n = r.gen_range(1..=8);
        let e = random_alternating(&mut r, n);
        let sb = symplectic_reduce(&e);
        ensure(sb.u.congruence(&e) == sb.canonical_block(), || format!("sample {k}: UᵀEU ≠ normal form for {e:?}"))?;
        ensure(sb.u.determinant().abs().is_one(), || format!("sample {k}: |det U| ≠ 1"))?;
        ensure(2 * sb.divisors.len() + sb.kernel_rank == n, || format!("sample {k}: ranks"))?;
        ensure(sb.divisors.iter().all(|d| d.is_positive()), || format!("sample {k}: non-positive divisor"))?;
        ensure(
            sb.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            || format!("sample {k}: divisibility chain {:?}", sb.divisors),
        )?;
    }
    Ok(format!("{count} alternating matrices up to 8×8"))
}

fn cocycle_exactness() -> Verdict {
    let mut r = rng(606);
    let bundles = fuzzed_bundles(607, 100, 3, None);
    let mut triples = 0;
    for b in &bundles {
        let n = b.torus().lattice_rank();
        for _ in 0..12 {
            let mut v = || -> Vec<BigInt> { (0..n).map(|_| BigInt::from(r.gen_range(-5..=5))).collect() };
            let (u1, u2, w) = (v(), v(), v());
            let expected = CocycleExponent {
                x: BigRational::zero(),
                y: BigRational::from_integer(BigInt::from(2) * b.form().eval(&u1, &u2)),
            };
            let got = cocycle_defect(b, &u1, &u2, &w);
            ensure(got == expected, || format!("defect {got:?} ≠ {expected:?}"))?;
            triples += 1;
        }
    }
    Ok(format!("{triples} triples, coordinates in [−5, 5]"))
}

/// `C⁻¹·A·C′` with `A` complex-linear in the canonical charts, i.e. `[[X, −Y], [Y, X]]`.
fn random_homomorphism<R: Rng>(r: &mut R, source: (&ComplexTorus, &IntMatrix), target: (&ComplexTorus, &IntMatrix)) -> TorusHomomorphism {
    let (gs, gt) = (source.0.genus(), target.0.genus());
    let x: Vec<Vec<i64>> = (0..gt).map(|_| (0..gs).map(|_| r.gen_range(-2..=2)).collect()).collect();
    let y: Vec<Vec<i64>> = (0..gt).map(|_| (0..gs).map(|_| r.gen_range(-2..=2)).collect()).collect();
    let a = IntMatrix::from_fn(2 * gt, 2 * gs, |i, j| {
        let (bi, bj, p, q) = (i / gt, j / gs, i % gt, j % gs);
        BigInt::from(match (bi, bj) {
            (0, 0) | (1, 1) => x[p][q],
            (0, 1) => -y[p][q],
            _ => y[p][q],
        })
    });
    let c_inv = target.1.to_rational().inverse().expect("invertible chart");
    let f = (&(&c_inv * &a.to_rational()) * &source.1.to_rational())
        .to_integer()
        .expect("unimodular target chart keeps F integral");
    TorusHomomorphism::new(f, source.0, target.0).expect("complex-linear by construction")
}

fn chern_functoriality() -> Verdict {
    let mut r = rng(707);
    let mut pulled = 0;
    let mut tensors = 0;
    for k in 0..200 {
        let (gs, gt) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let ct = random_chart(&mut r, gt, false);
        let cs = random_chart(&mut r, gs, true);
        let (tt, ts) = (torus_in_chart(gt, &ct).unwrap(), torus_in_chart(gs, &cs).unwrap());
        let kinds: Vec<FormKind> = (0..3).map(|_| any_kind(&mut r)).collect();
        let bundles = random_bundles_in_chart(&mut r, gt, &ct, &kinds).map_err(|e| e.to_string())?;
        let f = random_homomorphism(&mut r, (&ts, &cs), (&tt, &ct));
        for b in &bundles {
            let pb = pullback(&f, b).map_err(|e| e.to_string())?;
            ensure(pb.form().matrix() == &f.matrix().congruence(b.form().matrix()), || {
                format!("sample {k}: c₁(f*B) ≠ FᵀEF")
            })?;
            pulled += 1;
        }
        let t = tensor(&bundles[0], &bundles[1]).map_err(|e| e.to_string())?;
        ensure(
            t.form().matrix() == &(bundles[0].form().matrix() + bundles[1].form().matrix()),
            || format!("sample {k}: c₁(B₁⊗B₂) ≠ E₁ + E₂"),
        )?;
        let mult = TorusHomomorphism::multiplication(&tt);
        let m = pullback(&mult, &bundles[2]).map_err(|e| e.to_string())?;
        ensure(m.form().matrix() == &mult.matrix().congruence(bundles[2].form().matrix()), || {
            format!("sample {k}: multiplication pullback")
        })?;
        tensors += 1;
    }
    Ok(format!("{pulled} pullbacks, {tensors} tensor products and multiplication pullbacks"))
}

fn base_change_stability() -> Verdict {
    let mut r = rng(808);
    let (mut families, mut maps) = (0, 0);
    for k in 0..60 {
        let f = random_coherent_family(&mut r, 6).map_err(|e| e.to_string())?;
        ensure(f.nodes().len() <= 6, || "too many nodes".into())?;
        let p = assemble_global_pairing(&f).map_err(|e| format!("family {k}: {e}"))?;
        ensure(validate_family(&f).valid && check_global_pairing(&f, &p).passed, || {
            format!("family {k} does not pass")
        })?;
        families += 1;
        for _ in 0..2 {
            let map = random_base_map(&mut r, &f, 6);
            let (f2, p2) = base_change(&f, &p, &map).map_err(|e| format!("family {k}: {e}"))?;
            ensure(validate_family(&f2).valid && check_global_pairing(&f2, &p2).passed, || {
                format!("family {k}: pulled-back pairing fails")
            })?;
            maps += 1;
        }
    }

    let curve = |e: i64| {
        let t = ComplexTorus::square(1);
        let b = AppellHumbertBundle::from_parts(
            &t,
            IntMatrix::from_i64(&[&[0, -e], &[e, 0]]),
            vec![BigRational::zero(), BigRational::zero()],
        )
        .unwrap();
        SemiabelianModel::abelian(b)
    };
    let bad = TorusFamily::new(
        [("p".to_string(), curve(1)), ("q".to_string(), curve(2))].into(),
        vec![
            FamilyEdge { src: "p".into(), dst: "p".into(), matrix: IntMatrix::identity(2).scale(&BigInt::from(-1)) },
            FamilyEdge { src: "p".into(), dst: "q".into(), matrix: IntMatrix::identity(2) },
        ],
    )
    .unwrap();
    let witness = match assemble_global_pairing(&bad) {
        Err(Error::IncoherentFamily { index, src, dst, .. }) => {
            ensure(index == 1 && src == "p" && dst == "q", || format!("wrong witness edge {index}"))?;
            format!("edge {index} ({src} -> {dst})")
        }
        other => return Err(format!("incoherent family not rejected: {other:?}")),
    };
    Ok(format!("{families} families, {maps} base maps; incoherent family rejected at {witness}"))
}

fn ample_nondegenerate() -> Verdict {
    let mut bundles = fuzzed_bundles(909, 400, 3, None);
    bundles.extend(fuzzed_bundles(910, 100, 4, None));
    let mut ample = 0;
    for (k, b) in bundles.iter().enumerate() {
        let ks = kernel_subtorus(b);
        if is_ample(b) {
            ensure(ks.is_zero(), || format!("sample {k}: ample but kernel subtorus of rank {}", ks.sublattice.rank()))?;
            ample += 1;
        }
    }
    ensure(ample >= 100, || format!("only {ample} ample samples"))?;
    Ok(format!("{ample} ample bundles among {} have zero kernel subtorus", bundles.len()))
}

fn random_rational<R: Rng>(r: &mut R) -> BigRational {
    BigRational::new(r.gen_range(-9..=9).into(), r.gen_range(1..=6).into())
}

fn random_symmetric<R: Rng>(r: &mut R, n: usize) -> RatMatrix {
    let style = [0, 0, 0, 1, 1, 1, 2, 3][r.gen_range(0..8)];
    let a = RatMatrix::from_fn(n, n, |_, _| random_rational(r));
    match style {
        // Unstructured: mostly indefinite.
        0 => {
            let mut s = a.clone();
            for i in 0..n {
                for j in 0..i {
                    s[(i, j)] = a[(j, i)].clone();
                }
            }
            s
        }
        // Gram matrix plus a positive shift: positive definite.
        1 => {
            let shift = BigRational::new(r.gen_range(1..=4).into(), r.gen_range(1..=4).into());
            &a.congruence(&RatMatrix::identity(n)) + &RatMatrix::identity(n).scale(&shift)
        }
        // Gram matrix of a thin factor: singular positive semidefinite.
        2 => {
            let k = r.gen_range(0..n);
            let thin = RatMatrix::from_fn(k, n, |_, _| random_rational(r));
            thin.congruence(&RatMatrix::identity(k))
        }
        // Gram matrix nudged by ±ε: near the boundary.
        _ => {
            let k = r.gen_range(0..n);
            let thin = RatMatrix::from_fn(k, n, |_, _| random_rational(r));
            let eps = BigRational::new(if r.gen_bool(0.5) { 1 } else { -1 }.into(), BigInt::from(10).pow(9));
            &thin.congruence(&RatMatrix::identity(k)) + &RatMatrix::identity(n).scale(&eps)
        }
    }
}

fn positivity_agreement() -> Verdict {
    let mut r = rng(1010);
    let (mut compared, mut flagged, mut positive) = (0, 0, 0);
    for k in 0..1000 {
        let n = r.gen_range(1..=6);
        let s = random_symmetric(&mut r, n);
        let exact = is_positive_definite(&s).map_err(|e| e.to_string())?;
        let numeric = numeric_positivity(&s).map_err(|e| e.to_string())?;
        if exact {
            positive += 1;
        }
        if !numeric.confident {
            flagged += 1;
            continue;
        }
        ensure(numeric.positive == exact, || format!("sample {k}: exact {exact}, numeric {numeric:?}"))?;
        compared += 1;
    }
    Ok(format!("1000 matrices: {compared} compared, {flagged} flagged, {positive} positive definite"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 Künneth pipeline identity", Duration::from_secs(5), kunneth_pipeline),
        ("2 fiber polarization", Duration::from_secs(10), fiber_theorem),
        ("3 kernel dictionary", Duration::MAX, kernel_dictionary),
        ("4 K-group agreement", Duration::from_secs(30), k_group_agreement),
        ("5 symplectic normal form", Duration::MAX, symplectic_soundness),
        ("6 cocycle exactness", Duration::MAX, cocycle_exactness),
        ("7 Chern class functoriality", Duration::MAX, chern_functoriality),
        ("8 base-change stability", Duration::from_secs(10), base_change_stability),
        ("9 ample implies non-degenerate", Duration::MAX, ample_nondegenerate),
        ("10 exact vs numeric positivity", Duration::MAX, positivity_agreement),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(d) if elapsed > budget => Err(format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            v => v,
        };
        match verdict {
            Ok(d) => println!("PASS  {name}: {d} ({elapsed:.2?})"),
            Err(d) => {
                failures += 1;
                println!("FAIL  {name}: {d} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
