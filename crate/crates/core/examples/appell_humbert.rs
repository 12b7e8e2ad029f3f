//! Line bundles from Appell–Humbert data on a genus-2 torus.

use num_bigint::BigInt;
use num_rational::BigRational;

use abelpol::appell_humbert::{
    cocycle_defect, hermitian_from_alternating, is_ample, k_group, kernel_subtorus, symplectic_normal_form,
    tensor, AppellHumbertBundle,
};
use abelpol::linalg::IntMatrix;
use abelpol::torus::ComplexTorus;

fn main() {
    let t = ComplexTorus::square(2);
    // Polarization of type (1, 2) in the canonical chart.
    let e = IntMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -2], &[0, 0, 2, 0]]);
    let rho = vec![
        BigRational::new(1.into(), 2.into()),
        BigRational::new(0.into(), 1.into()),
        BigRational::new(1.into(), 3.into()),
        BigRational::new(3.into(), 4.into()),
    ];
    let b = AppellHumbertBundle::from_parts(&t, e, rho).unwrap();

    let h = hermitian_from_alternating(b.form()).unwrap();
    println!("S = Re H = {:?}", h.real_part());
    println!("ample: {}", is_ample(&b));
    println!("type: {:?}", symplectic_normal_form(b.form()).divisors);
    println!("K(L) = {:?}", k_group(&b));

    let b2 = tensor(&b, &b).unwrap();
    println!("L⊗L has K of order {}", k_group(&b2).order().unwrap());

    let u1: Vec<BigInt> = [1, 0, 2, -1].map(BigInt::from).to_vec();
    let u2: Vec<BigInt> = [0, 1, -3, 0].map(BigInt::from).to_vec();
    let v: Vec<BigInt> = [2, 2, 0, 1].map(BigInt::from).to_vec();
    println!("ρ(u₁) angle = {}", b.character_angle(&u1));
    println!("cocycle defect = {:?}", cocycle_defect(&b, &u1, &u2, &v));

    let degenerate = AppellHumbertBundle::from_parts(
        &t,
        IntMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        vec![BigRational::from_integer(0.into()); 4],
    )
    .unwrap();
    let ks = kernel_subtorus(&degenerate);
    println!("degenerate bundle: ample {}, K = {:?}", is_ample(&degenerate), k_group(&degenerate));
    if let Some(sub) = ks.subtorus {
        println!("kernel subtorus of genus {} spanned by {:?}", sub.torus.genus(), ks.sublattice.basis());
    }
}
