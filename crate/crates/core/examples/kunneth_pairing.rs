use num_rational::BigRational;

use abelpol::appell_humbert::AppellHumbertBundle;
use abelpol::linalg::IntMatrix;
use abelpol::tate_pairing::{eta_from_bundle, kunneth_project, pairing_kernel, ProductClass};
use abelpol::torus::ComplexTorus;

fn main() {
    let t = ComplexTorus::square(1);
    let b = AppellHumbertBundle::from_parts(
        &t,
        IntMatrix::from_i64(&[&[0, -3], &[3, 0]]),
        vec![BigRational::new(1.into(), 6.into()); 2],
    )
    .unwrap();

    let omega = ProductClass::from_multiplication_pullback(&b);
    println!("m*E on Γ⊕Γ = {:?}", omega.matrix());
    let eta = kunneth_project(&omega);
    println!("(1,1) block η = {:?}", eta.matrix());
    println!("η equals E: {}", eta_from_bundle(&b).matrix() == b.form().matrix());
    println!("ker η = {:?}", pairing_kernel(&eta).basis());
}
