use num_rational::BigRational;

use abelpol::appell_humbert::{k_group, AppellHumbertBundle};
use abelpol::linalg::{is_positive_definite, kernel_saturated, IntMatrix, RatMatrix};
use abelpol::oracles::{brute_k_group, brute_kernel, numeric_positivity};
use abelpol::torus::ComplexTorus;

fn main() {
    let m = IntMatrix::from_i64(&[&[1, 2, -1], &[2, 4, -2]]);
    let k = kernel_saturated(&m);
    let boxed = brute_kernel(&m, 2);
    println!("kernel rank {}, {} box points, all contained: {}", k.rank(), boxed.len(), boxed.iter().all(|v| k.contains(v)));

    let e = IntMatrix::from_i64(&[&[0, -2, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, -4], &[0, 0, 4, 0]]);
    let b = AppellHumbertBundle::from_parts(&ComplexTorus::square(2), e.clone(), vec![BigRational::from_integer(0.into()); 4]).unwrap();
    println!("K order {:?}, brute force {}", k_group(&b).order(), brute_k_group(&e, 8).unwrap());

    let eps = BigRational::new(1.into(), 10i64.pow(12).into());
    let s = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
    let nudged = &s + &RatMatrix::identity(2).scale(&eps);
    println!("exact {:?}, numeric {:?}", is_positive_definite(&nudged), numeric_positivity(&nudged));
}
