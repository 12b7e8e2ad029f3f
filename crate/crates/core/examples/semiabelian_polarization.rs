use num_rational::BigRational;

use abelpol::appell_humbert::AppellHumbertBundle;
use abelpol::linalg::IntMatrix;
use abelpol::semiabelian::{
    check_polarization, polarization_from_bundle, tate_module, verify_main_theorem_fiber, SemiabelianModel,
};
use abelpol::torus::ComplexTorus;

fn main() {
    let a = ComplexTorus::square(1);
    let ample = AppellHumbertBundle::from_parts(
        &a,
        IntMatrix::from_i64(&[&[0, -1], &[1, 0]]),
        vec![BigRational::from_integer(0.into()); 2],
    )
    .unwrap();

    for r in 0..3 {
        let g = SemiabelianModel::new(r, &a, ample.clone()).unwrap();
        let p = polarization_from_bundle(&g);
        let t = tate_module(&g);
        println!(
            "r = {r}: Tate rank {}, P = {:?}, polarized {}",
            t.rank(),
            p.matrix(),
            check_polarization(&p, &t).unwrap()
        );
    }

    let trivial = SemiabelianModel::new(1, &a, AppellHumbertBundle::trivial(&a)).unwrap();
    let report = verify_main_theorem_fiber(&trivial);
    println!("trivial bundle: {}", serde_json::to_string(&report).unwrap());
}
