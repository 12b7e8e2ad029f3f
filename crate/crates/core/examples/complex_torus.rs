use abelpol::linalg::{RatMatrix, SaturatedSublattice};
use abelpol::torus::{ComplexTorus, TorusHomomorphism};

fn main() {
    let curve = ComplexTorus::square(1);
    println!("square curve J = {:?}", curve.complex_structure());

    // A lattice that is not the square one: J has non-integral entries.
    let j = RatMatrix::from_fractions(&[&[(1, 2), (1, 2)], &[(-5, 2), (-1, 2)]]).unwrap();
    let skew = ComplexTorus::new(1, j).unwrap();
    println!("rational J = {:?}", skew.complex_structure());

    let bad = ComplexTorus::new(1, RatMatrix::identity(2));
    println!("J = I: {}", bad.unwrap_err());

    let surface = curve.product(&curve);
    let m = TorusHomomorphism::multiplication(&curve);
    println!("multiplication E×E → E: {:?}", m.matrix());
    let sw = TorusHomomorphism::swap(&curve, &curve);
    println!("swap∘swap is the identity: {}", sw.compose(&sw).unwrap().matrix().is_identity());

    let first = SaturatedSublattice::coordinate(4, &[0, 1]);
    let (sub, inc) = surface.subtorus(&first).unwrap().unwrap();
    println!("first factor: genus {} with inclusion {:?}", sub.genus(), inc.matrix());

    let diagonal_line = SaturatedSublattice::coordinate(4, &[0]);
    println!("a J-unstable line: {}", surface.subtorus(&diagonal_line).unwrap_err());
}
