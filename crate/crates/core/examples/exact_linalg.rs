//! Smith and Hermite forms, saturated kernels and the symplectic normal form.

use abelpol::linalg::{
    hermite_normal_form_rows, kernel_saturated, saturate, smith_normal_form, symplectic_reduce, IntMatrix,
};

fn main() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_normal_form(&m);
    println!("M = {m:?}");
    println!("invariant factors: {:?}", s.invariants());
    println!("U M V = {:?}", &(&s.u * &m) * &s.v);

    let rows = IntMatrix::from_i64(&[&[2, 4, 3], &[1, 2, 1]]);
    println!("HNF of {rows:?} = {:?}", hermite_normal_form_rows(&rows));

    let a = IntMatrix::from_i64(&[&[1, 1, 0, 0]]);
    let k = kernel_saturated(&a);
    println!("ker {a:?} has rank {} with basis {:?}", k.rank(), k.basis());

    // The column (2, 2, 0) spans a non-saturated line; saturation divides by 2.
    let line = IntMatrix::from_i64(&[&[2], &[2], &[0]]);
    println!("saturate {line:?} = {:?}", saturate(&line).unwrap().basis());

    let e = IntMatrix::from_i64(&[
        &[0, 2, 4, 0],
        &[-2, 0, 0, 6],
        &[-4, 0, 0, 2],
        &[0, -6, -2, 0],
    ]);
    let sb = symplectic_reduce(&e);
    println!("E = {e:?}");
    println!("divisors {:?}, kernel rank {}", sb.divisors, sb.kernel_rank);
    println!("Uᵀ E U = {:?}", sb.u.congruence(&e));
}
