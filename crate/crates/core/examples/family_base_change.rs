//! A two-point family with a monodromy loop, pulled back to a three-point base.

use std::collections::BTreeMap;

use num_rational::BigRational;

use abelpol::appell_humbert::AppellHumbertBundle;
use abelpol::family::{
    assemble_global_pairing, base_change, check_global_pairing, validate_family, BaseEdge, BaseMap, FamilyEdge,
    TorusFamily,
};
use abelpol::linalg::IntMatrix;
use abelpol::semiabelian::SemiabelianModel;
use abelpol::torus::ComplexTorus;

fn fiber(d: i64) -> SemiabelianModel {
    let a = ComplexTorus::square(1);
    let b = AppellHumbertBundle::from_parts(
        &a,
        IntMatrix::from_i64(&[&[0, -d], &[d, 0]]),
        vec![BigRational::from_integer(0.into()); 2],
    )
    .unwrap();
    SemiabelianModel::new(1, &a, b).unwrap()
}

fn main() {
    let nodes: BTreeMap<_, _> = [("s".to_string(), fiber(1)), ("t".to_string(), fiber(1))].into();
    let edges = vec![
        FamilyEdge {
            src: "s".into(),
            dst: "t".into(),
            matrix: IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        },
        FamilyEdge {
            src: "t".into(),
            dst: "t".into(),
            matrix: IntMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        },
    ];
    let f = TorusFamily::new(nodes, edges).unwrap();
    println!("valid: {}", validate_family(&f).valid);
    let p = assemble_global_pairing(&f).unwrap();
    println!("pairing check: {:?}", check_global_pairing(&f, &p));

    let map = BaseMap {
        phi: [("x", "s"), ("y", "t"), ("z", "t")]
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .into(),
        edges: vec![
            BaseEdge { src: "x".into(), dst: "y".into(), over: Some(0) },
            BaseEdge { src: "y".into(), dst: "z".into(), over: None },
            BaseEdge { src: "z".into(), dst: "z".into(), over: Some(1) },
        ],
    };
    let (f2, p2) = base_change(&f, &p, &map).unwrap();
    println!("pulled back: {} nodes, passes {}", f2.nodes().len(), check_global_pairing(&f2, &p2).passed);

    let bad: BTreeMap<_, _> = [("s".to_string(), fiber(1)), ("t".to_string(), fiber(2))].into();
    let bad = TorusFamily::new(
        bad,
        vec![FamilyEdge { src: "s".into(), dst: "t".into(), matrix: IntMatrix::identity(3) }],
    )
    .unwrap();
    println!("incoherent: {}", assemble_global_pairing(&bad).unwrap_err());
}
