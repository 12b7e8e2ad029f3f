//! Families of semi-abelian fibers over a finite base graph.
//!
//! Nodes stand for geometric points of the base. An edge `(src, dst, M)`
//! identifies `T(G_src)` with `T(G_dst)` through a filtered lattice
//! isomorphism `M` (specialization or monodromy). A global pairing is a
//! pairing per node, and compatibility along an edge means `P_src = Mᵀ·P_dst·M`.
//!
//! Only pairing coherence is checked along edges; whether `M` also carries
//! the bundle data is not part of the model. Toric rank is constant along
//! edges.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::semiabelian::{check_polarization, polarization_from_bundle, tate_module, SemiabelianModel};
use crate::tate_pairing::PairingForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEdge {
    pub src: String,
    pub dst: String,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusFamily {
    nodes: BTreeMap<String, SemiabelianModel>,
    edges: Vec<FamilyEdge>,
}

impl TorusFamily {
    /// Only checks that edges reference known nodes; see [`validate_family`]
    /// for the lattice invariants.
    pub fn new(nodes: BTreeMap<String, SemiabelianModel>, edges: Vec<FamilyEdge>) -> Result<Self> {
        for (k, e) in edges.iter().enumerate() {
            for end in [&e.src, &e.dst] {
                if !nodes.contains_key(end) {
                    return Err(Error::InvalidFamily(format!("edge {k} references unknown node `{end}`")));
                }
            }
        }
        Ok(Self { nodes, edges })
    }

    pub fn nodes(&self) -> &BTreeMap<String, SemiabelianModel> {
        &self.nodes
    }

    pub fn edges(&self) -> &[FamilyEdge] {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&SemiabelianModel> {
        self.nodes.get(id)
    }
}

/// A pairing on the Tate module of every node, in that node's chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalPairing {
    pairings: BTreeMap<String, PairingForm>,
}

impl GlobalPairing {
    pub fn new(pairings: BTreeMap<String, PairingForm>) -> Self {
        Self { pairings }
    }

    pub fn get(&self, id: &str) -> Option<&PairingForm> {
        self.pairings.get(id)
    }

    pub fn pairings(&self) -> &BTreeMap<String, PairingForm> {
        &self.pairings
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn edge_violation(k: usize, e: &FamilyEdge, reason: impl Into<String>) -> Violation {
    Violation {
        edge: Some(k),
        node: None,
        reason: format!("{} -> {}: {}", e.src, e.dst, reason.into()),
    }
}

/// Edge invariants: square unimodular `M`, equal Tate ranks, `M(W_src) = W_dst`.
pub fn validate_family(f: &TorusFamily) -> FamilyReport {
    let mut violations = Vec::new();
    for (k, e) in f.edges.iter().enumerate() {
        let (gs, gd) = (&f.nodes[&e.src], &f.nodes[&e.dst]);
        let (ts, td) = (tate_module(gs), tate_module(gd));
        if ts.rank() != td.rank() {
            violations.push(edge_violation(
                k,
                e,
                format!("Tate ranks differ ({} vs {})", ts.rank(), td.rank()),
            ));
            continue;
        }
        if e.matrix.rows() != td.rank() || e.matrix.cols() != ts.rank() {
            violations.push(edge_violation(
                k,
                e,
                format!(
                    "matrix is {}x{}, expected {}x{}",
                    e.matrix.rows(),
                    e.matrix.cols(),
                    td.rank(),
                    ts.rank()
                ),
            ));
            continue;
        }
        let det = e.matrix.determinant();
        if !e.matrix.is_unimodular() {
            violations.push(edge_violation(k, e, format!("determinant {det} is not ±1")));
            continue;
        }
        let image = ts.weight().image(&e.matrix).expect("unimodular edge");
        if &image != td.weight() {
            violations.push(edge_violation(k, e, "does not map W onto W"));
        }
    }
    FamilyReport {
        valid: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub edges_compatible: bool,
    pub fibers_polarized: bool,
    pub passed: bool,
    pub edge_failures: Vec<Violation>,
    pub fiber_failures: Vec<Violation>,
}

/// (a) `P_src = Mᵀ·P_dst·M` on every edge, (b) kernel of `P_b` equals `W_b` at every node.
pub fn check_global_pairing(f: &TorusFamily, p: &GlobalPairing) -> PairingReport {
    let mut fiber_failures = Vec::new();
    for (id, g) in &f.nodes {
        let node_fail = |reason: String| Violation {
            edge: None,
            node: Some(id.clone()),
            reason,
        };
        match p.get(id) {
            None => fiber_failures.push(node_fail("no pairing given".into())),
            Some(pb) => match check_polarization(pb, &tate_module(g)) {
                Ok(true) => {}
                Ok(false) => fiber_failures.push(node_fail("kernel differs from the weight sublattice".into())),
                Err(err) => fiber_failures.push(node_fail(err.to_string())),
            },
        }
    }
    let mut edge_failures = Vec::new();
    for (k, e) in f.edges.iter().enumerate() {
        let (Some(ps), Some(pd)) = (p.get(&e.src), p.get(&e.dst)) else {
            edge_failures.push(edge_violation(k, e, "missing endpoint pairing"));
            continue;
        };
        if e.matrix.rows() != pd.rank() || e.matrix.cols() != ps.rank() {
            edge_failures.push(edge_violation(k, e, "matrix size does not match pairings"));
            continue;
        }
        if &pd.pullback(&e.matrix) != ps {
            edge_failures.push(edge_violation(k, e, "P_src ≠ Mᵀ·P_dst·M"));
        }
    }
    PairingReport {
        edges_compatible: edge_failures.is_empty(),
        fibers_polarized: fiber_failures.is_empty(),
        passed: edge_failures.is_empty() && fiber_failures.is_empty(),
        edge_failures,
        fiber_failures,
    }
}

/// Per-node assembled polarizations, after checking that they are
/// transported onto each other by every edge.
pub fn assemble_global_pairing(f: &TorusFamily) -> Result<GlobalPairing> {
    let pairings: BTreeMap<String, PairingForm> = f
        .nodes
        .iter()
        .map(|(id, g)| (id.clone(), polarization_from_bundle(g)))
        .collect();
    for (index, e) in f.edges.iter().enumerate() {
        let (ps, pd) = (&pairings[&e.src], &pairings[&e.dst]);
        let incoherent = |reason: &str| Error::IncoherentFamily {
            index,
            src: e.src.clone(),
            dst: e.dst.clone(),
            reason: reason.into(),
        };
        if e.matrix.rows() != pd.rank() || e.matrix.cols() != ps.rank() {
            return Err(incoherent("edge matrix size does not match the fibers"));
        }
        if &pd.pullback(&e.matrix) != ps {
            return Err(incoherent("pullback of the target polarization differs from the source polarization"));
        }
    }
    Ok(GlobalPairing { pairings })
}

/// An edge of `B′` lying over edge `over` of `B`, or over a single node
/// (`over = None`, requiring `φ(src) = φ(dst)`; the identification is then the identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseEdge {
    pub src: String,
    pub dst: String,
    pub over: Option<usize>,
}

/// A graph map `f : B′ → B`; the nodes of `B′` are the keys of `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BaseMap {
    pub phi: BTreeMap<String, String>,
    pub edges: Vec<BaseEdge>,
}

impl BaseMap {
    pub fn identity(f: &TorusFamily) -> Self {
        Self {
            phi: f.nodes.keys().map(|k| (k.clone(), k.clone())).collect(),
            edges: f
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| BaseEdge {
                    src: e.src.clone(),
                    dst: e.dst.clone(),
                    over: Some(k),
                })
                .collect(),
        }
    }

    /// Checks that `φ` lands in `B` and that every edge lies over an edge
    /// (or node) with matching endpoints.
    pub fn check_homomorphism(&self, f: &TorusFamily) -> Result<()> {
        for (b1, b) in &self.phi {
            if !f.nodes.contains_key(b) {
                return Err(Error::InvalidBaseMap(format!("`{b1}` maps to unknown node `{b}`")));
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            let (Some(s), Some(d)) = (self.phi.get(&e.src), self.phi.get(&e.dst)) else {
                return Err(Error::InvalidBaseMap(format!("edge {k} has an endpoint outside φ's domain")));
            };
            match e.over {
                Some(i) => {
                    let base = f.edges.get(i).ok_or_else(|| {
                        Error::InvalidBaseMap(format!("edge {k} lies over missing edge {i}"))
                    })?;
                    if &base.src != s || &base.dst != d {
                        return Err(Error::InvalidBaseMap(format!(
                            "edge {k} ({} -> {}) maps to {s} -> {d}, but edge {i} is {} -> {}",
                            e.src, e.dst, base.src, base.dst
                        )));
                    }
                }
                None if s != d => {
                    return Err(Error::InvalidBaseMap(format!(
                        "edge {k} is collapsed but its endpoints map to {s} and {d}"
                    )));
                }
                None => {}
            }
        }
        Ok(())
    }
}

/// Pulls the family and its pairing back along `f : B′ → B`:
/// `G′_{b′} = G_{φ(b′)}`, `P′_{b′} = P_{φ(b′)}`, edges inherit matrices.
pub fn base_change(
    f: &TorusFamily,
    p: &GlobalPairing,
    map: &BaseMap,
) -> Result<(TorusFamily, GlobalPairing)> {
    map.check_homomorphism(f)?;
    let mut nodes = BTreeMap::new();
    let mut pairings = BTreeMap::new();
    for (b1, b) in &map.phi {
        nodes.insert(b1.clone(), f.nodes[b].clone());
        let pb = p
            .get(b)
            .ok_or_else(|| Error::InvalidFamily(format!("no pairing at node `{b}`")))?;
        pairings.insert(b1.clone(), pb.clone());
    }
    let edges = map
        .edges
        .iter()
        .map(|e| FamilyEdge {
            src: e.src.clone(),
            dst: e.dst.clone(),
            matrix: match e.over {
                Some(i) => f.edges[i].matrix.clone(),
                None => IntMatrix::identity(f.nodes[&map.phi[&e.src]].tate_rank()),
            },
        })
        .collect();
    Ok((TorusFamily { nodes, edges }, GlobalPairing { pairings }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell_humbert::AppellHumbertBundle;
    use crate::torus::ComplexTorus;
    use num_rational::BigRational;

    fn curve(e: i64) -> SemiabelianModel {
        let t = ComplexTorus::square(1);
        let b = AppellHumbertBundle::from_parts(
            &t,
            IntMatrix::from_i64(&[&[0, -e], &[e, 0]]),
            vec![BigRational::new(1.into(), 4.into()); 2],
        )
        .unwrap();
        SemiabelianModel::abelian(b)
    }

    fn family(nodes: &[(&str, SemiabelianModel)], edges: &[(&str, &str, IntMatrix)]) -> TorusFamily {
        TorusFamily::new(
            nodes.iter().map(|(k, g)| (k.to_string(), g.clone())).collect(),
            edges
                .iter()
                .map(|(s, d, m)| FamilyEdge {
                    src: s.to_string(),
                    dst: d.to_string(),
                    matrix: m.clone(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        let single = family(&[("a", curve(1))], &[]);
        assert!(validate_family(&single).valid);

        let pair = family(
            &[("a", curve(1)), ("b", curve(1))],
            &[("a", "b", IntMatrix::identity(2))],
        );
        assert!(validate_family(&pair).valid);

        let bad = family(
            &[("a", curve(1)), ("b", curve(1))],
            &[("a", "b", IntMatrix::from_i64(&[&[1, 0], &[0, 2]]))],
        );
        let rep = validate_family(&bad);
        assert!(!rep.valid);
        assert_eq!(rep.violations[0].edge, Some(0));
    }

    #[test]
    fn weight_must_be_preserved() {
        let t = ComplexTorus::square(1);
        let g = SemiabelianModel::new(1, &t, AppellHumbertBundle::trivial(&t)).unwrap();
        // Swaps the toric coordinate with an abelian one.
        let m = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let f = family(&[("a", g.clone()), ("b", g)], &[("a", "b", m)]);
        let rep = validate_family(&f);
        assert!(!rep.valid);
        assert!(rep.violations[0].reason.contains("W"));
    }

    #[test]
    fn unknown_nodes_rejected() {
        let err = TorusFamily::new(
            [("a".to_string(), curve(1))].into_iter().collect(),
            vec![FamilyEdge {
                src: "a".into(),
                dst: "zz".into(),
                matrix: IntMatrix::identity(2),
            }],
        );
        assert!(matches!(err, Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn global_pairing_examples() {
        let constant = family(
            &[("a", curve(1)), ("b", curve(1))],
            &[("a", "b", IntMatrix::identity(2))],
        );
        let p = assemble_global_pairing(&constant).unwrap();
        assert!(check_global_pairing(&constant, &p).passed);
        assert_eq!(p.get("a"), p.get("b"));

        let loop_ = family(&[("a", curve(1))], &[("a", "a", -&IntMatrix::identity(2))]);
        let p = assemble_global_pairing(&loop_).unwrap();
        assert!(check_global_pairing(&loop_, &p).passed);

        // Rotation by J is symplectic, but a symmetric P is not invariant under it.
        let rot = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let f = family(&[("a", curve(1))], &[("a", "a", rot)]);
        let p = GlobalPairing::new(
            [("a".to_string(), PairingForm::new(IntMatrix::from_i64(&[&[1, 0], &[0, 2]])).unwrap())]
                .into_iter()
                .collect(),
        );
        let rep = check_global_pairing(&f, &p);
        assert!(!rep.edges_compatible);
        assert_eq!(rep.edge_failures[0].edge, Some(0));
        assert!(rep.fibers_polarized);
    }

    #[test]
    fn incoherent_family_names_edge() {
        let f = family(
            &[("a", curve(1)), ("b", curve(2))],
            &[("a", "b", IntMatrix::identity(2))],
        );
        match assemble_global_pairing(&f) {
            Err(Error::IncoherentFamily { index, src, dst, .. }) => {
                assert_eq!((index, src.as_str(), dst.as_str()), (0, "a", "b"));
            }
            other => panic!("expected incoherence, got {other:?}"),
        }
    }

    #[test]
    fn base_change_examples() {
        let f = family(&[("x", curve(1))], &[("x", "x", -&IntMatrix::identity(2))]);
        let p = assemble_global_pairing(&f).unwrap();

        let (f1, p1) = base_change(&f, &p, &BaseMap::identity(&f)).unwrap();
        assert_eq!((&f1, &p1), (&f, &p));

        let point = BaseMap {
            phi: [("pt".to_string(), "x".to_string())].into_iter().collect(),
            edges: vec![],
        };
        let (fp, pp) = base_change(&f, &p, &point).unwrap();
        assert_eq!(fp.nodes().len(), 1);
        assert_eq!(pp.get("pt"), p.get("x"));

        let cover = BaseMap {
            phi: [("u", "x"), ("v", "x")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            edges: vec![
                BaseEdge { src: "u".into(), dst: "v".into(), over: Some(0) },
                BaseEdge { src: "v".into(), dst: "u".into(), over: Some(0) },
                BaseEdge { src: "u".into(), dst: "v".into(), over: None },
            ],
        };
        let (fc, pc) = base_change(&f, &p, &cover).unwrap();
        assert!(validate_family(&fc).valid);
        assert!(check_global_pairing(&fc, &pc).passed);
    }

    #[test]
    fn base_map_must_be_a_homomorphism() {
        let f = family(
            &[("a", curve(1)), ("b", curve(1))],
            &[("a", "b", IntMatrix::identity(2))],
        );
        let p = assemble_global_pairing(&f).unwrap();
        let backwards = BaseMap {
            phi: [("s", "b"), ("t", "a")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            edges: vec![BaseEdge { src: "s".into(), dst: "t".into(), over: Some(0) }],
        };
        assert!(matches!(base_change(&f, &p, &backwards), Err(Error::InvalidBaseMap(_))));
        let collapsed = BaseMap {
            phi: [("s", "a"), ("t", "b")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            edges: vec![BaseEdge { src: "s".into(), dst: "t".into(), over: None }],
        };
        assert!(base_change(&f, &p, &collapsed).is_err());
        let dangling = BaseMap {
            phi: [("s".to_string(), "nowhere".to_string())].into_iter().collect(),
            edges: vec![],
        };
        assert!(base_change(&f, &p, &dangling).is_err());
    }
}
