//! JSON documents for tori, bundles, semi-abelian fibers, families and base maps.
//!
//! Parsing is split in two stages. [`Document::from_json`] checks the schema
//! and matrix shapes and fails with [`Error::Parse`]; the `build` methods then
//! check the mathematical invariants and fail with the corresponding error.
//!
//! ```text
//! torus        {"genus": g, "J": [[q, ...], ...]}
//! bundle       {"torus": <torus>, "E": [[n, ...], ...], "rho": [q, ...]}
//! semiabelian  {"toric_rank": r, "abelian": <torus>, "bundle": {"E": ..., "rho": ...}}
//! family       {"nodes": {id: <semiabelian>, ...}, "edges": [{"src", "dst", "M"}, ...]}
//! base map     {"phi": {id': id, ...}, "edges": [{"src", "dst", "over": k | null}, ...]}
//! ```

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::appell_humbert::AppellHumbertBundle;
use crate::error::{Error, Result};
use crate::family::{BaseEdge, BaseMap, FamilyEdge, TorusFamily};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::semiabelian::SemiabelianModel;
use crate::serde_util::{
    int_matrix_value, parse_int, parse_int_matrix, parse_rat_matrix, parse_rational, rat_matrix_value,
    rational_value,
};
use crate::torus::ComplexTorus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDoc {
    pub genus: usize,
    pub j: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDoc {
    pub e: IntMatrix,
    pub rho: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiabelianDoc {
    pub toric_rank: usize,
    pub abelian: TorusDoc,
    pub bundle: BundleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDoc {
    pub nodes: BTreeMap<String, SemiabelianDoc>,
    pub edges: Vec<FamilyEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Torus(TorusDoc),
    Bundle { torus: TorusDoc, bundle: BundleDoc },
    Semiabelian(SemiabelianDoc),
    Family(FamilyDoc),
    BaseMap(BaseMap),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Torus(_) => "torus",
            Document::Bundle { .. } => "bundle",
            Document::Semiabelian(_) => "semiabelian",
            Document::Family(_) => "family",
            Document::BaseMap(_) => "base-map",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json(&v)
    }

    /// The kind is recognised by its distinguishing key.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "document")?;
        if obj.contains_key("phi") {
            parse_base_map(v).map(Document::BaseMap)
        } else if obj.contains_key("nodes") {
            parse_family(v).map(Document::Family)
        } else if obj.contains_key("toric_rank") {
            parse_semiabelian(v, "document").map(Document::Semiabelian)
        } else if obj.contains_key("E") {
            let torus = parse_torus(field(obj, "torus", "bundle")?, "bundle.torus")?;
            let bundle = parse_bundle(v, torus.genus, "bundle")?;
            Ok(Document::Bundle { torus, bundle })
        } else if obj.contains_key("J") {
            parse_torus(v, "torus").map(Document::Torus)
        } else {
            Err(Error::Parse(
                "unrecognised document: expected one of the keys phi, nodes, toric_rank, E, J".into(),
            ))
        }
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("{what}: missing field `{key}`")))
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    parse_int(v, what)?
        .to_usize()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a non-negative integer")))
}

fn parse_string(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| Error::Parse(format!("{what}: expected a string")))
}

fn expect_shape(rows: usize, cols: usize, n: usize, what: &str) -> Result<()> {
    if rows != n || cols != n {
        return Err(Error::Parse(format!("{what}: expected {n}×{n}, got {rows}×{cols}")));
    }
    Ok(())
}

fn parse_torus(v: &Value, what: &str) -> Result<TorusDoc> {
    let obj = object(v, what)?;
    let genus = parse_usize(field(obj, "genus", what)?, &format!("{what}.genus"))?;
    let j = parse_rat_matrix(field(obj, "J", what)?, &format!("{what}.J"))?;
    expect_shape(j.rows(), j.cols(), 2 * genus, &format!("{what}.J"))?;
    Ok(TorusDoc { genus, j })
}

fn parse_bundle(v: &Value, genus: usize, what: &str) -> Result<BundleDoc> {
    let obj = object(v, what)?;
    let e = parse_int_matrix(field(obj, "E", what)?, &format!("{what}.E"))?;
    expect_shape(e.rows(), e.cols(), 2 * genus, &format!("{what}.E"))?;
    let rho = field(obj, "rho", what)?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}.rho: expected an array")))?
        .iter()
        .map(|a| parse_rational(a, &format!("{what}.rho")))
        .collect::<Result<Vec<_>>>()?;
    if rho.len() != 2 * genus {
        return Err(Error::Parse(format!(
            "{what}.rho: expected {} angles, got {}",
            2 * genus,
            rho.len()
        )));
    }
    Ok(BundleDoc { e, rho })
}

fn parse_semiabelian(v: &Value, what: &str) -> Result<SemiabelianDoc> {
    let obj = object(v, what)?;
    let toric_rank = parse_usize(field(obj, "toric_rank", what)?, &format!("{what}.toric_rank"))?;
    let abelian = parse_torus(field(obj, "abelian", what)?, &format!("{what}.abelian"))?;
    let bundle = parse_bundle(field(obj, "bundle", what)?, abelian.genus, &format!("{what}.bundle"))?;
    Ok(SemiabelianDoc {
        toric_rank,
        abelian,
        bundle,
    })
}

fn parse_family(v: &Value) -> Result<FamilyDoc> {
    let obj = object(v, "family")?;
    let nodes = object(field(obj, "nodes", "family")?, "family.nodes")?
        .iter()
        .map(|(id, n)| Ok((id.clone(), parse_semiabelian(n, &format!("family.nodes.{id}"))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let edges = match obj.get("edges") {
        None => Vec::new(),
        Some(list) => list
            .as_array()
            .ok_or_else(|| Error::Parse("family.edges: expected an array".into()))?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let what = format!("family.edges[{k}]");
                let o = object(e, &what)?;
                let edge = FamilyEdge {
                    src: parse_string(field(o, "src", &what)?, &what)?,
                    dst: parse_string(field(o, "dst", &what)?, &what)?,
                    matrix: parse_int_matrix(field(o, "M", &what)?, &format!("{what}.M"))?,
                };
                for end in [&edge.src, &edge.dst] {
                    if !nodes.contains_key(end) {
                        return Err(Error::Parse(format!("{what}: unknown node `{end}`")));
                    }
                }
                Ok(edge)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(FamilyDoc { nodes, edges })
}

fn parse_base_map(v: &Value) -> Result<BaseMap> {
    let obj = object(v, "base map")?;
    let phi = object(field(obj, "phi", "base map")?, "base map.phi")?
        .iter()
        .map(|(k, b)| Ok((k.clone(), parse_string(b, &format!("base map.phi.{k}"))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let edges = match obj.get("edges") {
        None => Vec::new(),
        Some(list) => list
            .as_array()
            .ok_or_else(|| Error::Parse("base map.edges: expected an array".into()))?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let what = format!("base map.edges[{k}]");
                let o = object(e, &what)?;
                let over = match o.get("over") {
                    None | Some(Value::Null) => None,
                    Some(x) => Some(parse_usize(x, &format!("{what}.over"))?),
                };
                Ok(BaseEdge {
                    src: parse_string(field(o, "src", &what)?, &what)?,
                    dst: parse_string(field(o, "dst", &what)?, &what)?,
                    over,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(BaseMap { phi, edges })
}

impl TorusDoc {
    pub fn build(&self) -> Result<ComplexTorus> {
        ComplexTorus::new(self.genus, self.j.clone())
    }
}

impl BundleDoc {
    pub fn build(&self, torus: &ComplexTorus) -> Result<AppellHumbertBundle> {
        AppellHumbertBundle::from_parts(torus, self.e.clone(), self.rho.clone())
    }
}

impl SemiabelianDoc {
    pub fn build(&self) -> Result<SemiabelianModel> {
        let torus = self.abelian.build()?;
        let bundle = self.bundle.build(&torus)?;
        SemiabelianModel::new(self.toric_rank, &torus, bundle)
    }
}

impl FamilyDoc {
    /// Fails on the first node whose fiber is invalid, naming it.
    pub fn build(&self) -> Result<TorusFamily> {
        let nodes = self
            .nodes
            .iter()
            .map(|(id, n)| {
                n.build()
                    .map(|g| (id.clone(), g))
                    .map_err(|e| Error::InvalidFamily(format!("node `{id}`: {e}")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        TorusFamily::new(nodes, self.edges.clone())
    }
}

pub fn torus_value(t: &ComplexTorus) -> Value {
    json!({"genus": t.genus(), "J": rat_matrix_value(t.complex_structure())})
}

fn bundle_fields(b: &AppellHumbertBundle) -> Value {
    json!({
        "E": int_matrix_value(b.form().matrix()),
        "rho": b.rho().angles().iter().map(rational_value).collect::<Vec<_>>(),
    })
}

pub fn bundle_value(b: &AppellHumbertBundle) -> Value {
    let mut v = json!({"torus": torus_value(b.torus())});
    if let (Some(obj), Value::Object(rest)) = (v.as_object_mut(), bundle_fields(b)) {
        obj.extend(rest);
    }
    v
}

pub fn semiabelian_value(g: &SemiabelianModel) -> Value {
    json!({
        "toric_rank": g.toric_rank(),
        "abelian": torus_value(g.abelian_part()),
        "bundle": bundle_fields(g.bundle()),
    })
}

pub fn family_value(f: &TorusFamily) -> Value {
    let nodes: Map<String, Value> = f
        .nodes()
        .iter()
        .map(|(id, g)| (id.clone(), semiabelian_value(g)))
        .collect();
    let edges: Vec<Value> = f
        .edges()
        .iter()
        .map(|e| json!({"src": e.src, "dst": e.dst, "M": int_matrix_value(&e.matrix)}))
        .collect();
    json!({"nodes": nodes, "edges": edges})
}

pub fn base_map_value(m: &BaseMap) -> Value {
    let edges: Vec<Value> = m
        .edges
        .iter()
        .map(|e| json!({"src": e.src, "dst": e.dst, "over": e.over}))
        .collect();
    json!({"phi": m.phi, "edges": edges})
}
