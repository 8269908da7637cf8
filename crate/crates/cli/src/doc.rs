//! JSON documents: instances in, instances and results out.
//!
//! Rationals travel as strings (`"3"`, `"-1/2"`); plain JSON integers are
//! accepted on input as well, floats never.

use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use transversal::exactmath::{format_rational, parse_rational};
use transversal::reductions::{BinPackingInstance, Graph, SubsetSumInstance};
use transversal::solvers::SegmentFamily;
use transversal::{Flat, Hyperplane, Point, PointFamily, Rational};

use crate::InputError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn rational(&self) -> Result<Rational, InputError> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Text(s) => {
                parse_rational(s.trim()).ok_or_else(|| InputError(format!("not a rational: {s:?}")))
            }
        }
    }

    pub fn integer(&self) -> Result<i64, InputError> {
        match self {
            Num::Int(n) => Ok(*n),
            Num::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| InputError(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Instance {
    Points {
        dimension: usize,
        #[serde(default)]
        sets: Option<Vec<Vec<Vec<Num>>>>,
        #[serde(default)]
        points: Option<Vec<Vec<Num>>>,
        #[serde(default)]
        target: Option<usize>,
    },
    Segments {
        dimension: usize,
        segments: Vec<(Vec<Num>, Vec<Num>)>,
    },
    Subsetsum {
        a: Vec<Num>,
        b: Num,
    },
    Binpacking {
        w: Vec<Num>,
        bins: u64,
        capacity: u64,
    },
    Graph {
        n: usize,
        edges: Vec<(usize, usize)>,
        #[serde(default)]
        k: Option<usize>,
    },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Points { .. } => "points",
            Instance::Segments { .. } => "segments",
            Instance::Subsetsum { .. } => "subsetsum",
            Instance::Binpacking { .. } => "binpacking",
            Instance::Graph { .. } => "graph",
        }
    }
}

/// Parsed file plus the hash of its bytes.
pub struct Loaded {
    pub instance: Instance,
    pub sha256: String,
}

pub fn load(path: &std::path::Path) -> Result<Loaded, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let instance = serde_json::from_slice(&bytes)
        .map_err(|e| InputError(format!("{}: invalid instance: {e}", path.display())))?;
    Ok(Loaded {
        instance,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

pub fn load_value(path: &std::path::Path) -> Result<Value, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_slice(&bytes)
        .map_err(|e| InputError(format!("{}: invalid JSON: {e}", path.display())))
}

fn point(coords: &[Num], dimension: usize) -> Result<Point, InputError> {
    if coords.len() != dimension {
        return Err(InputError(format!(
            "point has {} coordinates, expected {dimension}",
            coords.len()
        )));
    }
    coords.iter().map(Num::rational).collect()
}

/// Points kind as a family; a flat `points` list becomes singleton sets.
pub fn point_family(inst: &Instance) -> Result<(PointFamily, Option<usize>), InputError> {
    let Instance::Points {
        dimension,
        sets,
        points,
        target,
        ..
    } = inst
    else {
        return Err(InputError(format!(
            "expected a points instance, got {}",
            inst.kind()
        )));
    };
    let sets: Vec<Vec<Point>> = match (sets, points) {
        (Some(sets), None) => sets
            .iter()
            .map(|s| s.iter().map(|p| point(p, *dimension)).collect())
            .collect::<Result<_, _>>()?,
        (None, Some(points)) => points
            .iter()
            .map(|p| point(p, *dimension).map(|p| vec![p]))
            .collect::<Result<_, _>>()?,
        _ => {
            return Err(InputError(
                "points instance needs exactly one of \"sets\" and \"points\"".into(),
            ))
        }
    };
    let family = PointFamily::new(*dimension, sets).map_err(InputError::from)?;
    Ok((family, *target))
}

pub fn segment_family(inst: &Instance) -> Result<SegmentFamily, InputError> {
    let Instance::Segments {
        dimension,
        segments,
        ..
    } = inst
    else {
        return Err(InputError(format!(
            "expected a segments instance, got {}",
            inst.kind()
        )));
    };
    let segs = segments
        .iter()
        .map(|(p, q)| Ok((point(p, *dimension)?, point(q, *dimension)?)))
        .collect::<Result<_, InputError>>()?;
    SegmentFamily::new(*dimension, segs).map_err(InputError::from)
}

pub fn subsetsum(inst: &Instance) -> Result<SubsetSumInstance, InputError> {
    let Instance::Subsetsum { a, b } = inst else {
        return Err(InputError(format!(
            "expected a subsetsum instance, got {}",
            inst.kind()
        )));
    };
    let a = a.iter().map(Num::integer).collect::<Result<_, _>>()?;
    SubsetSumInstance::new(a, b.integer()?).map_err(InputError::from)
}

pub fn binpacking(inst: &Instance) -> Result<BinPackingInstance, InputError> {
    let Instance::Binpacking { w, bins, capacity } = inst else {
        return Err(InputError(format!(
            "expected a binpacking instance, got {}",
            inst.kind()
        )));
    };
    let w = w
        .iter()
        .map(|x| {
            let v = x.integer()?;
            u64::try_from(v).map_err(|_| InputError(format!("weight {v} is negative")))
        })
        .collect::<Result<_, _>>()?;
    BinPackingInstance::new(w, *bins, *capacity).map_err(InputError::from)
}

pub fn graph(inst: &Instance) -> Result<(Graph, Option<usize>), InputError> {
    let Instance::Graph { n, edges, k } = inst else {
        return Err(InputError(format!(
            "expected a graph instance, got {}",
            inst.kind()
        )));
    };
    Ok((Graph::new(*n, edges).map_err(InputError::from)?, *k))
}

pub fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

pub fn flat(f: &Flat) -> Value {
    json!({
        "base": vector(f.base()),
        "basis": f.basis().iter().map(|b| vector(b)).collect::<Vec<_>>(),
        "dimension": f.dim(),
    })
}

pub fn hyperplane(h: &Hyperplane) -> Value {
    json!({ "normal": vector(h.normal()), "offset": rat(h.offset()) })
}

pub fn parse_vector(v: &Value, what: &str) -> Result<Point, InputError> {
    let items = v
        .as_array()
        .ok_or_else(|| InputError(format!("{what}: expected an array")))?;
    items
        .iter()
        .map(|x| {
            let n: Num = serde_json::from_value(x.clone())
                .map_err(|_| InputError(format!("{what}: bad number {x}")))?;
            n.rational()
        })
        .collect()
}

pub fn parse_flat(v: &Value) -> Result<Flat, InputError> {
    let base = parse_vector(
        v.get("base")
            .ok_or_else(|| InputError("flat: missing base".into()))?,
        "flat base",
    )?;
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| InputError("flat: missing basis".into()))?
        .iter()
        .map(|b| parse_vector(b, "flat basis"))
        .collect::<Result<_, _>>()?;
    Flat::new(base, basis).map_err(InputError::from)
}

pub fn parse_hyperplane(v: &Value) -> Result<Hyperplane, InputError> {
    let normal = parse_vector(
        v.get("normal")
            .ok_or_else(|| InputError("hyperplane: missing normal".into()))?,
        "hyperplane normal",
    )?;
    let offset: Num = serde_json::from_value(v.get("offset").cloned().unwrap_or(Value::Null))
        .map_err(|_| InputError("hyperplane: bad offset".into()))?;
    Hyperplane::new(normal, offset.rational()?).map_err(InputError::from)
}

pub fn points_document(
    family: &PointFamily,
    target: Option<usize>,
    origin: Option<Value>,
) -> Value {
    let mut doc = Map::new();
    doc.insert("kind".into(), json!("points"));
    doc.insert("dimension".into(), json!(family.dimension()));
    doc.insert(
        "sets".into(),
        Value::Array(
            family
                .sets()
                .iter()
                .map(|s| Value::Array(s.iter().map(|p| vector(p)).collect()))
                .collect(),
        ),
    );
    if let Some(t) = target {
        doc.insert("target".into(), json!(t));
    }
    if let Some(o) = origin {
        doc.insert("origin".into(), o);
    }
    Value::Object(doc)
}

pub fn segments_document(family: &SegmentFamily, origin: Option<Value>) -> Value {
    let mut doc = Map::new();
    doc.insert("kind".into(), json!("segments"));
    doc.insert("dimension".into(), json!(family.dimension()));
    doc.insert(
        "segments".into(),
        Value::Array(
            family
                .segments()
                .iter()
                .map(|(p, q)| json!([vector(p), vector(q)]))
                .collect(),
        ),
    );
    if let Some(o) = origin {
        doc.insert("origin".into(), o);
    }
    Value::Object(doc)
}

/// Input echo for result documents.
pub fn input_echo(loaded: &Loaded) -> Value {
    json!({ "kind": loaded.instance.kind(), "sha256": loaded.sha256 })
}
