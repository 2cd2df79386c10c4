//! The JSON problem format: a cone with named regions and named ideals.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "cone": { "rays": [[1, 0], [0, 1]] },
//!   "regions": { "G1": [[1, 0], ["0", "1"]], "G2": [["5/2", 0], [0, 1]] },
//!   "ideals": { "I1": [[1, 0], [0, 1]] }
//! }
//! ```
//!
//! Rational coordinates are strings `"p/q"` or integers. `regions` and `ideals`
//! may be omitted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{parse_rational, Point, Rational};
use crate::region::ConvexRegion;
use crate::semigroup::{LatticePoint, ToricSemigroup};
use crate::verify::Instance;

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub dimension: usize,
    pub cone: Arc<Cone>,
    pub semigroup: Option<Arc<ToricSemigroup>>,
    pub regions: BTreeMap<String, ConvexRegion>,
    pub ideals: BTreeMap<String, MonomialIdeal>,
}

fn bad(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{field}: {msg}"))
}

fn in_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| bad(field, e))
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(field, "expected an array"))
}

fn integer(v: &Value, field: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(field, format!("expected an integer, found {v}")))
}

fn rational(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => in_field(field, parse_rational(s)),
        Value::Number(_) => Ok(Rational::from_integer(integer(v, field)?.into())),
        other => Err(bad(field, format!("expected \"p/q\" or an integer, found {other}"))),
    }
}

fn vector<T>(v: &Value, dim: usize, field: &str, entry: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    let items = array(v, field)?;
    if items.len() != dim {
        return Err(bad(field, format!("expected {dim} coordinates, found {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| entry(x, &format!("{field}[{i}]")))
        .collect()
}

fn named<'a>(root: &'a Map<String, Value>, key: &str) -> Result<Vec<(&'a String, &'a Value)>> {
    match root.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => Ok(m.iter().collect()),
        Some(_) => Err(bad(key, "expected an object of named entries")),
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let root = value
            .as_object()
            .ok_or_else(|| Error::Input("the problem must be a JSON object".into()))?;
        for key in root.keys() {
            if !["dimension", "cone", "regions", "ideals"].contains(&key.as_str()) {
                return Err(bad(key, "unknown field"));
            }
        }
        let dim_value = root.get("dimension").ok_or_else(|| bad("dimension", "missing"))?;
        let dimension = dim_value
            .as_u64()
            .filter(|&d| d >= 1)
            .ok_or_else(|| bad("dimension", "expected a positive integer"))? as usize;

        let rays_value = root
            .get("cone")
            .and_then(|c| c.get("rays"))
            .ok_or_else(|| bad("cone.rays", "missing"))?;
        let rays = array(rays_value, "cone.rays")?
            .iter()
            .enumerate()
            .map(|(i, r)| vector(r, dimension, &format!("cone.rays[{i}]"), integer))
            .collect::<Result<Vec<_>>>()?;
        let cone = Arc::new(in_field("cone.rays", Cone::from_rays(&rays))?);

        let mut regions = BTreeMap::new();
        for (name, pts) in named(root, "regions")? {
            let field = format!("regions.{name}");
            let points = array(pts, &field)?
                .iter()
                .enumerate()
                .map(|(i, p)| vector(p, dimension, &format!("{field}[{i}]"), rational).map(Point::new))
                .collect::<Result<Vec<_>>>()?;
            regions.insert(name.clone(), in_field(&field, ConvexRegion::from_generators(&cone, points))?);
        }

        let ideal_entries = named(root, "ideals")?;
        let semigroup = if ideal_entries.is_empty() {
            None
        } else {
            Some(Arc::new(in_field("cone", ToricSemigroup::new(Arc::clone(&cone)))?))
        };
        let mut ideals = BTreeMap::new();
        for (name, gens) in ideal_entries {
            let field = format!("ideals.{name}");
            let gens: Vec<LatticePoint> = array(gens, &field)?
                .iter()
                .enumerate()
                .map(|(i, g)| vector(g, dimension, &format!("{field}[{i}]"), integer))
                .collect::<Result<_>>()?;
            let s = semigroup.as_ref().expect("built when ideals are present");
            ideals.insert(name.clone(), in_field(&field, MonomialIdeal::new(s, gens))?);
        }

        Ok(ProblemFile {
            dimension,
            cone,
            semigroup,
            regions,
            ideals,
        })
    }

    pub fn region(&self, name: &str) -> Result<&ConvexRegion> {
        self.regions
            .get(name)
            .ok_or_else(|| bad(&format!("regions.{name}"), "no such region"))
    }

    pub fn ideal(&self, name: &str) -> Result<&MonomialIdeal> {
        self.ideals
            .get(name)
            .ok_or_else(|| bad(&format!("ideals.{name}"), "no such ideal"))
    }

    /// A problem file for a random instance: ideals `I1..` and their Newton regions `G1..`.
    pub fn from_instance(instance: &Instance) -> Self {
        let mut regions = BTreeMap::new();
        let mut ideals = BTreeMap::new();
        for (i, ideal) in instance.ideals.iter().enumerate() {
            regions.insert(format!("G{}", i + 1), ideal.newton().clone());
            ideals.insert(format!("I{}", i + 1), ideal.clone());
        }
        ProblemFile {
            dimension: instance.spec.dimension,
            cone: Arc::clone(&instance.cone),
            semigroup: Some(Arc::clone(&instance.semigroup)),
            regions,
            ideals,
        }
    }

    pub fn to_value(&self) -> Value {
        let regions: Map<String, Value> = self
            .regions
            .iter()
            .map(|(name, r)| {
                let pts: Vec<Value> = r
                    .generators()
                    .iter()
                    .map(|p| Value::Array(p.coords().iter().map(|c| Value::String(c.to_string())).collect()))
                    .collect();
                (name.clone(), Value::Array(pts))
            })
            .collect();
        let ideals: Map<String, Value> = self
            .ideals
            .iter()
            .map(|(name, i)| (name.clone(), json!(i.generators())))
            .collect();
        json!({
            "dimension": self.dimension,
            "cone": { "rays": self.cone.rays() },
            "regions": regions,
            "ideals": ideals,
        })
    }

    /// Indented JSON with every vector on one line.
    pub fn to_json_pretty(&self) -> String {
        let v = self.to_value();
        let line = |x: &Value| serde_json::to_string(x).expect("values serialize");
        let block = |key: &str| {
            let entries: Vec<String> = v[key]
                .as_object()
                .expect("object")
                .iter()
                .map(|(name, vectors)| {
                    let rows: Vec<String> = vectors
                        .as_array()
                        .expect("array")
                        .iter()
                        .map(|r| format!("      {}", line(r)))
                        .collect();
                    format!("    {}: [\n{}\n    ]", line(&Value::String(name.clone())), rows.join(",\n"))
                })
                .collect();
            format!("  \"{key}\": {{\n{}\n  }}", entries.join(",\n"))
        };
        format!(
            "{{\n  \"dimension\": {},\n  \"cone\": {{ \"rays\": {} }},\n{},\n{}\n}}",
            self.dimension,
            line(&v["cone"]["rays"]),
            block("regions"),
            block("ideals")
        )
    }
}
