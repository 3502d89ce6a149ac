//! JSON encoding of instances, allocations and fractional assignments.
//!
//! Rationals are `{"num": n, "den": d}` with integer (or decimal string) fields, infinite sizes
//! are `null`, and explicit oracle tables are objects keyed by the decimal bitmask of the subset.

use num::{BigInt, Zero};
use serde_json::{json, Map, Value};

use super::model::{AllocInstance, Allocation, CoreCoverInstance, Instance, Item, Objective, Values};
use crate::polycore::{Matroid, MatroidKind, PolyKind, Polymatroid};
use crate::rational::Rational;
use crate::subset::{Subset, MAX_GROUND};
use crate::{Error, Result};

/// A fractional assignment `x[j][i]` with the target `T` it was computed for.
#[derive(Clone, Debug, PartialEq)]
pub struct Fractional {
    pub target: Rational,
    pub x: Vec<Vec<Rational>>,
}

fn schema(path: &str, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    obj.get(key)
        .ok_or_else(|| schema(&format!("{path}.{key}"), "missing field"))
}

fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|o| o.get(key)).filter(|x| !x.is_null())
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| as_usize(x, &format!("{path}[{k}]")))
        .collect()
}

fn i64_list(v: &Value, path: &str) -> Result<Vec<i64>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| as_i64(x, &format!("{path}[{k}]")))
        .collect()
}

fn subset_of(v: &Value, path: &str, n: usize) -> Result<Subset> {
    let elems = usize_list(v, path)?;
    if let Some(&e) = elems.iter().find(|&&e| e >= n) {
        return Err(schema(path, format!("element {e} outside a ground set of size {n}")));
    }
    Ok(elems.into_iter().collect())
}

fn ground_size(n: usize, path: &str) -> Result<usize> {
    if n > MAX_GROUND {
        return Err(schema(path, format!("ground set larger than {MAX_GROUND}")));
    }
    Ok(n)
}

fn bigint(v: &Value, path: &str) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|_| schema(path, "expected a decimal integer string"));
    }
    Err(schema(path, "expected an integer"))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    if v.is_i64() {
        return Ok(Rational::from_integer(bigint(v, path)?));
    }
    let num = bigint(field(v, path, "num")?, &format!("{path}.num"))?;
    let den = bigint(field(v, path, "den")?, &format!("{path}.den"))?;
    if den.is_zero() {
        return Err(schema(&format!("{path}.den"), "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn int_json(i: &BigInt) -> Value {
    match i64::try_from(i) {
        Ok(x) => json!(x),
        Err(_) => json!(i.to_string()),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!({"num": int_json(r.numer()), "den": int_json(r.denom())})
}

fn table_from_json(v: &Value, path: &str, n: usize) -> Result<Vec<i64>> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected an object keyed by subset bitmasks"))?;
    if n > 20 {
        return Err(schema(path, "explicit tables are limited to 20 elements"));
    }
    let size = 1usize << n;
    let mut table = vec![None; size];
    for (k, val) in obj {
        let p = format!("{path}.{k}");
        let mask: usize = k.parse().map_err(|_| schema(&p, "key is not a decimal bitmask"))?;
        if mask >= size {
            return Err(schema(&p, "bitmask outside the ground set"));
        }
        table[mask] = Some(as_i64(val, &p)?);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(mask, t)| t.ok_or_else(|| schema(path, format!("missing entry for bitmask {mask}"))))
        .collect()
}

fn table_to_json(table: &[i64]) -> Value {
    let map: Map<String, Value> = table
        .iter()
        .enumerate()
        .map(|(mask, &v)| (mask.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

fn kind_of<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    field(v, path, "kind")?
        .as_str()
        .ok_or_else(|| schema(&format!("{path}.kind"), "expected a string"))
}

fn lift(path: &str, r: Result<Matroid>) -> Result<Matroid> {
    r.map_err(|e| schema(path, e.to_string()))
}

fn liftp(path: &str, r: Result<Polymatroid>) -> Result<Polymatroid> {
    r.map_err(|e| schema(path, e.to_string()))
}

/// Parses a matroid on a ground set of size `n`.
pub fn matroid_from_json(v: &Value, path: &str, n: usize) -> Result<Matroid> {
    let kind = kind_of(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    let m = match kind {
        "uniform" => {
            let rank = as_usize(field(v, path, "rank")?, &sub("rank"))?;
            Matroid::uniform(n, rank)
        }
        "partition" => {
            let blocks = as_array(field(v, path, "blocks")?, &sub("blocks"))?
                .iter()
                .enumerate()
                .map(|(k, b)| subset_of(b, &format!("{path}.blocks[{k}]"), n))
                .collect::<Result<Vec<_>>>()?;
            let caps = usize_list(field(v, path, "capacities")?, &sub("capacities"))?;
            lift(path, Matroid::partition(n, blocks, caps))?
        }
        "graphic" => {
            let vertices = as_usize(field(v, path, "vertices")?, &sub("vertices"))?;
            let edges = as_array(field(v, path, "edges")?, &sub("edges"))?
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let p = format!("{path}.edges[{k}]");
                    match usize_list(e, &p)?.as_slice() {
                        [a, b] => Ok((*a, *b)),
                        _ => Err(schema(&p, "expected a pair of vertices")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            lift(path, Matroid::graphic(vertices, edges))?
        }
        "transversal" => {
            let right = as_usize(field(v, path, "right")?, &sub("right"))?;
            let adjacency = as_array(field(v, path, "adjacency")?, &sub("adjacency"))?
                .iter()
                .enumerate()
                .map(|(k, a)| usize_list(a, &format!("{path}.adjacency[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            lift(path, Matroid::transversal(right, adjacency))?
        }
        "explicit" => {
            let table = table_from_json(field(v, path, "table")?, &sub("table"), n)?;
            lift(path, Matroid::explicit(n, table))?
        }
        "contracted" => {
            let inner = matroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let c = subset_of(field(v, path, "contracted")?, &sub("contracted"), n)?;
            Matroid::contracted(&inner, c)
        }
        "zeroed" => {
            let inner = matroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let r = subset_of(field(v, path, "removed")?, &sub("removed"), n)?;
            Matroid::zeroed(&inner, r)
        }
        "union" => {
            let parts = as_array(field(v, path, "parts")?, &sub("parts"))?
                .iter()
                .enumerate()
                .map(|(k, p)| matroid_from_json(p, &format!("{path}.parts[{k}]"), n))
                .collect::<Result<Vec<_>>>()?;
            lift(path, Matroid::union(n, parts))?
        }
        "induced" => {
            let p = polymatroid_from_json(field(v, path, "polymatroid")?, &sub("polymatroid"), n)?;
            Matroid::induced(&p)
        }
        "expanded" => {
            let inner_n = ground_size(
                as_usize(field(v, path, "inner_ground")?, &sub("inner_ground"))?,
                &sub("inner_ground"),
            )?;
            let p = polymatroid_from_json(field(v, path, "polymatroid")?, &sub("polymatroid"), inner_n)?;
            let owner = usize_list(field(v, path, "owner")?, &sub("owner"))?;
            if owner.len() != n || owner.iter().any(|&o| o >= inner_n) {
                return Err(schema(&sub("owner"), "owner list does not match the ground sets"));
            }
            Matroid::expanded(&p, owner)
        }
        other => return Err(schema(&sub("kind"), format!("unknown matroid kind `{other}`"))),
    };
    if m.ground_size() != n {
        return Err(schema(
            path,
            format!("matroid has ground size {}, expected {n}", m.ground_size()),
        ));
    }
    Ok(m)
}

/// Parses a polymatroid on a ground set of size `n`.
pub fn polymatroid_from_json(v: &Value, path: &str, n: usize) -> Result<Polymatroid> {
    let kind = kind_of(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    let p = match kind {
        "modular" => liftp(
            path,
            Polymatroid::modular(i64_list(field(v, path, "weights")?, &sub("weights"))?),
        )?,
        "coverage" => {
            let covers = as_array(field(v, path, "covers")?, &sub("covers"))?
                .iter()
                .enumerate()
                .map(|(k, c)| usize_list(c, &format!("{path}.covers[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            let weights = i64_list(field(v, path, "weights")?, &sub("weights"))?;
            liftp(path, Polymatroid::coverage(covers, weights))?
        }
        "scaled-rank" => {
            let m = matroid_from_json(field(v, path, "matroid")?, &sub("matroid"), n)?;
            let scale = as_i64(field(v, path, "scale")?, &sub("scale"))?;
            liftp(path, Polymatroid::scaled_rank(&m, scale))?
        }
        "explicit" => {
            let table = table_from_json(field(v, path, "table")?, &sub("table"), n)?;
            liftp(path, Polymatroid::explicit(n, table))?
        }
        "sum" => {
            let parts = as_array(field(v, path, "parts")?, &sub("parts"))?
                .iter()
                .enumerate()
                .map(|(k, p)| polymatroid_from_json(p, &format!("{path}.parts[{k}]"), n))
                .collect::<Result<Vec<_>>>()?;
            liftp(path, Polymatroid::sum(n, parts))?
        }
        "scaled" => {
            let inner = polymatroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let scale = as_i64(field(v, path, "scale")?, &sub("scale"))?;
            liftp(path, Polymatroid::scaled(&inner, scale))?
        }
        "capped" => {
            let inner = polymatroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let caps = as_array(field(v, path, "caps")?, &sub("caps"))?
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if c.is_null() {
                        Ok(None)
                    } else {
                        as_i64(c, &format!("{path}.caps[{k}]")).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            liftp(path, Polymatroid::capped(&inner, caps))?
        }
        "contracted" => {
            let inner = polymatroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let base = i64_list(field(v, path, "base")?, &sub("base"))?;
            liftp(path, Polymatroid::contracted(&inner, base))?
        }
        "dual" => {
            let inner = polymatroid_from_json(field(v, path, "inner")?, &sub("inner"), n)?;
            let z = i64_list(field(v, path, "z")?, &sub("z"))?;
            liftp(path, Polymatroid::dual(&inner, z))?
        }
        "mapped" => {
            let inner_n = ground_size(
                as_usize(field(v, path, "inner_ground")?, &sub("inner_ground"))?,
                &sub("inner_ground"),
            )?;
            let inner = polymatroid_from_json(field(v, path, "inner")?, &sub("inner"), inner_n)?;
            let map = as_array(field(v, path, "map")?, &sub("map"))?
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if c.is_null() {
                        Ok(None)
                    } else {
                        as_usize(c, &format!("{path}.map[{k}]")).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            liftp(path, Polymatroid::mapped(&inner, map))?
        }
        other => return Err(schema(&sub("kind"), format!("unknown polymatroid kind `{other}`"))),
    };
    if p.ground_size() != n {
        return Err(schema(
            path,
            format!("polymatroid has ground size {}, expected {n}", p.ground_size()),
        ));
    }
    Ok(p)
}

fn subset_json(s: Subset) -> Value {
    json!(s.to_vec())
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    match m.kind() {
        MatroidKind::Uniform { rank } => json!({"kind": "uniform", "rank": rank}),
        MatroidKind::Partition { blocks, capacities } => json!({
            "kind": "partition",
            "blocks": blocks.iter().map(|b| subset_json(*b)).collect::<Vec<_>>(),
            "capacities": capacities,
        }),
        MatroidKind::Graphic { vertices, edges } => json!({
            "kind": "graphic",
            "vertices": vertices,
            "edges": edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        }),
        MatroidKind::Transversal { right, adjacency } => {
            json!({"kind": "transversal", "right": right, "adjacency": adjacency})
        }
        MatroidKind::Explicit { table } => json!({"kind": "explicit", "table": table_to_json(table)}),
        MatroidKind::Contracted { inner, contracted } => json!({
            "kind": "contracted",
            "inner": matroid_to_json(inner),
            "contracted": subset_json(*contracted),
        }),
        MatroidKind::Zeroed { inner, removed } => json!({
            "kind": "zeroed",
            "inner": matroid_to_json(inner),
            "removed": subset_json(*removed),
        }),
        MatroidKind::Union { parts } => json!({
            "kind": "union",
            "parts": parts.iter().map(matroid_to_json).collect::<Vec<_>>(),
        }),
        MatroidKind::Induced { poly } => {
            json!({"kind": "induced", "polymatroid": polymatroid_to_json(poly)})
        }
        MatroidKind::Expanded { poly, owner } => json!({
            "kind": "expanded",
            "inner_ground": poly.ground_size(),
            "polymatroid": polymatroid_to_json(poly),
            "owner": owner,
        }),
    }
}

pub fn polymatroid_to_json(p: &Polymatroid) -> Value {
    match p.kind() {
        PolyKind::Modular { weights } => json!({"kind": "modular", "weights": weights}),
        PolyKind::Coverage { covers, weights } => {
            json!({"kind": "coverage", "covers": covers, "weights": weights})
        }
        PolyKind::ScaledRank { matroid, scale } => json!({
            "kind": "scaled-rank",
            "matroid": matroid_to_json(matroid),
            "scale": scale,
        }),
        PolyKind::Explicit { table } => json!({"kind": "explicit", "table": table_to_json(table)}),
        PolyKind::Sum { parts } => json!({
            "kind": "sum",
            "parts": parts.iter().map(polymatroid_to_json).collect::<Vec<_>>(),
        }),
        PolyKind::Scaled { inner, scale } => json!({
            "kind": "scaled",
            "inner": polymatroid_to_json(inner),
            "scale": scale,
        }),
        PolyKind::Capped { inner, caps } => json!({
            "kind": "capped",
            "inner": polymatroid_to_json(inner),
            "caps": caps,
        }),
        PolyKind::Contracted { inner, base } => json!({
            "kind": "contracted",
            "inner": polymatroid_to_json(inner),
            "base": base,
        }),
        PolyKind::Dual { inner, z } => json!({
            "kind": "dual",
            "inner": polymatroid_to_json(inner),
            "z": z,
        }),
        PolyKind::Mapped { inner, map } => json!({
            "kind": "mapped",
            "inner_ground": inner.ground_size(),
            "inner": polymatroid_to_json(inner),
            "map": map,
        }),
    }
}

fn item_from_json(v: &Value, path: &str, inst: &AllocInstance, matroid: bool) -> Result<Item> {
    let values = match (opt_field(v, "value"), opt_field(v, "values")) {
        (Some(x), None) => Values::Single(rational_from_json(x, &format!("{path}.value"))?),
        (None, Some(xs)) => {
            let p = format!("{path}.values");
            let list = as_array(xs, &p)?;
            if list.len() != inst.entities {
                return Err(schema(
                    &p,
                    format!("expected {} entries, found {}", inst.entities, list.len()),
                ));
            }
            Values::PerEntity(
                list.iter()
                    .enumerate()
                    .map(|(k, x)| {
                        let pk = format!("{p}[{k}]");
                        if x.is_null() {
                            if inst.objective == Objective::Santa {
                                return Err(schema(&pk, "infinite values are only allowed for sizes"));
                            }
                            Ok(None)
                        } else {
                            rational_from_json(x, &pk).map(Some)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        (Some(_), Some(_)) => return Err(schema(path, "give either `value` or `values`, not both")),
        (None, None) => return Err(schema(&format!("{path}.value"), "missing field")),
    };
    let check_sign = |r: &Rational, p: &str| -> Result<()> {
        if *r < Rational::zero() {
            Err(schema(p, "negative value or size"))
        } else {
            Ok(())
        }
    };
    match &values {
        Values::Single(r) => check_sign(r, &format!("{path}.value"))?,
        Values::PerEntity(vs) => {
            for (k, r) in vs.iter().enumerate() {
                if let Some(r) = r {
                    check_sign(r, &format!("{path}.values[{k}]"))?;
                }
            }
        }
    }
    let polymatroid = match (opt_field(v, "polymatroid"), matroid) {
        (Some(p), true) => Some(polymatroid_from_json(p, &format!("{path}.polymatroid"), inst.entities)?),
        (None, true) => return Err(schema(&format!("{path}.polymatroid"), "missing field")),
        (Some(_), false) => {
            return Err(schema(
                &format!("{path}.polymatroid"),
                "classical instances carry no polymatroids",
            ))
        }
        (None, false) => None,
    };
    Ok(Item { values, polymatroid })
}

pub fn instance_from_value(v: &Value) -> Result<Instance> {
    let ty = field(v, "$", "type")?
        .as_str()
        .ok_or_else(|| schema("$.type", "expected a string"))?;
    let (objective, matroid, count_key) = match ty {
        "santa" => (Objective::Santa, false, "players"),
        "santa-matroid" => (Objective::Santa, true, "players"),
        "makespan" => (Objective::Makespan, false, "machines"),
        "makespan-matroid" => (Objective::Makespan, true, "machines"),
        "core-cover" => {
            let n = ground_size(as_usize(field(v, "$", "ground")?, "$.ground")?, "$.ground")?;
            let m = matroid_from_json(field(v, "$", "matroid")?, "$.matroid", n)?;
            let p = polymatroid_from_json(field(v, "$", "polymatroid")?, "$.polymatroid", n)?;
            let b = opt_field(v, "b").map(|b| as_i64(b, "$.b")).transpose()?;
            return CoreCoverInstance::new(m, p, b)
                .map(Instance::CoreCover)
                .map_err(|e| schema("$", e.to_string()));
        }
        other => return Err(schema("$.type", format!("unknown instance type `{other}`"))),
    };
    let key_path = format!("$.{count_key}");
    let entities = ground_size(as_usize(field(v, "$", count_key)?, &key_path)?, &key_path)?;
    let mut inst = AllocInstance {
        objective,
        entities,
        items: Vec::new(),
    };
    let items = as_array(field(v, "$", "items")?, "$.items")?;
    for (j, it) in items.iter().enumerate() {
        let item = item_from_json(it, &format!("$.items[{j}]"), &inst, matroid)?;
        inst.items.push(item);
    }
    inst.validate().map_err(|e| schema("$", e.to_string()))?;
    Ok(Instance::Alloc(inst))
}

pub fn instance_to_value(inst: &Instance) -> Value {
    match inst {
        Instance::CoreCover(c) => {
            let mut v = json!({
                "type": "core-cover",
                "ground": c.ground_size(),
                "matroid": matroid_to_json(&c.matroid),
                "polymatroid": polymatroid_to_json(&c.polymatroid),
            });
            if let Some(b) = c.b {
                v["b"] = json!(b);
            }
            v
        }
        Instance::Alloc(a) => {
            let matroid = a.is_matroid_flavor();
            let (ty, key) = match (a.objective, matroid) {
                (Objective::Santa, false) => ("santa", "players"),
                (Objective::Santa, true) => ("santa-matroid", "players"),
                (Objective::Makespan, false) => ("makespan", "machines"),
                (Objective::Makespan, true) => ("makespan-matroid", "machines"),
            };
            let items: Vec<Value> = a
                .items
                .iter()
                .map(|it| {
                    let mut o = Map::new();
                    match &it.values {
                        Values::Single(r) => {
                            o.insert("value".into(), rational_to_json(r));
                        }
                        Values::PerEntity(vs) => {
                            let list = vs
                                .iter()
                                .map(|r| r.as_ref().map_or(Value::Null, rational_to_json))
                                .collect();
                            o.insert("values".into(), Value::Array(list));
                        }
                    }
                    if let Some(p) = &it.polymatroid {
                        o.insert("polymatroid".into(), polymatroid_to_json(p));
                    }
                    Value::Object(o)
                })
                .collect();
            json!({"type": ty, key: a.entities, "items": items})
        }
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let v: Value = serde_json::from_slice(bytes)?;
    instance_from_value(&v)
}

pub fn serialize_instance(inst: &Instance) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&instance_to_value(inst)).expect("serializable value");
    out.push(b'\n');
    out
}

pub fn allocation_to_value(a: &Allocation) -> Value {
    json!({"x": a.x})
}

pub fn allocation_from_value(v: &Value) -> Result<Allocation> {
    let rows = as_array(field(v, "$", "x")?, "$.x")?;
    let x = rows
        .iter()
        .enumerate()
        .map(|(j, r)| i64_list(r, &format!("$.x[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Allocation { x })
}

pub fn fractional_to_value(f: &Fractional) -> Value {
    json!({
        "T": rational_to_json(&f.target),
        "x": f.x.iter().map(|row| row.iter().map(rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn fractional_from_value(v: &Value) -> Result<Fractional> {
    let target = rational_from_json(field(v, "$", "T")?, "$.T")?;
    let rows = as_array(field(v, "$", "x")?, "$.x")?;
    let x = rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            as_array(r, &format!("$.x[{j}]"))?
                .iter()
                .enumerate()
                .map(|(i, e)| rational_from_json(e, &format!("$.x[{j}][{i}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fractional { target, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_santa() {
        let text = br#"{"type":"santa","players":2,"items":[{"value":{"num":1,"den":1}}]}"#;
        let inst = parse_instance(text).unwrap();
        let Instance::Alloc(a) = &inst else { panic!() };
        assert_eq!(a.entities, 2);
        assert_eq!(a.items.len(), 1);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn missing_players_names_field() {
        let err = parse_instance(br#"{"type":"santa","items":[]}"#).unwrap_err();
        assert!(err.to_string().contains("$.players"), "{err}");
    }

    #[test]
    fn nested_paths_and_signs() {
        let text = br#"{"type":"makespan","machines":2,"items":[{"values":[{"num":-1,"den":2},null]}]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(err.to_string().contains("$.items[0].values[0]"), "{err}");
        let text = br#"{"type":"santa-matroid","players":2,"items":[{"value":1,"polymatroid":{"kind":"modular","weights":[1.5,1]}}]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(err.to_string().contains("$.items[0].polymatroid.weights[0]"), "{err}");
    }

    #[test]
    fn big_rationals_survive() {
        let r = Rational::new(BigInt::from(10).pow(30), BigInt::from(7));
        let v = rational_to_json(&r);
        assert_eq!(rational_from_json(&v, "$").unwrap(), r);
    }
}
