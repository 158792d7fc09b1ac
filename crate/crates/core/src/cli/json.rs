//! Exact JSON codecs. Every number travels as a string.

use serde_json::{json, Map, Value};

use crate::exactfield::{format_rational, parse_rational, Rational, TowerCtx, TowerElem};
use crate::geom::{ProjPoint, Rotation3, SpherePoint};
use crate::polyrat::{MultiPoly, Point, RationalMap, Surface, UniPoly};
use crate::twist::{twisting_map, CircleMap, CirclePoint, TwistingMap};

use super::CliError;

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"n/d"` strings and JSON integers.
pub fn rational_from_json(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(schema(format!("expected a rational, got {other}"))),
    }
}

fn subset_key(mask: usize) -> String {
    let idx: Vec<String> = (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b.to_string())
        .collect();
    format!("[{}]", idx.join(","))
}

fn parse_subset_key(key: &str) -> Result<usize, CliError> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|k| k.strip_suffix(']'))
        .ok_or_else(|| schema(format!("bad coefficient key {key:?}")))?;
    inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .try_fold(0usize, |acc, s| {
            let b: usize = s.trim().parse().map_err(|_| schema(format!("bad coefficient key {key:?}")))?;
            Ok(acc | 1 << b)
        })
}

/// Rational elements encode as strings, others as `{"gens", "coeffs"}` keyed by generator subsets.
pub fn tower_to_json(t: &TowerElem) -> Value {
    let t = t.trimmed();
    if let Some(r) = t.to_rational() {
        return rational_to_json(&r);
    }
    let gens: Vec<Value> = t.ctx().gens().iter().map(|g| Value::String(g.to_string())).collect();
    let coeffs: Map<String, Value> = t
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(m, c)| (subset_key(m), rational_to_json(c)))
        .collect();
    json!({ "gens": gens, "coeffs": coeffs })
}

pub fn tower_from_json(v: &Value) -> Result<TowerElem, CliError> {
    let Value::Object(obj) = v else {
        return Ok(TowerElem::rational(rational_from_json(v)?));
    };
    let gens: Vec<u64> = obj
        .get("gens")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("tower element needs \"gens\""))?
        .iter()
        .map(|g| match g {
            Value::String(s) => s.parse().map_err(|_| schema(format!("bad generator {s}"))),
            Value::Number(n) => n.as_u64().ok_or_else(|| schema(format!("bad generator {n}"))),
            other => Err(schema(format!("bad generator {other}"))),
        })
        .collect::<Result<_, _>>()?;
    let ctx = TowerCtx::from_generators(&gens)?;
    let mut coeffs = vec![Rational::from_integer(0.into()); 1 << gens.len()];
    let table = obj
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("tower element needs \"coeffs\""))?;
    for (k, c) in table {
        let m = parse_subset_key(k)?;
        let slot = coeffs.get_mut(m).ok_or_else(|| schema(format!("coefficient key {k} out of range")))?;
        *slot = rational_from_json(c)?;
    }
    Ok(TowerElem::from_coeffs(ctx, coeffs).trimmed())
}

fn elems(v: &Value) -> Result<Vec<TowerElem>, CliError> {
    v.as_array()
        .ok_or_else(|| schema(format!("expected an array, got {v}")))?
        .iter()
        .map(tower_from_json)
        .collect()
}

fn elems_to_json(v: &[TowerElem]) -> Value {
    Value::Array(v.iter().map(tower_to_json).collect())
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Affine(c) => elems_to_json(c),
        Point::Proj(p) if p.blocks().len() == 1 => elems_to_json(&p.flat()),
        Point::Proj(p) => Value::Array(p.blocks().iter().map(|b| elems_to_json(b)).collect()),
        Point::Chart { base, dir } => json!({ "base": elems_to_json(base), "dir": elems_to_json(&dir.flat()) }),
    }
}

/// Decodes a point shaped for `surface`: flat arrays, `[[a,b],[c,d]]` on P1xP1,
/// `{"base","dir"}` on the blow-up chart.
pub fn point_from_json(v: &Value, surface: Surface) -> Result<Point, CliError> {
    let shape = || schema(format!("point {v} does not fit {surface}"));
    let point = match surface {
        Surface::Sphere | Surface::A2 => Point::Affine(elems(v)?),
        Surface::P2 | Surface::Quadric => Point::Proj(ProjPoint::new(elems(v)?)?),
        Surface::P1xP1 => {
            let blocks = v.as_array().ok_or_else(shape)?;
            let blocks: Vec<Vec<TowerElem>> = if blocks.iter().all(Value::is_array) {
                blocks.iter().map(elems).collect::<Result<_, _>>()?
            } else {
                let flat = elems(v)?;
                if flat.len() != 4 {
                    return Err(shape());
                }
                vec![flat[..2].to_vec(), flat[2..].to_vec()]
            };
            Point::Proj(ProjPoint::with_blocks(blocks)?)
        }
        Surface::BlowupChart => {
            let base = elems(v.get("base").ok_or_else(shape)?)?;
            let dir = ProjPoint::new(elems(v.get("dir").ok_or_else(shape)?)?)?;
            let base: [TowerElem; 2] = base.try_into().map_err(|_| shape())?;
            Point::Chart { base, dir }
        }
    };
    point.values_for(surface).map_err(|_| shape())?;
    Ok(point)
}

pub fn sphere_point_from_json(v: &Value) -> Result<SpherePoint, CliError> {
    let c = elems(v)?;
    let [x, y, z]: [TowerElem; 3] = c.try_into().map_err(|_| schema(format!("{v} is not a sphere point")))?;
    Ok(SpherePoint::new(x, y, z)?)
}

pub fn sphere_point_to_json(p: &SpherePoint) -> Value {
    elems_to_json(p.coords())
}

pub fn rotation_to_json(r: &Rotation3) -> Value {
    Value::Array(r.rows().iter().map(|row| elems_to_json(row)).collect())
}

pub fn rotation_from_json(v: &Value) -> Result<Rotation3, CliError> {
    let rows: Vec<Vec<TowerElem>> = v
        .as_array()
        .ok_or_else(|| schema("rotation must be an array of rows"))?
        .iter()
        .map(elems)
        .collect::<Result<_, _>>()?;
    let rows: Vec<[TowerElem; 3]> = rows
        .into_iter()
        .map(|r| r.try_into().map_err(|_| schema("rotation rows have three entries")))
        .collect::<Result<_, _>>()?;
    let rows: [[TowerElem; 3]; 3] = rows.try_into().map_err(|_| schema("rotation has three rows"))?;
    Ok(Rotation3::from_rows(rows)?)
}

fn unipoly_to_json(p: &UniPoly) -> Value {
    elems_to_json(p.coeffs())
}

pub fn circle_point_to_json(c: &CirclePoint) -> Value {
    json!([tower_to_json(&c.re), tower_to_json(&c.im)])
}

pub fn circle_point_from_json(v: &Value) -> Result<CirclePoint, CliError> {
    let c = elems(v)?;
    let [re, im]: [TowerElem; 2] = c.try_into().map_err(|_| schema(format!("{v} is not a circle point")))?;
    Ok(CirclePoint::new(re, im)?)
}

/// `{"num", "den", "post"}` with ascending coefficient lists.
pub fn circle_map_to_json(f: &CircleMap) -> Value {
    json!({
        "num": unipoly_to_json(f.num()),
        "den": unipoly_to_json(f.den()),
        "post": circle_point_to_json(f.post()),
    })
}

pub fn circle_map_from_json(v: &Value) -> Result<CircleMap, CliError> {
    let field = |k: &str| v.get(k).ok_or_else(|| schema(format!("circle map needs {k:?}")));
    let num = UniPoly::new(elems(field("num")?)?);
    let den = UniPoly::new(elems(field("den")?)?);
    let post = circle_point_from_json(field("post")?)?;
    Ok(CircleMap::new(num, den, post)?)
}

pub fn twist_to_json(t: &TwistingMap) -> Value {
    json!({ "axis": rotation_to_json(t.frame()), "profile": circle_map_to_json(t.profile()) })
}

pub fn twist_from_json(v: &Value) -> Result<TwistingMap, CliError> {
    let frame = rotation_from_json(v.get("axis").ok_or_else(|| schema("twist needs \"axis\""))?)?;
    let profile = circle_map_from_json(v.get("profile").ok_or_else(|| schema("twist needs \"profile\""))?)?;
    Ok(twisting_map(profile, frame))
}

fn poly_strings(ps: &[MultiPoly]) -> Result<Value, CliError> {
    ps.iter()
        .map(|p| {
            if p.terms().all(|(_, c)| c.is_rational()) {
                Ok(Value::String(p.to_string()))
            } else {
                Err(CliError::Unencodable("polynomial with irrational coefficients".into()))
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Value::Array)
}

/// `{"source", "target", "coords", "dens"?, "frame"?}`; polynomials as strings.
pub fn map_to_json(m: &RationalMap) -> Result<Value, CliError> {
    let mut obj = Map::new();
    obj.insert("source".into(), Value::String(m.source().to_string()));
    obj.insert("target".into(), Value::String(m.target().to_string()));
    obj.insert("coords".into(), poly_strings(m.coords())?);
    if m.has_denominators() {
        obj.insert("dens".into(), poly_strings(m.dens())?);
    }
    if let Some(f) = m.frame() {
        obj.insert("frame".into(), rotation_to_json(f));
    }
    Ok(Value::Object(obj))
}

pub fn map_from_json(v: &Value) -> Result<RationalMap, CliError> {
    let text = |k: &str| {
        v.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| schema(format!("map needs string field {k:?}")))
    };
    let strings = |k: &str| -> Result<Option<Vec<String>>, CliError> {
        match v.get(k) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Array(a)) => a
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| schema(format!("{k} entries are strings"))))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => Err(schema(format!("{k} must be an array"))),
        }
    };
    let source: Surface = text("source")?.parse()?;
    let target: Surface = text("target")?.parse()?;
    let coords = strings("coords")?.ok_or_else(|| schema("map needs \"coords\""))?;
    let dens = strings("dens")?;
    let coords: Vec<&str> = coords.iter().map(String::as_str).collect();
    let dens: Option<Vec<&str>> = dens.as_ref().map(|d| d.iter().map(String::as_str).collect());
    let m = RationalMap::from_strs(source, target, &coords, dens.as_deref())?;
    match v.get("frame") {
        None | Some(Value::Null) => Ok(m),
        Some(f) => Ok(m.with_frame(rotation_from_json(f)?)?),
    }
}
