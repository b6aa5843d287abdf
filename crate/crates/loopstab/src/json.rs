//! JSON forms of matrices, loops, builder units, decompositions and operators.
//!
//! Rationals are strings "p/q". A v-Laurent entry is either a rational string
//! (when constant in v) or an object from exponent to rational string.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::loops::{FinitenessClass, Generator, Loop, LoopDecomposition, LoopUnit, RLoop, RMat, Tag, Window};
use crate::operators::{FMap, ZOp};
use crate::scalar::{Mat, Rational, Ring, VLaurent};

fn parse_err(what: &str) -> Error {
    Error::Parse(what.to_string())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(&format!("missing field {key:?}")))
}

fn int(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?.as_i64().ok_or_else(|| parse_err(&format!("field {key:?} must be an integer")))
}

pub fn rational_from(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.as_i64().map(Rational::from_int).ok_or_else(|| parse_err("rationals must be \"p/q\"")),
        _ => Err(parse_err("rationals must be \"p/q\"")),
    }
}

/// Entry types with a JSON form.
pub trait EntryJson: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl EntryJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        rational_from(v)
    }
}

impl EntryJson for VLaurent<Rational> {
    fn to_json(&self) -> Value {
        if let Some(c) = self.as_constant() {
            return c.to_json();
        }
        let m: Map<String, Value> = self.terms().iter().map(|(k, c)| (k.to_string(), c.to_json())).collect();
        Value::Object(m)
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let mut terms = Vec::new();
                for (k, c) in m {
                    let k: i64 = k.parse().map_err(|_| parse_err("v-exponents must be integers"))?;
                    terms.push((k, rational_from(c)?));
                }
                Ok(VLaurent::from_terms(terms))
            }
            other => Ok(VLaurent::constant(rational_from(other)?)),
        }
    }
}

impl<K: EntryJson + crate::scalar::Scalar> EntryJson for Mat<K> {
    fn to_json(&self) -> Value {
        Value::Array(self.rows().iter().map(|r| Value::Array(r.iter().map(K::to_json).collect())).collect())
    }
    fn from_json(v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
        let rows: Vec<Vec<K>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| parse_err("matrix row must be an array"))?
                    .iter()
                    .map(K::from_json)
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
            return Err(parse_err("matrix must be square and nonempty"));
        }
        Ok(Mat::from_rows(rows))
    }
}

pub fn loop_to_json<K: EntryJson + crate::scalar::Scalar>(a: &Loop<Mat<K>>) -> Value {
    let terms: Vec<Value> = a.terms().iter().map(|(n, c)| json!({"exp": n, "coeff": c.to_json()})).collect();
    json!({"d": a.coeff_ctx(), "terms": terms})
}

pub fn loop_from_json<K: EntryJson + crate::scalar::Scalar>(v: &Value) -> Result<Loop<Mat<K>>> {
    let d = int(v, "d")?;
    if d < 1 {
        return Err(parse_err("d must be positive"));
    }
    let d = d as usize;
    let mut out = Loop::zero(&d);
    for t in field(v, "terms")?.as_array().ok_or_else(|| parse_err("terms must be an array"))? {
        let c = Mat::<K>::from_json(field(t, "coeff")?)?;
        if c.dim() != d {
            return Err(parse_err("coefficient size differs from d"));
        }
        out.add_term(int(t, "exp")?, &c);
    }
    Ok(out)
}

pub fn generator_to_json(g: &Generator) -> Value {
    match g {
        Generator::Constant { c, c_inv } => json!({"kind": "constant", "c": c.to_json(), "c_inv": c_inv.to_json()}),
        Generator::Monomial { k, c, c_inv } => {
            json!({"kind": "monomial", "k": k, "c": c.to_json(), "c_inv": c_inv.to_json()})
        }
        Generator::Mixer { power, q } => json!({"kind": "mixer", "power": power, "q": q.to_json()}),
        Generator::Unipotent { n, index } => json!({"kind": "unipotent", "n": loop_to_json(n), "index": index}),
    }
}

pub fn generator_from_json(v: &Value) -> Result<Generator> {
    let m = |k: &str| RMat::from_json(field(v, k)?);
    Ok(match field(v, "kind")?.as_str() {
        Some("constant") => Generator::Constant { c: m("c")?, c_inv: m("c_inv")? },
        Some("monomial") => Generator::Monomial { k: int(v, "k")?, c: m("c")?, c_inv: m("c_inv")? },
        Some("mixer") => Generator::Mixer { power: int(v, "power")?, q: m("q")? },
        Some("unipotent") => {
            let index = u32::try_from(int(v, "index")?).map_err(|_| parse_err("index must be nonnegative"))?;
            Generator::Unipotent { n: loop_from_json(field(v, "n")?)?, index }
        }
        _ => return Err(parse_err("unknown generator kind")),
    })
}

/// {"d", "generators": […], "terms": […]}; the terms are informative.
pub fn unit_to_json(u: &LoopUnit) -> Value {
    let gens: Vec<Value> = u.provenance.iter().map(generator_to_json).collect();
    let mut v = loop_to_json(&u.forward);
    v["generators"] = Value::Array(gens);
    v
}

/// A builder unit. Input without generators is rejected; if terms are also
/// given they must equal the product of the generators.
pub fn unit_from_json(v: &Value) -> Result<LoopUnit> {
    let Some(gens) = v.get("generators") else {
        return Err(Error::NotBuilderUnit);
    };
    let gens: Vec<Generator> = gens
        .as_array()
        .ok_or_else(|| parse_err("generators must be an array"))?
        .iter()
        .map(generator_from_json)
        .collect::<Result<_>>()?;
    let d = match v.get("d") {
        Some(_) => int(v, "d")? as usize,
        None => gens.first().map(Generator::dim).ok_or(Error::NotBuilderUnit)?,
    };
    let u = LoopUnit::build(d, &gens)?;
    if v.get("terms").is_some() {
        let claimed: RLoop = loop_from_json(v)?;
        if claimed != u.forward {
            return Err(parse_err("terms differ from the product of the generators"));
        }
    }
    Ok(u)
}

pub fn decomposition_to_json(dec: &LoopDecomposition) -> Value {
    let class: Vec<Value> = dec
        .class
        .windows
        .iter()
        .map(|w| json!({"m": w.m, "n": w.n, "tag": if w.tag == Tag::L { "L" } else { "R" }}))
        .collect();
    json!({"factors": dec.factors.iter().map(unit_to_json).collect::<Vec<_>>(), "class": class})
}

/// Factors in the order a₁, …, a_s; a missing class takes the default L-windows.
pub fn decomposition_from_json(v: &Value) -> Result<LoopDecomposition> {
    let factors: Vec<LoopUnit> = field(v, "factors")?
        .as_array()
        .ok_or_else(|| parse_err("factors must be an array"))?
        .iter()
        .map(unit_from_json)
        .collect::<Result<_>>()?;
    let Some(class) = v.get("class") else {
        return LoopDecomposition::with_default_class(factors);
    };
    let windows = class
        .as_array()
        .ok_or_else(|| parse_err("class must be an array"))?
        .iter()
        .map(|w| {
            let tag = match field(w, "tag")?.as_str() {
                Some("L") => Tag::L,
                Some("R") => Tag::R,
                _ => return Err(parse_err("tag must be \"L\" or \"R\"")),
            };
            Ok(Window { m: int(w, "m")?, n: int(w, "n")?, tag })
        })
        .collect::<Result<_>>()?;
    LoopDecomposition::new(factors, FinitenessClass { windows })
}

pub fn op_to_json<K: EntryJson + crate::scalar::Scalar>(a: &ZOp<Mat<K>>) -> Value {
    let finite: Vec<Value> =
        a.finite().iter().map(|(&(i, j), x)| json!({"i": i, "j": j, "entry": x.to_json()})).collect();
    json!({"laurent": loop_to_json(a.laurent()), "half": loop_to_json(a.half()), "finite": finite})
}

pub fn op_from_json<K: EntryJson + crate::scalar::Scalar>(v: &Value) -> Result<ZOp<Mat<K>>> {
    let laurent = loop_from_json(field(v, "laurent")?)?;
    let d = *laurent.coeff_ctx();
    let half = match v.get("half") {
        Some(h) => loop_from_json(h)?,
        None => Loop::zero(&d),
    };
    let mut finite = FMap::new();
    for e in field(v, "finite")?.as_array().ok_or_else(|| parse_err("finite must be an array"))? {
        let x = Mat::<K>::from_json(field(e, "entry")?)?;
        if x.dim() != d {
            return Err(parse_err("entry size differs from d"));
        }
        if !x.is_zero() {
            finite.insert((int(e, "i")?, int(e, "j")?), x);
        }
    }
    Ok(ZOp::new(laurent, half, finite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::{bott, linearize_k, ShiftingRotation, Variant};
    use crate::scalar::CirclePoint;

    fn rm(r: &[&[i64]]) -> RMat {
        Mat::from_ints(r)
    }

    fn unit() -> LoopUnit {
        LoopUnit::build(
            2,
            &[
                Generator::Mixer { power: 1, q: rm(&[&[1, 2], &[0, -1]]) },
                Generator::Unipotent { n: Loop::monomial(-1, rm(&[&[0, 3], &[0, 0]])), index: 2 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn loop_format() {
        let a = Loop::monomial(1, rm(&[&[1, 0], &[0, 2]]));
        let v = loop_to_json(&a);
        assert_eq!(v, json!({"d": 2, "terms": [{"exp": 1, "coeff": [["1/1", "0/1"], ["0/1", "2/1"]]}]}));
        assert_eq!(loop_from_json::<Rational>(&v).unwrap(), a);
    }

    #[test]
    fn units_round_trip_and_need_provenance() {
        let u = unit();
        let v = unit_to_json(&u);
        assert_eq!(unit_from_json(&v).unwrap(), u);
        assert_eq!(unit_from_json(&loop_to_json(&u.forward)), Err(Error::NotBuilderUnit));
        let mut bad = v.clone();
        bad["terms"] = json!([]);
        assert!(matches!(unit_from_json(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn decompositions_round_trip() {
        let dec = LoopDecomposition::with_default_class(vec![unit(), unit().inv()]).unwrap();
        let v = decomposition_to_json(&dec);
        assert_eq!(decomposition_from_json(&v).unwrap(), dec);
        let mut no_class = v.clone();
        no_class.as_object_mut().unwrap().remove("class");
        assert_eq!(decomposition_from_json(&no_class).unwrap(), dec);
    }

    #[test]
    fn operators_round_trip() {
        let b = bott(&unit());
        let v = op_to_json(b.op());
        assert_eq!(op_from_json::<Rational>(&v).unwrap(), *b.op());
        let rot = ShiftingRotation::<Rational>::at(&CirclePoint::rational(Rational::new(3, 5), Rational::new(4, 5)).unwrap(), Variant::Unitary).unwrap();
        let k = linearize_k(&rot, &unit());
        assert_eq!(op_from_json::<VLaurent<Rational>>(&op_to_json(&k)).unwrap(), k);
    }
}
