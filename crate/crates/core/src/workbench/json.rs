//! JSON encodings.
//!
//! An element of Q(ζₙ) is an array of φ(n) rational strings (power-basis
//! coordinates); on input a single rational string or integer is also
//! accepted. Every object carrying such values has a `cyclotomic_order`
//! field, which nested objects inherit from their parent.

use serde_json::{json, Map, Value};

use crate::arith::{adjoin_sqrt, parse_rat, CycNum, ExtNum};
use crate::error::{Error, Result};
use crate::lifting::{AutOrder, InvolutionCertificate, LiftDecision};
use crate::linalg::{Matrix, ProjMat};
use crate::linearize::{FixedPointReport, LiftedAut, Verdict, Witness};
use crate::poly::MPoly;
use crate::surface::Surface22;

/// Parses JSON text, reporting syntax errors with their position.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Validation(format!("missing field \"{key}\"")))
}

/// The `cyclotomic_order` of `v`, or `inherited` when absent.
pub fn order_of(v: &Value, inherited: Option<u32>) -> Result<u32> {
    match v.get("cyclotomic_order") {
        Some(o) => o
            .as_u64()
            .and_then(|o| u32::try_from(o).ok())
            .filter(|&o| o > 0)
            .ok_or_else(|| Error::Validation("cyclotomic_order must be a positive integer".into())),
        None => inherited.ok_or_else(|| Error::Validation("missing field \"cyclotomic_order\"".into())),
    }
}

pub fn cyc_to_json(c: &CycNum) -> Value {
    json!(c.to_strings())
}

pub fn cyc_from_json(order: u32, v: &Value) -> Result<CycNum> {
    match v {
        Value::String(s) => Ok(CycNum::from_rat(order, parse_rat(s)?)),
        Value::Number(n) => {
            let k = n
                .as_i64()
                .ok_or_else(|| Error::Validation(format!("{n} is not an integer; use a string like \"1/3\"")))?;
            Ok(CycNum::from_int(order, k))
        }
        Value::Array(items) => {
            let strs: Vec<&str> = items
                .iter()
                .map(|x| {
                    x.as_str()
                        .ok_or_else(|| Error::Validation("coefficient entries must be strings".into()))
                })
                .collect::<Result<_>>()?;
            CycNum::from_strings(order, &strs)
        }
        _ => Err(Error::Validation("coefficient must be an array of strings".into())),
    }
}

/// Base-field values as coefficient arrays, others as {"u", "v", "d"}
/// meaning u + v·√d.
pub fn ext_to_json(x: &ExtNum) -> Value {
    match x.as_base() {
        Some(c) => cyc_to_json(c),
        None => json!({"u": cyc_to_json(x.u()), "v": cyc_to_json(x.v()), "d": cyc_to_json(x.radicand())}),
    }
}

pub fn ext_from_json(order: u32, v: &Value) -> Result<ExtNum> {
    if !v.is_object() {
        return Ok(ExtNum::from_base(cyc_from_json(order, v)?));
    }
    let u = cyc_from_json(order, field(v, "u")?)?;
    let w = cyc_from_json(order, field(v, "v")?)?;
    let d = cyc_from_json(order, field(v, "d")?)?;
    Ok(adjoin_sqrt(&d)?.make(u, w))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<Value>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(cyc_to_json).collect())
        .collect();
    json!({"cyclotomic_order": m.order(), "rows": rows})
}

pub fn matrix_from_json(v: &Value, inherited: Option<u32>) -> Result<Matrix> {
    let order = order_of(v, inherited)?;
    let rows = field(v, "rows")?
        .as_array()
        .ok_or_else(|| Error::Validation("\"rows\" must be an array".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Validation("matrix rows must be arrays".into()))?
                .iter()
                .map(|c| cyc_from_json(order, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// A square matrix of the given size, as a projective transformation.
pub fn projmat_from_json(v: &Value, inherited: Option<u32>, dim: usize) -> Result<ProjMat> {
    let m = matrix_from_json(v, inherited)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::Validation(format!("expected a {dim}x{dim} matrix")));
    }
    ProjMat::new(m)
}

pub fn poly_to_json(p: &MPoly) -> Value {
    json!({"text": p.to_string(), "terms": p.to_json()["terms"].clone()})
}

/// Quadrics as coefficient arrays in the order x², y², z², xy, xz, yz.
pub fn surface_to_json(s: &Surface22) -> Value {
    let q = |i: usize| -> Vec<Value> { s.quadric_coeffs(i).iter().map(cyc_to_json).collect() };
    json!({"cyclotomic_order": s.order(), "Q1": q(0), "Q2": q(1), "Q3": q(2)})
}

/// Each Qᵢ is either six coefficients (x², y², z², xy, xz, yz) or a
/// polynomial string such as "x^2 + z4*y*z".
pub fn surface_from_json(v: &Value) -> Result<Surface22> {
    let order = order_of(v, None)?;
    let mut qs = Vec::with_capacity(3);
    for key in ["Q1", "Q2", "Q3"] {
        let q = field(v, key)?;
        qs.push(match q {
            Value::String(s) => MPoly::parse(order, s)?,
            Value::Array(cs) if cs.len() == 6 => {
                let coeffs = cs
                    .iter()
                    .map(|c| cyc_from_json(order, c))
                    .collect::<Result<Vec<_>>>()?;
                let mons = crate::poly::quadric_monomials();
                MPoly::from_terms(order, mons.into_iter().zip(coeffs))
            }
            _ => return Err(Error::Validation(format!("{key} must be 6 coefficients or a polynomial string"))),
        });
    }
    let [a, b, c]: [MPoly; 3] = qs.try_into().unwrap();
    Surface22::new(a, b, c)
}

pub fn point_to_json(p: &[CycNum]) -> Value {
    let text: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    json!({"coords": p.iter().map(cyc_to_json).collect::<Vec<_>>(), "text": format!("[{}]", text.join(" : "))})
}

pub fn lifted_to_json(g: &LiftedAut) -> Value {
    json!({
        "cyclotomic_order": g.order(),
        "M": matrix_to_json(&g.m),
        "N": matrix_to_json(&g.n),
        "u": ext_to_json(&g.u),
        "c_g": cyc_to_json(&g.c_g),
    })
}

/// Reads (M, N, u); c_g is recomputed from the surface and, when present
/// in the input, must agree.
pub fn lifted_from_json(v: &Value, s: &Surface22, inherited: Option<u32>) -> Result<LiftedAut> {
    let order = order_of(v, inherited.or(Some(s.order())))?;
    if order != s.order() {
        return Err(Error::OrderMismatch(s.order(), order));
    }
    let m = matrix_from_json(field(v, "M")?, Some(order))?;
    let n = matrix_from_json(field(v, "N")?, Some(order))?;
    let u = ext_from_json(order, field(v, "u")?)?;
    let g = LiftedAut::new(s, m, n, u)?;
    if let Some(c) = v.get("c_g") {
        if cyc_from_json(order, c)? != g.c_g {
            return Err(Error::Validation("c_g does not match F∘(M×N)".into()));
        }
    }
    Ok(g)
}

/// {"generators": [matrix, ...]} with 3x3 matrices.
pub fn generators_from_json(v: &Value, order: u32) -> Result<Vec<ProjMat>> {
    let inherited = Some(order_of(v, Some(order))?);
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| Error::Validation("\"generators\" must be an array".into()))?;
    let gens = gens
        .iter()
        .map(|g| projmat_from_json(g, inherited, 3))
        .collect::<Result<Vec<_>>>()?;
    for g in &gens {
        if g.order() != order {
            return Err(Error::OrderMismatch(order, g.order()));
        }
    }
    Ok(gens)
}

/// A group of lifted automorphisms given by "generators" or by the full
/// list of "elements". Returns the list and whether it was given by
/// generators.
pub fn lifted_group_from_json(v: &Value, s: &Surface22) -> Result<(Vec<LiftedAut>, bool)> {
    let inherited = Some(order_of(v, Some(s.order()))?);
    let (key, by_gens) = match (v.get("generators"), v.get("elements")) {
        (Some(_), None) => ("generators", true),
        (None, Some(_)) => ("elements", false),
        _ => return Err(Error::Validation("give exactly one of \"generators\" and \"elements\"".into())),
    };
    let items = field(v, key)?
        .as_array()
        .ok_or_else(|| Error::Validation(format!("\"{key}\" must be an array")))?;
    let list = items
        .iter()
        .map(|g| lifted_from_json(g, s, inherited))
        .collect::<Result<Vec<_>>>()?;
    if list.is_empty() {
        return Err(Error::Validation(format!("\"{key}\" is empty")));
    }
    Ok((list, by_gens))
}

fn opt<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map(f).unwrap_or(Value::Null)
}

pub fn certificate_to_json(c: Option<&InvolutionCertificate>) -> Value {
    let Some(c) = c else {
        return json!({"exists": false});
    };
    json!({
        "exists": true,
        "case": c.case,
        "a": cyc_to_json(&c.a),
        "b": opt(c.b.as_ref(), cyc_to_json),
        "sigma": matrix_to_json(&c.sigma),
        "c": cyc_to_json(&c.c),
        "overlap": c.overlap,
    })
}

pub fn lift_decision_to_json(d: &LiftDecision) -> Value {
    json!({
        "exists": d.exists,
        "T": opt(d.t.as_ref(), matrix_to_json),
        "mu": opt(d.mu.as_ref(), cyc_to_json),
        "M": opt(d.m.as_ref(), |m| matrix_to_json(m.matrix())),
        "c_g": opt(d.c_g.as_ref(), cyc_to_json),
    })
}

pub fn aut_order_to_json(r: &AutOrder) -> Value {
    let pairs: Vec<Value> = r
        .lifted_pairs
        .iter()
        .map(|(m, n)| json!({"M": matrix_to_json(m.matrix()), "N": matrix_to_json(n.matrix())}))
        .collect();
    json!({
        "order_aut_x": r.order_aut_x,
        "group_size": r.group.len(),
        "liftable": r.liftable.len(),
        "lifted_pairs": pairs,
    })
}

pub fn fixed_points_to_json(r: &FixedPointReport) -> Value {
    json!({
        "points": r.points.iter().map(|p| point_to_json(p)).collect::<Vec<_>>(),
        "complete": r.complete,
        "fixed_line": opt(r.fixed_line.as_ref(), |l| point_to_json(l)),
        "note": r.note,
    })
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::FixedPoint(p)) => json!({"fixed_point": point_to_json(p)}),
        Some(Witness::Involution(g)) => json!({"involution": lifted_to_json(g)}),
    };
    let mut out = Map::new();
    out.insert("status".into(), json!(v.status));
    out.insert("criterion".into(), json!(v.criterion));
    out.insert("witness".into(), witness);
    Value::Object(out)
}
