//! Certificate files.
//!
//! ```json
//! {"ring": "...", "target": "(F, G)",
//!  "factors": [{"kind": "elemX", "data": "..."}],
//!  "verdict": "tame" | "not_tame" | "inconclusive",
//!  "witness": {"monomial": [a, b], "congruences": [[coef, target], ...], "modulus": p}}
//! ```
//!
//! A non-constant Jacobian is reported as `{"jacobian": "...", "modulus": p}`.
//! Inconclusive verdicts also carry `constraints` and `bounds`. Keys are
//! written in sorted order.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use tame2::{
    apply_factor_list, decide_tameness, AutoMap, Certificate, Congruence, Factor, Matrix2,
    MonomialConstraint, Obstruction, ObstructionWitness, Ring, SearchBounds, Shift,
    TamenessVerdict,
};

use crate::grammar::{parse_map, parse_matrix, parse_pair, parse_poly, parse_ring};
use crate::CliError;

fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn value_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn factors_json(factors: &[Factor]) -> Value {
    Value::Array(
        factors
            .iter()
            .map(|f| json!({"kind": f.kind(), "data": f.data()}))
            .collect(),
    )
}

pub fn certificate_json(cert: &Certificate, verdict: &str) -> Value {
    json!({
        "ring": cert.ring().to_string(),
        "target": cert.target.to_string(),
        "factors": factors_json(&cert.factors),
        "verdict": verdict,
    })
}

fn congruences_json(cs: &[Congruence]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| json!([int_value(&c.coef), int_value(&c.target)]))
            .collect(),
    )
}

pub fn witness_json(w: &ObstructionWitness) -> Value {
    json!({
        "monomial": [w.monomial.0, w.monomial.1],
        "congruences": congruences_json(&w.congruences),
        "modulus": int_value(&w.modulus),
    })
}

fn constraint_json(c: &MonomialConstraint) -> Value {
    json!({
        "monomial": [c.monomial.0, c.monomial.1],
        "congruences": congruences_json(&c.congruences),
        "residues": c.residues.to_string(),
    })
}

pub fn bounds_json(b: &SearchBounds) -> Value {
    json!({
        "max_power": b.max_power,
        "coeff_range": b.coeff_range,
        "aux_degree": b.aux_degree,
        "max_degree": b.max_degree,
    })
}

fn modulus(ring: &Ring) -> Value {
    ring.residue_prime().map(int_value).unwrap_or(Value::Null)
}

pub fn verdict_json(phi: &AutoMap, verdict: &TamenessVerdict) -> Value {
    let mut out = match verdict {
        TamenessVerdict::Tame(cert) => certificate_json(cert, verdict.label()),
        _ => json!({
            "ring": phi.ring().to_string(),
            "target": phi.to_string(),
            "factors": [],
            "verdict": verdict.label(),
        }),
    };
    let obj = out.as_object_mut().expect("object");
    match verdict {
        TamenessVerdict::Tame(_) => {}
        TamenessVerdict::NotTame(Obstruction::Monomial(w)) => {
            obj.insert("witness".into(), witness_json(w));
        }
        TamenessVerdict::NotTame(Obstruction::Jacobian { det }) => {
            obj.insert(
                "witness".into(),
                json!({"jacobian": det.to_string(), "modulus": modulus(phi.ring())}),
            );
        }
        TamenessVerdict::Inconclusive {
            constraints,
            bounds,
        } => {
            obj.insert(
                "constraints".into(),
                Value::Array(constraints.iter().map(constraint_json).collect()),
            );
            obj.insert("bounds".into(), bounds_json(bounds));
        }
    }
    out
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidCertificate(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| invalid(format!("missing field \"{key}\"")))
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, CliError> {
    field(obj, key)?
        .as_str()
        .ok_or_else(|| invalid(format!("field \"{key}\" must be a string")))
}

pub fn parse_factor(kind: &str, data: &str, ring: &Ring) -> Result<Factor, CliError> {
    Ok(match kind {
        "elemX" => Factor::elementary_x(parse_poly(data, ring)?)?,
        "elemY" => Factor::elementary_y(parse_poly(data, ring)?)?,
        "linear" => Factor::linear(Matrix2::new(ring, parse_matrix(data, ring)?))?,
        "shift" => {
            let [a, b] = parse_pair(data, ring)?;
            Factor::AffineShift(Shift::new(ring, a, b))
        }
        other => return Err(invalid(format!("unknown factor kind \"{other}\""))),
    })
}

fn parse_congruences(v: &Value) -> Result<Vec<Congruence>, CliError> {
    let bad = || invalid("congruences must be [[coef, target], ...]");
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|pair| {
            let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            Ok(Congruence {
                coef: value_int(&pair[0]).ok_or_else(bad)?,
                target: value_int(&pair[1]).ok_or_else(bad)?,
            })
        })
        .collect()
}

fn parse_monomial(v: &Value) -> Result<(u32, u32), CliError> {
    let bad = || invalid("monomial must be [a, b]");
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
    let get = |x: &Value| {
        x.as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(bad)
    };
    Ok((get(&arr[0])?, get(&arr[1])?))
}

fn parse_bounds(v: &Value) -> Result<SearchBounds, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| invalid("bounds must be an object"))?;
    let mut b = SearchBounds::default();
    for (key, slot) in [
        ("max_power", &mut b.max_power),
        ("coeff_range", &mut b.coeff_range),
        ("aux_degree", &mut b.aux_degree),
        ("max_degree", &mut b.max_degree),
    ] {
        if let Some(x) = obj.get(key) {
            *slot = x
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| invalid(format!("bound \"{key}\" must be a small integer")))?;
        }
    }
    Ok(b)
}

/// What a certificate file was checked against.
#[derive(Debug)]
pub struct Verified {
    pub verdict: String,
    pub detail: String,
}

/// Re-checks a certificate file from scratch.
///
/// Tame files must recompose to the target. Not-tame files must carry a
/// witness that is unsolvable by itself and that the target reproduces.
/// Inconclusive files must still be inconclusive at the recorded bounds.
pub fn verify_certificate_text(text: &str) -> Result<Verified, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| invalid(format!("not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| invalid("top level must be an object"))?;
    let ring = parse_ring(str_field(obj, "ring")?)?;
    let target = parse_map(str_field(obj, "target")?, &ring)?;
    let verdict = str_field(obj, "verdict")?.to_string();
    let raw = field(obj, "factors")?
        .as_array()
        .ok_or_else(|| invalid("factors must be an array"))?;
    let mut factors = Vec::with_capacity(raw.len());
    for f in raw {
        let f = f
            .as_object()
            .ok_or_else(|| invalid("each factor must be an object"))?;
        factors.push(parse_factor(
            str_field(f, "kind")?,
            str_field(f, "data")?,
            &ring,
        )?);
    }
    let detail = match verdict.as_str() {
        "tame" => {
            let composed = apply_factor_list(&ring, &factors)?;
            if composed != target {
                return Err(invalid(format!(
                    "factors compose to {composed}, not to the target"
                )));
            }
            format!("{} factors recompose to the target", factors.len())
        }
        "not_tame" => verify_not_tame(obj, &ring, &target)?,
        "inconclusive" => {
            let bounds = match obj.get("bounds") {
                Some(b) => parse_bounds(b)?,
                None => SearchBounds::default(),
            };
            match decide_tameness(&target, &bounds)? {
                TamenessVerdict::Inconclusive { .. } => {
                    format!("still inconclusive at {bounds}")
                }
                other => {
                    return Err(invalid(format!(
                        "recomputed verdict is {}, not inconclusive",
                        other.label()
                    )))
                }
            }
        }
        other => return Err(invalid(format!("unknown verdict \"{other}\""))),
    };
    Ok(Verified { verdict, detail })
}

fn verify_not_tame(
    obj: &Map<String, Value>,
    ring: &Ring,
    target: &AutoMap,
) -> Result<String, CliError> {
    let w = field(obj, "witness")?
        .as_object()
        .ok_or_else(|| invalid("witness must be an object"))?;
    if let Some(j) = w.get("jacobian") {
        let text = j
            .as_str()
            .ok_or_else(|| invalid("jacobian must be a string"))?;
        let claimed = parse_poly(text, ring)?;
        let det = target.jacobian_det();
        if claimed != det {
            return Err(invalid(format!(
                "Jacobian determinant is {det}, not {claimed}"
            )));
        }
        if det.is_constant() {
            return Err(invalid("Jacobian determinant is constant"));
        }
        let witness = Obstruction::Jacobian { det };
        if !witness.recheck() {
            return Err(invalid("Jacobian witness does not recheck"));
        }
        return Ok("Jacobian determinant is not constant".into());
    }
    let claimed = ObstructionWitness {
        monomial: parse_monomial(field(w, "monomial")?)?,
        target_u: BigInt::from(0),
        target_v: BigInt::from(0),
        congruences: parse_congruences(field(w, "congruences")?)?,
        modulus: value_int(field(w, "modulus")?).ok_or_else(|| invalid("bad modulus"))?,
    };
    if ring.residue_prime() != Some(&claimed.modulus) {
        return Err(invalid("witness modulus does not match the ring"));
    }
    if !claimed.recheck() {
        return Err(invalid("witness congruences have a solution"));
    }
    match decide_tameness(target, &SearchBounds::default())? {
        TamenessVerdict::NotTame(Obstruction::Monomial(found))
            if found.monomial == claimed.monomial && found.congruences == claimed.congruences =>
        {
            Ok(format!(
                "monomial X^{}*Y^{} has no admissible coefficient",
                found.monomial.0, found.monomial.1
            ))
        }
        TamenessVerdict::NotTame(Obstruction::Monomial(found)) => Err(invalid(format!(
            "target is obstructed at monomial {:?}, not at {:?}",
            found.monomial, claimed.monomial
        ))),
        other => Err(invalid(format!(
            "recomputed verdict is {} without a monomial obstruction",
            other.label()
        ))),
    }
}
