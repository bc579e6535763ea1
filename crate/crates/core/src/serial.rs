//! JSON and text forms of rings, residue rings and homomorphisms.

use serde_json::{json, Value};

use crate::dvr::{parse_pi_digits, Dvr, DvrSpec, ResidueRing, Rn, WittCoeff};
use crate::error::{Error, Result};
use crate::homlift::{DvrHom, ResidueHom};
use crate::resfield::{Field, FieldEmbedding, FieldSpec, FqElem};
use crate::witt::TeichDigits;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| perr(format!("{what} must be a nonnegative integer")))
}

fn parse_field(v: Option<&Value>, p: u64) -> Result<Field> {
    let Some(v) = v else {
        return FieldSpec::prime_field(p);
    };
    if let Some(s) = v.as_str() {
        let k = FieldSpec::parse(s)?;
        if k.p() != p {
            return Err(Error::CharMismatch(p, k.p()));
        }
        return Ok(k);
    }
    let d = match v.get("d") {
        Some(d) => as_u64(d, "residue.d")? as usize,
        None => 1,
    };
    let poly = match v.get("poly") {
        None | Some(Value::Null) => None,
        Some(Value::Array(cs)) => {
            let mut c = cs.iter().map(|c| as_u64(c, "residue.poly entry")).collect::<Result<Vec<_>>>()?;
            if c.len() == d {
                c.push(1);
            }
            Some(c)
        }
        Some(_) => return Err(perr("residue.poly must be an array")),
    };
    FieldSpec::new(p, d, poly.as_deref())
}

fn parse_coeff(k: &Field, v: &Value) -> Result<WittCoeff> {
    match v {
        Value::Number(n) => n.as_i64().map(WittCoeff::int).ok_or_else(|| perr("coefficient out of range")),
        Value::Array(cs) => {
            let c = cs
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| perr("coordinate must be an integer")))
                .collect::<Result<Vec<_>>>()?;
            Ok(WittCoeff::Int(c))
        }
        Value::String(s) if s.trim_start().starts_with("t:") => Ok(WittCoeff::Teich(TeichDigits::parse(k, s)?.0)),
        Value::String(s) => s.trim().parse().map(WittCoeff::int).map_err(|_| perr(format!("bad coefficient {s:?}"))),
        _ => Err(perr("coefficient must be an integer, a coordinate array or a \"t:\" digit string")),
    }
}

/// `{"p":3,"residue":{"d":1,"poly":[0,1]},"eisenstein":[-3,0,1]}`.
pub fn ring_from_json(v: &Value) -> Result<Dvr> {
    let p = as_u64(v.get("p").ok_or_else(|| perr("ring spec needs \"p\""))?, "p")?;
    let k = parse_field(v.get("residue"), p)?;
    let f = v
        .get("eisenstein")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("ring spec needs an \"eisenstein\" coefficient array"))?;
    let coeffs = f.iter().map(|c| parse_coeff(&k, c)).collect::<Result<Vec<_>>>()?;
    DvrSpec::new(&k, coeffs)
}

fn coeff_to_json(c: &WittCoeff) -> Value {
    match c {
        WittCoeff::Int(v) if v.len() == 1 => json!(v[0]),
        WittCoeff::Int(v) => json!(v),
        WittCoeff::Teich(_) => json!(c.to_string()),
    }
}

pub fn ring_to_json(r: &Dvr) -> Value {
    let k = r.residue_field();
    json!({
        "p": k.p(),
        "residue": {"d": k.degree(), "poly": k.defining_poly()},
        "eisenstein": r.poly().iter().map(coeff_to_json).collect::<Vec<_>>(),
    })
}

/// `{"ring": <ring spec>, "n": 2}`.
pub fn residue_ring_from_json(v: &Value) -> Result<Rn> {
    let ring = ring_from_json(v.get("ring").ok_or_else(|| perr("residue ring needs \"ring\""))?)?;
    let n = as_u64(v.get("n").ok_or_else(|| perr("residue ring needs \"n\""))?, "n")?;
    ResidueRing::new(&ring, n as u32)
}

pub fn residue_ring_to_json(r: &Rn) -> Value {
    json!({"ring": ring_to_json(r.dvr()), "n": r.n()})
}

fn psi_from_json(v: Option<&Value>, k1: &Field, k2: &Field) -> Result<FieldEmbedding> {
    let img = match v.and_then(|p| p.get("image_of_generator")) {
        None => return FieldEmbedding::new(k1, k2, embed_default(k1, k2)?),
        Some(Value::String(s)) => FqElem::parse(k2, s)?,
        Some(Value::Number(n)) => FqElem::parse(k2, &n.to_string())?,
        Some(_) => return Err(perr("psi.image_of_generator must be a field element")),
    };
    FieldEmbedding::new(k1, k2, img)
}

fn embed_default(k1: &Field, k2: &Field) -> Result<FqElem> {
    crate::resfield::embeddings(k1, k2)?
        .into_iter()
        .next()
        .map(|e| e.image_of_generator().clone())
        .ok_or_else(|| perr("no embedding between the residue fields"))
}

fn psi_to_json(psi: &FieldEmbedding) -> Value {
    json!({"image_of_generator": psi.image_of_generator().to_string()})
}

/// `{"psi":{"image_of_generator":...},"beta":"π:...","source":{...},"target":{...}}`.
/// When `psi` is omitted the first embedding is used.
pub fn hom_from_json(v: &Value) -> Result<ResidueHom> {
    let src = residue_ring_from_json(v.get("source").ok_or_else(|| perr("hom needs \"source\""))?)?;
    let tgt = residue_ring_from_json(v.get("target").ok_or_else(|| perr("hom needs \"target\""))?)?;
    hom_from_json_between(v, &src, &tgt)
}

/// As [`hom_from_json`], with the rings given separately; `source` and
/// `target` keys in `v`, if present, are ignored.
pub fn hom_from_json_between(v: &Value, src: &Rn, tgt: &Rn) -> Result<ResidueHom> {
    let psi = psi_from_json(v.get("psi"), src.dvr().residue_field(), tgt.dvr().residue_field())?;
    let beta = v.get("beta").and_then(Value::as_str).ok_or_else(|| perr("hom needs a \"beta\" digit string"))?;
    let beta = tgt.from_digits(&parse_pi_digits(tgt.dvr().residue_field(), beta)?)?;
    ResidueHom::new(src, tgt, psi, beta)
}

pub fn hom_to_json(h: &ResidueHom) -> Value {
    json!({
        "psi": psi_to_json(h.psi()),
        "beta": h.beta().to_string(),
        "source": residue_ring_to_json(h.source()),
        "target": residue_ring_to_json(h.target()),
    })
}

/// Like [`hom_to_json`] without the ring specs.
pub fn hom_to_json_brief(h: &ResidueHom) -> Value {
    json!({"psi": psi_to_json(h.psi()), "beta": h.beta().to_string()})
}

pub fn dvr_hom_to_json(g: &DvrHom) -> Value {
    let c = g.certificate();
    json!({
        "psi": psi_to_json(g.psi()),
        "rho": g.rho().to_string(),
        "certificate": {"t": c.t, "deriv_val": c.deriv_val},
        "source": ring_to_json(g.source()),
        "target": ring_to_json(g.target()),
    })
}

/// Parses `x^2-3`, `x^3 + 2*x - 5`, ... into ascending integer coefficients.
pub fn parse_int_poly(s: &str) -> Result<Vec<i64>> {
    let err = || perr(format!("bad polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    let mut coeffs: Vec<i64> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1i64, b),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (c, deg) = match body.split_once('x') {
            None => (body.parse::<i64>().map_err(|_| err())?, 0usize),
            Some((c, rest)) => {
                let c = c.strip_suffix('*').unwrap_or(c);
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| err())? };
                let deg = match rest.strip_prefix('^') {
                    Some(d) => d.parse::<usize>().map_err(|_| err())?,
                    None if rest.is_empty() => 1,
                    None => return Err(err()),
                };
                (c, deg)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * c;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}
