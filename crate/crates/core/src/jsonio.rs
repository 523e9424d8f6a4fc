//! JSON encoding of polynomials and operators.
//!
//! Schema: `{variables:[...], terms:[{mon:[...], der:[...], re:"p/q", im:"p/q"}]}`
//! with exact decimal-free rational strings. `der` is omitted for plain
//! polynomials. Term order follows the canonical map order, so encoding is
//! deterministic.

use crate::diffop::DiffOp;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::CScalar;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub mon: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub der: Option<Vec<u32>>,
    pub re: String,
    pub im: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub fn multipoly_to_json(p: &MultiPoly) -> PolyJson {
    PolyJson {
        variables: p.vars().to_vec(),
        terms: p
            .terms()
            .map(|(m, c)| {
                let (re, im) = c.to_strings();
                TermJson {
                    mon: m.0.clone(),
                    der: None,
                    re,
                    im,
                }
            })
            .collect(),
    }
}

pub fn multipoly_from_json(j: &PolyJson) -> Result<MultiPoly, String> {
    let vars: Vec<&str> = j.variables.iter().map(|s| s.as_str()).collect();
    let mut p = MultiPoly::zero(&vars);
    for t in &j.terms {
        if t.mon.len() != vars.len() {
            return Err("term arity does not match variable list".into());
        }
        p.add_term(
            MultiIndex(t.mon.clone()),
            CScalar::parse_parts(&t.re, &t.im)?,
        );
    }
    Ok(p)
}

pub fn diffop_to_json(op: &DiffOp) -> PolyJson {
    PolyJson {
        variables: op.vars().to_vec(),
        terms: op
            .terms()
            .map(|(k, c)| {
                let (re, im) = c.to_strings();
                TermJson {
                    mon: k.mon.0.clone(),
                    der: Some(k.der.0.clone()),
                    re,
                    im,
                }
            })
            .collect(),
    }
}

pub fn diffop_from_json(j: &PolyJson) -> Result<DiffOp, String> {
    let vars: Vec<&str> = j.variables.iter().map(|s| s.as_str()).collect();
    let mut op = DiffOp::zero(&vars);
    for t in &j.terms {
        let der = t.der.clone().unwrap_or_else(|| vec![0; vars.len()]);
        if t.mon.len() != vars.len() || der.len() != vars.len() {
            return Err("term arity does not match variable list".into());
        }
        op.add_term(
            MultiIndex(t.mon.clone()),
            MultiIndex(der),
            CScalar::parse_parts(&t.re, &t.im)?,
        );
    }
    Ok(op)
}

/// Serializes any value as deterministic JSON: keys sorted, stable float
/// formatting, trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serialization cannot fail");
    let mut s = serde_json::to_string_pretty(&v).expect("serialization cannot fail");
    s.push('\n');
    s
}
