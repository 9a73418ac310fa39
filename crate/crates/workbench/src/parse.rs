//! Literal grammars accepted on the command line.

use std::collections::BTreeMap;
use std::str::FromStr;

use cut_dga::Sequence;
use cycle_engine::Theory;
use exact_kernel::{parse_field, q_to_f64, FieldElement};
use period_lab::C64;

use crate::WorkbenchError;

fn usage(msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Usage(msg.into())
}

/// `elem ';' elem (',' elem)* ';' elem`. A sequence whose ends agree is
/// accepted here; the algebra treats it as zero when loops are killed.
pub fn parse_sequence(text: &str) -> Result<Sequence, WorkbenchError> {
    Sequence::from_str(text.trim()).map_err(|e| usage(format!("`{text}`: {e}")))
}

/// `seqdist`, `agen:<elem>` or `binary:<e0>,<e1>`.
pub fn parse_theory(text: &str) -> Result<Theory, WorkbenchError> {
    let text = text.trim();
    if text == "seqdist" {
        return Ok(Theory::SeqDistinct);
    }
    if let Some(a) = text.strip_prefix("agen:") {
        return Ok(Theory::AGeneric(parse_field(a)?));
    }
    if let Some(pair) = text.strip_prefix("binary:") {
        let v = parse_elements(pair)?;
        if v.len() != 2 || v[0] == v[1] {
            return Err(usage(format!("`{text}`: binary needs two distinct letters")));
        }
        return Ok(Theory::Binary(v[0].clone(), v[1].clone()));
    }
    if text == "binary" {
        return Ok(Theory::Binary(parse_field("0")?, parse_field("1")?));
    }
    Err(usage(format!("unknown theory `{text}`; expected seqdist, agen:<elem> or binary:<e0>,<e1>")))
}

/// Comma-separated field elements; the empty string is the empty list.
pub fn parse_elements(text: &str) -> Result<Vec<FieldElement>, WorkbenchError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| Ok(parse_field(t.trim())?)).collect()
}

/// A complex number such as `0.5`, `-1+2i`, `i` or a rational constant `1/3`.
pub fn parse_point(text: &str) -> Result<C64, WorkbenchError> {
    let t = text.trim();
    if let Ok(z) = C64::from_str(t) {
        return Ok(z);
    }
    let f = parse_field(t).map_err(|_| usage(format!("`{text}` is not a number")))?;
    let c = f.as_constant().ok_or_else(|| usage(format!("`{text}` is not a number")))?;
    Ok(C64::new(q_to_f64(&c), 0.0))
}

pub fn parse_points(text: &str) -> Result<Vec<C64>, WorkbenchError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_point).collect()
}

/// `name=value` pairs separated by commas, e.g. `z=0.5,w=0.25+0.1i`.
pub fn parse_values(text: &str) -> Result<BTreeMap<String, C64>, WorkbenchError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("`{item}`: expected name=value")))?;
        out.insert(name.trim().to_string(), parse_point(value)?);
    }
    Ok(out)
}

/// Positive exponents separated by commas.
pub fn parse_exponents(text: &str) -> Result<Vec<u32>, WorkbenchError> {
    let v: Vec<u32> = text
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| usage(format!("`{t}`: {e}"))))
        .collect::<Result<_, _>>()?;
    if v.is_empty() || v.contains(&0) {
        return Err(usage("exponents must be positive"));
    }
    Ok(v)
}
