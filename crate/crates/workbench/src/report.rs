//! Report schema shared by every verb, and JSON forms of the algebraic
//! objects.

use bar_complex::Bar;
use cut_dga::{AlgElement, Mono, TPoly};
use exact_kernel::{fmt_q, Lin, Q};
use period_lab::{Evaluation, C64};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub verb: String,
    pub input: Value,
    pub passed: bool,
    pub result: Value,
    pub text: String,
}

impl Report {
    pub fn new(verb: &str, input: Value, passed: bool, result: Value, text: String) -> Self {
        Report { schema: SCHEMA_VERSION, verb: verb.to_string(), input, passed, result, text }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
        }
    }
}

pub fn coefficient(c: &Q) -> Value {
    Value::String(fmt_q(c))
}

pub fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn evaluation(e: &Evaluation) -> Value {
    json!({ "re": e.value.re, "im": e.value.im, "error_bound": e.error_bound, "method": e.method })
}

fn slots(v: &[Mono]) -> Value {
    Value::Array(v.iter().map(|m| Value::String(m.to_string())).collect())
}

pub fn algebra_element(x: &AlgElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(m, c)| json!({ "coefficient": coefficient(c), "monomial": m.to_string() }))
            .collect(),
    )
}

pub fn bar_element(x: &Bar<(), Mono>) -> Value {
    Value::Array(
        x.iter()
            .map(|(w, c)| json!({ "coefficient": coefficient(c), "word": slots(&w.slots) }))
            .collect(),
    )
}

pub fn tensor(x: &Lin<(Vec<Mono>, Vec<Mono>)>) -> Value {
    Value::Array(
        x.iter()
            .map(|((l, r), c)| json!({ "coefficient": coefficient(c), "left": slots(l), "right": slots(r) }))
            .collect(),
    )
}

pub fn t_polynomial(p: &TPoly) -> Value {
    Value::Array(
        p.iter()
            .map(|(m, c)| {
                let f: Vec<Value> = m.factors().iter().map(|a| Value::String(a.to_string())).collect();
                json!({ "coefficient": coefficient(c), "factors": f })
            })
            .collect(),
    )
}

fn word_text(v: &[Mono]) -> String {
    let inner: Vec<String> = v.iter().map(|m| m.to_string()).collect();
    format!("[{}]", inner.join("|"))
}

pub fn bar_text(x: &Bar<(), Mono>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x.iter().map(|(w, c)| format!("{}*{}", fmt_q(c), word_text(&w.slots))).collect();
    parts.join("\n  + ")
}

pub fn tensor_text(x: &Lin<(Vec<Mono>, Vec<Mono>)>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .iter()
        .map(|((l, r), c)| format!("{}*{} ⊗ {}", fmt_q(c), word_text(l), word_text(r)))
        .collect();
    parts.join("\n  + ")
}

pub fn complex_text(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:.15}", z.re)
    } else {
        format!("{:.15} {} {:.15}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}
