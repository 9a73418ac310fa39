//! JSON form of a cycle.

use serde::Serialize;

use crate::cycle::{int, Cycle};

#[derive(Serialize)]
struct Parameters {
    external: Vec<String>,
    internal: Vec<String>,
}

#[derive(Serialize)]
struct TermDump {
    coefficient: String,
    coordinates: Vec<String>,
    parameters: Parameters,
}

/// Terms in canonical order.
pub fn dump(z: &Cycle) -> serde_json::Value {
    let terms: Vec<TermDump> = z
        .terms()
        .map(|(t, c)| TermDump {
            coefficient: exact_kernel::fmt_q(c),
            coordinates: t.coords().iter().map(|f| f.to_string()).collect(),
            parameters: Parameters {
                external: t.externals().iter().map(|v| v.to_string()).collect(),
                internal: (1..=t.internal()).map(|j| int(j).to_string()).collect(),
            },
        })
        .collect();
    serde_json::to_value(terms).expect("serializable")
}

pub fn dump_string(z: &Cycle) -> String {
    serde_json::to_string_pretty(&dump(z)).expect("serializable")
}
