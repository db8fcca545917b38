//! The `verify-lemmas` sweep over finite fields.

use galois_core::finite_fields::{sweep, LemmaSweep};
use galois_core::{Execution, GaloisError};
use serde_json::{json, Value};

pub fn run(p_max: usize, q_max: usize, exec: Execution) -> Result<LemmaSweep, GaloisError> {
    sweep(p_max, q_max, exec)
}

pub fn sweep_json(s: &LemmaSweep) -> Value {
    let mut v = serde_json::to_value(s).expect("sweep serializes");
    v["pass"] = json!(s.passed());
    v
}

pub fn render_json(s: &LemmaSweep) -> String {
    serde_json::to_string_pretty(&sweep_json(s)).expect("sweep serializes")
}

pub fn render_text(s: &LemmaSweep) -> String {
    let mut out = String::new();
    out.push_str(&format!("finite fields checked: {}\n", s.fields.len()));
    for f in &s.fields {
        let c = &f.correspondence;
        out.push_str(&format!(
            "  F_{:<5} {} subgroups of Gal, union of proper subfields has {} of {} elements: {}\n",
            f.q,
            c.pairs.len(),
            f.union.union_size,
            f.union.field_size,
            if c.pass && f.union.proper { "pass" } else { "FAIL" }
        ));
        for w in &c.witnesses {
            out.push_str(&format!("    {w}\n"));
        }
    }
    out.push_str(&format!("plane covers checked: {}\n", s.covers.len()));
    for c in &s.covers {
        let found = c.min_cover.map_or("none".to_string(), |k| k.to_string());
        out.push_str(&format!(
            "  F_{}^2: minimum cover {found}, expected {}: {}\n",
            c.q,
            c.expected,
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    out.push_str(if s.passed() { "all lemmas hold\n" } else { "some lemma FAILED\n" });
    out
}
