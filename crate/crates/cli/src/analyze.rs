//! The `analyze` pipeline: squarefree reduction, splitting field,
//! automorphisms, lattice and verification.

use std::time::Instant;

use galois_core::arith::{PolyRing, QPoly, Rationals};
use galois_core::correspondence::{verify_fundamental_theorem, CorrespondenceReport, VerifyOptions};
use galois_core::groups::DEFAULT_GROUP_CAP;
use galois_core::number_field::splitting::{DEFAULT_FIELD_DEGREE_CAP, DEFAULT_POLY_DEGREE_CAP};
use galois_core::number_field::{splitting_field_with, PrecisionPolicy, SplittingOptions};
use galois_core::{Execution, GaloisError};
use serde_json::{json, Value};

use crate::exit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeConfig {
    pub max_input_degree: usize,
    pub max_field_degree: usize,
    pub precision: PrecisionPolicy,
    pub execution: Execution,
    /// Adds measured wall-clock time to the report, which makes it
    /// nondeterministic.
    pub wall_clock: bool,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        Self {
            max_input_degree: DEFAULT_POLY_DEGREE_CAP,
            max_field_degree: DEFAULT_FIELD_DEGREE_CAP,
            precision: PrecisionPolicy::default(),
            execution: Execution::default(),
            wall_clock: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analyzed {
    pub input: QPoly,
    pub squarefree: QPoly,
    pub report: CorrespondenceReport,
    pub wall_ms: Option<u128>,
}

impl Analyzed {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed() {
            exit::PASS
        } else {
            exit::VERIFICATION_FAILED
        }
    }
}

/// Runs the full pipeline on `f`.
pub fn analyze(f: &QPoly, cfg: &AnalyzeConfig) -> Result<Analyzed, GaloisError> {
    let start = Instant::now();
    if f.degree().is_none_or(|d| d == 0) {
        return Err(GaloisError::InvalidInput("polynomial must have positive degree".into()));
    }
    let ring = PolyRing::new(&Rationals);
    let squarefree = ring.monic(&ring.squarefree_part(f)?);
    let opts = SplittingOptions {
        max_poly_degree: cfg.max_input_degree,
        max_field_degree: cfg.max_field_degree,
        policy: cfg.precision,
    };
    let split = splitting_field_with(&squarefree, opts)?;
    let analysis = verify_fundamental_theorem(
        &split.field,
        VerifyOptions {
            execution: cfg.execution,
            group_cap: DEFAULT_GROUP_CAP,
        },
    )?;
    Ok(Analyzed {
        input: f.clone(),
        squarefree,
        report: analysis.report,
        wall_ms: cfg.wall_clock.then(|| start.elapsed().as_millis()),
    })
}

/// Exit code for a pipeline error.
pub fn error_exit_code(e: &GaloisError) -> i32 {
    match e {
        GaloisError::Undecided { .. } => exit::UNDECIDED,
        GaloisError::InvalidInput(_)
        | GaloisError::Capacity { .. }
        | GaloisError::NotSquarefree { .. }
        | GaloisError::Reducible { .. }
        | GaloisError::DivisionByZero
        | GaloisError::ZeroGcd => exit::USAGE,
        GaloisError::NotNormal | GaloisError::OwnerMismatch | GaloisError::InvariantViolation(_) => {
            exit::VERIFICATION_FAILED
        }
    }
}

/// The JSON report with keys in canonical (sorted) order.
pub fn report_json(a: &Analyzed) -> Value {
    let r = &a.report;
    let mut field = serde_json::to_value(&r.field).expect("report serializes");
    field["input_polynomial"] = json!(a.input.to_string());
    field["squarefree_part"] = json!(a.squarefree.to_string());
    let mut timing = serde_json::to_value(&r.work).expect("report serializes");
    if let Some(ms) = a.wall_ms {
        timing["wall_ms"] = json!(ms as u64);
    }
    json!({
        "field": field,
        "group": r.group,
        "lattice": r.lattice,
        "verdicts": r.verdicts,
        "timing": timing,
    })
}

pub fn render_json(a: &Analyzed) -> String {
    serde_json::to_string_pretty(&report_json(a)).expect("report serializes")
}

/// Hasse diagram of the subgroup lattice; each node also names its fixed
/// field.
pub fn render_dot(a: &Analyzed) -> String {
    let lattice = &a.report.lattice;
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for e in &lattice.entries {
        out.push_str(&format!(
            "  h{} [label=\"|H| = {}\\nfixed field: {}\\n[E:Q] = {}\"];\n",
            e.index,
            e.order,
            e.min_poly.replace('"', "\\\""),
            e.field_degree
        ));
    }
    for (lo, hi) in &lattice.hasse_edges {
        out.push_str(&format!("  h{lo} -> h{hi};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn render_text(a: &Analyzed) -> String {
    let r = &a.report;
    let mut out = String::new();
    out.push_str(&format!("input: {}\n", a.input));
    if a.squarefree != a.input {
        out.push_str(&format!("squarefree part: {}\n", a.squarefree));
    }
    out.push_str(&format!(
        "splitting field: degree {}, defined by {}\n",
        r.field.degree, r.field.defining_polynomial
    ));
    let shape = match (r.group.cyclic, r.group.abelian) {
        (true, _) => "cyclic",
        (false, true) => "abelian",
        _ => "nonabelian",
    };
    out.push_str(&format!("automorphism group: order {} ({shape})\n", r.group.order));
    out.push_str(&format!("lattice: {} subgroups\n", r.lattice.entries.len()));
    for e in &r.lattice.entries {
        out.push_str(&format!(
            "  H{:<3} |H| = {:<3} {} [E:Q] = {:<3} {} min poly {}\n",
            e.index,
            e.order,
            if e.normal_subgroup { "normal " } else { "       " },
            e.field_degree,
            if e.field_normal { "normal " } else { "       " },
            e.min_poly
        ));
    }
    out.push_str("verdicts:\n");
    for v in &r.verdicts {
        out.push_str(&format!(
            "  {:<17} {} ({} checks)\n",
            v.part,
            if v.pass { "pass" } else { "FAIL" },
            v.checked
        ));
        for w in &v.witnesses {
            out.push_str(&format!("    {w}\n"));
        }
    }
    out.push_str(&format!(
        "work: {} subgroups, {} ordered pairs, {} proof polynomials, {} precision bits\n",
        r.work.subgroups, r.work.ordered_pairs, r.work.proof_polynomials, r.work.precision_bits
    ));
    if let Some(ms) = a.wall_ms {
        out.push_str(&format!("wall clock: {ms} ms\n"));
    }
    out
}
