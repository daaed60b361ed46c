//! JSON and text rendering of core types.
//!
//! Arbitrary-precision values are rendered as decimal strings so the JSON
//! schema does not depend on magnitude; identical inputs always produce
//! byte-identical payloads.

use num_bigint::BigInt;
use serde_json::{json, Value};

use solcalc_core::dimension::{LimitElement, PerronData, SimplicityReport};
use solcalc_core::graph::Graph;
use solcalc_core::matrix::IntegerMatrix;
use solcalc_core::poly::RootInterval;
use solcalc_core::presentation::ValidationReport;
use solcalc_core::report::{ComparisonReport, GroupInvariants, InvariantsReport};

pub fn matrix_json(m: &IntegerMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(m.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_text(m: &IntegerMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn interval_json(iv: &RootInterval) -> Value {
    json!({ "lo": iv.lo.to_string(), "hi": iv.hi.to_string() })
}

pub fn element_json(e: &LimitElement) -> Value {
    json!({ "level": e.level, "vector": vector_json(&e.vector) })
}

pub fn element_text(e: &LimitElement) -> String {
    let coords: Vec<String> = e.vector.iter().map(|x| x.to_string()).collect();
    format!("{}:{}", e.level, coords.join(","))
}

pub fn group_json(g: &GroupInvariants) -> Value {
    json!({
        "matrix": matrix_json(&g.matrix),
        "determinant": g.determinant.to_string(),
        "charpoly": g.charpoly.to_string(),
        "eventual_rank": g.eventual_rank,
        "nonzero_charpoly": g.nonzero_charpoly.to_string(),
        "unimodular": g.unimodular,
        "description": g.description,
        "perron_root": g.perron_root.as_ref().map(interval_json),
    })
}

pub fn perron_json(p: &PerronData) -> Value {
    json!({
        "charpoly": p.charpoly.to_string(),
        "interval": interval_json(&p.interval),
        "eigenvector": p.eigenvector.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    })
}

pub fn simplicity_json(s: &SimplicityReport) -> Value {
    json!({ "verdict": s.verdict.name(), "detail": s.detail })
}

pub fn validation_json(r: &ValidationReport) -> Value {
    Value::Array(
        r.findings
            .iter()
            .map(|f| {
                json!({
                    "check": f.check.name(),
                    "level": f.level,
                    "passed": f.passed,
                    "items": f.items,
                })
            })
            .collect(),
    )
}

pub fn invariants_json(r: &InvariantsReport) -> Value {
    json!({
        "matrix_level": group_json(&r.matrix_level),
        "signed_transfer": matrix_json(&r.signed_transfer),
        "cohomology_rank": r.cohomology_rank,
        "bruschlinsky_level": group_json(&r.bruschlinsky_level),
        "primitivity_exponent": r.primitivity,
        "simplicity": simplicity_json(&r.simplicity),
        "perron": r.perron.as_ref().map(perron_json),
        "order_unit": vector_json(&r.order_unit),
    })
}

pub fn comparison_json(c: &ComparisonReport) -> Value {
    json!({
        "left": invariants_json(&c.left),
        "right": invariants_json(&c.right),
        "matrix_group_match": c.matrix_group_match,
        "bruschlinsky_match": c.bruschlinsky_match,
        "perron_roots_equal": c.perron_roots_equal,
        "note": c.note,
    })
}

pub fn group_text(out: &mut String, label: &str, g: &GroupInvariants) {
    out.push_str(&format!("{label}:\n"));
    out.push_str(&format!("  matrix: {}\n", matrix_text(&g.matrix)));
    out.push_str(&format!("  determinant: {}\n", g.determinant));
    out.push_str(&format!("  charpoly: {}\n", g.charpoly));
    out.push_str(&format!("  eventual rank: {}\n", g.eventual_rank));
    out.push_str(&format!(
        "  nonzero charpoly factor: {}\n",
        g.nonzero_charpoly
    ));
    out.push_str(&format!("  group: {}\n", g.description));
    if let Some(iv) = &g.perron_root {
        out.push_str(&format!("  largest root in {iv}\n"));
    }
}

pub fn invariants_text(r: &InvariantsReport, g: &Graph) -> String {
    let mut out = String::new();
    group_text(&mut out, "matrix-level dimension group", &r.matrix_level);
    out.push_str(&format!(
        "signed transfer matrix: {}\n",
        matrix_text(&r.signed_transfer)
    ));
    out.push_str(&format!(
        "cohomology rank: {} (edges {} - vertices {} + components)\n",
        r.cohomology_rank,
        g.edge_count(),
        g.vertex_count()
    ));
    group_text(&mut out, "bruschlinsky-level group", &r.bruschlinsky_level);
    match r.primitivity {
        Some(e) => out.push_str(&format!("primitive: yes (exponent {e})\n")),
        None => out.push_str("primitive: no\n"),
    }
    out.push_str(&format!(
        "simplicity: {} ({})\n",
        r.simplicity.verdict.name(),
        r.simplicity.detail
    ));
    if let Some(p) = &r.perron {
        out.push_str(&format!("perron root interval: {}\n", p.interval));
        let ev: Vec<String> = p.eigenvector.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!("left eigenvector: ({})\n", ev.join(", ")));
    }
    let unit: Vec<String> = r.order_unit.iter().map(|x| x.to_string()).collect();
    out.push_str(&format!("order unit coordinates: ({})\n", unit.join(", ")));
    out
}
