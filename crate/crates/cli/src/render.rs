//! Text, DOT and JSON renderings of portraits and conjugacy verdicts.

use std::fmt::Write as _;

use madic_core::conjugacy::{SpanCertificate, Verdict, Witness};
use madic_core::zmod::ZmodMatrix;
use madic_core::{Portrait, Word};
use serde_json::{json, Value};

pub const SCHEMA: &str = "madic/1";

pub fn vertex_name(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

/// One line per vertex in level order: `vertex one-line-label`.
pub fn portrait_text(p: &Portrait) -> String {
    let mut out = String::new();
    for (w, label) in p.iter() {
        writeln!(out, "{} {}", vertex_name(&w), label.to_one_line_string()).unwrap();
    }
    out
}

/// Portrait as a DOT digraph: one node per vertex, labelled by its
/// permutation in cycle notation; edges carry the child letter.
pub fn portrait_dot(p: &Portrait) -> String {
    let mut out = String::from("digraph portrait {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (w, label) in p.iter() {
        let name = vertex_name(&w);
        writeln!(out, "  \"{name}\" [label=\"{}\"];", label.to_cycle_string()).unwrap();
        if let Some((&last, parent)) = w.0.split_last() {
            let parent = vertex_name(&Word(parent.to_vec()));
            writeln!(out, "  \"{parent}\" -> \"{name}\" [label=\"{last}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Portrait levels as arrays of one-line labels.
pub fn portrait_json(p: &Portrait) -> Value {
    let levels: Vec<Vec<String>> = (0..p.depth())
        .map(|n| p.level(n).iter().map(|l| l.to_one_line_string()).collect())
        .collect();
    json!(levels)
}

pub fn matrix_json(m: &ZmodMatrix) -> Value {
    json!(m.row_vecs())
}

pub fn witness_json(w: &Witness) -> Value {
    json!({
        "u": w.unit.value(),
        "iota": matrix_json(&w.iota),
        "generator_map": matrix_json(&w.generator_map),
        "verified_depth": w.verified_depth,
    })
}

fn certificate_json(c: &SpanCertificate) -> Value {
    json!({
        "u": c.unit.value(),
        "vector": c.vector,
        "in": if c.in_first { "A" } else { "B" },
    })
}

/// Verdict as a JSON object with an `outcome` key; the remaining keys
/// depend on the outcome.
pub fn verdict_json(v: &Verdict) -> Value {
    let mut obj = json!({ "schema": SCHEMA, "outcome": v.name() });
    let map = obj.as_object_mut().expect("object literal");
    match v {
        Verdict::Conjugate(w) => {
            if let Value::Object(fields) = witness_json(w) {
                map.extend(fields);
            }
        }
        Verdict::NotConjugate(certs) => {
            map.insert("certificates".into(), certs.iter().map(certificate_json).collect());
        }
        Verdict::Refuted { index, detail } => {
            map.insert("index".into(), json!(index));
            map.insert("detail".into(), json!(detail));
        }
        Verdict::Consistent(records) => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| json!({ "index": r.index, "solutions": r.solutions, "detail": r.detail }))
                .collect();
            map.insert("solutions".into(), json!(rows));
        }
        Verdict::Inconclusive(reason) => {
            map.insert("reason".into(), json!(reason));
        }
    }
    obj
}

/// Process exit status for a verdict.
pub fn verdict_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::Conjugate(_) | Verdict::Consistent(_) => 0,
        Verdict::NotConjugate(_) | Verdict::Refuted { .. } => 1,
        Verdict::Inconclusive(_) => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use madic_core::{Element, Perm};

    #[test]
    fn text_portrait_lists_vertices_in_level_order() {
        let a = Element::rooted(Perm::parse("(0 1)", 2).unwrap());
        let text = portrait_text(&a.portrait(2).unwrap());
        assert_eq!(text, "ε [1,0]\n0 [0,1]\n1 [0,1]\n");
    }

    #[test]
    fn dot_portrait_has_edges_to_children() {
        let k = Element::kappa(Perm::parse("(0 1 2)", 3).unwrap());
        let dot = portrait_dot(&k.portrait(2).unwrap());
        assert!(dot.starts_with("digraph portrait {"));
        assert!(dot.contains("\"ε\" -> \"2\" [label=\"2\"];"));
        assert_eq!(dot.matches("->").count(), 3);
    }
}
