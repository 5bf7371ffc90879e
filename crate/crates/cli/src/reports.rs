//! JSON renderings of core results. Objects use sorted keys, so equal
//! results print identically.

use edgereg_core::betti::{BettiTable, Engine, Regularity};
use edgereg_core::colon::{AssociatedGraph, ColonDecomposition};
use edgereg_core::invariants::CoverVerdict;
use edgereg_core::lab::{BoundReport, ClassBoundRecord, LinearResolutionRecord, PreciseRecord, TheoremRecord, Verdict};
use edgereg_core::monomial::{Monomial, MonomialIdeal};
use edgereg_core::SubgraphRelation;
use serde_json::{json, Value};

use crate::formats::{GraphDoc, IdealDoc};

pub fn graph(g: &edgereg_core::Graph) -> Value {
    serde_json::to_value(GraphDoc::from_graph(g)).expect("graph documents serialize")
}

pub fn ideal(i: &MonomialIdeal) -> Value {
    serde_json::to_value(IdealDoc::from_ideal(i)).expect("ideal documents serialize")
}

pub fn monomials(ms: &[Monomial], vars: &[String]) -> Value {
    ms.iter().map(|m| Value::from(m.display(vars).to_string())).collect()
}

pub fn relation(r: SubgraphRelation) -> &'static str {
    match r {
        SubgraphRelation::NotSubgraph => "not_subgraph",
        SubgraphRelation::Subgraph => "subgraph",
        SubgraphRelation::InducedSubgraph => "induced_subgraph",
    }
}

pub fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Auto => "auto",
        Engine::Hochster => "hochster",
        Engine::Lcm => "lcm",
        Engine::Both => "both",
    }
}

pub fn cover_verdict(v: &CoverVerdict) -> Value {
    match v {
        CoverVerdict::Valid => json!({"valid": true}),
        CoverVerdict::MissingEdge(a, b) => json!({"valid": false, "missing_edge": [a, b]}),
        CoverVerdict::PrefixViolation {
            class,
            prefix,
            earlier,
            later,
        } => json!({
            "valid": false,
            "class": class,
            "prefix_length": prefix,
            "gap": [[earlier.0, earlier.1], [later.0, later.1]],
        }),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!({"verdict": "pass"}),
        Verdict::Fail(why) => json!({"verdict": "fail", "detail": why}),
        Verdict::Inapplicable => json!({"verdict": "inapplicable"}),
        Verdict::Skipped(why) => json!({"verdict": "skipped", "detail": why}),
    }
}

pub fn betti_entries(t: &BettiTable) -> Value {
    t.entries().map(|(i, j, r)| json!([i, j, r])).collect()
}

pub fn regularity(r: &Regularity, characteristic: u32) -> Value {
    json!({
        "characteristic": characteristic,
        "engines": r.engines.iter().map(|&e| engine_name(e)).collect::<Vec<_>>(),
        "betti": betti_entries(&r.table),
        "regularity": r.value,
    })
}

fn theorem(r: &TheoremRecord) -> Value {
    json!({
        "name": r.name,
        "subject": r.subject,
        "value": r.value,
        "lower": r.lower,
        "upper": r.upper,
        "applicable": r.applicable,
        "incomplete": r.incomplete,
        "holds": r.holds(),
    })
}

pub fn bound_report(r: &BoundReport) -> Value {
    let inv = &r.invariants;
    json!({
        "H": graph(&r.h),
        "G": graph(&r.g),
        "relation": relation(r.relation),
        "invariants": {
            "nu_H": inv.nu_h,
            "nu_G": inv.nu_g,
            "nu_GH": inv.nu_gh,
            "mat_G": inv.mat_g,
            "MM_G": inv.mm_g,
            "cochord_H": inv.cochord_h,
            "cochord_G": inv.cochord_g,
        },
        "reg_I": r.reg_i,
        "reg_J": r.reg_j,
        "reg_IJ": r.reg_ij,
        "notes": r.notes,
        "records": r.records.iter().map(theorem).collect::<Vec<_>>(),
        "all_hold": r.all_hold(),
    })
}

pub fn precise(r: &PreciseRecord) -> Value {
    json!({
        "induced": r.induced,
        "nu_H": r.nu_h,
        "nu_G": r.nu_g,
        "classes": r.classes.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "applicable": r.applicable(),
        "expected": r.applicable().then(|| r.expected()),
        "reg_IJ": r.reg_ij,
        "holds": r.holds(),
    })
}

pub fn linear_resolution(r: &LinearResolutionRecord) -> Value {
    json!({
        "G_cochordal": r.g_cochordal,
        "reg_I": r.reg_i,
        "reg_IJ": r.reg_ij,
        "expected": r.expected(),
        "holds": r.holds(),
    })
}

pub fn class_bounds(r: &ClassBoundRecord) -> Value {
    let clauses: Vec<Value> = r
        .clauses
        .iter()
        .zip(r.verdicts())
        .map(|(c, v)| {
            json!({
                "clause": c.clause,
                "applicable": c.applicable,
                "bound": c.bound,
                "detail": c.detail,
                "holds": v,
            })
        })
        .collect();
    json!({"clauses": clauses, "reg_IJ": r.reg_ij})
}

pub fn colon(d: &ColonDecomposition, direct: &MonomialIdeal, p: &AssociatedGraph) -> Value {
    let vars = d.ideal.vars();
    json!({
        "edge": [d.edge.0, d.edge.1],
        "J": ideal(&d.base),
        "K1": monomials(&d.k1, vars),
        "K2": monomials(&d.k2, vars),
        "extra_generators": monomials(&d.extra_generators(), vars),
        "colon": ideal(&d.ideal),
        "matches_direct_colon": d.ideal == *direct,
        "quadratic": d.ideal.gens().iter().all(|m| m.degree() == 2),
        "associated_graph": graph(&p.graph),
        "fresh_vertices": p.fresh_vertex_map.iter().map(|(x, z)| json!([x, z])).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
