//! Browser bindings for the copocert demo page.
//!
//! Every exported function takes the matrix as text, in the CLI file format or
//! as bare rows, and returns a JSON string. Errors are returned as JSON too, with
//! an `error` field, so the page never has to catch exceptions.

use copocert::io::{format_matrix, parse_matrix, parse_rational};
use copocert::{
    build_graph, component_analysis, condition_ii_scaling_test, dimension_via_graph,
    extract_pattern, extremality_certificate, is_copositive, minimal_zeros, reconstruct_pattern,
    scale, DiagonalScaling, Error, Precondition, Rational, SymMatrix,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Accepts the CLI file format, or bare rows with the order header omitted.
fn parse_input(text: &str) -> Result<SymMatrix, Error> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let has_header = rows.len() > 1 && rows[0].split_whitespace().count() == 1;
    if has_header {
        parse_matrix(text)
    } else {
        parse_matrix(&format!("{}\n{}", rows.len(), rows.join("\n")))
    }
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.to_string(), "code": e.code() })
}

fn finish(r: Result<Value, Error>) -> String {
    r.unwrap_or_else(|e| error_json(&e)).to_string()
}

/// Copositivity verdict, minimal zeros and extremality certificate.
pub fn analyze_json(text: &str) -> String {
    finish((|| {
        let a = parse_input(text)?;
        let v = is_copositive(&a);
        let mut out = json!({
            "order": a.order(),
            "copositive": v.copositive,
            "simplex_minimum": v.simplex_minimum.to_string(),
            "minimizer": strings(&v.minimizer),
            "violator": v.violator.as_deref().map(strings),
            "zeros": Value::Null,
            "extremal": Value::Null,
        });
        if v.copositive {
            let z = minimal_zeros(&a, Precondition::Certified)?;
            out["zeros"] = z
                .zeros()
                .iter()
                .map(|zero| {
                    json!({
                        "support": zero.support().to_string(),
                        "coordinates": strings(zero.coordinates()),
                    })
                })
                .collect();
            let cert = extremality_certificate(&a, Precondition::Certified)?;
            out["extremal"] = json!({
                "extremal": cert.extremal,
                "nullity": cert.nullity,
                "rank": cert.rank,
                "equations": cert.system.rows.len(),
                "unknowns": cert.system.unknowns(),
            });
        }
        Ok(out)
    })())
}

/// Entry graph with vertices, edges and bipartite components.
pub fn graph_json(text: &str) -> String {
    finish((|| {
        let a = parse_input(text)?;
        let z = minimal_zeros(&a, Precondition::Check)?;
        let g = build_graph(&a, &z)?;
        let report = component_analysis(&g);
        let nodes: Vec<Value> = g
            .vertices()
            .iter()
            .map(|v| {
                json!({
                    "label": v.short_label(),
                    "i": v.i + 1,
                    "j": v.j + 1,
                    "diagonal": v.is_diagonal(),
                    "component": report.component_of(*v),
                })
            })
            .collect();
        let edges: Vec<Value> = g
            .edges()
            .iter()
            .map(|(x, y)| json!([g.vertex_id(*x), g.vertex_id(*y)]))
            .collect();
        let components: Vec<Value> = report
            .components
            .iter()
            .map(|c| {
                json!({
                    "bipartite": c.bipartite,
                    "vertices": c.vertices.iter().map(|v| v.short_label()).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok(json!({
            "order": a.order(),
            "nodes": nodes,
            "edges": edges,
            "components": components,
            "bipartite_count": report.bipartite_count,
            "dimension": dimension_via_graph(&report),
            "pattern": reconstruct_pattern(&report).ok().map(|p| format_matrix(&p)),
        }))
    })())
}

/// Rescale `pattern` by diag(d) and recover the pattern and scaling again.
/// `diagonal` is a whitespace or comma separated list of positive rationals.
pub fn rescale_json(pattern: &str, diagonal: &str) -> String {
    finish((|| {
        let s = parse_input(pattern)?;
        let d = diagonal
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_rational(t).ok_or_else(|| Error::Parse(format!("bad scaling entry `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let d = DiagonalScaling::new(d)?;
        let a = scale(&s, &d)?;
        let dec = extract_pattern(&a)?;
        Ok(json!({
            "scaled": format_matrix(&a),
            "scaling_condition": condition_ii_scaling_test(&a),
            "pattern": format_matrix(&dec.pattern),
            "scaling": dec.scaling.as_ref().map(|x| strings(x.entries())),
            "round_trip": dec.pattern == s,
        }))
    })())
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> String {
    analyze_json(text)
}

#[wasm_bindgen]
pub fn structure_graph(text: &str) -> String {
    graph_json(text)
}

#[wasm_bindgen]
pub fn rescale(pattern: &str, diagonal: &str) -> String {
    rescale_json(pattern, diagonal)
}
