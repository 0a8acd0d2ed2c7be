//! Deterministic DOT and JSON renderings of a computed graph. Both walk
//! the ordered vertex and edge maps, so byte-identical inputs give
//! byte-identical output.

use std::fmt::Write;

use serde_json::json;

use super::{EdgeState, PrimeGraph};

pub(super) fn to_dot(graph: &PrimeGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", graph.spec().atlas_name()).unwrap();
    for (r, degree) in graph.vertices() {
        let label = match degree {
            Some(i) => format!("{r} (e={i})"),
            None => format!("{r} (char)"),
        };
        writeln!(out, "  \"{r}\" [label=\"{label}\"];").unwrap();
    }
    for pv in graph.pseudo_vertices() {
        writeln!(
            out,
            "  \"{}\" [label=\"{} (composite, e={})\", shape=box];",
            pv.value, pv.value, pv.degree
        )
        .unwrap();
    }
    for ((r, s), edge) in graph.edges() {
        match edge.state {
            EdgeState::Adjacent => writeln!(out, "  \"{r}\" -- \"{s}\";").unwrap(),
            EdgeState::Unknown => {
                writeln!(out, "  \"{r}\" -- \"{s}\" [style=dashed];").unwrap()
            }
            EdgeState::NonAdjacent => {}
        }
    }
    out.push_str("}\n");
    out
}

pub(super) fn to_json(graph: &PrimeGraph) -> serde_json::Value {
    let vertices: Vec<_> = graph
        .vertices()
        .iter()
        .map(|(r, degree)| {
            json!({
                "prime": r.to_string(),
                "degree": degree,
                "is_char": degree.is_none(),
            })
        })
        .collect();
    let pseudo: Vec<_> = graph
        .pseudo_vertices()
        .iter()
        .map(|pv| json!({ "value": pv.value.to_string(), "degree": pv.degree }))
        .collect();
    let edges: Vec<_> = graph
        .edges()
        .iter()
        .map(|((r, s), edge)| {
            json!({
                "a": r.to_string(),
                "b": s.to_string(),
                "state": edge.state,
                "provenance": edge.provenance,
            })
        })
        .collect();
    json!({
        "group": graph.spec().to_string(),
        "vertices": vertices,
        "pseudo_vertices": pseudo,
        "edges": edges,
        "warnings": graph.warnings(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::build_graph;

    #[test]
    fn dot_and_json_are_well_formed() {
        let graph = build_graph(&"S:5:5".parse().unwrap()).unwrap();
        let dot = graph.to_dot();
        assert!(dot.starts_with("graph \"S10(5)\" {"));
        assert!(dot.contains("\"5\" [label=\"5 (char)\"];"));
        assert!(dot.contains("(e=10)"));
        assert!(dot.ends_with("}\n"));

        let value = graph.to_json();
        assert_eq!(value["group"], "S:5:5");
        let edges = value["edges"].as_array().unwrap();
        let n = value["vertices"].as_array().unwrap().len();
        assert_eq!(edges.len(), n * (n - 1) / 2);
        for e in edges {
            assert!(e["state"].is_string());
            assert!(e["provenance"].is_string());
        }
    }
}
