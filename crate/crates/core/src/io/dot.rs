//! Graphviz output.

use std::fmt::Write;

use crate::graph::{Graph, VertexSubset};
use crate::modular::{ModularPartition, QuotientGraph};
use crate::products::ProductGraph;

const PALETTE: [&str; 8] = [
    "palegreen", "pink", "tomato", "orange", "burlywood", "lightblue", "khaki", "plum",
];

/// Rendering choices for [`emit_dot`].
#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    pub name: Option<String>,
    /// Node labels; vertex ids are used when absent.
    pub labels: Option<Vec<String>>,
    /// Parts drawn as filled clusters, one colour each.
    pub clusters: Vec<VertexSubset>,
}

pub fn emit_dot(g: &Graph, opts: &DotOptions) -> String {
    let mut out = String::new();
    let name = opts.name.as_deref().unwrap_or("G");
    writeln!(out, "graph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let label = |v: usize| -> String {
        match &opts.labels {
            Some(l) => l[v].clone(),
            None => g.label(v).map_or_else(|| v.to_string(), str::to_owned),
        }
    };
    let mut clustered = vec![false; g.vertex_count()];
    for (i, part) in opts.clusters.iter().enumerate() {
        let fill = PALETTE[i % PALETTE.len()];
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    style=filled; color={fill};").unwrap();
        for v in part.iter() {
            clustered[v] = true;
            writeln!(out, "    {v} [label=\"{}\"];", escape(&label(v))).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for v in g.vertices().filter(|&v| !clustered[v]) {
        writeln!(out, "  {v} [label=\"{}\"];", escape(&label(v))).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The host graph with every part of the partition as a cluster.
pub fn partition_dot(p: &ModularPartition) -> String {
    let opts = DotOptions { clusters: p.parts().to_vec(), ..DotOptions::default() };
    emit_dot(p.host(), &opts)
}

/// The quotient graph, each vertex labelled with the members of its part.
pub fn quotient_dot(q: &QuotientGraph) -> String {
    let labels = q
        .parts
        .iter()
        .map(|part| {
            let ids: Vec<String> = part.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect();
    emit_dot(&q.graph, &DotOptions { name: Some("quotient".into()), labels: Some(labels), ..DotOptions::default() })
}

/// Product vertices labelled `(u,x)`, one cluster per outer vertex.
pub fn product_dot(p: &ProductGraph) -> String {
    let n = p.graph().vertex_count();
    let labels = p.pairs().iter().map(|(u, x)| format!("({u},{x})")).collect();
    let clusters = (0..p.outer_order())
        .map(|u| VertexSubset::with_universe(n, p.block(u).expect("outer vertex")).expect("block in range"))
        .collect();
    emit_dot(p.graph(), &DotOptions { name: Some("product".into()), labels: Some(labels), clusters })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
