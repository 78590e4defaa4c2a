//! Graphviz output for quivers.

use std::fmt::Write;

use twinheart_core::category::PresentedCategory;
use twinheart_core::preab::DecoratedQuiver;
use twinheart_core::Result;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `(from, to, attributes)`.
type Edge = (String, String, Vec<(&'static str, String)>);

struct Graph {
    name: &'static str,
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", self.name).unwrap();
        for node in &self.nodes {
            writeln!(out, "  {};", quote(node)).unwrap();
        }
        for (from, to, attrs) in &self.edges {
            let attrs: Vec<String> = attrs.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
            if attrs.is_empty() {
                writeln!(out, "  {} -> {};", quote(from), quote(to)).unwrap();
            } else {
                writeln!(out, "  {} -> {} [{}];", quote(from), quote(to), attrs.join(", ")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The AR quiver: one edge per irreducible map between indecomposables.
pub fn ar_quiver(cat: &PresentedCategory) -> Result<String> {
    let counts = cat.arrow_counts()?;
    let mut edges = Vec::new();
    for i in cat.all_indecs() {
        for j in cat.all_indecs() {
            for _ in 0..counts[i][j] {
                edges.push((cat.name(i).to_string(), cat.name(j).to_string(), Vec::new()));
            }
        }
    }
    let nodes = cat.names().to_vec();
    Ok(Graph {
        name: "ar_quiver",
        nodes,
        edges,
    }
    .render())
}

/// Heart nodes carry a `bar` suffix to mark the image in the quotient.
pub fn heart_node(name: &str) -> String {
    format!("{name}bar")
}

/// The decorated quiver of a heart, edges tagged `class` and `label`.
pub fn decorated_heart(cat: &PresentedCategory, quiver: &DecoratedQuiver) -> String {
    let nodes = cat.names().iter().map(|n| heart_node(n)).collect();
    let edges = quiver
        .arrows
        .iter()
        .flat_map(|a| {
            let class = a.class().label().to_string();
            let attrs = vec![("class", class.clone()), ("label", class)];
            let edge = (heart_node(cat.name(a.from)), heart_node(cat.name(a.to)), attrs);
            std::iter::repeat_n(edge, a.multiplicity)
        })
        .collect();
    Graph {
        name: "heart",
        nodes,
        edges,
    }
    .render()
}
