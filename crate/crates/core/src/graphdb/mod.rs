//! Edge-labelled directed graphs, trails and product-graph search.

mod product;

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use fixedbitset::FixedBitSet;

use crate::automata::{word_to_string, Alphabet, Symbol, Word};
use crate::error::{Error, Result};

pub use product::{
    product_distances, product_distances_to, product_shortest_walk, ProductSearchSpec, Walk, UNREACHABLE,
};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: NodeId,
    pub label: Symbol,
    pub target: NodeId,
}

/// Directed graph whose edges form a set of `(source, label, target)` triples.
/// Node and edge ids are dense and follow insertion order.
#[derive(Clone, Debug, Default)]
pub struct LabeledGraph {
    names: Vec<String>,
    ids: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    present: HashSet<Edge>,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of `name`, creating the node if needed.
    pub fn add_node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        self.names.push(name.to_string());
        self.out.push(Vec::new());
        self.ids.insert(name.to_string(), self.names.len() - 1);
        self.names.len() - 1
    }

    /// Inserts an edge; returns its id and whether it was new.
    pub fn add_edge(&mut self, source: NodeId, label: Symbol, target: NodeId) -> (EdgeId, bool) {
        let edge = Edge { source, label, target };
        if self.present.contains(&edge) {
            let id = self.out[source].iter().copied().find(|&e| self.edges[e] == edge).expect("indexed edge");
            return (id, false);
        }
        self.present.insert(edge);
        self.edges.push(edge);
        let id = self.edges.len() - 1;
        self.out[source].push(id);
        (id, true)
    }

    /// Inserts an edge between named nodes, creating them as needed.
    pub fn add_named_edge(&mut self, source: &str, label: Symbol, target: &str) -> EdgeId {
        let s = self.add_node(source);
        let t = self.add_node(target);
        self.add_edge(s, label, t).0
    }

    pub fn node(&self, name: &str) -> Result<NodeId> {
        self.ids.get(name).copied().ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edges of `v` in increasing id order.
    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn labels(&self) -> Alphabet {
        Alphabet::new(self.edges.iter().map(|e| e.label))
    }

    /// Bit set over edge ids with every edge present.
    pub fn all_edges(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.edge_count());
        set.insert_range(..);
        set
    }

    pub fn empty_edge_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.edge_count())
    }

    pub fn word_of(&self, edges: &[EdgeId]) -> Word {
        edges.iter().map(|&e| self.edges[e].label).collect()
    }

    /// The graph in the text format read by [`load_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", self.names[e.source], e.label, self.names[e.target]);
        }
        out
    }
}

/// Parses one edge per line, `source label target`. Blank lines and lines
/// starting with `#` are skipped. Duplicate edges are dropped with a warning.
pub fn load_graph(text: &str) -> Result<(LabeledGraph, Vec<String>)> {
    let mut g = LabeledGraph::new();
    let mut warnings = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [source, label, target] = fields[..] else {
            return Err(Error::Format {
                line: line_no,
                message: format!("expected 3 fields `source label target`, found {}", fields.len()),
            });
        };
        let label = parse_label(label).map_err(|message| Error::Format { line: line_no, message })?;
        let (s, t) = (g.add_node(source), g.add_node(target));
        if !g.add_edge(s, label, t).1 {
            warnings.push(format!("line {line_no}: duplicate edge `{source} {label} {target}` ignored"));
        }
    }
    Ok((g, warnings))
}

fn parse_label(text: &str) -> std::result::Result<Symbol, String> {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Symbol::new(c).map_err(|e| e.to_string()),
        _ => Err(format!("multi-character label {text:?}; labels are single symbols")),
    }
}

/// A sequence of pairwise distinct, consecutive edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trail {
    edges: Vec<EdgeId>,
    start: NodeId,
    end: NodeId,
    word: Word,
}

impl Trail {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn start(&self) -> NodeId {
        self.start
    }

    pub fn end(&self) -> NodeId {
        self.end
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Header line followed by one `source label target` line per edge.
    pub fn render(&self, g: &LabeledGraph) -> String {
        let mut out = format!("length={} word={}\n", self.len(), word_to_string(&self.word));
        for &e in &self.edges {
            let edge = g.edge(e);
            let _ = writeln!(out, "{} {} {}", g.name(edge.source), edge.label, g.name(edge.target));
        }
        out
    }
}

/// Validates that `edges` is a trail starting at `anchor`.
pub fn trail_check(g: &LabeledGraph, anchor: NodeId, edges: &[EdgeId]) -> Result<Trail> {
    if anchor >= g.node_count() {
        return Err(Error::UnknownNode(format!("#{anchor}")));
    }
    let mut seen = HashSet::new();
    let mut at = anchor;
    for (index, &e) in edges.iter().enumerate() {
        if e >= g.edge_count() {
            return Err(Error::UnknownEdge(e));
        }
        let edge = g.edge(e);
        if edge.source != at {
            return Err(if index == 0 { Error::WrongAnchor { expected: anchor } } else { Error::NotAdjacent { index } });
        }
        if !seen.insert(e) {
            return Err(Error::RepeatedEdge { index });
        }
        at = edge.target;
    }
    Ok(Trail { edges: edges.to_vec(), start: anchor, end: at, word: g.word_of(edges) })
}
