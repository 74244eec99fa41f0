use std::collections::HashMap;
use std::fmt::Write;

use super::{validate_witness, HardnessWitness};
use crate::automata::{MinimalDfa, Symbol};
use crate::error::{Error, Result};
use crate::graphdb::{LabeledGraph, NodeId};

/// Node names starting with this prefix are reserved for gadget nodes.
pub const RESERVED_PREFIX: &str = "__";

/// Directed graph with two terminal pairs; asks for edge-disjoint paths
/// `s1 → t1` and `s2 → t2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdpInstance {
    pub nodes: Vec<String>,
    /// Distinct `(source, target)` pairs of node indices.
    pub edges: Vec<(usize, usize)>,
    pub pairs: [(usize, usize); 2],
}

impl EdpInstance {
    /// Builds an instance from node names; repeated edges are merged.
    pub fn new(nodes: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>, pairs: [(usize, usize); 2]) -> Self {
        let mut seen = std::collections::HashSet::new();
        let edges = edges.into_iter().filter(|e| seen.insert(*e)).collect();
        EdpInstance { nodes, edges, pairs }
    }

    /// Text form accepted by [`parse_edp`]; edge labels are written as `x`.
    pub fn to_text(&self) -> String {
        let [(s1, t1), (s2, t2)] = self.pairs;
        let n = &self.nodes;
        let mut out = format!("pairs {} {} {} {}\n", n[s1], n[t1], n[s2], n[t2]);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} x {}", n[u], n[v]);
        }
        out
    }
}

/// Reads a header `pairs s1 t1 s2 t2` and edge lines `source label target`.
/// Labels are ignored; blank lines and `#` comments are skipped.
pub fn parse_edp(text: &str) -> Result<EdpInstance> {
    let mut nodes: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut id = |name: &str| -> usize {
        *ids.entry(name.to_string()).or_insert_with(|| {
            nodes.push(name.to_string());
            nodes.len() - 1
        })
    };
    let mut pairs = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |message: String| Error::Format { line: i + 1, message };
        match fields[..] {
            ["pairs", s1, t1, s2, t2] => {
                if pairs.is_some() {
                    return Err(err("second `pairs` header".into()));
                }
                pairs = Some([(id(s1), id(t1)), (id(s2), id(t2))]);
            }
            ["pairs", ..] => return Err(err("expected `pairs s1 t1 s2 t2`".into())),
            [u, _, v] => edges.push((id(u), id(v))),
            _ => return Err(err(format!("expected 3 fields `source label target`, found {}", fields.len()))),
        }
    }
    let pairs = pairs.ok_or(Error::Format { line: 0, message: "missing `pairs s1 t1 s2 t2` header".into() })?;
    Ok(EdpInstance::new(nodes, edges, pairs))
}

/// Trail-query instance produced by the reduction.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: LabeledGraph,
    pub s: NodeId,
    pub t: NodeId,
}

/// Reduction from edge-disjoint paths to trail queries for the language of
/// `dfa`: the gadget has a matching trail from `s` to `t` iff the instance
/// has edge-disjoint paths for both pairs.
///
/// Every instance edge `(v1, v2)` becomes `v1 -a-> v12` followed by two
/// parallel chains spelling `w'_1` and `w'_2` into `v2`, where `w_i = a w'_i`
/// and an empty `w'_i` is replaced by `a`. Chains for `w_ell`, `w_m` and `w_r`
/// link `s → s1`, `t1 → s2` and `t2 → t`; an empty `w_ell` (resp. `w_r`)
/// makes `s = s1` (resp. `t = t2`).
pub fn build_hardness_gadget(dfa: &MinimalDfa, witness: &HardnessWitness, edp: &EdpInstance) -> Result<Gadget> {
    if !validate_witness(dfa, witness)? {
        return Err(Error::InvalidWitness("tuple fails the witness conditions".into()));
    }
    if witness.w_m.is_empty() {
        return Err(Error::InvalidWitness("w_m must be nonempty".into()));
    }
    if let Some(name) = edp.nodes.iter().find(|n| n.starts_with(RESERVED_PREFIX)) {
        return Err(Error::ReservedName(name.clone()));
    }
    let a = witness.a;
    let tail = |w: &[Symbol]| if w.len() > 1 { w[1..].to_vec() } else { vec![a] };
    let (tail_1, tail_2) = (tail(&witness.w_1), tail(&witness.w_2));

    let mut g = LabeledGraph::new();
    let ids: Vec<NodeId> = edp.nodes.iter().map(|n| g.add_node(n)).collect();
    let mut fresh = 0usize;
    let mut chain = |g: &mut LabeledGraph, from: NodeId, word: &[Symbol], to: NodeId| {
        let mut at = from;
        for (i, &s) in word.iter().enumerate() {
            let next = if i + 1 == word.len() {
                to
            } else {
                fresh += 1;
                g.add_node(&format!("{RESERVED_PREFIX}c{fresh}"))
            };
            g.add_edge(at, s, next);
            at = next;
        }
    };
    for (i, &(u, v)) in edp.edges.iter().enumerate() {
        let mid = g.add_node(&format!("{RESERVED_PREFIX}e{i}"));
        g.add_edge(ids[u], a, mid);
        chain(&mut g, mid, &tail_1, ids[v]);
        chain(&mut g, mid, &tail_2, ids[v]);
    }
    let [(s1, t1), (s2, t2)] = edp.pairs.map(|(x, y)| (ids[x], ids[y]));
    let s = if witness.w_ell.is_empty() {
        s1
    } else {
        let s = g.add_node(&format!("{RESERVED_PREFIX}s"));
        chain(&mut g, s, &witness.w_ell, s1);
        s
    };
    chain(&mut g, t1, &witness.w_m, s2);
    let t = if witness.w_r.is_empty() {
        t2
    } else {
        let t = g.add_node(&format!("{RESERVED_PREFIX}t"));
        chain(&mut g, t2, &witness.w_r, t);
        t
    };
    Ok(Gadget { graph: g, s, t })
}
