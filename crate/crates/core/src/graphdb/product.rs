use fixedbitset::FixedBitSet;

use super::{EdgeId, LabeledGraph, NodeId};
use crate::automata::{MinimalDfa, StateId};

/// Parameters of a breadth-first search in the product of a graph and a DFA.
pub struct ProductSearchSpec<'a> {
    /// Edges usable in the body of the walk.
    pub allowed: &'a FixedBitSet,
    pub start: (NodeId, StateId),
    /// Accepting condition on the final (node, state) pair.
    pub goal: &'a dyn Fn(NodeId, StateId) -> bool,
    /// Edges the walk must end with, in order. Never used in the body.
    pub suffix: &'a [EdgeId],
    /// Edges that may not be the first edge of the walk.
    pub forbidden_first: Option<&'a FixedBitSet>,
    /// Every state of the run, start included, must lie in this component.
    pub component: Option<usize>,
    /// Bound on the total length, suffix included.
    pub max_len: Option<usize>,
}

impl<'a> ProductSearchSpec<'a> {
    pub fn new(allowed: &'a FixedBitSet, start: (NodeId, StateId), goal: &'a dyn Fn(NodeId, StateId) -> bool) -> Self {
        ProductSearchSpec { allowed, start, goal, suffix: &[], forbidden_first: None, component: None, max_len: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub edges: Vec<EdgeId>,
    pub end: (NodeId, StateId),
}

/// Shortest walk satisfying `spec`, ties broken towards the lexicographically
/// smallest edge-id sequence. Layers are expanded in discovery order with
/// outgoing edges in increasing id order, so the first goal met is both
/// shortest and lexicographically smallest.
pub fn product_shortest_walk(g: &LabeledGraph, dfa: &MinimalDfa, spec: &ProductSearchSpec<'_>) -> Option<Walk> {
    let n = dfa.n();
    let in_scope = |q: StateId| spec.component.is_none_or(|c| dfa.component_of(q) == c);
    if !in_scope(spec.start.1) {
        return None;
    }
    let mut body = spec.allowed.clone();
    body.grow(g.edge_count());
    for &e in spec.suffix {
        body.set(e, false);
    }
    let budget = spec.max_len.map(|m| m.checked_sub(spec.suffix.len()));
    if budget == Some(None) {
        return None;
    }
    let max_body = budget.flatten().unwrap_or(usize::MAX);

    // Product node index v * n + q; the search starts from a virtual root so
    // that the start pair can be revisited through a cycle after a
    // first-edge restriction.
    const ROOT: usize = usize::MAX;
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; g.node_count() * n];
    let mut seen = FixedBitSet::with_capacity(g.node_count() * n);
    let mut layer: Vec<usize> = vec![ROOT];
    let pair = |x: usize| if x == ROOT { spec.start } else { (x / n, x % n) };
    let mut depth = 0;
    loop {
        for &x in &layer {
            let (v, q) = pair(x);
            if let Some(end) = finish(g, dfa, spec, v, q, depth == 0, &in_scope) {
                let mut edges = spec.suffix.to_vec();
                let mut cur = x;
                let mut rev = Vec::new();
                while cur != ROOT {
                    let (p, e) = parent[cur].expect("discovered node has a parent");
                    rev.push(e);
                    cur = p;
                }
                rev.reverse();
                rev.append(&mut edges);
                return Some(Walk { edges: rev, end });
            }
        }
        if depth >= max_body {
            return None;
        }
        let mut next = Vec::new();
        for &x in &layer {
            let (v, q) = pair(x);
            for &e in g.out_edges(v) {
                if !body.contains(e) || (x == ROOT && spec.forbidden_first.is_some_and(|f| f.contains(e))) {
                    continue;
                }
                let edge = g.edge(e);
                let Some(r) = dfa.step(q, edge.label) else { continue };
                if !in_scope(r) {
                    continue;
                }
                let y = edge.target * n + r;
                if !seen.contains(y) {
                    seen.insert(y);
                    parent[y] = Some((x, e));
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layer = next;
        depth += 1;
    }
}

/// Unreachable entry in the distance tables below.
pub const UNREACHABLE: usize = usize::MAX;

/// BFS distances from `start` in the product over `allowed` edges, indexed
/// by `node * n + state`. With `component` set, runs never leave it.
pub fn product_distances(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    allowed: &FixedBitSet,
    start: (NodeId, StateId),
    component: Option<usize>,
) -> Vec<usize> {
    let n = dfa.n();
    let mut dist = vec![UNREACHABLE; g.node_count() * n];
    let in_scope = |q: StateId| component.is_none_or(|c| dfa.component_of(q) == c);
    if !in_scope(start.1) {
        return dist;
    }
    let mut queue = std::collections::VecDeque::from([start.0 * n + start.1]);
    dist[start.0 * n + start.1] = 0;
    while let Some(x) = queue.pop_front() {
        let (v, q) = (x / n, x % n);
        for &e in g.out_edges(v) {
            if !allowed.contains(e) {
                continue;
            }
            let edge = g.edge(e);
            let Some(r) = dfa.step(q, edge.label).filter(|&r| in_scope(r)) else { continue };
            let y = edge.target * n + r;
            if dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// BFS distances to the nearest pair satisfying `goal`, following `allowed`
/// edges forwards; indexed by `node * n + state`.
pub fn product_distances_to(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    allowed: &FixedBitSet,
    goal: &dyn Fn(NodeId, StateId) -> bool,
) -> Vec<usize> {
    let n = dfa.n();
    let size = g.node_count() * n;
    // Reverse product adjacency.
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (e, edge) in g.edges().iter().enumerate() {
        if !allowed.contains(e) {
            continue;
        }
        for q in 0..n {
            if let Some(r) = dfa.step(q, edge.label) {
                preds[edge.target * n + r].push(edge.source * n + q);
            }
        }
    }
    let mut dist = vec![UNREACHABLE; size];
    let mut queue = std::collections::VecDeque::new();
    for (x, d) in dist.iter_mut().enumerate() {
        if goal(x / n, x % n) {
            *d = 0;
            queue.push_back(x);
        }
    }
    while let Some(y) = queue.pop_front() {
        for &x in &preds[y] {
            if dist[x] == UNREACHABLE {
                dist[x] = dist[y] + 1;
                queue.push_back(x);
            }
        }
    }
    dist
}

/// Runs the required suffix from `(v, q)`; returns the end pair if the goal holds.
fn finish(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    spec: &ProductSearchSpec<'_>,
    v: NodeId,
    q: StateId,
    body_empty: bool,
    in_scope: &dyn Fn(StateId) -> bool,
) -> Option<(NodeId, StateId)> {
    let (mut v, mut q) = (v, q);
    if let (true, Some(&first), Some(f)) = (body_empty, spec.suffix.first(), spec.forbidden_first) {
        if f.contains(first) {
            return None;
        }
    }
    for &e in spec.suffix {
        let edge = g.edge(e);
        if edge.source != v {
            return None;
        }
        q = dfa.step(q, edge.label).filter(|&r| in_scope(r))?;
        v = edge.target;
    }
    (spec.goal)(v, q).then_some((v, q))
}
