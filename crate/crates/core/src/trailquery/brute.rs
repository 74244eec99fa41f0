use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::automata::{MinimalDfa, StateId};
use crate::error::{Error, Result};
use crate::graphdb::{product_distances_to, trail_check, EdgeId, LabeledGraph, NodeId, Trail, UNREACHABLE};

/// Default largest number of usable edges for the exhaustive search.
pub const DEFAULT_BRUTE_GUARD: usize = 24;

/// Used-edge sets are `u128` masks over the usable edges.
const MASK_BITS: usize = 128;

pub struct BruteConstraints<'a> {
    pub deleted: Option<&'a FixedBitSet>,
    pub forbidden_first: Option<&'a FixedBitSet>,
    pub accept: &'a dyn Fn(NodeId, StateId) -> bool,
}

#[derive(Clone, Debug)]
pub struct BruteOutcome {
    pub trail: Option<Trail>,
    /// Search nodes visited.
    pub expanded: u64,
}

/// Exact shortest trail from `(start, start_state)` to an accepting pair,
/// the lexicographically smallest edge-id sequence among the shortest.
///
/// Iterative deepening over (node, state, used edges). Within one depth bound
/// a configuration determines its depth, so failed configurations are
/// memoized per iteration. Product distances to an accepting pair, ignoring
/// edge reuse, bound the remaining length from below.
pub fn brute_force_trail(
    g: &LabeledGraph,
    start: NodeId,
    dfa: &MinimalDfa,
    start_state: StateId,
    c: &BruteConstraints<'_>,
    guard: usize,
) -> Result<BruteOutcome> {
    let mut usable = g.all_edges();
    if let Some(deleted) = c.deleted {
        usable.difference_with(deleted);
    }
    let m = usable.count_ones(..);
    let limit = guard.min(MASK_BITS);
    if m > limit {
        return Err(Error::OracleGuard { edges: m, limit });
    }
    let mut bit = vec![usize::MAX; g.edge_count()];
    for (i, e) in usable.ones().enumerate() {
        bit[e] = i;
    }
    let dist = product_distances_to(g, dfa, &usable, c.accept);
    let mut search = Search {
        g,
        dfa,
        c,
        bit,
        dist,
        n: dfa.n(),
        failed: HashSet::new(),
        path: Vec::new(),
        truncated: false,
        expanded: 0,
    };
    let first = search.dist[start * search.n + start_state];
    if first == UNREACHABLE {
        return Ok(BruteOutcome { trail: None, expanded: 0 });
    }
    for bound in first..=m {
        search.failed.clear();
        search.truncated = false;
        if search.dfs(start, start_state, 0, bound) {
            let trail = trail_check(g, start, &search.path)?;
            return Ok(BruteOutcome { trail: Some(trail), expanded: search.expanded });
        }
        if !search.truncated {
            break;
        }
    }
    Ok(BruteOutcome { trail: None, expanded: search.expanded })
}

struct Search<'a> {
    g: &'a LabeledGraph,
    dfa: &'a MinimalDfa,
    c: &'a BruteConstraints<'a>,
    bit: Vec<usize>,
    dist: Vec<usize>,
    n: usize,
    failed: HashSet<(NodeId, StateId, u128)>,
    path: Vec<EdgeId>,
    truncated: bool,
    expanded: u64,
}

impl Search<'_> {
    fn dfs(&mut self, v: NodeId, q: StateId, mask: u128, bound: usize) -> bool {
        self.expanded += 1;
        if (self.c.accept)(v, q) && self.path.len() == bound {
            return true;
        }
        if self.failed.contains(&(v, q, mask)) {
            return false;
        }
        let depth = self.path.len();
        for &e in self.g.out_edges(v) {
            let b = self.bit[e];
            if b == usize::MAX || mask & (1u128 << b) != 0 {
                continue;
            }
            if depth == 0 && self.c.forbidden_first.is_some_and(|f| f.contains(e)) {
                continue;
            }
            let edge = self.g.edge(e);
            let Some(r) = self.dfa.step(q, edge.label) else { continue };
            let d = self.dist[edge.target * self.n + r];
            if d == UNREACHABLE {
                continue;
            }
            if depth + 1 + d > bound {
                self.truncated = true;
                continue;
            }
            self.path.push(e);
            if self.dfs(edge.target, r, mask | (1u128 << b), bound) {
                return true;
            }
            self.path.pop();
        }
        self.failed.insert((v, q, mask));
        false
    }
}
