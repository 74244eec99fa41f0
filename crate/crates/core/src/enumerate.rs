//! All trails from `s` to `t` matching a language, shortest first.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::automata::{MinimalDfa, StateId};
use crate::error::{Error, Result};
use crate::graphdb::{product_distances_to, trail_check, EdgeId, LabeledGraph, NodeId, Trail, UNREACHABLE};
use crate::trailquery::{solve_with, Constraints, Language, SolveOptions};

/// Default edge-count guard of [`all_trails_oracle`].
pub const DEFAULT_ORACLE_GUARD: usize = 20;

/// Yen's k-shortest-paths scheme over trails.
///
/// After a trail `p` is emitted, for every prefix `p[1,i]` (including the
/// empty prefix and `p` itself) a spur query asks for a shortest nonempty
/// trail from the end of the prefix to `t` that avoids the prefix edges,
/// matches `(lab p[1,i])⁻¹L ∖ {ε}`, and does not start with an edge `e` for
/// which `p[1,i]·e` prefixes an emitted trail. Candidates wait in a set
/// ordered by length, then edge ids, so emissions come out in that order.
pub struct TrailEnumerator<'a> {
    g: &'a LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: &'a Language,
    opts: SolveOptions,
    emitted: Vec<Vec<EdgeId>>,
    emitted_set: HashSet<Vec<EdgeId>>,
    candidates: BTreeSet<(usize, Vec<EdgeId>)>,
    spur_languages: HashMap<StateId, Arc<Language>>,
    started: bool,
    failed: bool,
}

impl<'a> TrailEnumerator<'a> {
    pub fn new(g: &'a LabeledGraph, s: NodeId, t: NodeId, lang: &'a Language, opts: SolveOptions) -> Self {
        TrailEnumerator {
            g,
            s,
            t,
            lang,
            opts,
            emitted: Vec::new(),
            emitted_set: HashSet::new(),
            candidates: BTreeSet::new(),
            spur_languages: HashMap::new(),
            started: false,
            failed: false,
        }
    }

    fn spur_language(&mut self, q: StateId) -> Result<Arc<Language>> {
        if let Some(l) = self.spur_languages.get(&q) {
            return Ok(l.clone());
        }
        let l = Arc::new(self.lang.residual(q).without_empty()?);
        self.spur_languages.insert(q, l.clone());
        Ok(l)
    }

    /// Adds the spur candidates of the most recently emitted trail.
    fn spur(&mut self) -> Result<()> {
        let p = self.emitted.last().expect("a trail was emitted").clone();
        let dfa = self.lang.dfa();
        let mut q = dfa.initial();
        let mut node = self.s;
        for i in 0..=p.len() {
            if i > 0 {
                let edge = self.g.edge(p[i - 1]);
                q = dfa.step(q, edge.label).expect("emitted trails match the language");
                node = edge.target;
            }
            let prefix = &p[..i];
            let mut deleted = self.g.empty_edge_set();
            prefix.iter().for_each(|&e| deleted.insert(e));
            let mut forbidden = self.g.empty_edge_set();
            for a in self.emitted.iter().filter(|a| a.len() > i && a.starts_with(prefix)) {
                forbidden.insert(a[i]);
            }
            let lang = self.spur_language(q)?;
            let constraints = Constraints { deleted: Some(deleted), forbidden_first: Some(forbidden) };
            let result = solve_with(self.g, node, self.t, &lang, &self.opts, &constraints)?;
            if let Some(rest) = result.trail {
                let mut edges = prefix.to_vec();
                edges.extend_from_slice(rest.edges());
                if !self.emitted_set.contains(&edges) {
                    self.candidates.insert((edges.len(), edges));
                }
            }
        }
        Ok(())
    }

    fn advance(&mut self) -> Result<Option<Trail>> {
        let next = if !self.started {
            self.started = true;
            let first = solve_with(self.g, self.s, self.t, self.lang, &self.opts, &Constraints::default())?;
            first.trail.map(|t| t.edges().to_vec())
        } else {
            if !self.emitted.is_empty() {
                self.spur()?;
            }
            self.candidates.pop_first().map(|(_, edges)| edges)
        };
        let Some(edges) = next else { return Ok(None) };
        let trail = trail_check(self.g, self.s, &edges)?;
        self.emitted_set.insert(edges.clone());
        self.emitted.push(edges);
        Ok(Some(trail))
    }
}

impl Iterator for TrailEnumerator<'_> {
    type Item = Result<Trail>;

    fn next(&mut self) -> Option<Result<Trail>> {
        if self.failed {
            return None;
        }
        match self.advance() {
            Ok(t) => t.map(Ok),
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Up to `limit` matching trails (all when `None`) in order of length, then
/// edge ids.
pub fn enumerate_trails(
    g: &LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: &Language,
    limit: Option<usize>,
    opts: &SolveOptions,
) -> Result<Vec<Trail>> {
    let it = TrailEnumerator::new(g, s, t, lang, opts.clone());
    it.take(limit.unwrap_or(usize::MAX)).collect()
}

/// Every trail from `s` to `t` matching the language, by exhaustive search
/// over used-edge sets; sorted by length, then edge ids.
pub fn all_trails_oracle(g: &LabeledGraph, s: NodeId, t: NodeId, dfa: &MinimalDfa, guard: usize) -> Result<Vec<Trail>> {
    if g.edge_count() > guard {
        return Err(Error::OracleGuard { edges: g.edge_count(), limit: guard });
    }
    let goal = |v: NodeId, q: StateId| v == t && dfa.is_final(q);
    let dist = product_distances_to(g, dfa, &g.all_edges(), &goal);
    let mut found = Vec::new();
    let mut path = Vec::new();
    let mut used = g.empty_edge_set();
    collect(g, dfa, &dist, s, dfa.initial(), &goal, &mut path, &mut used, &mut found);
    found.sort_by(|a: &Vec<EdgeId>, b| (a.len(), a).cmp(&(b.len(), b)));
    found.into_iter().map(|edges| trail_check(g, s, &edges)).collect()
}

#[allow(clippy::too_many_arguments)]
fn collect(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    dist: &[usize],
    v: NodeId,
    q: StateId,
    goal: &dyn Fn(NodeId, StateId) -> bool,
    path: &mut Vec<EdgeId>,
    used: &mut fixedbitset::FixedBitSet,
    found: &mut Vec<Vec<EdgeId>>,
) {
    if goal(v, q) {
        found.push(path.clone());
    }
    for &e in g.out_edges(v) {
        if used.contains(e) {
            continue;
        }
        let edge = g.edge(e);
        let Some(r) = dfa.step(q, edge.label) else { continue };
        if dist[edge.target * dfa.n() + r] == UNREACHABLE {
            continue;
        }
        used.insert(e);
        path.push(e);
        collect(g, dfa, dist, edge.target, r, goal, path, used, found);
        path.pop();
        used.set(e, false);
    }
}
