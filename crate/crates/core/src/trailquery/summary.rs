//! The polynomial engine for Ttract languages: enumerate candidate summaries,
//! assign local edge domains, complete every abbreviation with a shortest
//! trail inside its domain, and keep the best verified completion.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::automata::{MinimalDfa, StateId};
use crate::error::{Error, Result};
use crate::graphdb::{
    product_distances, product_distances_to, product_shortest_walk, trail_check, EdgeId, LabeledGraph, NodeId,
    ProductSearchSpec, Trail, UNREACHABLE,
};

/// Default number of search steps before the engine gives up.
pub const DEFAULT_SUMMARY_BUDGET: u64 = 10_000_000;

/// `(C, (v, q), e_K ⋯ e_1)`: a run through component `C` entered at node `v`
/// in state `q` and ending with the listed `K` edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Abbreviation {
    pub component: usize,
    pub node: NodeId,
    pub state: StateId,
    pub suffix: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SummaryEntry {
    Edge(EdgeId),
    Abbrev(Abbreviation),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CandidateSummary {
    pub entries: Vec<SummaryEntry>,
}

impl CandidateSummary {
    /// `E(S)`: explicit edges and abbreviation suffixes.
    pub fn edges(&self, g: &LabeledGraph) -> FixedBitSet {
        let mut set = g.empty_edge_set();
        for entry in &self.entries {
            match entry {
                SummaryEntry::Edge(e) => set.insert(*e),
                SummaryEntry::Abbrev(a) => a.suffix.iter().for_each(|&e| set.insert(e)),
            }
        }
        set
    }

    pub fn abbreviations(&self) -> impl Iterator<Item = &Abbreviation> {
        self.entries.iter().filter_map(|e| match e {
            SummaryEntry::Abbrev(a) => Some(a),
            SummaryEntry::Edge(_) => None,
        })
    }
}

/// Summary of the trail `edges`, read from the initial state: every maximal
/// run of more than `K` edges inside one component is abbreviated.
pub fn summary_of(g: &LabeledGraph, dfa: &MinimalDfa, edges: &[EdgeId]) -> Result<CandidateSummary> {
    let mut states = vec![dfa.initial()];
    for (index, &e) in edges.iter().enumerate() {
        let q = states[index];
        match dfa.step(q, g.edge(e).label).filter(|&r| dfa.is_live(r)) {
            Some(r) => states.push(r),
            None => return Err(Error::DeadRun { index }),
        }
    }
    let k = dfa.k();
    let comp = |i: usize| dfa.component_of(states[i]);
    let internal = |i: usize| comp(i) == comp(i + 1);
    let mut entries = Vec::new();
    let mut i = 0;
    while i < edges.len() {
        if !internal(i) {
            entries.push(SummaryEntry::Edge(edges[i]));
            i += 1;
            continue;
        }
        let mut j = i;
        while j < edges.len() && internal(j) {
            j += 1;
        }
        if j - i > k {
            entries.push(SummaryEntry::Abbrev(Abbreviation {
                component: comp(i),
                node: g.edge(edges[i]).source,
                state: states[i],
                suffix: edges[j - k..j].to_vec(),
            }));
        } else {
            entries.extend(edges[i..j].iter().map(|&e| SummaryEntry::Edge(e)));
        }
        i = j;
    }
    Ok(CandidateSummary { entries })
}

/// Shortest trail `π ⊨_allowed abbr`: from `(node, state)` inside the
/// component, body edges from `allowed`, ending with the suffix. For Ttract
/// languages the shortest such walk never repeats an edge.
pub fn shortest_completion(g: &LabeledGraph, dfa: &MinimalDfa, abbr: &Abbreviation, allowed: &FixedBitSet) -> Option<Trail> {
    let goal = |_: NodeId, _: StateId| true;
    let mut spec = ProductSearchSpec::new(allowed, (abbr.node, abbr.state), &goal);
    spec.suffix = &abbr.suffix;
    spec.component = Some(abbr.component);
    let walk = product_shortest_walk(g, dfa, &spec)?;
    let trail = trail_check(g, abbr.node, &walk.edges);
    debug_assert!(trail.is_ok(), "shortest completion repeats an edge: {:?}", walk.edges);
    trail.ok()
}

/// Local edge domains of a candidate summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDomains {
    /// `Edge_i`.
    pub domains: Vec<FixedBitSet>,
    /// `E_i`, the edges still available when entry `i` is processed.
    pub remaining: Vec<FixedBitSet>,
    /// `m_i`, for abbreviations completable within `E_i`.
    pub min_lengths: Vec<Option<usize>>,
}

/// `E_1 = allowed ∖ E(S)`, `E_{i+1} = E_i ∖ Edge_i`. For an abbreviation
/// `(C, (v, q), ·)`, `m_i` is the length of a shortest completion within
/// `E_i`, and `Edge_i` holds the edges of walks from `(v, q)` over `E_i`
/// that stay in `C` and have length at most `m_i − K`.
pub fn compute_edge_domains(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    summary: &CandidateSummary,
    allowed: &FixedBitSet,
) -> EdgeDomains {
    let n = dfa.n();
    let k = dfa.k();
    let mut current = allowed.clone();
    current.difference_with(&summary.edges(g));
    let mut out = EdgeDomains { domains: Vec::new(), remaining: Vec::new(), min_lengths: Vec::new() };
    for entry in &summary.entries {
        let mut domain = g.empty_edge_set();
        let mut m = None;
        if let SummaryEntry::Abbrev(a) = entry {
            m = shortest_completion(g, dfa, a, &current).map(|p| p.len());
            if let Some(reach) = m.and_then(|m| m.checked_sub(k + 1)) {
                // Edges that can end a walk of length at most m - K.
                let dist = product_distances(g, dfa, &current, (a.node, a.state), Some(a.component));
                for e in current.ones() {
                    let edge = g.edge(e);
                    let usable = (0..n).any(|q| {
                        dist[edge.source * n + q] <= reach
                            && dfa.step(q, edge.label).is_some_and(|r| dfa.component_of(r) == a.component)
                    });
                    if usable {
                        domain.insert(e);
                    }
                }
            }
        }
        out.remaining.push(current.clone());
        current.difference_with(&domain);
        out.domains.push(domain);
        out.min_lengths.push(m);
    }
    out
}

/// Shortest completion of `summary` within its local edge domains, accepted
/// only if it is a trail from `s` to `t` matching the language whose summary
/// is `summary`.
pub fn evaluate_summary(
    g: &LabeledGraph,
    dfa: &MinimalDfa,
    s: NodeId,
    t: NodeId,
    summary: &CandidateSummary,
    allowed: &FixedBitSet,
) -> Option<Trail> {
    let mut path = Vec::new();
    if summary.abbreviations().next().is_none() {
        path.extend(summary.entries.iter().map(|e| match e {
            SummaryEntry::Edge(e) => *e,
            SummaryEntry::Abbrev(_) => unreachable!(),
        }));
    } else {
        let domains = compute_edge_domains(g, dfa, summary, allowed);
        for (entry, domain) in summary.entries.iter().zip(&domains.domains) {
            match entry {
                SummaryEntry::Edge(e) => path.push(*e),
                SummaryEntry::Abbrev(a) => path.extend_from_slice(shortest_completion(g, dfa, a, domain)?.edges()),
            }
        }
    }
    let trail = trail_check(g, s, &path).ok()?;
    let accepted = trail.end() == t && dfa.run(dfa.initial(), trail.word()).is_some_and(|q| dfa.is_final(q));
    (accepted && summary_of(g, dfa, &path).ok().as_ref() == Some(summary)).then_some(trail)
}

#[derive(Clone, Debug)]
pub struct SummaryOutcome {
    pub trail: Option<Trail>,
    /// Search steps: summary-construction nodes and suffix-enumeration nodes.
    pub expanded: u64,
    /// Complete candidate summaries evaluated.
    pub summaries: u64,
}

/// Shortest trail from `s` to `t` over `allowed` edges matching the language
/// of `dfa`, which must be in Ttract. Ties go to the lexicographically
/// smallest edge-id sequence.
///
/// Candidate summaries are built depth first along the run: explicit edges
/// (at most `K` in a row inside one component), or, on entering a nontrivial
/// component, an abbreviation whose suffix is a `K`-edge trail readable inside
/// the component. Branches are cut when the target is unreachable in the
/// product or when a length lower bound exceeds the best trail found.
pub fn summary_solver(
    g: &LabeledGraph,
    s: NodeId,
    t: NodeId,
    dfa: &MinimalDfa,
    allowed: &FixedBitSet,
    budget: u64,
) -> Result<SummaryOutcome> {
    let goal = |v: NodeId, q: StateId| v == t && dfa.is_final(q);
    let mut search = SummarySearch {
        g,
        dfa,
        s,
        t,
        allowed,
        budget,
        n: dfa.n(),
        k: dfa.k(),
        goal_dist: product_distances_to(g, dfa, allowed, &goal),
        suffixes: HashMap::new(),
        reach: HashMap::new(),
        entries: Vec::new(),
        used: g.empty_edge_set(),
        best: None,
        expanded: 0,
        summaries: 0,
    };
    search.dfs(s, dfa.initial(), 0, false, 0)?;
    Ok(SummaryOutcome { trail: search.best, expanded: search.expanded, summaries: search.summaries })
}

/// A `K`-edge trail readable inside one component, ending in `end_state`
/// from every state of `entry_states` (a bit mask over states).
struct Suffix {
    edges: Vec<EdgeId>,
    start: NodeId,
    end: NodeId,
    end_state: StateId,
    entry_states: u64,
}

struct SummarySearch<'a> {
    g: &'a LabeledGraph,
    dfa: &'a MinimalDfa,
    s: NodeId,
    t: NodeId,
    allowed: &'a FixedBitSet,
    budget: u64,
    n: usize,
    k: usize,
    goal_dist: Vec<usize>,
    suffixes: HashMap<usize, std::rc::Rc<Vec<Suffix>>>,
    reach: HashMap<(NodeId, StateId), std::rc::Rc<Vec<usize>>>,
    entries: Vec<SummaryEntry>,
    used: FixedBitSet,
    best: Option<Trail>,
    expanded: u64,
    summaries: u64,
}

impl SummarySearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// `seg` counts explicit edges in the current component; `closed` is set
    /// right after an abbreviation, when the next edge must leave it.
    fn dfs(&mut self, v: NodeId, q: StateId, seg: usize, closed: bool, lower: usize) -> Result<()> {
        self.tick()?;
        let to_goal = self.goal_dist[v * self.n + q];
        if to_goal == UNREACHABLE || self.best.as_ref().is_some_and(|b| lower + to_goal > b.len()) {
            return Ok(());
        }
        if v == self.t && self.dfa.is_final(q) {
            self.summaries += 1;
            let summary = CandidateSummary { entries: self.entries.clone() };
            if let Some(trail) = evaluate_summary(self.g, self.dfa, self.s, self.t, &summary, self.allowed) {
                let better = self.best.as_ref().is_none_or(|b| (trail.len(), trail.edges()) < (b.len(), b.edges()));
                if better {
                    self.best = Some(trail);
                }
            }
        }
        let comp = self.dfa.component_of(q);
        for &e in self.g.out_edges(v) {
            if !self.allowed.contains(e) || self.used.contains(e) {
                continue;
            }
            let edge = self.g.edge(e);
            let Some(r) = self.dfa.step(q, edge.label) else { continue };
            let inside = self.dfa.component_of(r) == comp;
            if inside && (closed || seg + 1 > self.k) {
                continue;
            }
            self.entries.push(SummaryEntry::Edge(e));
            self.used.insert(e);
            self.dfs(edge.target, r, if inside { seg + 1 } else { 0 }, false, lower + 1)?;
            self.used.set(e, false);
            self.entries.pop();
        }
        if seg == 0 && !closed && self.dfa.components()[comp].nontrivial {
            self.abbreviate(v, q, comp, lower)?;
        }
        Ok(())
    }

    fn abbreviate(&mut self, v: NodeId, q: StateId, comp: usize, lower: usize) -> Result<()> {
        let suffixes = self.suffixes(comp)?;
        if suffixes.is_empty() {
            return Ok(());
        }
        let dist = self.reach(v, q, comp);
        for suf in suffixes.iter() {
            if suf.edges.iter().any(|&e| self.used.contains(e)) {
                continue;
            }
            let approach = (0..self.n)
                .filter(|&p| suf.entry_states >> p & 1 == 1)
                .map(|p| dist[suf.start * self.n + p])
                .min()
                .unwrap_or(UNREACHABLE);
            if approach == UNREACHABLE {
                continue;
            }
            // A long run has more than K edges.
            let cost = (self.k + 1).max(self.k + approach);
            self.entries.push(SummaryEntry::Abbrev(Abbreviation { component: comp, node: v, state: q, suffix: suf.edges.clone() }));
            suf.edges.iter().for_each(|&e| self.used.insert(e));
            let result = self.dfs(suf.end, suf.end_state, 0, true, lower + cost);
            suf.edges.iter().for_each(|&e| self.used.set(e, false));
            self.entries.pop();
            result?;
        }
        Ok(())
    }

    /// Distances from `(v, q)` in the product restricted to component `comp`.
    fn reach(&mut self, v: NodeId, q: StateId, comp: usize) -> std::rc::Rc<Vec<usize>> {
        let (g, dfa, allowed) = (self.g, self.dfa, self.allowed);
        self.reach
            .entry((v, q))
            .or_insert_with(|| std::rc::Rc::new(product_distances(g, dfa, allowed, (v, q), Some(comp))))
            .clone()
    }

    /// All `K`-edge trails over allowed edges whose label keeps some run
    /// inside `comp`.
    fn suffixes(&mut self, comp: usize) -> Result<std::rc::Rc<Vec<Suffix>>> {
        if let Some(s) = self.suffixes.get(&comp) {
            return Ok(s.clone());
        }
        let mut out = Vec::new();
        if self.k <= self.allowed.count_ones(..) && self.n <= 64 {
            let states: Vec<(StateId, StateId)> =
                self.dfa.components()[comp].states.iter().map(|&p| (p, p)).collect();
            let mut path = Vec::new();
            let mut used = self.g.empty_edge_set();
            for e in self.allowed.ones() {
                self.extend_suffix(comp, e, &states, &mut path, &mut used, &mut out)?;
            }
        }
        let out = std::rc::Rc::new(out);
        self.suffixes.insert(comp, out.clone());
        Ok(out)
    }

    /// `runs` pairs an entry state with the state reached so far.
    fn extend_suffix(
        &mut self,
        comp: usize,
        e: EdgeId,
        runs: &[(StateId, StateId)],
        path: &mut Vec<EdgeId>,
        used: &mut FixedBitSet,
        out: &mut Vec<Suffix>,
    ) -> Result<()> {
        self.tick()?;
        let edge = self.g.edge(e);
        let next: Vec<(StateId, StateId)> = runs
            .iter()
            .filter_map(|&(p, r)| self.dfa.step(r, edge.label).filter(|&r2| self.dfa.component_of(r2) == comp).map(|r2| (p, r2)))
            .collect();
        if next.is_empty() {
            return Ok(());
        }
        path.push(e);
        used.insert(e);
        if path.len() == self.k {
            let mut ends: Vec<StateId> = next.iter().map(|&(_, r)| r).collect();
            ends.sort_unstable();
            ends.dedup();
            for end_state in ends {
                let entry_states =
                    next.iter().filter(|&&(_, r)| r == end_state).fold(0u64, |m, &(p, _)| m | 1 << p);
                out.push(Suffix {
                    edges: path.clone(),
                    start: self.g.edge(path[0]).source,
                    end: edge.target,
                    end_state,
                    entry_states,
                });
            }
        } else {
            for &f in self.g.out_edges(edge.target) {
                if self.allowed.contains(f) && !used.contains(f) {
                    self.extend_suffix(comp, f, &next, path, used, out)?;
                }
            }
        }
        used.set(e, false);
        path.pop();
        Ok(())
    }
}
