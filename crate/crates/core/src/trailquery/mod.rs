//! Trail queries: does a trail from `s` to `t` match `L`, and a shortest one.

mod brute;
mod summary;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::automata::{minimize, state_cap, MinimalDfa, StateId};
use crate::classify::{is_downward_closed, is_ttract};
use crate::error::{Error, Result};
use crate::graphdb::{product_shortest_walk, trail_check, EdgeId, LabeledGraph, NodeId, ProductSearchSpec, Trail};

pub use brute::{brute_force_trail, BruteConstraints, BruteOutcome, DEFAULT_BRUTE_GUARD};
pub use summary::{
    compute_edge_domains, evaluate_summary, shortest_completion, summary_of, summary_solver, Abbreviation, CandidateSummary, EdgeDomains,
    SummaryEntry, SummaryOutcome, DEFAULT_SUMMARY_BUDGET,
};

/// A regular language with its minimal DFA and lazily computed class flags.
#[derive(Debug)]
pub struct Language {
    dfa: MinimalDfa,
    downward_closed: OnceLock<bool>,
    ttract: OnceLock<bool>,
    residuals: Vec<OnceLock<Arc<Language>>>,
}

impl Language {
    pub fn new(dfa: MinimalDfa) -> Self {
        let residuals = (0..dfa.n()).map(|_| OnceLock::new()).collect();
        Language { dfa, downward_closed: OnceLock::new(), ttract: OnceLock::new(), residuals }
    }

    pub fn from_regex(regex: &str) -> Result<Self> {
        Ok(Language::new(MinimalDfa::from_regex(regex, state_cap())?))
    }

    pub fn dfa(&self) -> &MinimalDfa {
        &self.dfa
    }

    pub fn accepts_empty(&self) -> bool {
        self.dfa.is_final(self.dfa.initial())
    }

    pub fn is_downward_closed(&self) -> Result<bool> {
        cached(&self.downward_closed, || is_downward_closed(&self.dfa))
    }

    pub fn is_ttract(&self) -> Result<bool> {
        cached(&self.ttract, || is_ttract(&self.dfa))
    }

    /// `L_q` as a language of its own. Downward closure and Ttract membership
    /// carry over to residuals and are inherited when already known.
    pub fn residual(&self, q: StateId) -> Arc<Language> {
        self.residuals[q]
            .get_or_init(|| {
                let lang = Language::new(minimize(&self.dfa.residual(q)));
                self.inherit(&lang, true);
                Arc::new(lang)
            })
            .clone()
    }

    /// `L ∖ {ε}`.
    pub fn without_empty(&self) -> Result<Language> {
        let lang = Language::new(minimize(&self.dfa.dfa().remove_word(&[], state_cap())?));
        self.inherit(&lang, false);
        Ok(lang)
    }

    fn inherit(&self, other: &Language, downward: bool) {
        if downward && self.downward_closed.get() == Some(&true) {
            let _ = other.downward_closed.set(true);
        }
        if self.ttract.get() == Some(&true) {
            let _ = other.ttract.set(true);
        }
    }
}

fn cached(cell: &OnceLock<bool>, compute: impl FnOnce() -> Result<bool>) -> Result<bool> {
    if let Some(&v) = cell.get() {
        return Ok(v);
    }
    let v = compute()?;
    let _ = cell.set(v);
    Ok(v)
}

/// Requested evaluation strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Auto,
    Dc,
    Summary,
    Brute,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Engine::Auto),
            "dc" => Ok(Engine::Dc),
            "summary" => Ok(Engine::Summary),
            "brute" => Ok(Engine::Brute),
            _ => Err(format!("unknown engine {s:?}; expected auto, dc, summary or brute")),
        }
    }
}

/// Engine that actually answered a query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineUsed {
    DcFast,
    Summary,
    Brute,
}

impl fmt::Display for EngineUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineUsed::DcFast => "DC_FAST",
            EngineUsed::Summary => "SUMMARY",
            EngineUsed::Brute => "BRUTE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Largest edge count the brute engine accepts.
    pub brute_guard: usize,
    /// Search steps allowed to the summary engine.
    pub summary_budget: u64,
    /// `Auto` uses the summary engine only up to this `K`.
    pub summary_max_k: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            engine: Engine::Auto,
            brute_guard: DEFAULT_BRUTE_GUARD,
            summary_budget: DEFAULT_SUMMARY_BUDGET,
            summary_max_k: 16,
        }
    }
}

/// Restrictions on the trails considered.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub deleted: Option<FixedBitSet>,
    /// Edges the trail may not start with. The empty trail is unaffected.
    pub forbidden_first: Option<FixedBitSet>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub expanded: u64,
    pub summaries: u64,
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub trail: Option<Trail>,
    pub engine: EngineUsed,
    pub stats: Stats,
}

impl QueryResult {
    pub fn found(&self) -> bool {
        self.trail.is_some()
    }
}

/// Shortest trail from `s` to `t` matching `lang`, lexicographically
/// smallest in edge ids among the shortest.
pub fn solve(g: &LabeledGraph, s: NodeId, t: NodeId, lang: &Language, engine: Engine) -> Result<QueryResult> {
    let opts = SolveOptions { engine, ..SolveOptions::default() };
    solve_with(g, s, t, lang, &opts, &Constraints::default())
}

pub fn solve_with(
    g: &LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: &Language,
    opts: &SolveOptions,
    constraints: &Constraints,
) -> Result<QueryResult> {
    for v in [s, t] {
        if v >= g.node_count() {
            return Err(Error::UnknownNode(format!("#{v}")));
        }
    }
    let mut allowed = g.all_edges();
    if let Some(deleted) = &constraints.deleted {
        allowed.difference_with(deleted);
    }
    let mut stats = Stats::default();
    match &constraints.forbidden_first {
        Some(forbidden) if opts.engine != Engine::Brute => {
            let (trail, engine) = first_edge_expansion(g, s, t, lang, opts, &allowed, forbidden, &mut stats)?;
            Ok(QueryResult { trail, engine, stats })
        }
        forbidden => {
            let engine = resolve(opts.engine, lang, opts)?;
            let trail = run_engine(g, s, t, lang, engine, opts, &allowed, forbidden.as_ref(), &mut stats)?;
            Ok(QueryResult { trail, engine, stats })
        }
    }
}

fn resolve(engine: Engine, lang: &Language, opts: &SolveOptions) -> Result<EngineUsed> {
    Ok(match engine {
        Engine::Dc if lang.is_downward_closed()? => EngineUsed::DcFast,
        Engine::Dc => return Err(Error::NotDownwardClosed),
        Engine::Summary if lang.is_ttract()? => EngineUsed::Summary,
        Engine::Summary => return Err(Error::NotTtract),
        Engine::Brute => EngineUsed::Brute,
        Engine::Auto if lang.is_downward_closed()? => EngineUsed::DcFast,
        Engine::Auto if lang.dfa().k() <= opts.summary_max_k && lang.is_ttract()? => EngineUsed::Summary,
        Engine::Auto => EngineUsed::Brute,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_engine(
    g: &LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: &Language,
    engine: EngineUsed,
    opts: &SolveOptions,
    allowed: &FixedBitSet,
    forbidden: Option<&FixedBitSet>,
    stats: &mut Stats,
) -> Result<Option<Trail>> {
    let dfa = lang.dfa();
    match engine {
        EngineUsed::DcFast => Ok(dc_shortest(g, s, t, dfa, allowed)),
        EngineUsed::Summary => {
            let out = summary_solver(g, s, t, dfa, allowed, opts.summary_budget)?;
            stats.expanded += out.expanded;
            stats.summaries += out.summaries;
            Ok(out.trail)
        }
        EngineUsed::Brute => {
            let mut deleted = allowed.clone();
            deleted.toggle_range(..);
            let accept = |v: NodeId, q: StateId| v == t && dfa.is_final(q);
            let c = BruteConstraints { deleted: Some(&deleted), forbidden_first: forbidden, accept: &accept };
            let out = brute_force_trail(g, s, dfa, dfa.initial(), &c, opts.brute_guard)?;
            stats.expanded += out.expanded;
            Ok(out.trail)
        }
    }
}

/// Forbidden first edges for the polynomial engines: try each admissible
/// first edge `e` and solve the rest for the residual language with `e`
/// removed; keep the best by (length, edge ids).
#[allow(clippy::too_many_arguments)]
fn first_edge_expansion(
    g: &LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: &Language,
    opts: &SolveOptions,
    allowed: &FixedBitSet,
    forbidden: &FixedBitSet,
    stats: &mut Stats,
) -> Result<(Option<Trail>, EngineUsed)> {
    let dfa = lang.dfa();
    let mut used = None;
    if s == t && lang.accepts_empty() {
        let engine = resolve(opts.engine, lang, opts)?;
        return Ok((Some(trail_check(g, s, &[])?), engine));
    }
    let mut best: Option<Vec<EdgeId>> = None;
    for &e in g.out_edges(s) {
        if !allowed.contains(e) || forbidden.contains(e) {
            continue;
        }
        let edge = g.edge(e);
        let Some(q) = dfa.step(dfa.initial(), edge.label).filter(|&q| dfa.is_live(q)) else { continue };
        let rest = lang.residual(q);
        let engine = resolve(opts.engine, &rest, opts)?;
        let mut sub_allowed = allowed.clone();
        sub_allowed.set(e, false);
        let found = run_engine(g, edge.target, t, &rest, engine, opts, &sub_allowed, None, stats)?;
        used.get_or_insert(engine);
        if let Some(p) = found {
            let mut edges = vec![e];
            edges.extend_from_slice(p.edges());
            if best.as_ref().is_none_or(|b| (edges.len(), &edges) < (b.len(), b)) {
                best = Some(edges);
                used = Some(engine);
            }
        }
    }
    let engine = match used {
        Some(engine) => engine,
        None => resolve(opts.engine, lang, opts).unwrap_or(EngineUsed::Brute),
    };
    Ok((best.map(|edges| trail_check(g, s, &edges)).transpose()?, engine))
}

/// Downward-closed languages: a shortest matching walk is a simple path,
/// since cutting a cycle leaves a subsequence of the label.
fn dc_shortest(g: &LabeledGraph, s: NodeId, t: NodeId, dfa: &MinimalDfa, allowed: &FixedBitSet) -> Option<Trail> {
    let goal = |v: NodeId, q: StateId| v == t && dfa.is_final(q);
    let walk = product_shortest_walk(g, dfa, &ProductSearchSpec::new(allowed, (s, dfa.initial()), &goal))?;
    let edges = remove_cycles(g, s, &walk.edges);
    debug_assert_eq!(edges.len(), walk.edges.len(), "shortest walk of a downward-closed language repeats a node");
    trail_check(g, s, &edges).ok()
}

/// Cuts the walk at repeated nodes until it is a simple path.
fn remove_cycles(g: &LabeledGraph, s: NodeId, walk: &[EdgeId]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = Vec::new();
    let mut nodes = vec![s];
    for &e in walk {
        let target = g.edge(e).target;
        if let Some(i) = nodes.iter().position(|&v| v == target) {
            out.truncate(i);
            nodes.truncate(i + 1);
        } else {
            out.push(e);
            nodes.push(target);
        }
    }
    out
}
