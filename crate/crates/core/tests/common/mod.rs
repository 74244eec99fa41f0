//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trailrpq::automata::{minimize, Alphabet, Dfa, MinimalDfa, RegexAst, Symbol, Word};
use trailrpq::classify::EdpInstance;
use trailrpq::graphdb::{EdgeId, LabeledGraph, NodeId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sym(c: char) -> Symbol {
    Symbol::new(c).unwrap()
}

pub fn word(s: &str) -> Word {
    s.chars().map(sym).collect()
}

pub fn min(regex: &str) -> MinimalDfa {
    MinimalDfa::from_regex(regex, 1 << 16).unwrap()
}

/// The four graphs of the introductory figure; each has a trail from `s` to
/// `t` labelled in `(ab)*`.
pub const FIGURE_ONE: [&str; 4] = [
    "s a v1\nv1 b v2\nv2 a v1\nv1 b t",
    "s a v1\nv1 b t\nt a v1",
    "s b t\ns a t\nt b v1\nv1 a s",
    "s a v3\nv3 a w\nw b t\nv1 b v3\nv3 b v2\nv2 a v1",
];

/// Suite languages with their expected Ttract membership.
pub const NAMED: [(&str, bool); 15] = [
    ("(ab)*", true),
    ("(abc)*", true),
    ("a*ba*", false),
    ("(aa)*", false),
    ("(aba)*", false),
    ("a*bc*", true),
    ("b*", true),
    ("(a+b)*", true),
    ("(a+b)*a(a+b)*", false),
    ("(ac*bc*)*", false),
    ("a*ba*(cd)*", false),
    ("ab", true),
    ("a", true),
    ("(a+b)*b", true),
    ("a*", true),
];

pub fn ttract_suite() -> Vec<&'static str> {
    NAMED.iter().filter(|n| n.1).map(|n| n.0).collect()
}

// ---------------------------------------------------------------------------
// Regex interpreter, independent of the automata pipeline.

pub fn ast_matches(ast: &RegexAst, w: &[Symbol]) -> bool {
    ends(ast, w, 0).contains(&w.len())
}

/// Positions `j` such that `w[i..j]` matches `ast`.
fn ends(ast: &RegexAst, w: &[Symbol], i: usize) -> BTreeSet<usize> {
    match ast {
        RegexAst::Empty => BTreeSet::new(),
        RegexAst::Epsilon => BTreeSet::from([i]),
        RegexAst::Symbol(s) => {
            if w.get(i) == Some(s) {
                BTreeSet::from([i + 1])
            } else {
                BTreeSet::new()
            }
        }
        RegexAst::Union(a, b) => &ends(a, w, i) | &ends(b, w, i),
        RegexAst::Concat(a, b) => ends(a, w, i).into_iter().flat_map(|j| ends(b, w, j)).collect(),
        RegexAst::Optional(a) => {
            let mut out = ends(a, w, i);
            out.insert(i);
            out
        }
        RegexAst::Star(a) => {
            let mut out = BTreeSet::from([i]);
            let mut todo = vec![i];
            while let Some(j) = todo.pop() {
                for k in ends(a, w, j) {
                    if out.insert(k) {
                        todo.push(k);
                    }
                }
            }
            out
        }
    }
}

pub fn all_words(symbols: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut layer = vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in symbols {
                let mut w2 = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_word(rng: &mut ChaCha8Rng, symbols: &[Symbol], max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| symbols[rng.random_range(0..symbols.len())]).collect()
}

// ---------------------------------------------------------------------------
// Random regular expressions and automata.

/// Regexes over `{a, b, c}` without `ε` or `∅` leaves.
pub fn arb_regex() -> impl proptest::strategy::Strategy<Value = RegexAst> {
    use proptest::prelude::*;
    let leaf = prop_oneof![Just('a'), Just('b'), Just('c')].prop_map(RegexAst::sym);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RegexAst::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RegexAst::concat(a, b)),
            inner.clone().prop_map(RegexAst::star),
            inner.prop_map(RegexAst::optional),
        ]
    })
}

pub fn random_regex(rng: &mut ChaCha8Rng, symbols: &[char], depth: usize) -> RegexAst {
    if depth == 0 || rng.random_bool(0.3) {
        return RegexAst::sym(symbols[rng.random_range(0..symbols.len())]);
    }
    match rng.random_range(0..4) {
        0 => RegexAst::union(random_regex(rng, symbols, depth - 1), random_regex(rng, symbols, depth - 1)),
        1 => RegexAst::concat(random_regex(rng, symbols, depth - 1), random_regex(rng, symbols, depth - 1)),
        2 => RegexAst::star(random_regex(rng, symbols, depth - 1)),
        _ => RegexAst::optional(random_regex(rng, symbols, depth - 1)),
    }
}

/// A single-occurrence expression over a random nonempty subset of `symbols`.
pub fn random_sore(rng: &mut ChaCha8Rng, symbols: &[char]) -> RegexAst {
    let mut syms = symbols.to_vec();
    syms.shuffle(rng);
    let k = rng.random_range(1..=syms.len());
    sore_over(rng, &syms[..k])
}

fn sore_over(rng: &mut ChaCha8Rng, syms: &[char]) -> RegexAst {
    let base = if syms.len() == 1 {
        RegexAst::sym(syms[0])
    } else {
        let cut = rng.random_range(1..syms.len());
        let (l, r) = (sore_over(rng, &syms[..cut]), sore_over(rng, &syms[cut..]));
        if rng.random_bool(0.5) {
            RegexAst::concat(l, r)
        } else {
            RegexAst::union(l, r)
        }
    };
    match rng.random_range(0..10) {
        0..=2 => RegexAst::star(base),
        3 => RegexAst::optional(base),
        _ => base,
    }
}

/// Every symbol occurs at most once below a star; occurrences outside stars
/// are unrestricted.
pub fn random_star_single(rng: &mut ChaCha8Rng, symbols: &[char], depth: usize) -> RegexAst {
    let mut free = symbols.to_vec();
    free.shuffle(rng);
    star_single(rng, symbols, depth, &mut free)
}

fn star_single(rng: &mut ChaCha8Rng, symbols: &[char], depth: usize, free: &mut Vec<char>) -> RegexAst {
    if depth == 0 || rng.random_bool(0.25) {
        return RegexAst::sym(symbols[rng.random_range(0..symbols.len())]);
    }
    match rng.random_range(0..4) {
        0 => RegexAst::union(star_single(rng, symbols, depth - 1, free), star_single(rng, symbols, depth - 1, free)),
        1 => RegexAst::concat(star_single(rng, symbols, depth - 1, free), star_single(rng, symbols, depth - 1, free)),
        2 if !free.is_empty() => {
            let k = rng.random_range(1..=free.len());
            let taken: Vec<char> = free.drain(..k).collect();
            RegexAst::star(sore_over(rng, &taken))
        }
        _ => RegexAst::optional(star_single(rng, symbols, depth - 1, free)),
    }
}

/// Minimal DFA of a random complete DFA with at most `max_states` states.
pub fn random_dfa(rng: &mut ChaCha8Rng, max_states: usize, max_symbols: usize) -> MinimalDfa {
    let n = rng.random_range(1..=max_states);
    let k = rng.random_range(1..=max_symbols);
    let alphabet = Alphabet::new(['a', 'b', 'c'][..k].iter().map(|&c| sym(c)));
    let rows = (0..n).map(|_| (0..k).map(|_| rng.random_range(0..n)).collect()).collect();
    let finals = (0..n).map(|_| rng.random_bool(0.4)).collect();
    minimize(&Dfa::new(alphabet, rows, 0, finals).unwrap())
}

// ---------------------------------------------------------------------------
// Graphs and trail oracles.

/// Nodes `n0..`, source `n0`, random target; at most `max_edges` edges.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize, labels: &[char]) -> (LabeledGraph, NodeId, NodeId) {
    let n = rng.random_range(2..=max_nodes);
    let m = rng.random_range(1..=max_edges);
    let mut g = LabeledGraph::new();
    for i in 0..n {
        g.add_node(&format!("n{i}"));
    }
    for _ in 0..m {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        g.add_edge(u, sym(labels[rng.random_range(0..labels.len())]), v);
    }
    let t = rng.random_range(0..n);
    (g, 0, t)
}

/// A random member of the DFA's language with length in `lengths`, if a
/// bounded number of random walks finds one.
pub fn random_member(rng: &mut ChaCha8Rng, dfa: &MinimalDfa, lengths: std::ops::RangeInclusive<usize>) -> Option<Word> {
    let symbols = dfa.alphabet().symbols();
    for _ in 0..1000 {
        let len = rng.random_range(lengths.clone());
        let mut q = dfa.initial();
        let mut w = Word::new();
        for _ in 0..len {
            let live: Vec<_> = symbols.iter().filter(|&&s| dfa.step(q, s).is_some_and(|r| dfa.is_live(r))).collect();
            if live.is_empty() {
                break;
            }
            let s = *live[rng.random_range(0..live.len())];
            w.push(s);
            q = dfa.step(q, s).unwrap();
        }
        if w.len() == len && dfa.is_final(q) {
            return Some(w);
        }
    }
    None
}

/// A path `n0 → n1 → …` spelling `planted`, plus random edges among its
/// nodes towards `max_edges` in total. Returns the graph, `n0` and the last node.
pub fn planted_graph(rng: &mut ChaCha8Rng, planted: &[Symbol], max_edges: usize) -> (LabeledGraph, NodeId, NodeId) {
    let mut g = LabeledGraph::new();
    let nodes = planted.len() + 1;
    for i in 0..nodes {
        g.add_node(&format!("n{i}"));
    }
    for (i, &s) in planted.iter().enumerate() {
        g.add_edge(i, s, i + 1);
    }
    let labels = g.labels();
    for _ in 0..4 * max_edges {
        if g.edge_count() >= max_edges {
            break;
        }
        let (a, b) = (rng.random_range(0..nodes), rng.random_range(0..nodes));
        g.add_edge(a, labels.symbols()[rng.random_range(0..labels.len())], b);
    }
    (g, 0, nodes - 1)
}

/// Every trail from `s` to `t` whose label the DFA accepts, by plain
/// depth-first search over edge sequences without repetition.
pub fn matching_trails(g: &LabeledGraph, s: NodeId, t: NodeId, dfa: &MinimalDfa) -> Vec<Vec<EdgeId>> {
    fn go(g: &LabeledGraph, t: NodeId, dfa: &MinimalDfa, v: NodeId, path: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if v == t && dfa.accepts(&g.word_of(path)) {
            out.push(path.clone());
        }
        if dfa.run(dfa.initial(), &g.word_of(path)).is_none_or(|q| !dfa.is_live(q)) {
            return;
        }
        for &e in g.out_edges(v) {
            if !path.contains(&e) {
                path.push(e);
                go(g, t, dfa, g.edge(e).target, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, t, dfa, s, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Shortest matching trail, lexicographically smallest among the shortest.
pub fn shortest_matching_trail(g: &LabeledGraph, s: NodeId, t: NodeId, dfa: &MinimalDfa) -> Option<Vec<EdgeId>> {
    matching_trails(g, s, t, dfa).into_iter().next()
}

/// All walks from `s` of length at most `max_len` (edges may repeat).
pub fn walks(g: &LabeledGraph, s: NodeId, max_len: usize) -> Vec<Vec<EdgeId>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<(Vec<EdgeId>, NodeId)> = vec![(Vec::new(), s)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, v) in &layer {
            for &e in g.out_edges(*v) {
                let mut w2 = w.clone();
                w2.push(e);
                next.push((w2, g.edge(e).target));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Edge-disjoint paths.

pub fn random_edp(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize) -> EdpInstance {
    let n = rng.random_range(2..=max_nodes);
    let m = rng.random_range(0..=max_edges);
    let nodes = (0..n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
    let mut pick = || rng.random_range(0..n);
    let pairs = [(pick(), pick()), (pick(), pick())];
    EdpInstance::new(nodes, edges, pairs)
}

/// Paths `s1 → t1` and `s2 → t2` sharing no edge: every simple path for the
/// first pair, then reachability for the second over the remaining edges.
pub fn edp_oracle(edp: &EdpInstance) -> bool {
    let [(s1, t1), (s2, t2)] = edp.pairs;
    let n = edp.nodes.len();
    let reach = |removed: &HashSet<usize>| {
        let mut seen = vec![false; n];
        seen[s2] = true;
        let mut queue = VecDeque::from([s2]);
        while let Some(u) = queue.pop_front() {
            for (i, &(a, b)) in edp.edges.iter().enumerate() {
                if a == u && !removed.contains(&i) && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen[t2]
    };
    fn paths(edp: &EdpInstance, u: usize, t: usize, visited: &mut Vec<bool>, used: &mut HashSet<usize>, found: &mut dyn FnMut(&HashSet<usize>) -> bool) -> bool {
        if u == t {
            return found(used);
        }
        for (i, &(a, b)) in edp.edges.iter().enumerate() {
            if a == u && !visited[b] {
                visited[b] = true;
                used.insert(i);
                let ok = paths(edp, b, t, visited, used, found);
                used.remove(&i);
                visited[b] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut visited = vec![false; n];
    visited[s1] = true;
    paths(edp, s1, t1, &mut visited, &mut HashSet::new(), &mut |used| reach(used))
}
