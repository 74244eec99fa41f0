use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::{compile_nfa, determinize, parse_regex, Alphabet, Dfa, Symbol};
use crate::error::Result;

pub type StateId = usize;

/// A strongly connected component of the transition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: Vec<StateId>,
    /// Carries a cycle (a self-loop or more than one state).
    pub nontrivial: bool,
    /// For every symbol, transitions inside the component reach at most one state.
    pub memoryless: bool,
}

/// Complete minimal DFA with its component decomposition.
///
/// States are numbered in breadth-first order from the initial state
/// (symbols in code-point order), so two minimal DFAs over the same alphabet
/// are equal exactly when their languages are. The rejecting sink, if any,
/// is an ordinary state and counts towards [`MinimalDfa::n`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDfa {
    dfa: Dfa,
    component_of: Vec<usize>,
    components: Vec<Component>,
    /// `reach[c]` holds the components reachable from component `c`.
    reach: Vec<FixedBitSet>,
    loop_first: Vec<Vec<Symbol>>,
    loop_last: Vec<Vec<Symbol>>,
}

impl MinimalDfa {
    /// Parses, compiles, determinizes and minimizes `regex`.
    pub fn from_regex(regex: &str, cap: usize) -> Result<Self> {
        let ast = parse_regex(regex)?;
        Ok(minimize(&determinize(&compile_nfa(&ast), cap)?))
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Number of states, sink included.
    pub fn n(&self) -> usize {
        self.dfa.state_count()
    }

    /// Suffix length of component abbreviations, `N²`.
    pub fn k(&self) -> usize {
        self.n() * self.n()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn initial(&self) -> StateId {
        self.dfa.initial()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.dfa.is_final(q)
    }

    pub fn step(&self, q: StateId, s: Symbol) -> Option<StateId> {
        self.dfa.step(q, s)
    }

    pub fn run(&self, q: StateId, word: &[Symbol]) -> Option<StateId> {
        self.dfa.run(q, word)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.dfa.accepts(word)
    }

    pub fn component_of(&self, q: StateId) -> usize {
        self.component_of[q]
    }

    /// Components in topological order of the component graph.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `q1 ⇝ q2`: some word leads from `q1` to `q2` (reflexive).
    pub fn reaches(&self, q1: StateId, q2: StateId) -> bool {
        self.reach[self.component_of[q1]].contains(self.component_of[q2])
    }

    /// First symbols of nonempty loops at `q`.
    pub fn loop_symbols(&self, q: StateId) -> &[Symbol] {
        &self.loop_first[q]
    }

    /// Last symbols of nonempty loops at `q`.
    pub fn loop_end_symbols(&self, q: StateId) -> &[Symbol] {
        &self.loop_last[q]
    }

    pub fn has_loops(&self, q: StateId) -> bool {
        self.components[self.component_of[q]].nontrivial
    }

    pub fn is_memoryless(&self, q: StateId) -> bool {
        self.components[self.component_of[q]].memoryless
    }

    /// Some final state is reachable from `q`.
    pub fn is_live(&self, q: StateId) -> bool {
        (0..self.n()).any(|f| self.is_final(f) && self.reaches(q, f))
    }

    /// Automaton for `L_q`: the same transitions with initial state `q`.
    pub fn residual(&self, q: StateId) -> Dfa {
        self.dfa.with_initial(q)
    }

    /// Minimal DFA of `w⁻¹L`; `None` if `w` uses symbols outside the alphabet
    /// (the quotient is then empty over the extended alphabet).
    pub fn left_quotient(&self, w: &[Symbol]) -> Option<MinimalDfa> {
        self.run(self.initial(), w).map(|q| minimize(&self.residual(q)))
    }

    /// Shortest word (then smallest in symbol order) leading from `from` to `to`.
    pub fn shortest_path(&self, from: StateId, to: StateId) -> Option<Vec<Symbol>> {
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if q == to {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for (i, &s) in self.alphabet().symbols().iter().enumerate() {
                let r = self.dfa.next(q, i);
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, s));
                    queue.push_back(r);
                }
            }
        }
        None
    }
}

/// Minimizes a complete DFA: drops unreachable states, merges equivalent
/// states by partition refinement and renumbers canonically.
pub fn minimize(dfa: &Dfa) -> MinimalDfa {
    let k = dfa.alphabet().len();
    let reachable = dfa.reachable();
    let live: Vec<usize> = (0..dfa.state_count()).filter(|&q| reachable[q]).collect();

    // Moore refinement: split classes by the classes of their successors.
    let mut class = vec![usize::MAX; dfa.state_count()];
    for &q in &live {
        class[q] = dfa.is_final(q) as usize;
    }
    let mut count = live.iter().map(|&q| class[q]).collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![usize::MAX; dfa.state_count()];
        for &q in &live {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|i| class[dfa.next(q, i)]));
            let fresh = ids.len();
            next[q] = *ids.entry(sig).or_insert(fresh);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // Canonical numbering: breadth-first from the initial class.
    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([dfa.initial()]);
    number.insert(class[dfa.initial()], 0);
    reps.push(dfa.initial());
    while let Some(q) = queue.pop_front() {
        for i in 0..k {
            let r = dfa.next(q, i);
            if let std::collections::hash_map::Entry::Vacant(slot) = number.entry(class[r]) {
                slot.insert(reps.len());
                reps.push(r);
                queue.push_back(r);
            }
        }
    }
    let rows = reps.iter().map(|&q| (0..k).map(|i| number[&class[dfa.next(q, i)]]).collect()).collect();
    let finals = reps.iter().map(|&q| dfa.is_final(q)).collect();
    let min = Dfa::new(dfa.alphabet().clone(), rows, 0, finals).expect("well-formed quotient");
    analyze(min)
}

fn analyze(dfa: Dfa) -> MinimalDfa {
    let n = dfa.state_count();
    let k = dfa.alphabet().len();
    let d = &dfa;
    let succ = |q: usize| (0..k).map(move |i| d.next(q, i));

    // Kosaraju: finishing order on the graph, then components on the
    // transposed graph in decreasing finishing time, which yields them in
    // topological order.
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (q, i) = *top;
            if i < k {
                top.1 += 1;
                let r = dfa.next(q, i);
                if !visited[r] {
                    visited[r] = true;
                    stack.push((r, 0));
                }
            } else {
                order.push(q);
                stack.pop();
            }
        }
    }
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for q in 0..n {
        for r in succ(q) {
            preds[r].push(q);
        }
    }
    let mut component_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &root in order.iter().rev() {
        if component_of[root] != usize::MAX {
            continue;
        }
        let c = members.len();
        component_of[root] = c;
        let mut stack = vec![root];
        let mut states = Vec::new();
        while let Some(q) = stack.pop() {
            states.push(q);
            for &p in &preds[q] {
                if component_of[p] == usize::MAX {
                    component_of[p] = c;
                    stack.push(p);
                }
            }
        }
        states.sort_unstable();
        members.push(states);
    }

    let components: Vec<Component> = members
        .into_iter()
        .enumerate()
        .map(|(c, states)| {
            let nontrivial = states.len() > 1 || succ(states[0]).any(|r| r == states[0]);
            let memoryless = (0..k).all(|i| {
                let mut targets: Vec<usize> =
                    states.iter().map(|&p| dfa.next(p, i)).filter(|&r| component_of[r] == c).collect();
                targets.sort_unstable();
                targets.dedup();
                targets.len() <= 1
            });
            Component { states, nontrivial, memoryless }
        })
        .collect();

    let m = components.len();
    let mut reach = vec![FixedBitSet::with_capacity(m); m];
    for c in (0..m).rev() {
        let mut set = FixedBitSet::with_capacity(m);
        set.insert(c);
        for &q in &components[c].states {
            for r in succ(q) {
                let d = component_of[r];
                if d != c {
                    set.union_with(&reach[d]);
                }
            }
        }
        reach[c] = set;
    }

    let symbols = dfa.alphabet().symbols();
    let mut loop_first = vec![Vec::new(); n];
    let mut loop_last = vec![Vec::new(); n];
    for q in 0..n {
        for (i, &s) in symbols.iter().enumerate() {
            let r = dfa.next(q, i);
            if component_of[r] == component_of[q] {
                loop_first[q].push(s);
                loop_last[r].push(s);
            }
        }
    }
    for list in &mut loop_last {
        list.sort_unstable();
        list.dedup();
    }

    MinimalDfa { dfa, component_of, components, reach, loop_first, loop_last }
}
