use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Dfa, RegexAst, Symbol, Word};
use crate::error::{Error, Result};

/// Nondeterministic automaton without epsilon moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    trans: Vec<Vec<(Symbol, usize)>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

impl Nfa {
    /// An automaton with no states over `alphabet`; accepts nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        Nfa { alphabet, trans: Vec::new(), initial: Vec::new(), finals: Vec::new() }
    }

    /// Accepts exactly the empty word.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let mut n = Nfa::empty(alphabet);
        let q = n.add_state(true);
        n.add_initial(q);
        n
    }

    /// Accepts exactly `word`.
    pub fn word(word: &[Symbol]) -> Self {
        let mut n = Nfa::empty(Alphabet::new(word.iter().copied()));
        let mut q = n.add_state(word.is_empty());
        n.add_initial(q);
        for (i, &s) in word.iter().enumerate() {
            let next = n.add_state(i + 1 == word.len());
            n.add_transition(q, s, next);
            q = next;
        }
        n
    }

    /// Accepts `a Σ*` over `alphabet ∪ {a}`.
    pub fn starting_with(a: Symbol, alphabet: &Alphabet) -> Self {
        let alphabet = alphabet.union(&Alphabet::new([a]));
        let mut n = Nfa::empty(alphabet.clone());
        let q0 = n.add_state(false);
        let q1 = n.add_state(true);
        n.add_initial(q0);
        n.add_transition(q0, a, q1);
        for &s in alphabet.symbols() {
            n.add_transition(q1, s, q1);
        }
        n
    }

    /// Accepts `Σ* a` over `alphabet ∪ {a}`.
    pub fn ending_with(a: Symbol, alphabet: &Alphabet) -> Self {
        Nfa::starting_with(a, alphabet).reverse()
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut n = Nfa::empty(dfa.alphabet().clone());
        for q in 0..dfa.state_count() {
            n.add_state(dfa.is_final(q));
        }
        for q in 0..dfa.state_count() {
            for (i, &s) in dfa.alphabet().symbols().iter().enumerate() {
                n.add_transition(q, s, dfa.next(q, i));
            }
        }
        n.add_initial(dfa.initial());
        n
    }

    pub fn add_state(&mut self, is_final: bool) -> usize {
        self.trans.push(Vec::new());
        self.finals.push(is_final);
        self.trans.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
    }

    pub fn add_transition(&mut self, from: usize, sym: Symbol, to: usize) {
        if !self.alphabet.contains(sym) {
            self.alphabet = self.alphabet.union(&Alphabet::new([sym]));
        }
        if !self.trans[from].contains(&(sym, to)) {
            self.trans[from].push((sym, to));
        }
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn transitions(&self, q: usize) -> &[(Symbol, usize)] {
        &self.trans[q]
    }

    /// Same language over a larger alphabet.
    pub fn with_alphabet(mut self, alphabet: &Alphabet) -> Self {
        self.alphabet = self.alphabet.union(alphabet);
        self
    }

    fn accepts_empty(&self) -> bool {
        self.initial.iter().any(|&q| self.finals[q])
    }

    /// Appends the states of `other`, returning the index offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.state_count();
        self.alphabet = self.alphabet.union(&other.alphabet);
        for q in 0..other.state_count() {
            self.trans.push(other.trans[q].iter().map(|&(s, t)| (s, t + off)).collect());
            self.finals.push(other.finals[q]);
        }
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        for &q in &other.initial {
            n.add_initial(q + off);
        }
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        let bridge: Vec<(Symbol, usize)> = other
            .initial
            .iter()
            .flat_map(|&i| other.trans[i].iter().map(move |&(s, t)| (s, t + off)))
            .collect();
        for q in 0..self.state_count() {
            if self.finals[q] {
                for &(s, t) in &bridge {
                    n.add_transition(q, s, t);
                }
                n.finals[q] = other.accepts_empty();
            }
        }
        if self.accepts_empty() {
            for &i in &other.initial {
                n.add_initial(i + off);
            }
        }
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = Nfa::empty(self.alphabet.clone());
        let start = n.add_state(true);
        n.add_initial(start);
        let off = n.absorb(self);
        let bridge: Vec<(Symbol, usize)> = self
            .initial
            .iter()
            .flat_map(|&i| self.trans[i].iter().map(move |&(s, t)| (s, t + off)))
            .collect();
        for &(s, t) in &bridge {
            n.add_transition(start, s, t);
        }
        for q in 0..self.state_count() {
            if self.finals[q] {
                for &(s, t) in &bridge {
                    n.add_transition(q + off, s, t);
                }
            }
        }
        n
    }

    /// `k`-fold concatenation; `power(0)` accepts only the empty word.
    pub fn power(&self, k: usize) -> Nfa {
        let mut acc = Nfa::epsilon(self.alphabet.clone());
        for _ in 0..k {
            acc = acc.concat(self);
        }
        acc
    }

    pub fn reverse(&self) -> Nfa {
        let mut n = Nfa::empty(self.alphabet.clone());
        for q in 0..self.state_count() {
            n.add_state(self.initial.contains(&q));
        }
        for q in 0..self.state_count() {
            for &(s, t) in &self.trans[q] {
                n.add_transition(t, s, q);
            }
            if self.finals[q] {
                n.add_initial(q);
            }
        }
        n
    }

    /// Product automaton restricted to pairs reachable from the initial pairs.
    pub fn intersection(&self, other: &Nfa, cap: usize) -> Result<Nfa> {
        let mut n = Nfa::empty(self.alphabet.union(&other.alphabet));
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |n: &mut Nfa, queue: &mut VecDeque<(usize, usize)>, p: (usize, usize)| {
            if let Some(&id) = ids.get(&p) {
                return Ok(id);
            }
            if n.state_count() >= cap {
                return Err(Error::StateCap { cap });
            }
            let id = n.add_state(self.finals[p.0] && other.finals[p.1]);
            ids.insert(p, id);
            queue.push_back(p);
            Ok(id)
        };
        for &a in &self.initial {
            for &b in &other.initial {
                let id = intern(&mut n, &mut queue, (a, b))?;
                n.add_initial(id);
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            let from = intern(&mut n, &mut queue, (a, b))?;
            for &(s, x) in &self.trans[a] {
                for &(s2, y) in &other.trans[b] {
                    if s == s2 {
                        let to = intern(&mut n, &mut queue, (x, y))?;
                        n.add_transition(from, s, to);
                    }
                }
            }
        }
        Ok(n)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut cur = vec![false; self.state_count()];
        for &q in &self.initial {
            cur[q] = true;
        }
        for &s in word {
            let mut next = vec![false; self.state_count()];
            for q in (0..self.state_count()).filter(|&q| cur[q]) {
                for &(t, r) in &self.trans[q] {
                    if t == s {
                        next[r] = true;
                    }
                }
            }
            cur = next;
        }
        (0..self.state_count()).any(|q| cur[q] && self.finals[q])
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// A shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            seen[q] = true;
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for &(s, r) in &self.trans[q] {
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

/// Position (Glushkov) automaton of `ast`: one state per symbol occurrence
/// plus an initial state, no epsilon moves.
pub fn compile_nfa(ast: &RegexAst) -> Nfa {
    struct Info {
        nullable: bool,
        first: Vec<usize>,
        last: Vec<usize>,
    }

    struct Builder {
        positions: Vec<Symbol>,
        follow: Vec<Vec<usize>>,
    }

    impl Builder {
        fn link(&mut self, from: &[usize], to: &[usize]) {
            for &l in from {
                self.follow[l].extend_from_slice(to);
            }
        }

        fn go(&mut self, r: &RegexAst) -> Info {
            match r {
                RegexAst::Empty => Info { nullable: false, first: vec![], last: vec![] },
                RegexAst::Epsilon => Info { nullable: true, first: vec![], last: vec![] },
                RegexAst::Symbol(s) => {
                    self.positions.push(*s);
                    self.follow.push(Vec::new());
                    let p = self.positions.len() - 1;
                    Info { nullable: false, first: vec![p], last: vec![p] }
                }
                RegexAst::Union(a, b) => {
                    let (a, b) = (self.go(a), self.go(b));
                    Info {
                        nullable: a.nullable || b.nullable,
                        first: [a.first, b.first].concat(),
                        last: [a.last, b.last].concat(),
                    }
                }
                RegexAst::Concat(a, b) => {
                    let (a, b) = (self.go(a), self.go(b));
                    self.link(&a.last, &b.first);
                    let mut first = a.first;
                    if a.nullable {
                        first.extend_from_slice(&b.first);
                    }
                    let mut last = b.last;
                    if b.nullable {
                        last.extend_from_slice(&a.last);
                    }
                    Info { nullable: a.nullable && b.nullable, first, last }
                }
                RegexAst::Star(a) => {
                    let a = self.go(a);
                    self.link(&a.last, &a.first);
                    Info { nullable: true, ..a }
                }
                RegexAst::Optional(a) => Info { nullable: true, ..self.go(a) },
            }
        }
    }

    let mut b = Builder { positions: Vec::new(), follow: Vec::new() };
    let info = b.go(ast);
    let mut n = Nfa::empty(ast.alphabet());
    let start = n.add_state(info.nullable);
    n.add_initial(start);
    for _ in &b.positions {
        n.add_state(false);
    }
    for &p in &info.last {
        n.set_final(p + 1, true);
    }
    for &p in &info.first {
        n.add_transition(start, b.positions[p], p + 1);
    }
    for (p, follow) in b.follow.iter().enumerate() {
        for &q in follow {
            n.add_transition(p + 1, b.positions[q], q + 1);
        }
    }
    n
}
