use std::collections::HashMap;

use super::{Alphabet, Nfa, Symbol, Word};
use crate::error::{Error, Result};

/// Complete deterministic automaton. Transitions are stored row-major,
/// one row per state, one column per alphabet index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a transition table with one row per state.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<usize>>, initial: usize, finals: Vec<bool>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if finals.len() != n {
            return Err(Error::InvalidAutomaton(format!("{} final flags for {n} states", finals.len())));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        let mut delta = Vec::with_capacity(n * alphabet.len());
        for (q, row) in rows.into_iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("state {q} has {} transitions", row.len())));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!("state {q} has target {t} out of range")));
            }
            delta.extend(row);
        }
        Ok(Dfa { alphabet, delta, initial, finals })
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    /// Successor of `q` on the symbol with alphabet index `i`.
    pub fn next(&self, q: usize, i: usize) -> usize {
        self.delta[q * self.alphabet.len() + i]
    }

    /// Successor of `q` on `s`; `None` when `s` is outside the alphabet.
    pub fn step(&self, q: usize, s: Symbol) -> Option<usize> {
        self.alphabet.index_of(s).map(|i| self.next(q, i))
    }

    pub fn run(&self, q: usize, word: &[Symbol]) -> Option<usize> {
        word.iter().try_fold(q, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run(self.initial, word).is_some_and(|q| self.finals[q])
    }

    /// Same transition structure with initial state `q`: accepts the residual language of `q`.
    pub fn with_initial(&self, q: usize) -> Dfa {
        Dfa { initial: q, ..self.clone() }
    }

    pub fn complement(&self) -> Dfa {
        Dfa { finals: self.finals.iter().map(|f| !f).collect(), ..self.clone() }
    }

    /// Same language over `self.alphabet ∪ alphabet`; new symbols lead to a fresh sink.
    pub fn extend_alphabet(&self, alphabet: &Alphabet) -> Dfa {
        let full = self.alphabet.union(alphabet);
        if full.len() == self.alphabet.len() {
            return self.clone();
        }
        let sink = self.state_count();
        let rows = (0..=sink)
            .map(|q| {
                full.symbols()
                    .iter()
                    .map(|&s| if q == sink { sink } else { self.step(q, s).unwrap_or(sink) })
                    .collect()
            })
            .collect();
        let mut finals = self.finals.clone();
        finals.push(false);
        Dfa::new(full, rows, self.initial, finals).expect("well-formed extension")
    }

    /// Synchronous product over the union alphabet; a pair is final when `accept` says so.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool, cap: usize) -> Result<Dfa> {
        let alphabet = self.alphabet.union(&other.alphabet);
        let a = self.extend_alphabet(&alphabet);
        let b = other.extend_alphabet(&alphabet);
        let k = alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(a.initial, b.initial)];
        ids.insert(pairs[0], 0);
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                let next = (a.next(p, c), b.next(q, c));
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= cap {
                            return Err(Error::StateCap { cap });
                        }
                        ids.insert(next, pairs.len());
                        pairs.push(next);
                        pairs.len() - 1
                    }
                };
                row.push(id);
            }
            rows.push(row);
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| accept(a.finals[p], b.finals[q])).collect();
        Dfa::new(alphabet, rows, 0, finals)
    }

    /// Accepts exactly `word` over `alphabet ∪ symbols(word)`.
    pub fn single_word(word: &[Symbol], alphabet: &Alphabet) -> Dfa {
        let alphabet = alphabet.union(&Alphabet::new(word.iter().copied()));
        let sink = word.len() + 1;
        let rows = (0..=sink)
            .map(|q| {
                alphabet
                    .symbols()
                    .iter()
                    .map(|&s| if q < word.len() && word[q] == s { q + 1 } else { sink })
                    .collect()
            })
            .collect();
        let finals = (0..=sink).map(|q| q == word.len()).collect();
        Dfa::new(alphabet, rows, 0, finals).expect("well-formed word automaton")
    }

    /// `L ∖ {word}`.
    pub fn remove_word(&self, word: &[Symbol], cap: usize) -> Result<Dfa> {
        let w = Dfa::single_word(word, &self.alphabet);
        self.product(&w, |a, b| a && !b, cap)
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for i in 0..self.alphabet.len() {
                let r = self.next(q, i);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let seen = self.reachable();
        !(0..self.state_count()).any(|q| seen[q] && self.finals[q])
    }

    /// Parses the text format written by [`Dfa::to_text`]:
    ///
    /// ```text
    /// alphabet a b
    /// initial p
    /// final p r
    /// p a q
    /// ```
    ///
    /// State names are arbitrary tokens. The `alphabet` line is optional
    /// (symbols of the transitions are used otherwise); missing transitions
    /// go to an added rejecting sink.
    pub fn from_text(text: &str) -> Result<Dfa> {
        let format = |line: usize, message: String| Error::Format { line, message };
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str| {
            let next = names.len();
            *names.entry(name.to_string()).or_insert(next)
        };
        let mut declared: Option<Alphabet> = None;
        let mut initial = None;
        let mut finals = Vec::new();
        let mut transitions = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                [] => {}
                [first, ..] if first.starts_with('#') => {}
                ["alphabet", ref symbols @ ..] => {
                    let parsed: Result<Vec<Symbol>> = symbols.iter().map(|s| single_symbol(s)).collect();
                    declared = Some(Alphabet::new(parsed.map_err(|e| format(line_no, e.to_string()))?));
                }
                ["initial", q] => {
                    if initial.replace(intern(q)).is_some() {
                        return Err(format(line_no, "second `initial` line".into()));
                    }
                }
                ["final", ref qs @ ..] => finals.extend(qs.iter().map(|q| intern(q))),
                [p, a, q] => {
                    let a = single_symbol(a).map_err(|e| format(line_no, e.to_string()))?;
                    transitions.push((line_no, intern(p), a, intern(q)));
                }
                _ => return Err(format(line_no, "expected `alphabet`, `initial`, `final` or `state symbol state`".into())),
            }
        }
        let initial = initial.ok_or_else(|| format(0, "missing `initial` line".into()))?;
        let alphabet = match declared {
            Some(a) => a,
            None => Alphabet::new(transitions.iter().map(|t| t.2)),
        };
        let n = names.len();
        let sink = n;
        let mut rows = vec![vec![None; alphabet.len()]; n];
        for &(line_no, p, a, q) in &transitions {
            let col = alphabet.index_of(a).ok_or_else(|| format(line_no, format!("symbol {a} not in the alphabet")))?;
            if rows[p][col].replace(q).is_some_and(|old| old != q) {
                return Err(format(line_no, format!("second {a}-transition from the same state")));
            }
        }
        let complete = rows.iter().all(|r| r.iter().all(Option::is_some));
        let mut table: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().map(|t| t.unwrap_or(sink)).collect()).collect();
        let mut is_final = vec![false; n];
        for q in finals {
            is_final[q] = true;
        }
        if !complete {
            table.push(vec![sink; alphabet.len()]);
            is_final.push(false);
        }
        Dfa::new(alphabet, table, initial, is_final)
    }

    /// Text form with states named by their index.
    pub fn to_text(&self) -> String {
        let symbols: Vec<String> = self.alphabet.symbols().iter().map(|s| s.to_string()).collect();
        let finals: Vec<String> = (0..self.state_count()).filter(|&q| self.finals[q]).map(|q| q.to_string()).collect();
        let mut out = format!("alphabet {}\ninitial {}\nfinal {}\n", symbols.join(" "), self.initial, finals.join(" "));
        for q in 0..self.state_count() {
            for (i, s) in self.alphabet.symbols().iter().enumerate() {
                out.push_str(&format!("{q} {s} {}\n", self.next(q, i)));
            }
        }
        out
    }
}

/// Subset construction. The empty subset, when reachable, becomes the sink.
pub fn determinize(nfa: &Nfa, cap: usize) -> Result<Dfa> {
    let alphabet = nfa.alphabet().clone();
    let k = alphabet.len();
    let mut start: Vec<usize> = nfa.initial().to_vec();
    start.sort_unstable();
    start.dedup();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    ids.insert(start.clone(), 0);
    let mut subsets = vec![start];
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
        for &q in &subsets[i] {
            for &(s, r) in nfa.transitions(q) {
                succ[alphabet.index_of(s).expect("symbol in alphabet")].push(r);
            }
        }
        let mut row = Vec::with_capacity(k);
        for mut set in succ {
            set.sort_unstable();
            set.dedup();
            let id = match ids.get(&set) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Err(Error::StateCap { cap });
                    }
                    ids.insert(set.clone(), subsets.len());
                    subsets.push(set);
                    subsets.len() - 1
                }
            };
            row.push(id);
        }
        rows.push(row);
        i += 1;
    }
    let finals = subsets.iter().map(|set| set.iter().any(|&q| nfa.is_final(q))).collect();
    Dfa::new(alphabet, rows, 0, finals)
}

/// A shortest word of `L(b) ∖ L(a)`, if any. Computed as the emptiness
/// check of `b ∩ complement(a)` over the union alphabet.
pub fn counterexample(a: &Dfa, b: &Nfa, cap: usize) -> Result<Option<Word>> {
    let alphabet = a.alphabet().union(b.alphabet());
    let complement = Nfa::from_dfa(&a.extend_alphabet(&alphabet).complement());
    Ok(b.intersection(&complement, cap)?.shortest_word())
}

/// `L(b) ⊆ L(a)`.
pub fn contains(a: &Dfa, b: &Nfa, cap: usize) -> Result<bool> {
    Ok(counterexample(a, b, cap)?.is_none())
}

fn single_symbol(text: &str) -> Result<Symbol> {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Symbol::new(c),
        _ => Err(Error::InvalidAutomaton(format!("{text:?} is not a single symbol"))),
    }
}
