use std::collections::{HashMap, VecDeque};

use super::{ttract_violations, TtractViolation};
use crate::automata::{contains, state_cap, word_to_string, MinimalDfa, Nfa, StateId, Symbol, Word};
use crate::error::{Error, Result};

/// Certificate that trail queries for `L` are NP-hard.
///
/// With `a` the first symbol of `w_1` and `w_2`: `δ(i_L, w_ell) = q`,
/// `w_1` is a nonempty loop at `q`, `w_m w_2* w_r ⊆ L_q` and
/// `(w_1 + w_2)* w_r ∩ L_q = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessWitness {
    pub q: StateId,
    pub a: Symbol,
    pub w_ell: Word,
    pub w_m: Word,
    pub w_r: Word,
    pub w_1: Word,
    pub w_2: Word,
}

impl HardnessWitness {
    pub fn to_kv(&self) -> Vec<(String, String)> {
        vec![
            ("q".into(), self.q.to_string()),
            ("a".into(), self.a.to_string()),
            ("w_ell".into(), word_to_string(&self.w_ell)),
            ("w_m".into(), word_to_string(&self.w_m)),
            ("w_r".into(), word_to_string(&self.w_r)),
            ("w_1".into(), word_to_string(&self.w_1)),
            ("w_2".into(), word_to_string(&self.w_2)),
        ]
    }
}

/// Checks every defining condition of a witness with exact automata operations.
pub fn validate_witness(dfa: &MinimalDfa, w: &HardnessWitness) -> Result<bool> {
    if w.q >= dfa.n() || dfa.run(dfa.initial(), &w.w_ell) != Some(w.q) {
        return Ok(false);
    }
    if w.w_1.first() != Some(&w.a) || w.w_2.first() != Some(&w.a) {
        return Ok(false);
    }
    if dfa.run(w.q, &w.w_1) != Some(w.q) {
        return Ok(false);
    }
    let cap = state_cap();
    let residual = dfa.residual(w.q);
    let pumped = Nfa::word(&w.w_m).concat(&Nfa::word(&w.w_2).star()).concat(&Nfa::word(&w.w_r));
    if !contains(&residual, &pumped, cap)? {
        return Ok(false);
    }
    let mixed = Nfa::word(&w.w_1).union(&Nfa::word(&w.w_2)).star().concat(&Nfa::word(&w.w_r));
    Ok(mixed.intersection(&Nfa::from_dfa(&residual), cap)?.is_empty())
}

/// Extracts a witness from a failing left-synchronized containment test.
///
/// For a violation `(q1, q2, a)` the witness uses `q = q1`, `w_1` the N-th
/// power of a shortest `a`-loop at `q1`, `w_m` a shortest word from `q1` to
/// `q2`, and `w_2` a loop factor of the counterexample. Given `w_1` and `w_2`,
/// `w_r` is a shortest word of `L_q2` outside every `L_p` with `p` reachable
/// from `q1` by `(w_1 + w_2)*`; such a `w_r` makes the tuple a witness. If the
/// counterexample factors do not yield one, other `a`-loops at `q2` (length at
/// most 2N) and at `q1` are tried.
pub fn extract_witness(dfa: &MinimalDfa) -> Result<HardnessWitness> {
    let violations = ttract_violations(dfa)?;
    if violations.is_empty() {
        return Err(Error::NoWitness);
    }
    for v in &violations {
        if let Some(w) = witness_for(dfa, v)? {
            return Ok(w);
        }
    }
    Err(Error::Internal("no hardness witness found for a failing containment test".into()))
}

fn witness_for(dfa: &MinimalDfa, v: &TtractViolation) -> Result<Option<HardnessWitness>> {
    let n = dfa.n();
    let w_ell = dfa.shortest_path(dfa.initial(), v.q1).expect("minimal DFA states are reachable");
    let w_m = dfa.shortest_path(v.q1, v.q2).expect("q1 reaches q2");
    let short_loops_q1 = loops_with_prefix(dfa, v.q1, v.a, 2 * n, LOOP_LIMIT);
    let Some(u) = short_loops_q1.first() else {
        return Err(Error::Internal("loop symbol without a loop".into()));
    };

    let mut w1_candidates: Vec<Word> = vec![u.repeat(n)];
    w1_candidates.extend(short_loops_q1.iter().cloned());
    let mut w2_candidates: Vec<Word> = Vec::new();
    if let Some(factors) = split_loops(dfa, v.q2, v.a, n, &v.word) {
        w2_candidates.push(factors[0].clone());
        w2_candidates.push(factors.concat());
    }
    w2_candidates.extend(loops_with_prefix(dfa, v.q2, v.a, 2 * n, LOOP_LIMIT));
    dedup_preserving_order(&mut w1_candidates);
    dedup_preserving_order(&mut w2_candidates);

    for w_1 in &w1_candidates {
        for w_2 in &w2_candidates {
            let Some(w_r) = separating_suffix(dfa, v.q1, v.q2, w_1, w_2) else {
                continue;
            };
            let w = HardnessWitness {
                q: v.q1,
                a: v.a,
                w_ell: w_ell.clone(),
                w_m: w_m.clone(),
                w_r,
                w_1: w_1.clone(),
                w_2: w_2.clone(),
            };
            if validate_witness(dfa, &w)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

const LOOP_LIMIT: usize = 4096;

fn dedup_preserving_order(words: &mut Vec<Word>) {
    let mut seen = std::collections::HashSet::new();
    words.retain(|w| seen.insert(w.clone()));
}

/// Loops at `q` starting with `a`, shortest first then in symbol order,
/// of length at most `max_len`, at most `limit` of them.
fn loops_with_prefix(dfa: &MinimalDfa, q: StateId, a: Symbol, max_len: usize, limit: usize) -> Vec<Word> {
    let comp = dfa.component_of(q);
    let mut out = Vec::new();
    let mut layer: Vec<(Word, StateId)> = match dfa.step(q, a) {
        Some(r) if dfa.component_of(r) == comp => vec![(vec![a], r)],
        _ => return out,
    };
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for (w, r) in layer {
            if r == q {
                out.push(w.clone());
                if out.len() >= limit {
                    return out;
                }
            }
            for &s in dfa.alphabet().symbols() {
                let t = dfa.step(r, s).expect("complete");
                if dfa.component_of(t) == comp {
                    let mut w2 = w.clone();
                    w2.push(s);
                    next.push((w2, t));
                }
            }
            if next.len() > 64 * limit {
                break;
            }
        }
        layer = next;
    }
    out
}

/// Splits `word` as `v_1 ⋯ v_count · y`, each `v_i` a nonempty loop at `q`
/// starting with `a`. Returns the loop factors.
fn split_loops(dfa: &MinimalDfa, q: StateId, a: Symbol, count: usize, word: &[Symbol]) -> Option<Vec<Word>> {
    let mut returns = Vec::new();
    let mut state = q;
    for (i, &s) in word.iter().enumerate() {
        state = dfa.step(state, s)?;
        if state == q {
            returns.push(i + 1);
        }
    }
    fn go(word: &[Symbol], a: Symbol, returns: &[usize], start: usize, left: usize, acc: &mut Vec<Word>) -> bool {
        if left == 0 {
            return true;
        }
        if word.get(start) != Some(&a) {
            return false;
        }
        for &end in returns.iter().filter(|&&e| e > start) {
            acc.push(word[start..end].to_vec());
            if go(word, a, returns, end, left - 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(word, a, &returns, 0, count, &mut acc).then_some(acc)
}

/// Shortest word in `L_q2` that lies outside `L_p` for every state `p`
/// reachable from `q1` by words of `(w_1 + w_2)*`.
fn separating_suffix(dfa: &MinimalDfa, q1: StateId, q2: StateId, w_1: &[Symbol], w_2: &[Symbol]) -> Option<Word> {
    let mut pumped = vec![q1];
    let mut i = 0;
    while i < pumped.len() {
        for w in [w_1, w_2] {
            let r = dfa.run(pumped[i], w)?;
            if !pumped.contains(&r) {
                pumped.push(r);
            }
        }
        i += 1;
    }
    pumped.sort_unstable();

    type Config = (StateId, Vec<StateId>);
    let start: Config = (q2, pumped);
    let mut parent: HashMap<Config, Option<(Config, Symbol)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cfg) = queue.pop_front() {
        let (r, set) = &cfg;
        if dfa.is_final(*r) && set.iter().all(|&p| !dfa.is_final(p)) {
            let mut word = Vec::new();
            let mut cur = cfg.clone();
            while let Some(Some((prev, s))) = parent.get(&cur) {
                word.push(*s);
                cur = prev.clone();
            }
            word.reverse();
            return Some(word);
        }
        for &s in dfa.alphabet().symbols() {
            let r2 = dfa.step(*r, s).expect("complete");
            let mut set2: Vec<StateId> = set.iter().map(|&p| dfa.step(p, s).expect("complete")).collect();
            set2.sort_unstable();
            set2.dedup();
            let next = (r2, set2);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cfg.clone(), s)));
                queue.push_back(next);
            }
        }
    }
    None
}
