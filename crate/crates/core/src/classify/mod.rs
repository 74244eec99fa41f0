//! Tractability classes of regular languages for trail queries.

mod gadget;
mod witness;

use std::fmt;

use crate::automata::{
    contains, counterexample, is_aperiodic, state_cap, Alphabet, MinimalDfa, Nfa, RegexAst, StateId, Symbol, Word,
};
use crate::error::Result;

pub use gadget::{build_hardness_gadget, parse_edp, EdpInstance, Gadget, RESERVED_PREFIX};
pub use witness::{extract_witness, validate_witness, HardnessWitness};

/// Complexity of trail queries for a fixed language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    Ac0,
    NlComplete,
    NpComplete,
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trichotomy::Ac0 => "AC0",
            Trichotomy::NlComplete => "NL_COMPLETE",
            Trichotomy::NpComplete => "NP_COMPLETE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub finite: bool,
    pub downward_closed: bool,
    pub aperiodic: bool,
    pub sptract: bool,
    pub ttract: bool,
    /// Every component of the minimal DFA is memoryless.
    pub memoryless: bool,
    pub trichotomy: Trichotomy,
    pub witness: Option<HardnessWitness>,
    /// States of the minimal DFA, sink included.
    pub n: usize,
    pub k: usize,
}

impl ClassificationReport {
    /// Report as ordered `key=value` pairs; witness fields are prefixed `witness.`.
    pub fn to_kv(&self) -> Vec<(String, String)> {
        let mut kv: Vec<(String, String)> = vec![
            ("finite".into(), self.finite.to_string()),
            ("downward_closed".into(), self.downward_closed.to_string()),
            ("aperiodic".into(), self.aperiodic.to_string()),
            ("sptract".into(), self.sptract.to_string()),
            ("ttract".into(), self.ttract.to_string()),
            ("memoryless".into(), self.memoryless.to_string()),
            ("trichotomy".into(), self.trichotomy.to_string()),
            ("n".into(), self.n.to_string()),
            ("k".into(), self.k.to_string()),
        ];
        if let Some(w) = &self.witness {
            for (k, v) in w.to_kv() {
                kv.push((format!("witness.{k}"), v));
            }
        }
        kv
    }
}

/// `L` is finite: no state on a cycle can still reach a final state.
pub fn is_finite_language(dfa: &MinimalDfa) -> bool {
    (0..dfa.n()).all(|q| !dfa.has_loops(q) || !dfa.is_live(q))
}

/// Words that leave `q` and return to it, possibly empty: the automaton with
/// initial and final state `q`, restricted to the component of `q`.
pub fn loop_language(dfa: &MinimalDfa, q: StateId) -> Nfa {
    let comp = &dfa.components()[dfa.component_of(q)];
    let mut nfa = Nfa::empty(dfa.alphabet().clone());
    for &p in &comp.states {
        nfa.add_state(p == q);
    }
    let local = |p: StateId| comp.states.binary_search(&p).ok();
    nfa.add_initial(local(q).expect("q in its component"));
    for &p in &comp.states {
        for &s in dfa.alphabet().symbols() {
            let r = dfa.step(p, s).expect("complete");
            if let Some(j) = local(r) {
                nfa.add_transition(local(p).unwrap(), s, j);
            }
        }
    }
    nfa
}

/// `Lw(q) ∩ aΣ*`.
fn loops_starting_with(dfa: &MinimalDfa, q: StateId, a: Symbol, cap: usize) -> Result<Nfa> {
    loop_language(dfa, q).intersection(&Nfa::starting_with(a, dfa.alphabet()), cap)
}

/// `Lw(q) ∩ Σ*a`.
fn loops_ending_with(dfa: &MinimalDfa, q: StateId, a: Symbol, cap: usize) -> Result<Nfa> {
    loop_language(dfa, q).intersection(&Nfa::ending_with(a, dfa.alphabet()), cap)
}

/// `Lw(q)`: nonempty loops.
fn nonempty_loops(dfa: &MinimalDfa, q: StateId, cap: usize) -> Result<Nfa> {
    let mut acc = Nfa::empty(dfa.alphabet().clone());
    for &a in dfa.loop_symbols(q) {
        acc = acc.union(&loops_starting_with(dfa, q, a, cap)?);
    }
    Ok(acc)
}

/// A failing instance of the left-synchronized containment test:
/// `word ∈ (Lw(q2) ∩ aΣ*)^N · L_q2` but `word ∉ L_q1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtractViolation {
    pub q1: StateId,
    pub q2: StateId,
    pub a: Symbol,
    pub word: Word,
}

/// `(factor)^N · L_q2 ⊆ L_q1`, returning a counterexample otherwise.
fn power_containment(dfa: &MinimalDfa, q1: StateId, q2: StateId, factor: &Nfa, cap: usize) -> Result<Option<Word>> {
    if factor.is_empty() {
        return Ok(None);
    }
    let left = factor.power(dfa.n()).concat(&Nfa::from_dfa(&dfa.residual(q2)));
    counterexample(&dfa.residual(q1), &left, cap)
}

/// All violations of the left-synchronized test, in order of `(q1, q2, a)`.
pub fn ttract_violations(dfa: &MinimalDfa) -> Result<Vec<TtractViolation>> {
    let cap = state_cap();
    let mut out = Vec::new();
    for q1 in 0..dfa.n() {
        for q2 in (0..dfa.n()).filter(|&q2| dfa.reaches(q1, q2)) {
            for &a in dfa.loop_symbols(q1) {
                let factor = loops_starting_with(dfa, q2, a, cap)?;
                if let Some(word) = power_containment(dfa, q1, q2, &factor, cap)? {
                    out.push(TtractViolation { q1, q2, a, word });
                }
            }
        }
    }
    Ok(out)
}

/// Left-synchronized containment: for all `q1 ⇝ q2` and `a ∈ LoopSym(q1)`,
/// `(Lw(q2) ∩ aΣ*)^N · L_q2 ⊆ L_q1`.
pub fn is_ttract(dfa: &MinimalDfa) -> Result<bool> {
    let cap = state_cap();
    for q1 in 0..dfa.n() {
        for q2 in (0..dfa.n()).filter(|&q2| dfa.reaches(q1, q2)) {
            for &a in dfa.loop_symbols(q1) {
                let factor = loops_starting_with(dfa, q2, a, cap)?;
                if power_containment(dfa, q1, q2, &factor, cap)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Right-synchronized containment: loops that end with a shared symbol.
pub fn is_ttract_right(dfa: &MinimalDfa) -> Result<bool> {
    let cap = state_cap();
    for q1 in 0..dfa.n() {
        for q2 in (0..dfa.n()).filter(|&q2| dfa.reaches(q1, q2)) {
            for &a in dfa.loop_end_symbols(q1) {
                let factor = loops_ending_with(dfa, q2, a, cap)?;
                if power_containment(dfa, q1, q2, &factor, cap)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Unsynchronized variant: for all `q1 ⇝ q2` that both carry loops,
/// `Lw(q2)^N · L_q2 ⊆ L_q1`.
pub fn is_sptract(dfa: &MinimalDfa) -> Result<bool> {
    let cap = state_cap();
    for q1 in (0..dfa.n()).filter(|&q| dfa.has_loops(q)) {
        for q2 in (0..dfa.n()).filter(|&q2| dfa.has_loops(q2) && dfa.reaches(q1, q2)) {
            let factor = nonempty_loops(dfa, q2, cap)?;
            if power_containment(dfa, q1, q2, &factor, cap)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Suffix language containment: `L_δ(q,a) ⊆ L_q` for every transition.
pub fn is_downward_closed(dfa: &MinimalDfa) -> Result<bool> {
    let cap = state_cap();
    for q in 0..dfa.n() {
        for &s in dfa.alphabet().symbols() {
            let r = dfa.step(q, s).expect("complete");
            if r != q && !contains(&dfa.residual(q), &Nfa::from_dfa(&dfa.residual(r)), cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes every flag, the verdict and, outside Ttract, a hardness witness.
pub fn classify(dfa: &MinimalDfa) -> Result<ClassificationReport> {
    let finite = is_finite_language(dfa);
    let ttract = is_ttract(dfa)?;
    let trichotomy = match (finite, ttract) {
        (true, _) => Trichotomy::Ac0,
        (false, true) => Trichotomy::NlComplete,
        (false, false) => Trichotomy::NpComplete,
    };
    let witness = if ttract { None } else { Some(extract_witness(dfa)?) };
    Ok(ClassificationReport {
        finite,
        downward_closed: is_downward_closed(dfa)?,
        aperiodic: is_aperiodic(dfa, state_cap())?,
        sptract: is_sptract(dfa)?,
        ttract,
        memoryless: dfa.components().iter().all(|c| c.memoryless),
        trichotomy,
        witness,
        n: dfa.n(),
        k: dfa.k(),
    })
}

/// Minimal DFA of `ast` over its own alphabet, extended by `extra`.
pub fn minimal_dfa(ast: &RegexAst, extra: &Alphabet) -> Result<MinimalDfa> {
    let nfa = crate::automata::compile_nfa(ast).with_alphabet(extra);
    Ok(crate::automata::minimize(&crate::automata::determinize(&nfa, state_cap())?))
}
