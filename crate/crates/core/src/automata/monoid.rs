use std::collections::HashMap;

use super::{MinimalDfa, Word};
use crate::error::{Error, Result};

/// Transformation monoid of a DFA: all maps `q ↦ δ(q, w)`.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    /// Element `i` maps state `q` to `elements[i][q]`. Element 0 is the identity.
    pub elements: Vec<Vec<u32>>,
    /// A shortest word realizing each element.
    pub witnesses: Vec<Word>,
}

impl TransitionMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first closure of the identity under right multiplication by the
/// symbol maps. Fails once more than `cap` elements are found.
pub fn transition_monoid(dfa: &MinimalDfa, cap: usize) -> Result<TransitionMonoid> {
    let n = dfa.n();
    let symbols = dfa.alphabet().symbols();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut witnesses = vec![Word::new()];
    let mut i = 0;
    while i < elements.len() {
        for (c, &s) in symbols.iter().enumerate() {
            let next: Vec<u32> = elements[i].iter().map(|&q| dfa.dfa().next(q as usize, c) as u32).collect();
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::StateCap { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
                let mut w = witnesses[i].clone();
                w.push(s);
                witnesses.push(w);
            }
        }
        i += 1;
    }
    Ok(TransitionMonoid { elements, witnesses })
}

/// Every element `m` satisfies `m^(k+1) = m^k` for some `k`.
pub fn is_aperiodic(dfa: &MinimalDfa, cap: usize) -> Result<bool> {
    let monoid = transition_monoid(dfa, cap)?;
    Ok(monoid.elements.iter().all(|m| {
        // Powers of m eventually cycle; aperiodic iff the cycle has length 1.
        let compose = |x: &[u32]| x.iter().map(|&q| m[q as usize]).collect::<Vec<u32>>();
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut power = m.clone();
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&power) {
                return k - j == 1;
            }
            seen.insert(power.clone(), k);
            power = compose(&power);
            k += 1;
        }
    }))
}
