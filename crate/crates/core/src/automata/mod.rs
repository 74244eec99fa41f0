//! Regular expressions and finite automata over single-character symbols.

mod dfa;
mod dot;
mod minimal;
mod monoid;
mod nfa;
mod regex;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use dfa::{contains, counterexample, determinize, Dfa};
pub use dot::to_dot;
pub use minimal::{minimize, Component, MinimalDfa, StateId};
pub use monoid::{is_aperiodic, transition_monoid, TransitionMonoid};
pub use nfa::{compile_nfa, Nfa};
pub use regex::{parse_regex, RegexAst};

/// Default bound on the number of states any construction may create.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// The state cap in effect: `TRAILRPQ_STATE_CAP` if set to a positive integer,
/// otherwise [`DEFAULT_STATE_CAP`]. Read once per process.
pub fn state_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("TRAILRPQ_STATE_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_STATE_CAP)
    })
}

/// A single character from `[a-z0-9]`, ordered by code point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn new(c: char) -> Result<Self> {
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            Ok(Symbol(c as u8))
        } else {
            Err(Error::InvalidSymbol(c))
        }
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    /// Position in the fixed 36-symbol universe (digits first).
    fn slot(self) -> usize {
        if self.0.is_ascii_digit() {
            (self.0 - b'0') as usize
        } else {
            10 + (self.0 - b'a') as usize
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.as_char())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub type Word = Vec<Symbol>;

/// Parses a word written as a plain string of symbols.
pub fn parse_word(text: &str) -> Result<Word> {
    text.chars().map(Symbol::new).collect()
}

pub fn word_to_string(word: &[Symbol]) -> String {
    word.iter().map(|s| s.as_char()).collect()
}

const UNIVERSE: usize = 36;
const ABSENT: u8 = u8::MAX;

/// A sorted set of symbols with constant-time index lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: [u8; UNIVERSE],
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        symbols.sort();
        symbols.dedup();
        let mut index = [ABSENT; UNIVERSE];
        for (i, s) in symbols.iter().enumerate() {
            index[s.slot()] = i as u8;
        }
        Alphabet { symbols, index }
    }

    pub fn empty() -> Self {
        Alphabet::new([])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        match self.index[s.slot()] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.index_of(s).is_some()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.symbols.iter().chain(other.symbols.iter()).copied())
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|&s| other.contains(s))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", word_to_string(&self.symbols))
    }
}
