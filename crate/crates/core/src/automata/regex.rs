use std::fmt;

use super::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Regular expression syntax tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexAst {
    /// The empty language. Not expressible in the concrete syntax.
    Empty,
    Epsilon,
    Symbol(Symbol),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
    Optional(Box<RegexAst>),
}

impl RegexAst {
    pub fn sym(c: char) -> Self {
        RegexAst::Symbol(Symbol::new(c).expect("valid symbol"))
    }

    pub fn union(a: RegexAst, b: RegexAst) -> Self {
        RegexAst::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: RegexAst, b: RegexAst) -> Self {
        RegexAst::Concat(Box::new(a), Box::new(b))
    }

    pub fn star(a: RegexAst) -> Self {
        RegexAst::Star(Box::new(a))
    }

    pub fn optional(a: RegexAst) -> Self {
        RegexAst::Optional(Box::new(a))
    }

    /// Symbols occurring in the expression.
    pub fn alphabet(&self) -> Alphabet {
        let mut out = Vec::new();
        self.visit(false, &mut |s, _| out.push(s));
        Alphabet::new(out)
    }

    /// Every symbol occurs at most once.
    pub fn is_sore(&self) -> bool {
        let mut counts = [0usize; 128];
        self.visit(false, &mut |s, _| counts[s.as_char() as usize] += 1);
        counts.iter().all(|&c| c <= 1)
    }

    /// Every symbol has at most one occurrence below a Kleene star.
    /// Occurrences outside any star are not restricted.
    pub fn is_star_single_occurrence(&self) -> bool {
        let mut counts = [0usize; 128];
        self.visit(false, &mut |s, starred| {
            if starred {
                counts[s.as_char() as usize] += 1;
            }
        });
        counts.iter().all(|&c| c <= 1)
    }

    fn visit(&self, starred: bool, f: &mut impl FnMut(Symbol, bool)) {
        match self {
            RegexAst::Empty | RegexAst::Epsilon => {}
            RegexAst::Symbol(s) => f(*s, starred),
            RegexAst::Union(a, b) | RegexAst::Concat(a, b) => {
                a.visit(starred, f);
                b.visit(starred, f);
            }
            RegexAst::Star(a) => a.visit(true, f),
            RegexAst::Optional(a) => a.visit(starred, f),
        }
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence levels: 0 union, 1 concatenation, 2 postfix/atom.
        fn go(r: &RegexAst, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match r {
                RegexAst::Empty => write!(f, "∅"),
                RegexAst::Epsilon => write!(f, "ε"),
                RegexAst::Symbol(s) => write!(f, "{s}"),
                RegexAst::Union(a, b) => {
                    if level > 0 {
                        write!(f, "(")?;
                    }
                    go(a, 0, f)?;
                    write!(f, "+")?;
                    go(b, 0, f)?;
                    if level > 0 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                RegexAst::Concat(a, b) => {
                    if level > 1 {
                        write!(f, "(")?;
                    }
                    go(a, 1, f)?;
                    go(b, 1, f)?;
                    if level > 1 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                RegexAst::Star(a) => {
                    go(a, 2, f)?;
                    write!(f, "*")
                }
                RegexAst::Optional(a) => {
                    go(a, 2, f)?;
                    write!(f, "?")
                }
            }
        }
        go(self, 0, f)
    }
}

/// Parses the concrete syntax:
///
/// ```text
/// expr   := term ('+' term)*
/// term   := factor+
/// factor := atom ('*' | '?')*
/// atom   := SYMBOL | '(' expr ')'
/// ```
///
/// Concatenation and union associate to the right.
pub fn parse_regex(text: &str) -> Result<RegexAst> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let ast = p.expr()?;
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(ast)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        let message = match self.peek() {
            Some(b) => format!("{message} {:?}", b as char),
            None => format!("{message}: end of input"),
        };
        Error::Syntax { offset: self.pos, message }
    }

    fn expr(&mut self) -> Result<RegexAst> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(fold_right(terms, RegexAst::union))
    }

    fn term(&mut self) -> Result<RegexAst> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(b) if b != b'+' && b != b')') {
            factors.push(self.factor()?);
        }
        Ok(fold_right(factors, RegexAst::concat))
    }

    fn factor(&mut self) -> Result<RegexAst> {
        let mut atom = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => atom = RegexAst::star(atom),
                Some(b'?') => atom = RegexAst::optional(atom),
                _ => return Ok(atom),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<RegexAst> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if is_symbol_byte(b) => {
                self.pos += 1;
                Ok(RegexAst::Symbol(Symbol(b)))
            }
            Some(b) if b"()+*?".contains(&b) => Err(self.error("expected symbol or '(', found")),
            Some(_) => {
                let c = std::str::from_utf8(&self.bytes[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('\u{fffd}');
                Err(Error::InvalidSymbol(c))
            }
            None => Err(self.error("expected symbol or '('")),
        }
    }
}

fn is_symbol_byte(b: u8) -> bool {
    b.is_ascii_lowercase() || b.is_ascii_digit()
}

fn fold_right(mut items: Vec<RegexAst>, join: fn(RegexAst, RegexAst) -> RegexAst) -> RegexAst {
    let mut acc = items.pop().expect("at least one item");
    while let Some(prev) = items.pop() {
        acc = join(prev, acc);
    }
    acc
}
