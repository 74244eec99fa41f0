//! Shared fixtures for the benchmarks.

use trailrpq::graphdb::load_graph;
use trailrpq::LabeledGraph;

/// Languages benchmarked by classification, tractable ones first.
pub const LANGUAGES: [&str; 6] = ["(a+b)*", "(ab)*", "a*bc*", "(a+b)*b(a+b)*", "a*ba*", "(ac*bc*)*"];

/// `len` alternating `a`/`b` edges from `x0` to `x{len}` plus a `b`-labelled
/// back edge every third node, so shortest `(ab)*` trails must skip loops.
pub fn ladder(len: usize) -> LabeledGraph {
    let mut text = String::new();
    for i in 0..len {
        let label = if i % 2 == 0 { 'a' } else { 'b' };
        text.push_str(&format!("x{i} {label} x{}\n", i + 1));
        if i % 3 == 2 {
            text.push_str(&format!("x{i} b x{}\n", i - 2));
        }
    }
    load_graph(&text).expect("fixture is well formed").0
}

/// `side × side` grid with `a` edges rightwards and `b` edges downwards.
pub fn grid(side: usize) -> LabeledGraph {
    let mut text = String::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                text.push_str(&format!("g{r}_{c} a g{r}_{}\n", c + 1));
            }
            if r + 1 < side {
                text.push_str(&format!("g{r}_{c} b g{}_{c}\n", r + 1));
            }
        }
    }
    load_graph(&text).expect("fixture is well formed").0
}
