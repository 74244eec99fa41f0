//! Property suites shared by the module tests (small sample counts) and the
//! acceptance run (full counts). Each returns a one-line summary on success
//! and a description of the first violations otherwise.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trailrpq::automata::{determinize, minimize, Alphabet, MinimalDfa, Nfa, Word};
use trailrpq::classify::{
    build_hardness_gadget, classify, extract_witness, is_ttract, is_ttract_right, minimal_dfa, validate_witness,
    Trichotomy,
};
use trailrpq::enumerate::{all_trails_oracle, enumerate_trails};
use trailrpq::graphdb::{EdgeId, LabeledGraph};
use trailrpq::trailquery::{
    brute_force_trail, compute_edge_domains, shortest_completion, solve, summary_of, BruteConstraints, CandidateSummary,
    Engine, EngineUsed, Language, SolveOptions, SummaryEntry,
};

use super::*;

pub type Outcome = Result<String, String>;

const CAP: usize = 1 << 18;

fn verdict(checked: usize, failures: Vec<String>, what: &str) -> Outcome {
    if failures.is_empty() {
        Ok(format!("{checked} {what}, 0 violations"))
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Err(format!("{} of {checked} {what} failed: {}", failures.len(), shown.join("; ")))
    }
}

fn minimal_of_nfa(nfa: &Nfa) -> MinimalDfa {
    minimize(&determinize(nfa, CAP).unwrap())
}

fn abc() -> Alphabet {
    Alphabet::new(['a', 'b', 'c'].map(sym))
}

// ---------------------------------------------------------------------------
// Classification.

/// Expected flags per named language; `None` leaves a flag unchecked.
struct Vector {
    regex: &'static str,
    ttract: bool,
    sptract: Option<bool>,
    downward_closed: Option<bool>,
    aperiodic: Option<bool>,
    verdict: Option<Trichotomy>,
}

const fn v(regex: &'static str, ttract: bool) -> Vector {
    Vector { regex, ttract, sptract: None, downward_closed: None, aperiodic: None, verdict: None }
}

pub fn classification_vectors() -> Outcome {
    let vectors = [
        Vector { sptract: Some(false), ..v("(ab)*", true) },
        v("(abc)*", true),
        v("a*ba*", false),
        Vector { aperiodic: Some(false), ..v("(aa)*", false) },
        v("(aba)*", false),
        Vector { sptract: Some(false), ..v("a*bc*", true) },
        Vector { sptract: Some(true), downward_closed: Some(true), ..v("b*", true) },
        v("(a+b)*a(a+b)*", false),
        Vector { aperiodic: Some(true), ..v("(ac*bc*)*", false) },
        v("a*ba*(cd)*", false),
        Vector { verdict: Some(Trichotomy::Ac0), ..v("ab", true) },
    ];
    let mut failures = Vec::new();
    for vec in &vectors {
        let r = classify(&min(vec.regex)).map_err(|e| format!("{}: {e}", vec.regex))?;
        let mut check = |name: &str, got: bool, want: Option<bool>| {
            if want.is_some_and(|w| w != got) {
                failures.push(format!("{} {name}={got}", vec.regex));
            }
        };
        check("ttract", r.ttract, Some(vec.ttract));
        check("sptract", r.sptract, vec.sptract);
        check("downward_closed", r.downward_closed, vec.downward_closed);
        check("aperiodic", r.aperiodic, vec.aperiodic);
        if vec.verdict.is_some_and(|t| t != r.trichotomy) {
            failures.push(format!("{} trichotomy={}", vec.regex, r.trichotomy));
        }
    }
    verdict(vectors.len(), failures, "languages")
}

fn reverse_of(d: &MinimalDfa) -> MinimalDfa {
    minimal_of_nfa(&Nfa::from_dfa(d.dfa()).reverse())
}

pub fn ttract_equivalence(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let d = random_dfa(&mut r, 6, 3);
        let left = is_ttract(&d).map_err(|e| e.to_string())?;
        let right = is_ttract_right(&d).map_err(|e| e.to_string())?;
        let reversed = is_ttract(&reverse_of(&d)).map_err(|e| e.to_string())?;
        if left != right || left != reversed {
            failures.push(format!("dfa #{i}: left={left} right={right} reverse={reversed}"));
        }
    }
    verdict(count, failures, "random DFAs")
}

pub fn closure_suite(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let symbols = abc();
    let mut failures = Vec::new();
    let mut removals = 0;
    for i in 0..count {
        let (x, y) = (random_sore(&mut r, &['a', 'b', 'c']), random_sore(&mut r, &['a', 'b', 'c']));
        let (d1, d2) = (minimal_dfa(&x, &symbols).unwrap(), minimal_dfa(&y, &symbols).unwrap());
        let (n1, n2) = (Nfa::from_dfa(d1.dfa()), Nfa::from_dfa(d2.dfa()));
        let w = random_word(&mut r, symbols.symbols(), 3);
        let mut derived = vec![
            ("union", minimal_of_nfa(&n1.union(&n2))),
            ("intersection", minimal_of_nfa(&n1.intersection(&n2, CAP).unwrap())),
            ("reversal", reverse_of(&d1)),
            ("quotient", d1.left_quotient(&w).unwrap()),
        ];
        let members: Vec<Word> = all_words(symbols.symbols(), 4).into_iter().filter(|w| d1.accepts(w)).collect();
        if !members.is_empty() {
            let m = &members[r.random_range(0..members.len())];
            derived.push(("removal", minimize(&d1.dfa().remove_word(m, CAP).unwrap())));
            removals += 1;
        }
        for (op, d) in derived {
            if !is_ttract(&d).unwrap() {
                failures.push(format!("pair #{i} ({x}, {y}): {op}"));
            }
        }
    }
    verdict(count, failures, &format!("SORE pairs ({removals} with removal)"))
}

pub fn sore_property(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let ast = random_star_single(&mut r, &['a', 'b', 'c'], 4);
        if !ast.is_star_single_occurrence() {
            return Err(format!("generator produced {ast}"));
        }
        let d = minimal_dfa(&ast, &Alphabet::empty()).unwrap();
        if !is_ttract(&d).unwrap() {
            failures.push(ast.to_string());
        }
    }
    verdict(count, failures, "star-single-occurrence regexes")
}

// ---------------------------------------------------------------------------
// Trail queries.

pub fn figure_one() -> Outcome {
    let lang = Language::from_regex("(ab)*").unwrap();
    let mut lengths = Vec::new();
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for (i, text) in FIGURE_ONE.iter().enumerate() {
        let (g, _) = trailrpq::graphdb::load_graph(text).unwrap();
        let (s, t) = (g.node("s").unwrap(), g.node("t").unwrap());
        let oracle = matching_trails(&g, s, t, lang.dfa());
        let Some(shortest) = oracle.first() else {
            failures.push(format!("graph {}: oracle finds no trail", i + 1));
            continue;
        };
        for engine in [Engine::Auto, Engine::Summary, Engine::Brute] {
            match solve(&g, s, t, &lang, engine) {
                Ok(res) if res.trail.as_ref().map(|t| t.edges()) == Some(&shortest[..]) => {}
                Ok(res) => failures.push(format!("graph {} {engine:?}: {:?}", i + 1, res.trail.map(|t| t.edges().to_vec()))),
                Err(e) => failures.push(format!("graph {} {engine:?}: {e}", i + 1)),
            }
        }
        let listed = enumerate_trails(&g, s, t, &lang, None, &SolveOptions::default()).map_err(|e| e.to_string())?;
        if listed.iter().map(|t| t.edges().to_vec()).collect::<Vec<_>>() != oracle {
            failures.push(format!("graph {}: enumeration differs from oracle", i + 1));
        }
        lengths.push(shortest.len());
        counts.push(listed.len());
    }
    if lengths != [2, 2, 4, 6] {
        failures.push(format!("lengths {lengths:?}"));
    }
    if counts != [2, 1, 1, 1] {
        failures.push(format!("counts {counts:?}"));
    }
    if failures.is_empty() {
        Ok(format!("lengths {lengths:?}, counts {counts:?}"))
    } else {
        Err(failures.join("; "))
    }
}

/// Three infinite SOREs over `{a, b, c}` with three or four states, drawn in
/// order from a fixed seed.
pub fn random_sore_languages(seed: u64) -> Vec<String> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < 3 {
        let ast = random_sore(&mut r, &['a', 'b', 'c']);
        let d = minimal_dfa(&ast, &Alphabet::empty()).unwrap();
        if (3..=4).contains(&d.n()) && !trailrpq::classify::is_finite_language(&d) && ast.alphabet().len() >= 2 {
            out.push(ast.to_string());
        }
    }
    out
}

/// Summary engine against exhaustive search on random graphs labelled over
/// the language's alphabet.
pub fn oracle_equivalence(regex: &str, count: usize, seed: u64, max_nodes: usize) -> Outcome {
    let lang = Language::from_regex(regex).unwrap();
    let labels: Vec<char> = lang.dfa().alphabet().symbols().iter().map(|s| s.as_char()).collect();
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut positive = 0;
    let mut ties = 0;
    let mut abbreviated = 0;
    for i in 0..count {
        let (g, s, t) = random_graph(&mut r, max_nodes, 14, &labels);
        let summary = solve(&g, s, t, &lang, Engine::Summary).map_err(|e| format!("{regex} #{i}: {e}"))?;
        let brute = solve(&g, s, t, &lang, Engine::Brute).map_err(|e| format!("{regex} #{i}: {e}"))?;
        if summary.engine != EngineUsed::Summary {
            return Err(format!("{regex} #{i}: served by {}", summary.engine));
        }
        let (a, b) = (summary.trail.map(|t| t.edges().to_vec()), brute.trail.map(|t| t.edges().to_vec()));
        positive += usize::from(b.is_some());
        if let Some(p) = &b {
            abbreviated += usize::from(summary_of(&g, lang.dfa(), p).unwrap().abbreviations().next().is_some());
        }
        if a.as_ref().map(Vec::len) != b.as_ref().map(Vec::len) {
            failures.push(format!("{regex} #{i}: summary {a:?} brute {b:?}"));
        } else if a != b {
            ties += 1;
        }
    }
    if ties > 0 {
        failures.push(format!("{regex}: {ties} equal-length answers with different edges"));
    }
    verdict(count, failures, &format!("{regex} instances ({positive} positive, {abbreviated} with abbreviations)"))
}

/// Summary engine against exhaustive search on graphs hiding a long
/// matching walk, so shortest answers often contain abbreviations.
pub fn planted_equivalence(regex: &str, count: usize, seed: u64) -> Outcome {
    let lang = Language::from_regex(regex).unwrap();
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut positive = 0;
    let mut abbreviated = 0;
    for i in 0..count {
        if lang.dfa().k() >= 13 {
            return Err(format!("{regex}: K = {} leaves no room for a planted run", lang.dfa().k()));
        }
        let Some(w) = random_member(&mut r, lang.dfa(), lang.dfa().k() + 1..=13) else {
            return Err(format!("{regex}: no member with length in {}..=13", lang.dfa().k() + 1));
        };
        let extra = r.random_range(0..=14 - w.len());
        let (g, s, t) = planted_graph(&mut r, &w, w.len() + extra);
        let summary = solve(&g, s, t, &lang, Engine::Summary).map_err(|e| format!("{regex} #{i}: {e}"))?;
        let brute = solve(&g, s, t, &lang, Engine::Brute).map_err(|e| format!("{regex} #{i}: {e}"))?;
        let (a, b) = (summary.trail.map(|t| t.edges().to_vec()), brute.trail.map(|t| t.edges().to_vec()));
        positive += usize::from(b.is_some());
        if let Some(p) = &b {
            abbreviated += usize::from(summary_of(&g, lang.dfa(), p).unwrap().abbreviations().next().is_some());
        }
        if a != b {
            failures.push(format!("{regex} #{i}: summary {a:?} brute {b:?}\n{}", g.to_text()));
        }
    }
    verdict(count, failures, &format!("planted {regex} instances ({positive} positive, {abbreviated} with abbreviations)"))
}

pub fn dc_vs_brute(regex: &str, count: usize, seed: u64) -> Outcome {
    let lang = Language::from_regex(regex).unwrap();
    let labels = ['a', 'b', 'c'];
    let mut r = rng(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let (g, s, t) = random_graph(&mut r, 10, 14, &labels);
        let dc = solve(&g, s, t, &lang, Engine::Dc).map_err(|e| e.to_string())?;
        let brute = solve(&g, s, t, &lang, Engine::Brute).map_err(|e| e.to_string())?;
        let (a, b) = (dc.trail.map(|t| t.edges().to_vec()), brute.trail.map(|t| t.edges().to_vec()));
        if a != b {
            failures.push(format!("{regex} #{i}: dc {a:?} brute {b:?}"));
        }
    }
    verdict(count, failures, &format!("{regex} instances"))
}

// ---------------------------------------------------------------------------
// Summary-engine invariants.

/// Images of a word of length `K` read from two states of one component
/// agree whenever both stay in the component.
pub fn same_state(samples: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    for regex in ttract_suite() {
        let d = min(regex);
        let comps: Vec<_> = d.components().iter().filter(|c| c.nontrivial).collect();
        if comps.is_empty() {
            continue;
        }
        let symbols = d.alphabet().symbols();
        let mut done = 0;
        let mut attempts = 0;
        while done < samples && attempts < samples * 200 {
            attempts += 1;
            let c = comps[r.random_range(0..comps.len())];
            let q1 = c.states[r.random_range(0..c.states.len())];
            let q2 = c.states[r.random_range(0..c.states.len())];
            let w: Word = (0..d.k()).map(|_| symbols[r.random_range(0..symbols.len())]).collect();
            let (p1, p2) = (d.run(q1, &w).unwrap(), d.run(q2, &w).unwrap());
            let comp = d.component_of(q1);
            if d.component_of(p1) != comp || d.component_of(p2) != comp {
                continue;
            }
            done += 1;
            if p1 != p2 {
                failures.push(format!("{regex}: {q1},{q2} on {}", trailrpq::automata::word_to_string(&w)));
            }
        }
        if done < samples {
            // Random words rarely stay inside small components; finish with
            // walks that do.
            while done < samples {
                let c = comps[r.random_range(0..comps.len())];
                let q1 = c.states[r.random_range(0..c.states.len())];
                let q2 = c.states[r.random_range(0..c.states.len())];
                let comp = d.component_of(q1);
                let mut w = Word::new();
                let mut q = q1;
                for _ in 0..d.k() {
                    let inside: Vec<_> = symbols.iter().filter(|&&s| d.component_of(d.step(q, s).unwrap()) == comp).collect();
                    let s = *inside[r.random_range(0..inside.len())];
                    w.push(s);
                    q = d.step(q, s).unwrap();
                }
                done += 1;
                let p2 = d.run(q2, &w).unwrap();
                if d.component_of(p2) == comp && p2 != q {
                    failures.push(format!("{regex}: {q1},{q2} on {}", trailrpq::automata::word_to_string(&w)));
                }
            }
        }
        checked += done;
    }
    verdict(checked, failures, "sameState samples")
}

fn pow(w: &[trailrpq::Symbol], i: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * i).collect()
}

/// `w_ell w_1^i w_m w_2^i w_r ∈ L` implies `w_ell w_1^i w_2^i w_r ∈ L` for
/// `i = N² + N + 1`, with `w_1` and `w_2` sharing their first (or their last)
/// symbol.
pub fn power_abbreviation(samples: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut premises = 0;
    for regex in ttract_suite() {
        let d = min(regex);
        let symbols = d.alphabet().symbols();
        let i = d.n() * d.n() + d.n() + 1;
        for _ in 0..samples {
            let a = symbols[r.random_range(0..symbols.len())];
            let at_end = r.random_bool(0.5);
            let part = |r: &mut ChaCha8Rng| {
                let mut w = random_word(r, symbols, 2);
                if at_end {
                    w.push(a)
                } else {
                    w.insert(0, a)
                }
                w
            };
            let (w1, w2) = (part(&mut r), part(&mut r));
            let (wl, wm, wr) =
                (random_word(&mut r, symbols, 3), random_word(&mut r, symbols, 3), random_word(&mut r, symbols, 3));
            let long: Word = [&wl[..], &pow(&w1, i), &wm, &pow(&w2, i), &wr].concat();
            checked += 1;
            if d.accepts(&long) {
                premises += 1;
                let short: Word = [&wl[..], &pow(&w1, i), &pow(&w2, i), &wr].concat();
                if !d.accepts(&short) {
                    failures.push(format!("{regex}: w1={w1:?} w2={w2:?}"));
                }
            }
        }
    }
    verdict(checked, failures, &format!("tuples ({premises} with the premise true)"))
}

/// Start index of each summary entry's segment in `edges`, plus the end.
fn segment_bounds(summary: &CandidateSummary, edges: &[EdgeId]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    for entry in &summary.entries {
        let end = match entry {
            SummaryEntry::Edge(_) => i + 1,
            SummaryEntry::Abbrev(a) => edges.iter().position(|e| e == a.suffix.last().unwrap()).unwrap() + 1,
        };
        out.push((i, end));
        i = end;
    }
    out
}

pub const INVARIANT_LANGUAGES: [&str; 3] = ["(a+b)*b", "(ab)*", "a*bc*"];

/// Matching trails with at least one abbreviated segment, up to `per_graph`
/// from each random graph.
pub fn abbreviated_trails(count: usize, seed: u64, per_graph: usize) -> Vec<(&'static str, LabeledGraph, Vec<EdgeId>)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < count {
        let regex = INVARIANT_LANGUAGES[round % INVARIANT_LANGUAGES.len()];
        round += 1;
        let d = min(regex);
        let labels: Vec<char> = d.alphabet().symbols().iter().map(|s| s.as_char()).collect();
        let (g, s, t) = random_graph(&mut r, 6, 14, &labels);
        let trails = matching_trails(&g, s, t, &d);
        let mut taken = 0;
        for p in trails.into_iter().rev() {
            if taken == per_graph || out.len() == count {
                break;
            }
            if summary_of(&g, &d, &p).unwrap().abbreviations().next().is_some() {
                out.push((regex, g.clone(), p));
                taken += 1;
            }
        }
    }
    out
}

/// Replacing every abbreviated segment of a matching trail's summary by a
/// shortest completion keeps the word in `L`.
pub fn completion_soundness(samples: usize, seed: u64) -> Outcome {
    let mut failures = Vec::new();
    for (regex, g, p) in abbreviated_trails(samples, seed, 3) {
        let d = min(regex);
        let summary = summary_of(&g, &d, &p).unwrap();
        let mut path = Vec::new();
        for (entry, (lo, hi)) in summary.entries.iter().zip(segment_bounds(&summary, &p)) {
            match entry {
                SummaryEntry::Edge(e) => path.push(*e),
                SummaryEntry::Abbrev(a) => match shortest_completion(&g, &d, a, &g.all_edges()) {
                    Some(c) if c.len() <= hi - lo => path.extend_from_slice(c.edges()),
                    other => failures.push(format!("{regex} {p:?}: completion {other:?}")),
                },
            }
        }
        if !d.accepts(&g.word_of(&path)) {
            failures.push(format!("{regex} {p:?}: completed word rejected"));
        }
    }
    verdict(samples, failures, "abbreviated matching trails")
}

/// A shortest matching trail decomposes along its summary so that every
/// abbreviated segment uses only its local edge domain and its suffix.
pub fn admissibility(samples: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut round = 0;
    while checked < samples {
        let regex = INVARIANT_LANGUAGES[round % INVARIANT_LANGUAGES.len()];
        round += 1;
        let d = min(regex);
        let labels: Vec<char> = d.alphabet().symbols().iter().map(|s| s.as_char()).collect();
        let (g, s, t) = random_graph(&mut r, 6, 14, &labels);
        let lang = Language::new(d.clone());
        let Some(p) = solve(&g, s, t, &lang, Engine::Brute).unwrap().trail.map(|t| t.edges().to_vec()) else { continue };
        let summary = summary_of(&g, &d, &p).unwrap();
        if summary.abbreviations().next().is_none() {
            continue;
        }
        checked += 1;
        let domains = compute_edge_domains(&g, &d, &summary, &g.all_edges());
        for (i, (entry, (lo, hi))) in summary.entries.iter().zip(segment_bounds(&summary, &p)).enumerate() {
            let SummaryEntry::Abbrev(a) = entry else { continue };
            let outside: Vec<_> =
                p[lo..hi].iter().filter(|e| !domains.domains[i].contains(**e) && !a.suffix.contains(e)).collect();
            if !outside.is_empty() || domains.min_lengths[i].is_none_or(|m| m > hi - lo) {
                failures.push(format!("{regex} {p:?} entry {i}: outside {outside:?}, m={:?}", domains.min_lengths[i]));
            }
        }
    }
    verdict(checked, failures, "shortest trails with abbreviations")
}

// ---------------------------------------------------------------------------
// Hardness.

pub const HARD_LANGUAGES: [&str; 3] = ["a*ba*", "(aa)*", "(a+b)*a(a+b)*"];

pub fn hardness_pipeline(count: usize, seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut positive = 0;
    for regex in HARD_LANGUAGES {
        let d = min(regex);
        let w = extract_witness(&d).map_err(|e| format!("{regex}: {e}"))?;
        if !validate_witness(&d, &w).unwrap() {
            failures.push(format!("{regex}: witness rejected"));
            continue;
        }
        let mut r = rng(seed);
        for i in 0..count {
            let edp = random_edp(&mut r, 8, 10);
            let expected = edp_oracle(&edp);
            let gadget = build_hardness_gadget(&d, &w, &edp).map_err(|e| e.to_string())?;
            let accept = |v: usize, q: usize| v == gadget.t && d.is_final(q);
            let c = BruteConstraints { deleted: None, forbidden_first: None, accept: &accept };
            let got = brute_force_trail(&gadget.graph, gadget.s, &d, d.initial(), &c, 128)
                .map_err(|e| format!("{regex} #{i}: {e}"))?
                .trail
                .is_some();
            positive += usize::from(expected);
            if got != expected {
                failures.push(format!("{regex} #{i}: gadget {got}, edge-disjoint paths {expected}\n{}", edp.to_text()));
            }
        }
    }
    verdict(count * HARD_LANGUAGES.len(), failures, &format!("gadgets ({positive} positive)"))
}

// ---------------------------------------------------------------------------
// Enumeration.

pub const ENUMERATION_LANGUAGES: [&str; 5] = ["(ab)*", "a*bc*", "(a+b)*b", "a*ba*", "(a+b)*"];

pub fn enumeration_suite(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut emitted = 0;
    let langs: Vec<Language> = ENUMERATION_LANGUAGES.iter().map(|l| Language::from_regex(l).unwrap()).collect();
    for i in 0..count {
        let lang = &langs[i % langs.len()];
        let name = ENUMERATION_LANGUAGES[i % langs.len()];
        let labels: Vec<char> = lang.dfa().alphabet().symbols().iter().map(|s| s.as_char()).collect();
        let (g, s, t) = random_graph(&mut r, 10, 14, &labels);
        let listed = enumerate_trails(&g, s, t, lang, None, &SolveOptions::default()).map_err(|e| format!("{name} #{i}: {e}"))?;
        let oracle = all_trails_oracle(&g, s, t, lang.dfa(), 20).map_err(|e| e.to_string())?;
        emitted += listed.len();
        let edges: Vec<Vec<EdgeId>> = listed.iter().map(|t| t.edges().to_vec()).collect();
        let mut sorted = edges.clone();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        sorted.dedup();
        if sorted != edges {
            failures.push(format!("{name} #{i}: order or duplicates"));
        }
        if listed != oracle {
            failures.push(format!("{name} #{i}: {} emitted, oracle {}", listed.len(), oracle.len()));
        }
        let first = solve(&g, s, t, lang, Engine::Auto).map_err(|e| e.to_string())?;
        if first.trail.as_ref().map(|t| t.len()) != listed.first().map(|t| t.len()) {
            failures.push(format!("{name} #{i}: first emission differs from solve"));
        }
    }
    verdict(count, failures, &format!("instances ({emitted} trails)"))
}
