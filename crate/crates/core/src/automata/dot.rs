use std::fmt::Write;

use super::MinimalDfa;

/// Graphviz rendering: one cluster per component, final states doubled,
/// parallel transitions merged into one labelled arrow. `notes` are emitted
/// as `key=value` comment lines and as the graph label.
pub fn to_dot(dfa: &MinimalDfa, notes: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in notes {
        let _ = writeln!(out, "// {k}={v}");
    }
    out.push_str("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    if !notes.is_empty() {
        let label: Vec<String> = notes.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "  label=\"{}\";", label.join("\\n"));
    }
    out.push_str("  start [shape=point];\n");
    for (c, comp) in dfa.components().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label=\"C{c}\";");
        for &q in &comp.states {
            let shape = if dfa.is_final(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "    q{q} [shape={shape}];");
        }
        out.push_str("  }\n");
    }
    let _ = writeln!(out, "  start -> q{};", dfa.initial());
    for q in 0..dfa.n() {
        let mut targets: Vec<(usize, String)> = Vec::new();
        for (i, &s) in dfa.alphabet().symbols().iter().enumerate() {
            let r = dfa.dfa().next(q, i);
            match targets.iter_mut().find(|(t, _)| *t == r) {
                Some((_, label)) => {
                    label.push(',');
                    label.push(s.as_char());
                }
                None => targets.push((r, s.to_string())),
            }
        }
        for (r, label) in targets {
            let _ = writeln!(out, "  q{q} -> q{r} [label=\"{label}\"];");
        }
    }
    out.push_str("}\n");
    out
}
