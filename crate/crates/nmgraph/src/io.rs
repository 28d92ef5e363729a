//! The `.nmg` text format.
//!
//! ```text
//! nmg <n> <m> <order> <pair-count>
//! <u> <v> <label>      (pair-count lines)
//! ```
//!
//! One line per unordered adjacent pair. Arcs are written from the tail
//! (`u v 2i` means the arc goes u -> v), so odd reverse labels are rejected
//! on input; edges are written from the smaller endpoint. Canonical output
//! sorts pairs lexicographically, which makes write/parse byte-exact
//! round trips. `#`-prefixed comment lines may appear after the header.

use crate::error::{ParseError, Result};
use crate::graph::{AdjLabel, LabelKind, NMGraph, Params, MAX_ORDER};

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::new(line, column, message)
}

/// Column (1-based) at which whitespace-separated token `idx` starts.
fn token_col(line: &str, idx: usize) -> usize {
    let mut seen = 0;
    let mut in_token = false;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            in_token = false;
        } else if !in_token {
            in_token = true;
            if seen == idx {
                return i + 1;
            }
            seen += 1;
        }
    }
    line.len() + 1
}

fn parse_int(line: &str, lineno: usize, idx: usize, what: &str, tok: Option<&str>) -> std::result::Result<u64, ParseError> {
    let col = token_col(line, idx);
    let tok = tok.ok_or_else(|| err(lineno, col, format!("missing {what}")))?;
    tok.parse::<u64>().map_err(|_| err(lineno, col, format!("invalid {what}: `{tok}`")))
}

/// Reads a graph from `.nmg` text.
pub fn parse_nmg(text: &str) -> Result<NMGraph> {
    let mut lines = text.lines().enumerate();
    let (first_idx, first) = lines.next().ok_or_else(|| err(1, 1, "empty input"))?;
    let lineno = first_idx + 1;
    let mut toks = first.split_whitespace();
    match toks.next() {
        Some("nmg") => {}
        Some(other) => return Err(err(lineno, 1, format!("expected `nmg` header, found `{other}`")).into()),
        None => return Err(err(lineno, 1, "expected `nmg` header").into()),
    }
    let n = parse_int(first, lineno, 1, "arc type count", toks.next())?;
    let m = parse_int(first, lineno, 2, "edge type count", toks.next())?;
    let order = parse_int(first, lineno, 3, "order", toks.next())?;
    let pair_count = parse_int(first, lineno, 4, "pair count", toks.next())?;
    if let Some(extra) = toks.next() {
        return Err(err(lineno, token_col(first, 5), format!("unexpected token `{extra}`")).into());
    }

    let params = Params::new(n as u32, m as u32)
        .map_err(|e| err(lineno, token_col(first, 1), e.to_string()))?;
    if order as usize > MAX_ORDER {
        return Err(err(lineno, token_col(first, 3), format!("order {order} exceeds maximum {MAX_ORDER}")).into());
    }
    let mut g = NMGraph::new(params, order as usize).expect("order checked");

    let mut seen_pairs = 0u64;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.starts_with('#') {
            continue;
        }
        if seen_pairs == pair_count {
            return Err(err(lineno, 1, format!("unexpected content after {pair_count} pairs")).into());
        }
        let mut toks = line.split_whitespace();
        let u = parse_int(line, lineno, 0, "vertex", toks.next())?;
        let v = parse_int(line, lineno, 1, "vertex", toks.next())?;
        let label = parse_int(line, lineno, 2, "label", toks.next())?;
        if let Some(extra) = toks.next() {
            return Err(err(lineno, token_col(line, 3), format!("unexpected token `{extra}`")).into());
        }
        if u >= order {
            return Err(err(lineno, token_col(line, 0), format!("vertex {u} out of range for order {order}")).into());
        }
        if v >= order {
            return Err(err(lineno, token_col(line, 1), format!("vertex {v} out of range for order {order}")).into());
        }
        if u == v {
            return Err(err(lineno, token_col(line, 0), format!("loop at vertex {u}")).into());
        }
        let lab_col = token_col(line, 2);
        if label == 0 || label > u64::from(params.p()) {
            return Err(err(lineno, lab_col, format!("label {label} out of range 1..={}", params.p())).into());
        }
        let lab = AdjLabel::new(label as u32, params).expect("range checked");
        if lab.kind(params) == LabelKind::ReverseArc {
            return Err(err(
                lineno,
                lab_col,
                format!("reverse label {label}: write this adjacency as `{v} {u} {}`", label + 1),
            )
            .into());
        }
        if g.are_adjacent(u as usize, v as usize) {
            return Err(err(lineno, token_col(line, 0), format!("pair ({u},{v}) already adjacent")).into());
        }
        g.add_adjacency(u as usize, v as usize, lab).expect("all preconditions checked");
        seen_pairs += 1;
    }
    if seen_pairs != pair_count {
        return Err(err(
            text.lines().count() + 1,
            1,
            format!("expected {pair_count} pairs, found {seen_pairs}"),
        )
        .into());
    }
    Ok(g)
}

/// Canonical text for a graph.
///
/// Pairs are sorted by their unordered endpoints; each arc is emitted from
/// its tail so the derived reverse label never appears.
pub fn write_nmg(g: &NMGraph) -> String {
    let params = g.params();
    let mut out = format!("nmg {} {} {} {}\n", params.n(), params.m(), g.order(), g.pair_count());
    for (a, b, label) in g.adjacent_pairs() {
        let (u, v, l) = if label.kind(params) == LabelKind::ReverseArc {
            (b, a, label.reverse(params))
        } else {
            (a, b, label)
        };
        out.push_str(&format!("{u} {v} {l}\n"));
    }
    out
}
