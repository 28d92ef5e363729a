//! Special 2-paths and the two completeness decision procedures.
//!
//! Two vertices see each other when they are adjacent or joined by a path
//! `u w v` whose middle vertex carries distinct labels toward the two ends
//! (`w` is an a-neighbor of `u` and a b-neighbor of `v` with `a != b`).
//! A graph is complete for its parameters exactly when every vertex pair
//! sees each other; the second checker decides the same property by
//! merging the pair and inspecting the resulting multigraph.

use crate::error::{Error, Result};
use crate::graph::{AdjLabel, NMGraph};

/// Proof that a pair of vertices sees each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeeWitness {
    /// The pair is adjacent.
    Adjacent,
    /// A special 2-path through `middle`, whose labels toward the two
    /// endpoints are `labels.0` (from u) and `labels.1` (from v).
    SpecialPath { middle: usize, labels: (AdjLabel, AdjLabel) },
}

impl SeeWitness {
    /// Re-checks the witness against the graph it certifies.
    pub fn holds(&self, g: &NMGraph, u: usize, v: usize) -> bool {
        match *self {
            SeeWitness::Adjacent => g.are_adjacent(u, v),
            SeeWitness::SpecialPath { middle, labels: (a, b) } => {
                a != b
                    && middle != u
                    && middle != v
                    && g.label(u, middle) == Some(a)
                    && g.label(v, middle) == Some(b)
            }
        }
    }
}

/// The label pair `(a, b)` with `w` an
/// a-neighbor of `u` and a b-neighbor of `v`, `a != b`, if present.
pub fn is_special_two_path(
    g: &NMGraph,
    u: usize,
    w: usize,
    v: usize,
) -> Result<Option<(AdjLabel, AdjLabel)>> {
    if u == w || w == v || u == v {
        return Err(Error::NonDistinctVertices(vec![u, w, v]));
    }
    let (a, b) = match (g.label(u, w), g.label(v, w)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(None),
    };
    Ok((a != b).then_some((a, b)))
}

/// Adjacency first, else the special 2-path with the smallest
/// middle vertex.
pub fn sees(g: &NMGraph, u: usize, v: usize) -> Result<Option<SeeWitness>> {
    if u == v {
        return Err(Error::NonDistinctVertices(vec![u, v]));
    }
    if g.are_adjacent(u, v) {
        return Ok(Some(SeeWitness::Adjacent));
    }
    let common = g.neighbors(u).intersection(g.neighbors(v));
    for w in common.iter() {
        let a = g.label(u, w).expect("w is a common neighbor");
        let b = g.label(v, w).expect("w is a common neighbor");
        if a != b {
            return Ok(Some(SeeWitness::SpecialPath { middle: w, labels: (a, b) }));
        }
    }
    Ok(None)
}

/// Outcome of a completeness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    /// The lexicographically least failing pair, when not complete.
    pub blaming_pair: Option<(usize, usize)>,
}

impl Completeness {
    fn complete() -> Self {
        Completeness { complete: true, blaming_pair: None }
    }

    fn incomplete(u: usize, v: usize) -> Self {
        Completeness { complete: false, blaming_pair: Some((u, v)) }
    }
}

/// Every unordered pair must see each other.
pub fn is_nm_complete_by_seeing(g: &NMGraph) -> Completeness {
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if sees(g, u, v).expect("u < v").is_none() {
                return Completeness::incomplete(u, v);
            }
        }
    }
    Completeness::complete()
}

/// Merging any pair must produce a
/// loop or parallel adjacencies with distinct labels.
///
/// Deliberately independent of the seeing machinery: for each non-adjacent
/// pair it builds the merged vertex's multigraph row and inspects it.
pub fn is_nm_complete_by_identification(g: &NMGraph) -> Completeness {
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if g.are_adjacent(u, v) {
                // Identification would create a loop.
                continue;
            }
            // Adjacency row of the merged vertex, as label multisets.
            let mut merged: Vec<Vec<AdjLabel>> = vec![Vec::new(); g.order()];
            for w in 0..g.order() {
                if w == u || w == v {
                    continue;
                }
                if let Some(l) = g.label(u, w) {
                    merged[w].push(l);
                }
                if let Some(l) = g.label(v, w) {
                    merged[w].push(l);
                }
            }
            let has_distinct_parallel = merged
                .iter()
                .any(|labels| labels.len() == 2 && labels[0] != labels[1]);
            if !has_distinct_parallel {
                return Completeness::incomplete(u, v);
            }
        }
    }
    Completeness::complete()
}

/// All unordered pairs without a witness, ascending.
pub fn non_seeing_pairs(g: &NMGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if sees(g, u, v).expect("u < v").is_none() {
                out.push((u, v));
            }
        }
    }
    out
}
