//! The mixed-graph data model: vertices carry no data, ordered adjacent
//! pairs carry a type label from `1..=2n+m`.
//!
//! Even labels `2i` (1 <= i <= n) are arcs, odd labels `2i-1` their
//! reverses, and `2n+1..=2n+m` are undirected edge colors. A stored label
//! is always read from the first coordinate's perspective: `label(u,v) = a`
//! means v is an a-neighbor of u.

use crate::error::{Error, Result};
use std::fmt;

/// Hard cap on vertex count; adjacency rows are fixed-width bitsets.
pub const MAX_ORDER: usize = 256;

const WORDS: usize = MAX_ORDER / 64;

/// A set of vertex indices of some host graph, stored as a fixed-width bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    bits: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { bits: [0; WORDS] }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    pub fn full(order: usize) -> Self {
        let mut s = VertexSet::new();
        for v in 0..order {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.bits[v / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits[v / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_ORDER && self.bits[v / 64] & (1u64 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits;
        for (a, b) in bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits;
        for (a, b) in bits.iter_mut().zip(other.bits.iter()) {
            *a &= b;
        }
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits;
        for (a, b) in bits.iter_mut().zip(other.bits.iter()) {
            *a &= !b;
        }
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Least member. Named to avoid clashing with `Ord::min`.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The type counts `(n, m)`: `n` arc types and `m` edge types.
///
/// The derived quantity `p = 2n + m` indexes the label alphabet
/// `1..=p`. The pair `(0,1)` is representable but the order-bound
/// operations reject it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Params {
    n: u32,
    m: u32,
}

impl Params {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n + m == 0 || 2 * n + m > 255 {
            return Err(Error::InvalidParams { n, m });
        }
        Ok(Params { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `p = 2n + m`, the size of the label alphabet.
    pub fn p(&self) -> u32 {
        2 * self.n + self.m
    }

    /// The `(0,1)` case, excluded from the planar order bound.
    pub fn is_excluded(&self) -> bool {
        self.n == 0 && self.m == 1
    }

    /// All labels `1..=p` in ascending order.
    pub fn labels(&self) -> impl Iterator<Item = AdjLabel> {
        (1..=self.p() as u8).map(AdjLabel)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// Whether a label denotes an arc, a reverse arc, or an edge color.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabelKind {
    Arc,
    ReverseArc,
    Edge,
}

/// An adjacency type from the alphabet `1..=2n+m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AdjLabel(u8);

impl AdjLabel {
    pub fn new(value: u32, params: Params) -> Result<Self> {
        if value == 0 || value > params.p() {
            return Err(Error::LabelOutOfRange { label: value, max: params.p() });
        }
        Ok(AdjLabel(value as u8))
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    pub fn kind(&self, params: Params) -> LabelKind {
        if u32::from(self.0) > 2 * params.n() {
            LabelKind::Edge
        } else if self.0.is_multiple_of(2) {
            LabelKind::Arc
        } else {
            LabelKind::ReverseArc
        }
    }

    /// The label seen from the other endpoint: `2i <-> 2i-1`, edges are
    /// self-paired. Involutive.
    pub fn reverse(&self, params: Params) -> AdjLabel {
        match self.kind(params) {
            LabelKind::Arc => AdjLabel(self.0 - 1),
            LabelKind::ReverseArc => AdjLabel(self.0 + 1),
            LabelKind::Edge => *self,
        }
    }
}

impl fmt::Display for AdjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The pairing rule on the label alphabet.
pub fn reverse_type(label: AdjLabel, params: Params) -> Result<AdjLabel> {
    if u32::from(label.value()) > params.p() || label.value() == 0 {
        return Err(Error::LabelOutOfRange { label: label.value().into(), max: params.p() });
    }
    Ok(label.reverse(params))
}

/// Largest order a planar complete graph can have: `3p^2 + p + 1`.
///
/// Rejects `(0,1)`, where the planar maximum is K4 instead.
pub fn order_bound(params: Params) -> Result<usize> {
    if params.is_excluded() {
        return Err(Error::ExcludedParams);
    }
    let p = params.p() as usize;
    Ok(3 * p * p + p + 1)
}

/// Same formula on a raw `p`, for the inequality evaluators.
pub fn order_bound_p(p: i64) -> i64 {
    3 * p * p + p + 1
}

/// A finite simple mixed graph with typed adjacencies.
///
/// Immutable once built; construction is single-threaded and goes through
/// [`NMGraph::add_adjacency`], which maintains the pairing rule.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NMGraph {
    params: Params,
    order: usize,
    /// Row-major order x order label matrix; 0 = not adjacent.
    labels: Vec<u8>,
    /// Underlying neighbor bitset per vertex.
    nbrs: Vec<VertexSet>,
}

impl NMGraph {
    pub fn new(params: Params, order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        Ok(NMGraph {
            params,
            order,
            labels: vec![0; order * order],
            nbrs: vec![VertexSet::new(); order],
        })
    }

    /// Builds a graph from `(u, v, label)` triples, each stored from the
    /// first coordinate's perspective.
    pub fn from_adjacencies(
        params: Params,
        order: usize,
        adjacencies: &[(usize, usize, u32)],
    ) -> Result<Self> {
        let mut g = NMGraph::new(params, order)?;
        for &(u, v, l) in adjacencies {
            let label = AdjLabel::new(l, params)?;
            g.add_adjacency(u, v, label)?;
        }
        Ok(g)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            return Err(Error::VertexOutOfRange { v, order: self.order });
        }
        Ok(())
    }

    /// Stores `label` at `(u,v)` and its reverse at `(v,u)`.
    pub fn add_adjacency(&mut self, u: usize, v: usize, label: AdjLabel) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopRequested { v });
        }
        if label.value() == 0 || u32::from(label.value()) > self.params.p() {
            return Err(Error::LabelOutOfRange { label: label.value().into(), max: self.params.p() });
        }
        if self.labels[u * self.order + v] != 0 {
            return Err(Error::DuplicateAdjacency { u, v });
        }
        self.labels[u * self.order + v] = label.value();
        self.labels[v * self.order + u] = label.reverse(self.params).value();
        self.nbrs[u].insert(v);
        self.nbrs[v].insert(u);
        Ok(())
    }

    /// The label at `(u,v)` from u's perspective, if adjacent.
    pub fn label(&self, u: usize, v: usize) -> Option<AdjLabel> {
        let raw = self.labels[u * self.order + v];
        (raw != 0).then_some(AdjLabel(raw))
    }

    pub fn raw_label(&self, u: usize, v: usize) -> u8 {
        self.labels[u * self.order + v]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.labels[u * self.order + v] != 0
    }

    /// Underlying neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// All `u` with `label(v,u) = alpha`.
    pub fn alpha_neighbors(&self, v: usize, alpha: AdjLabel) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut out = VertexSet::new();
        for u in self.nbrs[v].iter() {
            if self.labels[v * self.order + u] == alpha.value() {
                out.insert(u);
            }
        }
        Ok(out)
    }

    pub fn alpha_degree(&self, v: usize, alpha: AdjLabel) -> usize {
        self.nbrs[v]
            .iter()
            .filter(|&u| self.labels[v * self.order + u] == alpha.value())
            .count()
    }

    /// Number of unordered adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.nbrs.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Unordered adjacent pairs `(u, v, label(u,v))` with `u < v`, ascending.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize, AdjLabel)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v, AdjLabel(self.labels[u * self.order + v])))
        })
    }

    /// The sub-(n,m)-graph induced by `members`, vertices re-indexed in
    /// ascending order.
    pub fn induced(&self, members: &VertexSet) -> NMGraph {
        let verts = members.to_vec();
        let mut g = NMGraph::new(self.params, verts.len()).expect("induced order fits");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if let Some(l) = self.label(u, v) {
                    g.add_adjacency(i, j, l).expect("copying valid adjacency");
                }
            }
        }
        g
    }

    /// Rebuilds the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> NMGraph {
        assert_eq!(perm.len(), self.order);
        let mut g = NMGraph::new(self.params, self.order).expect("same order fits");
        for (u, v, l) in self.adjacent_pairs() {
            g.add_adjacency(perm[u], perm[v], l).expect("permuted adjacency is valid");
        }
        g
    }

    /// Re-checks every structural invariant and reports all
    /// violations with their location.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let p = self.params.p();
        for u in 0..self.order {
            if self.labels[u * self.order + u] != 0 {
                out.push(Violation::Loop { v: u });
            }
            for v in 0..self.order {
                if u == v {
                    continue;
                }
                let fwd = self.labels[u * self.order + v];
                let bwd = self.labels[v * self.order + u];
                if (fwd == 0) != (bwd == 0) {
                    if u < v {
                        out.push(Violation::AsymmetricAdjacency { u, v });
                    }
                    continue;
                }
                if fwd == 0 {
                    continue;
                }
                if u32::from(fwd) > p {
                    out.push(Violation::LabelRange { u, v, label: fwd });
                    continue;
                }
                if u < v && AdjLabel(fwd).reverse(self.params).value() != bwd {
                    out.push(Violation::PairingRule { u: v, v: u, found: bwd, expected: AdjLabel(fwd).reverse(self.params).value() });
                }
            }
        }
        out
    }
}

impl fmt::Debug for NMGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NMGraph{}[order {}:", self.params, self.order)?;
        for (u, v, l) in self.adjacent_pairs() {
            write!(f, " {u}-{v}:{l}")?;
        }
        write!(f, "]")
    }
}

/// A single invariant violation found by [`NMGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Loop { v: usize },
    AsymmetricAdjacency { u: usize, v: usize },
    LabelRange { u: usize, v: usize, label: u8 },
    PairingRule { u: usize, v: usize, found: u8, expected: u8 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { v } => write!(f, "loop at vertex {v}"),
            Violation::AsymmetricAdjacency { u, v } => {
                write!(f, "adjacency ({u},{v}) stored without its mirror")
            }
            Violation::LabelRange { u, v, label } => {
                write!(f, "label {label} at ({u},{v}) out of range")
            }
            Violation::PairingRule { u, v, found, expected } => {
                write!(f, "pairing violation at ({u},{v}): found {found}, expected {expected}")
            }
        }
    }
}
