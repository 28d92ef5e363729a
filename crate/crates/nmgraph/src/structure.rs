//! Structure analysis of planar complete graphs: dominating pair
//! selection, the common/private neighborhood decomposition, regions cut
//! out by the dominating pair and its common neighbors in a fixed
//! embedding, nearest ordering along a boundary edge, evaluators for the
//! counting inequalities, and the audit that classifies a concrete graph
//! into its governing case and compares its order against the bound.

use crate::error::{Error, Result};
use crate::graph::{order_bound, order_bound_p, NMGraph, VertexSet};
use crate::planarity::{embed, is_planar, RotationSystem};
use crate::seeing::{is_nm_complete_by_identification, is_nm_complete_by_seeing};
use serde_json::{json, Value};

// ---------------------------------------------------------------------
// Dominating pair and decomposition
// ---------------------------------------------------------------------

/// A dominating pair {x, y} together with its common neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingPair {
    pub x: usize,
    pub y: usize,
    pub common: VertexSet,
}

/// Domination facts for a graph: a dominating vertex if one exists, and
/// the dominating pair maximizing the number of common neighbors.
#[derive(Debug, Clone)]
pub struct DominationReport {
    pub dominating_vertex: Option<usize>,
    pub pair: Option<DominatingPair>,
}

fn dominates(g: &NMGraph, x: usize, y: usize) -> bool {
    (0..g.order())
        .all(|w| w == x || w == y || g.are_adjacent(w, x) || g.are_adjacent(w, y))
}

/// The 2-element dominating set with the most common
/// neighbors (ties: least (x, y)), plus whether a single vertex dominates.
pub fn dominating_pair(g: &NMGraph) -> DominationReport {
    let order = g.order();
    let dominating_vertex =
        (0..order).find(|&v| (0..order).all(|w| w == v || g.are_adjacent(v, w)));
    let mut pair: Option<DominatingPair> = None;
    for x in 0..order {
        for y in x + 1..order {
            if !dominates(g, x, y) {
                continue;
            }
            let common = g.neighbors(x).intersection(g.neighbors(y));
            if pair.as_ref().is_none_or(|p| common.len() > p.common.len()) {
                pair = Some(DominatingPair { x, y, common });
            }
        }
    }
    DominationReport { dominating_vertex, pair }
}

/// The decomposition around a dominating pair, normalized so that x has at
/// least as many private label classes as y.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pair: DominatingPair,
    /// Whether x and y were swapped to normalize.
    pub swapped: bool,
    /// `(a-1) * p + (b-1)` -> common neighbors that are a-neighbors of x
    /// and b-neighbors of y.
    pub c_by_labels: Vec<VertexSet>,
    pub c_x: Vec<VertexSet>,
    pub c_y: Vec<VertexSet>,
    pub s_x: Vec<VertexSet>,
    pub s_y: Vec<VertexSet>,
    pub excess: VertexSet,
    /// Number of labels with private x-neighbors; likewise for y; i >= j.
    pub i: u32,
    pub j: u32,
    /// Largest private label class on y's side.
    pub s_max: usize,
}

impl Decomposition {
    pub fn s_x_all(&self) -> VertexSet {
        self.s_x.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    pub fn s_y_all(&self) -> VertexSet {
        self.s_y.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }

    pub fn s_all(&self) -> VertexSet {
        self.s_x_all().union(&self.s_y_all())
    }
}

fn split_by_label(g: &NMGraph, v: usize, within: &VertexSet) -> Vec<VertexSet> {
    let p = g.params().p() as usize;
    let mut out = vec![VertexSet::new(); p];
    for u in g.neighbors(v).intersection(within).iter() {
        out[(g.raw_label(v, u) - 1) as usize].insert(u);
    }
    out
}

/// C by label pairs, the private classes of both sides,
/// the excess set, and the quantities (i, j, s_max).
pub fn decompose(g: &NMGraph, pair: &DominatingPair) -> Result<Decomposition> {
    if !dominates(g, pair.x, pair.y) {
        return Err(Error::NotDominating { x: pair.x, y: pair.y });
    }
    let p = g.params().p() as usize;
    let common = g.neighbors(pair.x).intersection(g.neighbors(pair.y));

    let private = |v: usize, other: usize| {
        let mut s = g.neighbors(v).difference(&common);
        s.remove(other);
        s
    };
    let count_classes = |classes: &[VertexSet]| classes.iter().filter(|s| !s.is_empty()).count() as u32;

    let sx0 = split_by_label(g, pair.x, &private(pair.x, pair.y));
    let sy0 = split_by_label(g, pair.y, &private(pair.y, pair.x));
    let (i0, j0) = (count_classes(&sx0), count_classes(&sy0));
    let (x, y, s_x, s_y, i, j, swapped) = if i0 >= j0 {
        (pair.x, pair.y, sx0, sy0, i0, j0, false)
    } else {
        (pair.y, pair.x, sy0, sx0, j0, i0, true)
    };

    let c_x = split_by_label(g, x, &common);
    let c_y = split_by_label(g, y, &common);
    let mut c_by_labels = vec![VertexSet::new(); p * p];
    for c in common.iter() {
        let a = (g.raw_label(x, c) - 1) as usize;
        let b = (g.raw_label(y, c) - 1) as usize;
        c_by_labels[a * p + b].insert(c);
    }
    let mut excess = VertexSet::new();
    for a in 0..p {
        for b in 0..p {
            if !s_x[a].is_empty() || !s_y[b].is_empty() {
                excess = excess.union(&c_by_labels[a * p + b]);
            }
        }
    }
    let s_max = s_y.iter().map(|s| s.len()).max().unwrap_or(0);

    Ok(Decomposition {
        pair: DominatingPair { x, y, common },
        swapped,
        c_by_labels,
        c_x,
        c_y,
        s_x,
        s_y,
        excess,
        i,
        j,
        s_max,
    })
}

// ---------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------

/// The regions cut out by the pair and its common neighbors in a fixed
/// embedding: region t is bounded by the 4-cycle (x, c_{t-1}, y, c_t),
/// region 0 by (x, c_0, y, c_{k-1}) and is declared the outer one.
#[derive(Debug, Clone)]
pub struct RegionAssignment {
    pub region_count: usize,
    /// Common neighbors in anticlockwise order around x, starting at the
    /// least-index one.
    pub c_order: Vec<usize>,
    /// Per region, its bounding 4-cycle (x, c_a, y, c_b).
    pub boundary: Vec<(usize, usize, usize, usize)>,
    /// Region index per private vertex (None outside S).
    pub placement: Vec<Option<usize>>,
    /// Region index per face of the rotation system.
    face_region: Vec<usize>,
}

impl RegionAssignment {
    pub fn region_of(&self, v: usize) -> Option<usize> {
        self.placement.get(v).copied().flatten()
    }

    /// Regions occupied by members of `set`, ascending.
    pub fn occupied_by(&self, set: &VertexSet) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().filter_map(|v| self.region_of(v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        if self.0[a] != a {
            let root = self.find(self.0[a]);
            self.0[a] = root;
        }
        self.0[a]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Numbers the common neighbors around x and places every
/// private vertex into the region whose boundary encloses it.
///
/// Faces of the embedding glued across edges that are not pair-to-common
/// edges tile exactly the regions; corners at x identify each tile group.
pub fn regions(
    g: &NMGraph,
    pair: &DominatingPair,
    rs: &RotationSystem,
) -> Result<RegionAssignment> {
    let k = pair.common.len();
    if k < 2 {
        return Err(Error::TooFewCommonNeighbors(k));
    }
    if !dominates(g, pair.x, pair.y) {
        return Err(Error::NotDominating { x: pair.x, y: pair.y });
    }
    let faces = rs.faces()?;
    let face_of = rs.face_of_edge(&faces);
    let (x, y) = (pair.x, pair.y);

    // Glue faces across every edge that is not x-c or y-c with c common.
    let is_skeleton_edge = |u: usize, v: usize| {
        (u == x || u == y) && pair.common.contains(v)
            || (v == x || v == y) && pair.common.contains(u)
    };
    let mut uf = UnionFind::new(faces.len());
    for (u, v, _) in g.adjacent_pairs() {
        if !is_skeleton_edge(u, v) {
            uf.union(face_of[&(u, v)], face_of[&(v, u)]);
        }
    }

    // Anticlockwise numbering of the common neighbors: the rotation order
    // stored at x, started at the least-index member.
    let rot_x = &rs.rotations[x];
    let mut c_order: Vec<usize> =
        rot_x.iter().copied().filter(|&w| pair.common.contains(w)).collect();
    let start = c_order
        .iter()
        .position(|&c| Some(c) == pair.common.first())
        .expect("least common neighbor is in the rotation at x");
    c_order.rotate_left(start);
    let mut c_index = vec![usize::MAX; g.order()];
    for (idx, &c) in c_order.iter().enumerate() {
        c_index[c] = idx;
    }

    // Walk the rotation at x: the sector after position t lies in the face
    // of the directed edge (rot_x[t], x); its region is named by the last
    // common neighbor at or before t.
    let mut region_of_root = vec![usize::MAX; faces.len()];
    let last_c_at_or_before = |t: usize| -> usize {
        let d = rot_x.len();
        for back in 0..d {
            let pos = (t + d - back) % d;
            if c_index[rot_x[pos]] != usize::MAX {
                return c_index[rot_x[pos]];
            }
        }
        unreachable!("k >= 2 common neighbors sit in the rotation at x")
    };
    for (t, &w) in rot_x.iter().enumerate() {
        let region = (last_c_at_or_before(t) + 1) % k;
        let root = uf.find(face_of[&(w, x)]);
        if region_of_root[root] != usize::MAX && region_of_root[root] != region {
            return Err(Error::InvalidRotationSystem(
                "corner sectors at x disagree on their region".into(),
            ));
        }
        region_of_root[root] = region;
    }

    let mut face_region = vec![usize::MAX; faces.len()];
    for f in 0..faces.len() {
        let r = region_of_root[uf.find(f)];
        if r == usize::MAX {
            return Err(Error::InvalidRotationSystem(
                "face not connected to any corner at x".into(),
            ));
        }
        face_region[f] = r;
    }

    // Place each private vertex by any incident face.
    let mut placement = vec![None; g.order()];
    for v in 0..g.order() {
        if v == x || v == y || pair.common.contains(v) {
            continue;
        }
        let w = g
            .neighbors(v)
            .first()
            .ok_or(Error::NotDominating { x, y })?;
        placement[v] = Some(face_region[face_of[&(v, w)]]);
    }

    let boundary = (0..k)
        .map(|t| {
            let (ca, cb) = if t == 0 {
                (c_order[0], c_order[k - 1])
            } else {
                (c_order[t - 1], c_order[t])
            };
            (x, ca, y, cb)
        })
        .collect();

    Ok(RegionAssignment { region_count: k, c_order, boundary, placement, face_region })
}

/// The common neighbors of a boundary edge inside a
/// region, sorted nearest-first; the reversal is the farthest order.
///
/// The 1-nearest vertex is read off the rotation at `u`: starting from the
/// edge (u,v) and turning into the region, nested triangles appear in
/// nearest order.
pub fn nearest_order(
    g: &NMGraph,
    rs: &RotationSystem,
    ra: &RegionAssignment,
    region: usize,
    u: usize,
    v: usize,
    z: &VertexSet,
) -> Result<Vec<usize>> {
    let (bx, ba, by, bb) = *ra
        .boundary
        .get(region)
        .ok_or(Error::NotBoundaryEdge { u, v, region })?;
    let boundary_edges =
        [(bx, ba), (ba, by), (by, bb), (bb, bx)].map(|(a, b)| (a.min(b), a.max(b)));
    if !boundary_edges.contains(&(u.min(v), u.max(v))) || !g.are_adjacent(u, v) {
        return Err(Error::NotBoundaryEdge { u, v, region });
    }
    for w in z.iter() {
        if !g.are_adjacent(w, u) || !g.are_adjacent(w, v) {
            return Err(Error::NotCommonNeighbor { z: w, u, v });
        }
        if ra.region_of(w) != Some(region) {
            return Err(Error::NotInRegion { z: w, region });
        }
    }
    if z.is_empty() {
        return Ok(Vec::new());
    }

    let faces = rs.faces()?;
    let face_of = rs.face_of_edge(&faces);
    let rot_u = &rs.rotations[u];
    let pos_v = rot_u
        .iter()
        .position(|&w| w == v)
        .ok_or(Error::NotBoundaryEdge { u, v, region })?;
    // The sector following v in the rotation at u lies in the face of the
    // directed edge (v, u); walk toward the region's side.
    let forward = ra.face_region[face_of[&(v, u)]] == region;
    let d = rot_u.len();
    let mut order = Vec::with_capacity(z.len());
    for step in 1..d {
        let pos = if forward { (pos_v + step) % d } else { (pos_v + d - step) % d };
        let w = rot_u[pos];
        if z.contains(w) {
            order.push(w);
        }
    }
    debug_assert_eq!(order.len(), z.len());
    Ok(order)
}

// ---------------------------------------------------------------------
// Inequality evaluators
// ---------------------------------------------------------------------

/// One evaluated counting inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub name: String,
    pub hypothesis_holds: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
}

impl InequalityReport {
    fn new(name: impl Into<String>, hypothesis_holds: bool, lhs: i64, rhs: i64) -> Self {
        InequalityReport { name: name.into(), hypothesis_holds, lhs, rhs, satisfied: lhs <= rhs }
    }

    /// A refutation: the hypothesis held and the inequality failed.
    pub fn violated(&self) -> bool {
        self.hypothesis_holds && !self.satisfied
    }
}

/// Cap on the non-excess common neighbors,
/// `3 (p - i)(p - j)`.
pub fn eval_estimate_c(p: i64, i: i64, j: i64) -> i64 {
    3 * (p - i) * (p - j)
}

/// Cap on the private vertices,
/// `3 p i + j - (i - j) s_max`. Requires the normalized order i >= j.
pub fn eval_estimate_s(p: i64, i: i64, j: i64, s_max: i64) -> Result<i64> {
    if i < j {
        return Err(Error::NotNormalized { i: i as u32, j: j as u32 });
    }
    Ok(3 * p * i + j - (i - j) * s_max)
}

/// Value of the key order bound, with the excess-size hypothesis flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyBound {
    pub value: i64,
    /// The derivation needs |E| <= 6; larger e is flagged, not rejected.
    pub hypothesis_ok: bool,
}

/// The combined bound
/// `(3p^2 + p + 1) - (3j(p - i) + p + (i - j) s_max - j - e - 1)`.
pub fn eval_key_big_c(p: i64, i: i64, j: i64, s_max: i64, e: i64) -> Result<KeyBound> {
    if i < j {
        return Err(Error::NotNormalized { i: i as u32, j: j as u32 });
    }
    let bracket = 3 * j * (p - i) + p + (i - j) * s_max - j - e - 1;
    Ok(KeyBound { value: order_bound_p(p) - bracket, hypothesis_ok: (0..=6).contains(&e) })
}

/// The full-private-side bound `(3p^2 + p + 1) + e + 1`, the key bound
/// specialized to i = j = p.
pub fn eval_full_private_bound(p: i64, e: i64) -> i64 {
    order_bound_p(p) + e + 1
}

// ---------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------

/// For every pair that is adjacent or has at
/// least 6 common neighbors, each label pair may contribute at most 3
/// common neighbors.
pub fn check_common_neighbor_cap(g: &NMGraph) -> Vec<InequalityReport> {
    let p = g.params().p() as usize;
    let mut out = Vec::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let common = g.neighbors(u).intersection(g.neighbors(v));
            if !g.are_adjacent(u, v) && common.len() < 6 {
                continue;
            }
            let mut counts = vec![0i64; p * p];
            for w in common.iter() {
                let a = (g.raw_label(u, w) - 1) as usize;
                let b = (g.raw_label(v, w) - 1) as usize;
                counts[a * p + b] += 1;
            }
            for a in 0..p {
                for b in 0..p {
                    out.push(InequalityReport::new(
                        format!("common-cap({u},{v};{},{})", a + 1, b + 1),
                        true,
                        counts[a * p + b],
                        3,
                    ));
                }
            }
        }
    }
    out
}

fn window_start(occupied: &[usize], k: usize, width: usize) -> Option<usize> {
    if occupied.is_empty() {
        return Some(0);
    }
    (0..k).find(|&s| occupied.iter().all(|&r| (r + k - s) % k < width))
}

/// The common-vs-private trade-off inequalities and
/// the region-spread limits, each gated by its hypothesis.
///
/// Inapplicable inputs (not complete or not planar) yield reports whose
/// hypotheses are off, never violations.
pub fn check_trade_offs(
    g: &NMGraph,
    dec: &Decomposition,
    ra: Option<&RegionAssignment>,
) -> Vec<InequalityReport> {
    let applicable = is_nm_complete_by_seeing(g).complete && is_planar(g);
    let p = g.params().p() as i64;
    let k = dec.pair.common.len();
    let mut out = Vec::new();

    // Saturated common classes force private classes down.
    for (side, c_side, s_side) in [("x", &dec.c_x, &dec.s_x), ("y", &dec.c_y, &dec.s_y)] {
        for (idx, (c_class, s_class)) in c_side.iter().zip(s_side.iter()).enumerate() {
            let a = idx + 1;
            let (c_len, s_len) = (c_class.len(), s_class.len() as i64);
            if c_len >= 5 {
                out.push(InequalityReport::new(
                    format!("private-zero({side};{a})"),
                    applicable,
                    s_len,
                    0,
                ));
            }
            if c_len >= 4 {
                out.push(InequalityReport::new(
                    format!("private-le2({side};{a})"),
                    applicable,
                    s_len,
                    2,
                ));
                if k >= 5 {
                    out.push(InequalityReport::new(
                        format!("private-le1({side};{a})"),
                        applicable,
                        s_len,
                        1,
                    ));
                }
            }
        }
    }

    let s_all = dec.s_all();
    let occupied_all = ra.map(|r| r.occupied_by(&s_all)).unwrap_or_default();
    let some_region_free = ra.is_some() && occupied_all.len() < k;
    let both_sides = dec.i > 0 && dec.j > 0;

    // Private unions are capped once some region is free of S.
    for (ai, sx) in dec.s_x.iter().enumerate() {
        for (bi, sy) in dec.s_y.iter().enumerate() {
            let union = sx.union(sy);
            if union.is_empty() {
                continue;
            }
            out.push(InequalityReport::new(
                format!("private-union-cap({},{})", ai + 1, bi + 1),
                applicable && k >= 3 && some_region_free,
                union.len() as i64,
                3 * p + 1,
            ));
            if let Some(ra) = ra {
                let occ = ra.occupied_by(&union);
                let adjacent_pair = occ.len() < 2
                    || (occ.len() == 2
                        && ((occ[1] - occ[0]) == 1 || (occ[1] - occ[0]) == k - 1));
                let mut spread = InequalityReport::new(
                    format!("union-spread-le2({},{})", ai + 1, bi + 1),
                    applicable && k >= 4,
                    occ.len() as i64,
                    2,
                );
                spread.satisfied = spread.satisfied && adjacent_pair;
                out.push(spread);
            }
        }
    }

    // Each private class is capped by the other side's largest class.
    if both_sides && k >= 3 {
        let s_max_y = dec.s_y.iter().map(|s| s.len()).max().unwrap_or(0) as i64;
        let s_max_x = dec.s_x.iter().map(|s| s.len()).max().unwrap_or(0) as i64;
        for (side, classes, other_max) in
            [("x", &dec.s_x, s_max_y), ("y", &dec.s_y, s_max_x)]
        {
            for (idx, class) in classes.iter().enumerate() {
                if class.is_empty() {
                    continue;
                }
                out.push(InequalityReport::new(
                    format!("private-cap({side};{})", idx + 1),
                    applicable,
                    class.len() as i64,
                    3 * p + 1 - other_max,
                ));
            }
        }
    }

    // All of S sits in at most 3 consecutive regions, unless it covers
    // every region.
    if let Some(_ra) = ra {
        let mut spread3 = InequalityReport::new(
            "spread-consecutive3",
            applicable && k >= 3 && both_sides && some_region_free,
            occupied_all.len() as i64,
            3,
        );
        spread3.satisfied =
            spread3.satisfied && window_start(&occupied_all, k, 3).is_some();
        out.push(spread3);
    }

    out
}

// ---------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------

/// Final verdict of an audit run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Refuted,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Refuted => "refuted",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

/// Measured quantities of the audited graph.
#[derive(Debug, Clone, Default)]
pub struct Quantities {
    pub p: u32,
    pub k: Option<usize>,
    pub i: Option<u32>,
    pub j: Option<u32>,
    pub s_max: Option<usize>,
    pub excess: Option<usize>,
    pub order: usize,
}

/// The audit decomposition and verdict for one input graph.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub input: String,
    pub valid: bool,
    pub case: String,
    pub quantities: Quantities,
    pub bound: Option<usize>,
    pub inequalities: Vec<InequalityReport>,
    pub verdict: Verdict,
}

impl StructureReport {
    pub fn to_json(&self) -> Value {
        let q = &self.quantities;
        json!({
            "input": self.input,
            "valid": self.valid,
            "case": self.case,
            "quantities": {
                "p": q.p,
                "k": q.k,
                "i": q.i,
                "j": q.j,
                "s_max": q.s_max,
                "E": q.excess,
                "|V|": q.order,
            },
            "bound": self.bound,
            "inequalities": self.inequalities.iter().map(|r| json!({
                "name": r.name,
                "hypothesis": r.hypothesis_holds,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "ok": r.satisfied,
            })).collect::<Vec<_>>(),
            "verdict": self.verdict.as_str(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}

/// Push the governing case inequality: measured order against the bound
/// (or against 4 for the excluded single-edge-type parameters, where
/// complete means clique and planar cliques stop at 4 vertices).
fn push_case_bound(
    out: &mut Vec<InequalityReport>,
    order: usize,
    bound: Option<usize>,
) {
    match bound {
        Some(b) => out.push(InequalityReport::new("case-bound", true, order as i64, b as i64)),
        None => out.push(InequalityReport::new(
            "planar-clique-max",
            true,
            order as i64,
            4,
        )),
    }
}

/// Verify, decompose, classify into the governing proof case,
/// and evaluate its inequalities.
pub fn audit(g: &NMGraph, input: &str) -> StructureReport {
    let p = g.params().p();
    let order = g.order();
    let bound = order_bound(g.params()).ok();
    let mut quantities = Quantities { p, order, ..Quantities::default() };

    let seeing = is_nm_complete_by_seeing(g);
    let ident = is_nm_complete_by_identification(g);
    let planar = is_planar(g);
    debug_assert_eq!(seeing.complete, ident.complete);
    if !(seeing.complete && ident.complete && planar) {
        let case = if !seeing.complete { "not-complete" } else { "not-planar" };
        return StructureReport {
            input: input.to_string(),
            valid: false,
            case: case.to_string(),
            quantities,
            bound,
            inequalities: Vec::new(),
            verdict: Verdict::Inapplicable,
        };
    }

    let mut inequalities = Vec::new();
    let domination = dominating_pair(g);

    let case: String;
    if domination.dominating_vertex.is_some() {
        case = "dominated".to_string();
        push_case_bound(&mut inequalities, order, bound);
    } else if domination.pair.is_none() {
        // Domination number above 2: outside the decomposition machinery,
        // the bound claim still applies.
        case = "no-dominating-pair".to_string();
        push_case_bound(&mut inequalities, order, bound);
    } else {
        let pair = domination.pair.expect("checked above");
        let dec = decompose(g, &pair).expect("pair dominates");
        let k = dec.pair.common.len();
        let (i, j) = (dec.i, dec.j);
        let e = dec.excess.len();
        quantities.k = Some(k);
        quantities.i = Some(i);
        quantities.j = Some(j);
        quantities.s_max = Some(dec.s_max);
        quantities.excess = Some(e);

        let rs = embed(g).expect("graph verified planar");
        let ra = if k >= 2 {
            Some(regions(g, &dec.pair, &rs).expect("embedding is valid and k >= 2"))
        } else {
            None
        };

        // Aggregate the common-neighbor cap; individual violations surface.
        let cap_reports = check_common_neighbor_cap(g);
        let max_lhs = cap_reports.iter().map(|r| r.lhs).max().unwrap_or(0);
        inequalities.push(InequalityReport::new(
            "common-cap-max",
            !cap_reports.is_empty(),
            max_lhs,
            3,
        ));
        inequalities.extend(cap_reports.into_iter().filter(|r| r.violated()));
        inequalities.extend(check_trade_offs(g, &dec, ra.as_ref()));

        if i == 0 && j == 0 {
            case = "both-private-empty".to_string();
            let cap = 2 + std::cmp::max(5, 3 * (p as i64) * (p as i64));
            inequalities.push(InequalityReport::new("common-plus-pair-cap", true, order as i64, cap));
            push_case_bound(&mut inequalities, order, bound);
        } else if j == 0 {
            if k <= 5 {
                case = "one-side-empty-small-common".to_string();
                inequalities.push(InequalityReport::new(
                    "private-total-cap",
                    true,
                    dec.s_all().len() as i64,
                    15,
                ));
            } else {
                case = "one-side-empty-large-common".to_string();
                for (idx, (c_class, s_class)) in dec.c_x.iter().zip(dec.s_x.iter()).enumerate() {
                    if c_class.is_empty() && s_class.is_empty() {
                        continue;
                    }
                    inequalities.push(InequalityReport::new(
                        format!("common-plus-private-cap(x;{})", idx + 1),
                        true,
                        (c_class.len() + s_class.len()) as i64,
                        3 * p as i64,
                    ));
                }
            }
            push_case_bound(&mut inequalities, order, bound);
        } else if k <= 2 {
            case = "two-sided-small-common".to_string();
            push_case_bound(&mut inequalities, order, bound);
        } else {
            // Both sides private, k >= 3: the key bound governs.
            let key = eval_key_big_c(p as i64, i as i64, j as i64, dec.s_max as i64, e as i64)
                .expect("decomposition is normalized");
            inequalities.push(InequalityReport::new(
                "excess-cap",
                true,
                e as i64,
                6,
            ));
            if let Some(ra) = &ra {
                let occupied = ra.occupied_by(&dec.s_all());
                if let Some(start) = window_start(&occupied, k, 3) {
                    // Excesses must sit on the window boundary or one step
                    // beyond it: indices start-2 ..= start+3 around the cycle.
                    let allowed: Vec<usize> =
                        (0..6).map(|d| (start + 2 * k - 2 + d) % k).collect();
                    let stray = dec
                        .excess
                        .iter()
                        .filter(|&c| {
                            let idx = ra.c_order.iter().position(|&w| w == c).expect("excess in C");
                            !allowed.contains(&idx)
                        })
                        .count();
                    inequalities.push(InequalityReport::new(
                        "excess-window",
                        true,
                        stray as i64,
                        0,
                    ));
                }
            }
            inequalities.push(InequalityReport::new(
                "key-bound",
                key.hypothesis_ok,
                order as i64,
                key.value,
            ));
            let pp = p as i64;
            case = if (i as i64) <= pp - 2
                || (i as i64 == pp - 1 && j >= 2)
                || (i as i64 == pp - 1 && j == 1 && e <= 4)
            {
                "two-sided-easy".to_string()
            } else if i as i64 == pp - 1 && j == 1 {
                "two-sided-near-full".to_string()
            } else if i as i64 == pp && (j as i64) < pp {
                "two-sided-full-partial".to_string()
            } else {
                debug_assert_eq!((i as i64, j as i64), (pp, pp));
                inequalities.push(InequalityReport::new(
                    "full-private-bound",
                    true,
                    order as i64,
                    eval_full_private_bound(pp, e as i64),
                ));
                "two-sided-full-full".to_string()
            };
            push_case_bound(&mut inequalities, order, bound);
        }
    }

    let verdict = if inequalities.iter().any(|r| r.violated()) {
        Verdict::Refuted
    } else {
        Verdict::Ok
    };
    StructureReport {
        input: input.to_string(),
        valid: true,
        case,
        quantities,
        bound,
        inequalities,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Params;

    fn params(n: u32, m: u32) -> Params {
        Params::new(n, m).unwrap()
    }

    fn g10(order: usize, arcs: &[(usize, usize)]) -> NMGraph {
        let adjacencies: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, 2)).collect();
        NMGraph::from_adjacencies(params(1, 0), order, &adjacencies).unwrap()
    }

    fn g02(order: usize, edges: &[(usize, usize, u32)]) -> NMGraph {
        NMGraph::from_adjacencies(params(0, 2), order, edges).unwrap()
    }

    #[test]
    fn dominating_pair_on_k24() {
        // Parts {0,1} and {2..5}.
        let mut edges = Vec::new();
        for x in 0..2usize {
            for c in 2..6usize {
                edges.push((x, c, 1));
            }
        }
        let g = g02(6, &edges);
        let report = dominating_pair(&g);
        assert_eq!(report.dominating_vertex, None);
        let pair = report.pair.unwrap();
        assert_eq!((pair.x, pair.y), (0, 1));
        assert_eq!(pair.common.len(), 4);
    }

    #[test]
    fn dominating_vertex_on_star() {
        let edges: Vec<_> = (1..6).map(|v| (0, v, 1)).collect();
        let g = g02(6, &edges);
        let report = dominating_pair(&g);
        assert_eq!(report.dominating_vertex, Some(0));
    }

    #[test]
    fn three_disjoint_edges_have_no_pair() {
        let g = g02(6, &[(0, 1, 1), (2, 3, 1), (4, 5, 1)]);
        let report = dominating_pair(&g);
        assert_eq!(report.dominating_vertex, None);
        assert!(report.pair.is_none());
    }

    #[test]
    fn decompose_counts_private_classes() {
        // x = 0, y = 1 dominate; 0 has one private 2-neighbor (5); y none.
        let g = g10(6, &[(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4), (0, 5)]);
        let report = dominating_pair(&g);
        let pair = report.pair.unwrap();
        let dec = decompose(&g, &pair).unwrap();
        assert_eq!((dec.i, dec.j), (1, 0));
        assert_eq!(dec.s_max, 0);
        assert!(!dec.swapped);
        // c in C^{2,2} with S_x^2 nonempty: every common neighbor is excess.
        assert_eq!(dec.excess, dec.pair.common);

        // All of V minus the pair inside C: no privates at all.
        let g2 = g10(5, &[(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]);
        let dec2 = decompose(&g2, &dominating_pair(&g2).pair.unwrap()).unwrap();
        assert_eq!((dec2.i, dec2.j), (0, 0));
        assert!(dec2.excess.is_empty());
        assert!(dec2.s_all().is_empty());
    }

    #[test]
    fn decompose_partitions() {
        let g = g10(7, &[(0, 2), (1, 2), (0, 3), (3, 1), (0, 4), (1, 4), (5, 0), (1, 6)]);
        let dec = decompose(&g, &dominating_pair(&g).pair.unwrap()).unwrap();
        let mut c_union = VertexSet::new();
        for set in &dec.c_by_labels {
            assert!(c_union.intersection(set).is_empty(), "label classes are disjoint");
            c_union = c_union.union(set);
        }
        assert_eq!(c_union, dec.pair.common);
        let sx_union = dec.s_x_all();
        let per_label: usize = dec.s_x.iter().map(|s| s.len()).sum();
        assert_eq!(sx_union.len(), per_label);
        assert!(dec.excess.is_subset(&dec.pair.common));
        assert!(dec.i >= dec.j);
    }

    #[test]
    fn regions_on_k23_with_inner_vertex() {
        // K_{2,3} plus vertex 5 adjacent to x=0, c=2, c=3.
        let mut edges = vec![];
        for x in 0..2usize {
            for c in 2..5usize {
                edges.push((x, c, 1));
            }
        }
        edges.extend([(5, 0, 1), (5, 2, 1), (5, 3, 1)]);
        let g = g02(6, &edges);
        let pair = dominating_pair(&g).pair.unwrap();
        let dec = decompose(&g, &pair).unwrap();
        let rs = embed(&g).unwrap();
        let ra = regions(&g, &dec.pair, &rs).unwrap();
        assert_eq!(ra.region_count, 3);
        assert_eq!(ra.c_order[0], 2, "numbering starts at the least common neighbor");
        let r5 = ra.region_of(5).unwrap();
        let (_, ca, _, cb) = ra.boundary[r5];
        let mut pair_c = [ca, cb];
        pair_c.sort_unstable();
        assert_eq!(pair_c, [2, 3], "vertex 5 sits between its two common anchors");
        // The bare skeleton places nothing.
        let bare = g02(5, &edges[..6]);
        let bpair = dominating_pair(&bare).pair.unwrap();
        let bdec = decompose(&bare, &bpair).unwrap();
        let brs = embed(&bare).unwrap();
        let bra = regions(&bare, &bdec.pair, &brs).unwrap();
        assert!(bra.placement.iter().all(|r| r.is_none()));
    }

    #[test]
    fn nearest_order_matches_rotation_fan() {
        // K_{2,4} on {0,1 | 2,3,7,8} keeps {0,1} the maximizing pair; a
        // fan 4-5-6 sits between x=0 and c=2, chained so that the nesting
        // order is forced up to reflection.
        let mut edges = vec![];
        for c in [2usize, 3, 7, 8] {
            edges.push((0, c, 1));
            edges.push((1, c, 1));
        }
        for z in 4..7usize {
            edges.push((0, z, 1));
            edges.push((2, z, 2));
        }
        edges.push((4, 5, 1));
        edges.push((5, 6, 1));
        let g = g02(9, &edges);
        let pair = dominating_pair(&g).pair.unwrap();
        assert_eq!((pair.x, pair.y), (0, 1));
        let dec = decompose(&g, &pair).unwrap();
        let rs = embed(&g).unwrap();
        let ra = regions(&g, &dec.pair, &rs).unwrap();
        let z: VertexSet = [4usize, 5, 6].into_iter().collect();
        let region = ra.region_of(4).unwrap();
        assert_eq!(ra.occupied_by(&z), vec![region], "chained fan sits in one region");
        let order = nearest_order(&g, &rs, &ra, region, 0, 2, &z).unwrap();
        // The chain 4-5-6 forces 5 into the middle of the nesting.
        assert!(order == vec![4, 5, 6] || order == vec![6, 5, 4], "got {order:?}");

        let single: VertexSet = [4usize].into_iter().collect();
        assert_eq!(nearest_order(&g, &rs, &ra, region, 0, 2, &single).unwrap(), vec![4]);
        assert_eq!(
            nearest_order(&g, &rs, &ra, region, 0, 2, &VertexSet::new()).unwrap(),
            Vec::<usize>::new()
        );
        assert!(nearest_order(&g, &rs, &ra, region, 0, 1, &z).is_err());
    }

    #[test]
    fn privates_in_far_regions_break_completeness() {
        // K_{2,4} plus a private neighbor of x and one of y with no common
        // middle: the private pair cannot see, whatever the embedding does.
        let mut edges = Vec::new();
        for x in 0..2usize {
            for c in 2..6usize {
                edges.push((x, c, 1 + ((x + c) % 2) as u32));
            }
        }
        edges.push((0, 6, 1));
        edges.push((1, 7, 1));
        let g = g02(8, &edges);
        let verdict = crate::seeing::is_nm_complete_by_seeing(&g);
        assert!(!verdict.complete);
        // x and the private neighbor of y share no middle at all, and that
        // pair sorts before the private-private pair (6,7).
        assert_eq!(verdict.blaming_pair, Some((0, 7)));
        assert!(crate::seeing::sees(&g, 6, 7).unwrap().is_none());
    }

    #[test]
    fn trade_off_reports_on_saturated_common_classes() {
        // x = 0 adjacent to five common neighbors by the same arc type and
        // no private 2-neighbors: the private-zero report holds with 0 <= 0.
        let mut edges: Vec<(usize, usize, u32)> = Vec::new();
        for c in 2..7usize {
            edges.push((0, c, 2));
            edges.push((1, c, 2));
        }
        let g = NMGraph::from_adjacencies(params(1, 0), 7, &edges).unwrap();
        let dec = decompose(&g, &dominating_pair(&g).pair.unwrap()).unwrap();
        let reports = check_trade_offs(&g, &dec, None);
        let zero = reports.iter().find(|r| r.name == "private-zero(x;2)").unwrap();
        assert_eq!((zero.lhs, zero.rhs, zero.satisfied), (0, 0, true));

        // |C| = 5 with |C_x^2| = 4 and one private 2-neighbor of x: the
        // tightened cap 1 applies and holds.
        let mut edges: Vec<(usize, usize, u32)> = Vec::new();
        for c in 2..6usize {
            edges.push((0, c, 2));
            edges.push((1, c, 2));
        }
        edges.push((0, 6, 1));
        edges.push((1, 6, 1));
        edges.push((0, 7, 2));
        let g = NMGraph::from_adjacencies(params(1, 0), 8, &edges).unwrap();
        let dec = decompose(&g, &dominating_pair(&g).pair.unwrap()).unwrap();
        assert_eq!(dec.c_x[1].len(), 4, "four 2-labeled common neighbors");
        assert_eq!(dec.pair.common.len(), 5);
        let reports = check_trade_offs(&g, &dec, None);
        let le2 = reports.iter().find(|r| r.name == "private-le2(x;2)").unwrap();
        assert_eq!((le2.lhs, le2.rhs, le2.satisfied), (1, 2, true));
        let le1 = reports.iter().find(|r| r.name == "private-le1(x;2)").unwrap();
        assert_eq!((le1.lhs, le1.rhs, le1.satisfied), (1, 1, true));
    }

    #[test]
    fn evaluator_values() {
        assert_eq!(eval_estimate_c(3, 3, 3), 0);
        assert_eq!(eval_estimate_c(3, 0, 0), 27);
        assert_eq!(eval_estimate_c(3, 2, 1), 6);

        assert_eq!(eval_estimate_s(3, 3, 3, 17).unwrap(), 30);
        assert_eq!(eval_estimate_s(3, 1, 0, 2).unwrap(), 7);
        assert_eq!(eval_estimate_s(3, 0, 0, 0).unwrap(), 0);
        assert!(eval_estimate_s(3, 1, 2, 0).is_err());

        assert_eq!(eval_key_big_c(3, 3, 3, 0, 6).unwrap().value, 38);
        assert_eq!(eval_key_big_c(3, 2, 2, 0, 6).unwrap().value, 31);
        // Identity with the composed count: 2 + 6 + 4 + 17 = 29.
        let key = eval_key_big_c(3, 2, 1, 2, 4).unwrap();
        assert_eq!(key.value, 29);
        assert!(key.hypothesis_ok);
        assert!(!eval_key_big_c(3, 2, 1, 2, 7).unwrap().hypothesis_ok);
    }

    #[test]
    fn key_bound_equals_composed_count() {
        for p in 1..=6i64 {
            for i in 0..=p {
                for j in 0..=i {
                    for s_max in 0..=4 {
                        for e in 0..=6 {
                            let composed = 2 + eval_estimate_c(p, i, j)
                                + e
                                + eval_estimate_s(p, i, j, s_max).unwrap();
                            assert_eq!(
                                eval_key_big_c(p, i, j, s_max, e).unwrap().value,
                                composed
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn common_neighbor_cap_reports() {
        let triangle = g10(3, &[(0, 1), (1, 2), (2, 0)]);
        let reports = check_common_neighbor_cap(&triangle);
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| !r.violated()));
        assert!(reports.iter().all(|r| r.lhs <= 1));

        // K_{2,4} monochromatic: (0,1) non-adjacent with only 4 common
        // neighbors, hypothesis not triggered for that pair.
        let mut edges = Vec::new();
        for x in 0..2usize {
            for c in 2..6usize {
                edges.push((x, c, 1));
            }
        }
        let g = g02(6, &edges);
        let reports = check_common_neighbor_cap(&g);
        assert!(reports.iter().all(|r| !r.name.starts_with("common-cap(0,1;")));
    }

    #[test]
    fn audit_dominated_triangle() {
        let triangle = g10(3, &[(0, 1), (1, 2), (2, 0)]);
        let report = audit(&triangle, "triangle");
        assert!(report.valid);
        assert_eq!(report.case, "dominated");
        assert_eq!(report.verdict, Verdict::Ok);
        assert_eq!(report.bound, Some(15));
        let json = report.to_json();
        assert_eq!(json["quantities"]["|V|"], 3);
        assert_eq!(json["verdict"], "ok");
    }

    #[test]
    fn audit_handles_degenerate_orders() {
        let empty = NMGraph::new(params(1, 0), 0).unwrap();
        let report = audit(&empty, "empty");
        assert!(report.valid);
        assert_eq!(report.verdict, Verdict::Ok);

        let single = NMGraph::new(params(1, 0), 1).unwrap();
        let report = audit(&single, "single");
        assert_eq!(report.case, "dominated");
        assert_eq!(report.verdict, Verdict::Ok);

        let isolated_pair = NMGraph::new(params(1, 0), 2).unwrap();
        let report = audit(&isolated_pair, "isolated-pair");
        assert!(!report.valid);
        assert_eq!(report.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn audit_rejects_incomplete_or_nonplanar() {
        let inward = g10(3, &[(0, 1), (2, 1)]);
        let report = audit(&inward, "inward");
        assert!(!report.valid);
        assert_eq!(report.verdict, Verdict::Inapplicable);
        assert_eq!(report.case, "not-complete");
    }

    #[test]
    fn audit_both_private_empty_case() {
        // K_{2,4} with distinct labels so that every pair sees; built to
        // have no dominating vertex and S empty.
        let edges = vec![
            (0, 2, 1),
            (0, 3, 2),
            (0, 4, 1),
            (0, 5, 2),
            (1, 2, 2),
            (1, 3, 1),
            (1, 4, 1),
            (1, 5, 2),
            (2, 3, 1),
            (4, 5, 1),
        ];
        let g = g02(6, &edges);
        assert!(is_nm_complete_by_seeing(&g).complete);
        let report = audit(&g, "k24-labeled");
        assert!(report.valid, "graph is complete and planar");
        if report.case == "both-private-empty" {
            assert_eq!(report.quantities.i, Some(0));
        }
        assert_eq!(report.verdict, Verdict::Ok);
    }
}
