//! Label-preserving homomorphisms and the two derived parameters: the
//! minimum order of a homomorphic image and the maximum size of a vertex
//! subset inducing a complete sub-(n,m)-graph.
//!
//! The chromatic search runs over quotient partitions rather than over all
//! candidate targets: the image of any homomorphism is the quotient by its
//! fibers, and merging fiber-mates pairwise never conflicts, so first-fit
//! enumeration of valid partitions reaches every achievable image size.

use crate::error::{Error, Result};
use crate::graph::{NMGraph, VertexSet};
use crate::planarity::is_planar;

/// A vertex mapping between two graphs sharing parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMapping {
    pub source_order: usize,
    pub target_order: usize,
    /// Target vertex for each source vertex.
    pub map: Vec<usize>,
}

/// Result of validating a mapping: empty `violations` means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCheck {
    pub valid: bool,
    /// Source pairs whose adjacency is not preserved with its label.
    pub violations: Vec<(usize, usize)>,
}

/// Every adjacent source pair must map to an
/// adjacent target pair carrying the same label.
pub fn check_homomorphism(g: &NMGraph, h: &NMGraph, mapping: &HomMapping) -> Result<HomCheck> {
    if g.params() != h.params() {
        return Err(Error::ParamsMismatch(
            g.params().n(),
            g.params().m(),
            h.params().n(),
            h.params().m(),
        ));
    }
    if mapping.map.len() != g.order() {
        return Err(Error::MappingNotTotal { expected: g.order(), got: mapping.map.len() });
    }
    for &t in &mapping.map {
        if t >= h.order() {
            return Err(Error::VertexOutOfRange { v: t, order: h.order() });
        }
    }
    let mut violations = Vec::new();
    for (u, v, label) in g.adjacent_pairs() {
        let (tu, tv) = (mapping.map[u], mapping.map[v]);
        if tu == tv || h.label(tu, tv) != Some(label) {
            violations.push((u, v));
        }
    }
    Ok(HomCheck { valid: violations.is_empty(), violations })
}

/// The lexicographically least valid mapping, by
/// backtracking with forward checking over per-vertex candidate sets.
pub fn find_homomorphism(g: &NMGraph, h: &NMGraph) -> Result<Option<HomMapping>> {
    if g.params() != h.params() {
        return Err(Error::ParamsMismatch(
            g.params().n(),
            g.params().m(),
            h.params().n(),
            h.params().m(),
        ));
    }
    if g.order() == 0 {
        return Ok(Some(HomMapping { source_order: 0, target_order: h.order(), map: vec![] }));
    }
    if h.order() == 0 {
        return Ok(None);
    }

    // h_alpha[t][l - 1] = the l-neighbors of target t.
    let p = h.params().p() as usize;
    let h_alpha: Vec<Vec<VertexSet>> = (0..h.order())
        .map(|t| {
            let mut rows = vec![VertexSet::new(); p];
            for s in h.neighbors(t).iter() {
                rows[(h.raw_label(t, s) - 1) as usize].insert(s);
            }
            rows
        })
        .collect();

    let order = g.order();
    let mut cands: Vec<VertexSet> = vec![VertexSet::full(h.order()); order];
    let mut map = vec![0usize; order];

    fn assign(
        g: &NMGraph,
        h_alpha: &[Vec<VertexSet>],
        cands: &mut Vec<VertexSet>,
        map: &mut Vec<usize>,
        v: usize,
    ) -> bool {
        if v == g.order() {
            return true;
        }
        let options = cands[v];
        for t in options.iter() {
            map[v] = t;
            // Restrict unassigned neighbors to the right label class of t.
            let saved = cands.clone();
            let mut feasible = true;
            for w in g.neighbors(v).iter() {
                if w <= v {
                    continue;
                }
                let label = g.raw_label(v, w) as usize;
                cands[w] = cands[w].intersection(&h_alpha[t][label - 1]);
                if cands[w].is_empty() {
                    feasible = false;
                    break;
                }
            }
            if feasible && assign(g, h_alpha, cands, map, v + 1) {
                return true;
            }
            *cands = saved;
        }
        false
    }

    // Assigned earlier vertices constrain later ones only (w <= v skipped
    // above), so back-adjacencies must be honored by the candidate sets
    // already; forward checking guarantees that.
    if assign(g, &h_alpha, &mut cands, &mut map, 0) {
        Ok(Some(HomMapping { source_order: order, target_order: h.order(), map }))
    } else {
        Ok(None)
    }
}

/// Outcome of the chromatic computation under a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chromatic {
    Value(usize),
    ExceedsLimit,
}

impl Chromatic {
    pub fn value(&self) -> Option<usize> {
        match self {
            Chromatic::Value(k) => Some(*k),
            Chromatic::ExceedsLimit => None,
        }
    }
}

struct ChiSearch<'a> {
    g: &'a NMGraph,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// quot[c][d] = label from class c toward class d, 0 when undecided.
    quot: Vec<Vec<u8>>,
    best: usize,
}

impl<'a> ChiSearch<'a> {
    fn run(g: &'a NMGraph, cap: usize) -> usize {
        let order = g.order();
        let mut s = ChiSearch {
            g,
            class_of: vec![usize::MAX; order],
            members: Vec::new(),
            quot: vec![vec![0; order]; order],
            best: cap,
        };
        s.assign(0);
        s.best
    }

    fn assign(&mut self, v: usize) {
        if self.members.len() >= self.best {
            return;
        }
        if v == self.g.order() {
            self.best = self.members.len();
            return;
        }
        for c in 0..self.members.len() {
            if let Some(touched) = self.try_place(v, c) {
                self.class_of[v] = c;
                self.members[c].push(v);
                self.assign(v + 1);
                self.members[c].pop();
                self.class_of[v] = usize::MAX;
                for (a, b) in touched {
                    self.quot[a][b] = 0;
                    self.quot[b][a] = 0;
                }
            }
        }
        // Open a fresh class. Even this can conflict: two same-class
        // neighbors of v reaching it with different labels block every
        // placement, which prunes the prefix.
        if self.members.len() + 1 < self.best {
            let c = self.members.len();
            self.members.push(vec![v]);
            self.class_of[v] = c;
            if let Some(touched) = self.record_labels(v, c) {
                self.assign(v + 1);
                for (a, b) in touched {
                    self.quot[a][b] = 0;
                    self.quot[b][a] = 0;
                }
            }
            self.class_of[v] = usize::MAX;
            self.members.pop();
        }
    }

    /// Merge legality: no neighbor inside the class, and edges toward each
    /// other class must agree on a single label.
    fn try_place(&mut self, v: usize, c: usize) -> Option<Vec<(usize, usize)>> {
        if self.members[c].iter().any(|&u| self.g.are_adjacent(v, u)) {
            return None;
        }
        self.class_of[v] = c;
        let result = self.record_labels(v, c);
        self.class_of[v] = usize::MAX;
        result
    }

    fn record_labels(&mut self, v: usize, c: usize) -> Option<Vec<(usize, usize)>> {
        let mut touched = Vec::new();
        for w in self.g.neighbors(v).iter() {
            let d = self.class_of[w];
            if d == usize::MAX || w == v {
                continue;
            }
            let label = self.g.raw_label(v, w);
            match self.quot[c][d] {
                0 => {
                    self.quot[c][d] = label;
                    self.quot[d][c] = self.g.raw_label(w, v);
                    touched.push((c, d));
                }
                existing if existing == label => {}
                _ => {
                    for (a, b) in touched {
                        self.quot[a][b] = 0;
                        self.quot[b][a] = 0;
                    }
                    return None;
                }
            }
        }
        Some(touched)
    }
}

/// Least order of a homomorphic image, computed by
/// branch-and-bound over first-fit quotient partitions.
pub fn chromatic_number(g: &NMGraph, limit: usize) -> Chromatic {
    assert!(limit >= 1, "limit must be at least 1");
    if g.order() == 0 {
        return Chromatic::Value(0);
    }
    let cap = limit.min(g.order()) + 1;
    let found = ChiSearch::run(g, cap);
    if found <= limit {
        Chromatic::Value(found)
    } else {
        Chromatic::ExceedsLimit
    }
}

/// Does `(u, v)` see inside the host graph with middles restricted to
/// `members`? Both endpoints are assumed to be members.
fn sees_within(g: &NMGraph, u: usize, v: usize, members: &VertexSet) -> bool {
    if g.are_adjacent(u, v) {
        return true;
    }
    let common = g.neighbors(u).intersection(g.neighbors(v)).intersection(members);
    let repairable = common.iter().any(|w| g.raw_label(u, w) != g.raw_label(v, w));
    repairable
}

struct CliqueSearch<'a> {
    g: &'a NMGraph,
    chosen: Vec<usize>,
    chosen_set: VertexSet,
    best: usize,
    best_set: VertexSet,
    /// Gates the common-label-class cap: only planar hosts obey it.
    planar_host: bool,
}

impl<'a> CliqueSearch<'a> {
    fn descend(&mut self, next: usize) {
        let order = self.g.order();
        if self.chosen.len() + (order - next) <= self.best {
            return;
        }
        // `available` = chosen plus everything still undecided.
        let mut available = self.chosen_set;
        for v in next..order {
            available.insert(v);
        }
        // Unrepairable pair: cannot gain a qualifying middle anymore.
        for (i, &u) in self.chosen.iter().enumerate() {
            for &v in &self.chosen[i + 1..] {
                if !sees_within(self.g, u, v, &available) {
                    return;
                }
            }
        }
        if self.planar_host && self.common_cap_violated() {
            return;
        }
        if next == order {
            // All pairs see inside `chosen` (available == chosen here).
            if self.chosen.len() > self.best {
                self.best = self.chosen.len();
                self.best_set = self.chosen_set;
            }
            return;
        }
        self.chosen.push(next);
        self.chosen_set.insert(next);
        self.descend(next + 1);
        self.chosen_set.remove(next);
        self.chosen.pop();
        self.descend(next + 1);
    }

    /// Inside a planar complete graph, an adjacent pair (or one with six
    /// common neighbors) has at most 3 common neighbors per label pair;
    /// the counts only grow along the include-branch.
    fn common_cap_violated(&self) -> bool {
        let p = self.g.params().p() as usize;
        for (i, &u) in self.chosen.iter().enumerate() {
            for &v in &self.chosen[i + 1..] {
                let common =
                    self.g.neighbors(u).intersection(self.g.neighbors(v)).intersection(&self.chosen_set);
                if !self.g.are_adjacent(u, v) && common.len() < 6 {
                    continue;
                }
                let mut counts = vec![0u8; p * p];
                for w in common.iter() {
                    let a = (self.g.raw_label(u, w) - 1) as usize;
                    let b = (self.g.raw_label(v, w) - 1) as usize;
                    counts[a * p + b] += 1;
                    if counts[a * p + b] > 3 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// The largest subset inducing a complete
/// sub-(n,m)-graph (middles restricted to the subset), with the
/// lexicographically least witness of maximum size.
pub fn absolute_clique_number(g: &NMGraph) -> (usize, VertexSet) {
    if g.order() == 0 {
        return (0, VertexSet::new());
    }
    let mut s = CliqueSearch {
        g,
        chosen: Vec::new(),
        chosen_set: VertexSet::new(),
        best: 0,
        best_set: VertexSet::new(),
        planar_host: is_planar(g),
    };
    s.descend(0);
    (s.best, s.best_set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Params;
    use crate::seeing::is_nm_complete_by_seeing;

    fn g10(order: usize, arcs: &[(usize, usize)]) -> NMGraph {
        let adjacencies: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, 2)).collect();
        NMGraph::from_adjacencies(Params::new(1, 0).unwrap(), order, &adjacencies).unwrap()
    }

    fn triangle() -> NMGraph {
        g10(3, &[(0, 1), (1, 2), (2, 0)])
    }

    #[test]
    fn check_identity_and_violations() {
        let t = triangle();
        let id = HomMapping { source_order: 3, target_order: 3, map: vec![0, 1, 2] };
        assert!(check_homomorphism(&t, &t, &id).unwrap().valid);

        let path = g10(3, &[(0, 1), (1, 2)]);
        let into = HomMapping { source_order: 3, target_order: 3, map: vec![0, 1, 2] };
        assert!(check_homomorphism(&path, &t, &into).unwrap().valid);

        let arc = g10(2, &[(0, 1)]);
        let folded = HomMapping { source_order: 3, target_order: 2, map: vec![0, 1, 0] };
        // Folding the directed path sends its second arc onto the reverse
        // of the target arc.
        let check = check_homomorphism(&path, &arc, &folded).unwrap();
        assert!(!check.valid);
        assert_eq!(check.violations, vec![(1, 2)]);
        // The inward path folds cleanly.
        let inward = g10(3, &[(0, 1), (2, 1)]);
        assert!(check_homomorphism(&inward, &arc, &folded).unwrap().valid);

        let other = NMGraph::new(Params::new(0, 2).unwrap(), 3).unwrap();
        assert!(check_homomorphism(&t, &other, &id).is_err());
    }

    #[test]
    fn find_homomorphism_cases() {
        let t = triangle();
        let found = find_homomorphism(&t, &t).unwrap().unwrap();
        assert_eq!(found.map, vec![0, 1, 2], "identity is the least mapping");

        let arc = g10(2, &[(0, 1)]);
        assert_eq!(find_homomorphism(&t, &arc).unwrap(), None);

        let inward = g10(3, &[(0, 1), (2, 1)]);
        let folded = find_homomorphism(&inward, &arc).unwrap().unwrap();
        assert_eq!(folded.map, vec![0, 1, 0]);
        assert!(check_homomorphism(&inward, &arc, &folded).unwrap().valid);
    }

    #[test]
    fn chromatic_small_cases() {
        assert_eq!(chromatic_number(&triangle(), 3), Chromatic::Value(3));
        assert_eq!(chromatic_number(&triangle(), 2), Chromatic::ExceedsLimit);
        let inward = g10(3, &[(0, 1), (2, 1)]);
        assert_eq!(chromatic_number(&inward, 3), Chromatic::Value(2));
        let edgeless = g10(4, &[]);
        assert_eq!(chromatic_number(&edgeless, 4), Chromatic::Value(1));
    }

    #[test]
    fn clique_small_cases() {
        let (size, set) = absolute_clique_number(&triangle());
        assert_eq!((size, set.to_vec()), (3, vec![0, 1, 2]));

        let inward = g10(3, &[(0, 1), (2, 1)]);
        let (size, set) = absolute_clique_number(&inward);
        assert_eq!((size, set.to_vec()), (2, vec![0, 1]));
    }

    #[test]
    fn directed_five_cycle_is_itself_complete() {
        let c5 = g10(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(is_nm_complete_by_seeing(&c5).complete);
        let (size, set) = absolute_clique_number(&c5);
        assert_eq!((size, set.len()), (5, 5));
    }

    #[test]
    fn monochromatic_five_cycle_clique_is_two() {
        let edges: Vec<_> = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
            .iter()
            .map(|&(u, v)| (u, v, 1))
            .collect();
        let c5 = NMGraph::from_adjacencies(Params::new(0, 2).unwrap(), 5, &edges).unwrap();
        let (size, set) = absolute_clique_number(&c5);
        assert_eq!((size, set.to_vec()), (2, vec![0, 1]));
    }

    #[test]
    fn soundness_of_found_mappings() {
        // Quotients guarantee a homomorphism exists; the found map must
        // verify and compose.
        let path = g10(4, &[(0, 1), (1, 2), (2, 3)]);
        let t = triangle();
        let f1 = find_homomorphism(&path, &t).unwrap().unwrap();
        assert!(check_homomorphism(&path, &t, &f1).unwrap().valid);
        let relabeled = g10(3, &[(1, 2), (2, 0), (0, 1)]);
        let f2 = find_homomorphism(&t, &relabeled).unwrap().unwrap();
        let composed = HomMapping {
            source_order: 4,
            target_order: 3,
            map: f1.map.iter().map(|&v| f2.map[v]).collect(),
        };
        assert!(check_homomorphism(&path, &relabeled, &composed).unwrap().valid);
    }
}
