//! Planarity, outerplanarity, and combinatorial embeddings of the
//! underlying simple graph.
//!
//! The embedder works per biconnected block: start from a cycle, then
//! repeatedly route a path of some unembedded fragment through an
//! admissible face, always serving a fragment with the fewest admissible
//! faces first. Block rotations are concatenated at cut vertices. The
//! result is a rotation system; faces come from the usual traversal rule
//! (the successor of the reversed edge in the rotation at its head).

use crate::error::{Error, Result};
use crate::graph::NMGraph;
use std::collections::{HashMap, HashSet, VecDeque};

/// A combinatorial planar embedding: one cyclic neighbor sequence per
/// vertex plus a designated outer face (an index into [`RotationSystem::faces`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub order: usize,
    pub rotations: Vec<Vec<usize>>,
    pub outer_face: usize,
}

impl RotationSystem {
    fn check(&self) -> Result<()> {
        if self.rotations.len() != self.order {
            return Err(Error::InvalidRotationSystem(format!(
                "{} rotations for order {}",
                self.rotations.len(),
                self.order
            )));
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut seen = HashSet::new();
            for &u in rot {
                if u == v || u >= self.order {
                    return Err(Error::InvalidRotationSystem(format!(
                        "rotation at {v} mentions {u}"
                    )));
                }
                if !seen.insert(u) {
                    return Err(Error::InvalidRotationSystem(format!(
                        "rotation at {v} repeats {u}"
                    )));
                }
                if !self.rotations[u].contains(&v) {
                    return Err(Error::InvalidRotationSystem(format!(
                        "edge ({v},{u}) lacks its mirror"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Traces every directed edge into exactly one closed walk.
    ///
    /// Walks are vertex sequences; consecutive entries (cyclically) are the
    /// directed edges of the face.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        self.check()?;
        // succ[v][u] = neighbor after u in the rotation at v.
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); self.order];
        for (v, rot) in self.rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                succ[v].insert(u, rot[(i + 1) % rot.len()]);
            }
        }
        let mut visited: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.order {
            for &v in &self.rotations[u] {
                if visited.contains(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    walk.push(a);
                    visited.insert((a, b));
                    let next = succ[b][&a];
                    a = b;
                    b = next;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        Ok(faces)
    }

    /// Directed-edge-to-face index map, aligned with [`RotationSystem::faces`].
    pub(crate) fn face_of_edge(&self, faces: &[Vec<usize>]) -> HashMap<(usize, usize), usize> {
        let mut map = HashMap::new();
        for (idx, walk) in faces.iter().enumerate() {
            for i in 0..walk.len() {
                map.insert((walk[i], walk[(i + 1) % walk.len()]), idx);
            }
        }
        map
    }
}

/// Sorted underlying adjacency lists of an [`NMGraph`].
fn underlying_adj(g: &NMGraph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect()
}

fn edge_count(adj: &[Vec<usize>]) -> usize {
    adj.iter().map(|a| a.len()).sum::<usize>() / 2
}

/// Planarity of the underlying simple graph.
pub fn is_planar(g: &NMGraph) -> bool {
    is_planar_adj(&underlying_adj(g))
}

pub(crate) fn is_planar_adj(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n >= 3 && edge_count(adj) > 3 * n - 6 {
        return false;
    }
    embed_adj(adj).is_some()
}

/// Planarity of the graph plus a universal apex vertex.
pub fn is_outerplanar(g: &NMGraph) -> bool {
    let adj = underlying_adj(g);
    let n = adj.len();
    if n >= 2 && edge_count(&adj) > 2 * n - 3 {
        return false;
    }
    is_outerplanar_adj(&adj)
}

pub(crate) fn is_outerplanar_adj(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut apexed: Vec<Vec<usize>> = adj.to_vec();
    apexed.push((0..n).collect());
    for (v, row) in apexed.iter_mut().enumerate().take(n) {
        row.push(n);
        debug_assert!(!row[..row.len() - 1].contains(&v));
    }
    is_planar_adj(&apexed)
}

/// A rotation system when the graph is planar, with the outer
/// face defaulting to a longest face (ties: least index).
pub fn embed(g: &NMGraph) -> Option<RotationSystem> {
    let rotations = embed_adj(&underlying_adj(g))?;
    let mut rs = RotationSystem { order: g.order(), rotations, outer_face: 0 };
    let faces = rs.faces().expect("constructed rotation system is well formed");
    rs.outer_face = faces
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    Some(rs)
}

/// Embeds an arbitrary graph given as sorted adjacency lists.
fn embed_adj(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(adj) {
        let block_rot = embed_block(&block)?;
        for (v, rot) in block_rot {
            rotations[v].extend(rot);
        }
    }
    Some(rotations)
}

/// Biconnected components as edge lists, in DFS completion order.
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    let mut timer = 0usize;

    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        // Iterative DFS: (vertex, next neighbor index).
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if *idx < adj[u].len() {
                let w = adj[u][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    parent[w] = u;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((u, w));
                    stack.push((w, 0));
                } else if w != parent[u] && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p is a cut vertex (or the root): pop one block.
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Rotation lists for one biconnected block, or `None` if it is nonplanar.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }

    // Local dense indexing.
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let b = verts.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); b];
    for &(u, v) in edges {
        let (lu, lv) = (index[&u], index[&v]);
        adj[lu].push(lv);
        adj[lv].push(lu);
    }
    for row in &mut adj {
        row.sort_unstable();
    }

    let faces = embed_biconnected(b, &adj)?;

    // Recover rotations from the face walks: in a face ... a, v, w ...,
    // w follows a in the rotation at v.
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); b];
    for walk in &faces {
        let len = walk.len();
        for i in 0..len {
            let (a, v, w) = (walk[i], walk[(i + 1) % len], walk[(i + 2) % len]);
            succ[v].insert(a, w);
        }
    }
    let mut out = Vec::with_capacity(b);
    for v in 0..b {
        let first = adj[v][0];
        let mut rot = vec![first];
        let mut cur = succ[v][&first];
        while cur != first {
            rot.push(cur);
            cur = succ[v][&cur];
        }
        debug_assert_eq!(rot.len(), adj[v].len(), "rotation must cover all neighbors");
        out.push((verts[v], rot.into_iter().map(|l| verts[l]).collect()));
    }
    Some(out)
}

/// One unembedded piece relative to the current plane subgraph.
struct Fragment {
    /// Embedded vertices this fragment must reach.
    attachments: Vec<usize>,
    /// `None` for a chord; otherwise the non-embedded component vertices.
    component: Option<Vec<usize>>,
    /// The chord itself, when `component` is `None`.
    chord: (usize, usize),
}

/// Face-based planar embedding of a biconnected graph (>= 2 edges).
/// Faces are simple cycles throughout, because every intermediate plane
/// subgraph is built by adding ears to a cycle.
fn embed_biconnected(n: usize, adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let cycle = find_cycle(n, adj);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut emb_v = vec![false; n];
    let mut emb_e: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        emb_v[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        emb_e.insert((v.min(w), v.max(w)));
    }

    loop {
        let fragments = compute_fragments(n, adj, &emb_v, &emb_e);
        if fragments.is_empty() {
            return Some(faces);
        }
        let face_vsets: Vec<HashSet<usize>> =
            faces.iter().map(|f| f.iter().copied().collect()).collect();

        // Serve a fragment with the fewest admissible faces; a fragment
        // with none proves nonplanarity.
        let mut chosen: Option<(usize, usize, usize)> = None; // (count, frag idx, face idx)
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_vsets
                .iter()
                .enumerate()
                .filter(|(_, vs)| frag.attachments.iter().all(|a| vs.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if chosen.is_none_or(|(c, _, _)| admissible.len() < c) {
                chosen = Some((admissible.len(), fi, admissible[0]));
            }
        }
        let (_, fi, face_idx) = chosen.expect("fragments is non-empty");
        let frag = &fragments[fi];

        let path = fragment_path(adj, frag);
        // Split the face along the path.
        let face = faces[face_idx].clone();
        let pa = face.iter().position(|&v| v == path[0]).expect("admissible face");
        let pb = face.iter().position(|&v| v == *path.last().unwrap()).expect("admissible face");
        let len = face.len();
        let mut arc1 = Vec::new();
        let mut i = pa;
        loop {
            arc1.push(face[i]);
            if i == pb {
                break;
            }
            i = (i + 1) % len;
        }
        let mut arc2 = Vec::new();
        let mut i = pb;
        loop {
            arc2.push(face[i]);
            if i == pa {
                break;
            }
            i = (i + 1) % len;
        }
        let interior = &path[1..path.len() - 1];
        let mut face1 = arc1;
        face1.extend(interior.iter().rev());
        let mut face2 = arc2;
        face2.extend(interior.iter());
        faces[face_idx] = face1;
        faces.push(face2);

        for &v in interior {
            emb_v[v] = true;
        }
        for pair in path.windows(2) {
            emb_e.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
    }
}

/// Any cycle of a biconnected graph: DFS until the first back edge.
fn find_cycle(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    depth[0] = 0;
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        if *idx >= adj[u].len() {
            stack.pop();
            continue;
        }
        let w = adj[u][*idx];
        *idx += 1;
        if depth[w] == usize::MAX {
            parent[w] = u;
            depth[w] = depth[u] + 1;
            stack.push((w, 0));
        } else if w != parent[u] && depth[w] < depth[u] {
            // Undirected DFS has no cross edges, so w is an ancestor of u.
            let mut cycle = vec![u];
            let mut cur = u;
            while cur != w {
                cur = parent[cur];
                cycle.push(cur);
            }
            return cycle;
        }
    }
    unreachable!("a biconnected block with >= 2 edges contains a cycle")
}

fn compute_fragments(
    n: usize,
    adj: &[Vec<usize>],
    emb_v: &[bool],
    emb_e: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    for u in 0..n {
        if !emb_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && emb_v[v] && !emb_e.contains(&(u, v)) {
                fragments.push(Fragment {
                    attachments: vec![u, v],
                    component: None,
                    chord: (u, v),
                });
            }
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    for s in 0..n {
        if emb_v[s] || comp_of[s] != usize::MAX {
            continue;
        }
        let id = s;
        let mut members = Vec::new();
        let mut attach = HashSet::new();
        let mut queue = VecDeque::from([s]);
        comp_of[s] = id;
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &w in &adj[x] {
                if emb_v[w] {
                    attach.insert(w);
                } else if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        let mut attachments: Vec<usize> = attach.into_iter().collect();
        attachments.sort_unstable();
        debug_assert!(attachments.len() >= 2, "biconnected block fragments attach twice");
        fragments.push(Fragment { attachments, component: Some(members), chord: (0, 0) });
    }
    fragments
}

/// A path between two attachments whose interior lies in the fragment.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment) -> Vec<usize> {
    let Some(members) = &frag.component else {
        return vec![frag.chord.0, frag.chord.1];
    };
    let (a0, a1) = (frag.attachments[0], frag.attachments[1]);
    let in_comp: HashSet<usize> = members.iter().copied().collect();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &w in &adj[a0] {
        if in_comp.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a0);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        if adj[x].contains(&a1) {
            let mut path = vec![a1, x];
            let mut cur = x;
            while cur != a0 {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return path;
        }
        for &w in &adj[x] {
            if in_comp.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    unreachable!("attachments of one fragment are connected through it")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NMGraph, Params};

    fn complete_02(order: usize) -> NMGraph {
        let mut adjacencies = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                adjacencies.push((u, v, 1));
            }
        }
        NMGraph::from_adjacencies(Params::new(0, 2).unwrap(), order, &adjacencies).unwrap()
    }

    fn from_edges(order: usize, edges: &[(usize, usize)]) -> NMGraph {
        let adjacencies: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        NMGraph::from_adjacencies(Params::new(0, 1).unwrap(), order, &adjacencies).unwrap()
    }

    fn face_count(g: &NMGraph) -> usize {
        embed(g).unwrap().faces().unwrap().len()
    }

    #[test]
    fn small_planarity_calls() {
        assert!(is_planar(&complete_02(4)));
        assert!(!is_planar(&complete_02(5)));
        let k33 = from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert!(!is_planar(&k33));
        assert!(embed(&k33).is_none());
    }

    #[test]
    fn face_counts_match_euler() {
        assert_eq!(face_count(&complete_02(3)), 2);
        assert_eq!(face_count(&complete_02(4)), 4);
        let c4 = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let faces = embed(&c4).unwrap().faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
        let tree = from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(face_count(&tree), 1);
    }

    #[test]
    fn outerplanarity_cases() {
        let c5 = from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(is_outerplanar(&c5));
        assert!(!is_outerplanar(&complete_02(4)));
        let k23 = from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(is_planar(&k23));
        assert!(!is_outerplanar(&k23));
    }

    #[test]
    fn disconnected_and_cut_vertices() {
        // Two triangles sharing vertex 0, plus an isolated vertex and a
        // pendant edge.
        let g = from_edges(8, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (5, 6)]);
        let rs = embed(&g).unwrap();
        let faces = rs.faces().unwrap();
        // Component {0..4}: V=5, E=6 -> 3 faces. Component {5,6}: 1 face.
        assert_eq!(faces.len(), 4);
        for (v, rot) in rs.rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, g.neighbors(v).to_vec());
        }
    }

    #[test]
    fn every_face_is_a_closed_walk() {
        let g = from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]);
        let rs = embed(&g).unwrap();
        for walk in rs.faces().unwrap() {
            for i in 0..walk.len() {
                let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
                assert!(g.are_adjacent(a, b), "walk step ({a},{b}) must be an edge");
            }
        }
    }

    #[test]
    fn outer_face_is_longest() {
        let rs = embed(&from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])).unwrap();
        let faces = rs.faces().unwrap();
        let max = faces.iter().map(|f| f.len()).max().unwrap();
        assert_eq!(faces[rs.outer_face].len(), max);
    }

    #[test]
    fn invalid_rotation_system_rejected() {
        let rs = RotationSystem { order: 2, rotations: vec![vec![1], vec![]], outer_face: 0 };
        assert!(rs.faces().is_err());
    }

    #[test]
    fn octahedron_embeds_maximally() {
        // K_{2,2,2}: maximal planar on 6 vertices, 12 edges, 8 faces.
        let mut edges = Vec::new();
        for u in 0..6usize {
            for v in u + 1..6 {
                if (u, v) != (0, 1) && (u, v) != (2, 3) && (u, v) != (4, 5) {
                    edges.push((u, v));
                }
            }
        }
        let g = from_edges(6, &edges);
        assert_eq!(g.pair_count(), 3 * 6 - 6);
        let rs = embed(&g).unwrap();
        let faces = rs.faces().unwrap();
        assert_eq!(faces.len(), 2 * 6 - 4);
        assert!(faces.iter().all(|f| f.len() == 3));
    }
}
