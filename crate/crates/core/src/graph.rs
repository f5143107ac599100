//! Multigraphs with loops and parallel edges, and the operations the
//! deletion–contraction recursions need.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("cannot identify vertex {0} with itself")]
    IdenticalVertices(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: Option<String>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Loop,
    Isthmus,
    Ordinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Path-shaped tree with `k` edges.
    Tree,
    Cycle,
    Bouquet,
    Theta,
    /// `k` vertices joined one after another by `k - 1` edges.
    Path,
}

/// Undirected multigraph. Vertex and edge ids are stable: deleting an edge
/// never renumbers the others, and contraction keeps the smaller endpoint id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated vertices `0..n`.
    pub fn with_vertices(n: u32) -> Self {
        Self { vertices: (0..n).collect(), edges: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_fresh_vertex(&mut self) -> VertexId {
        let v = self.vertices.last().map_or(0, |&m| m + 1);
        self.vertices.insert(v);
        v
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.add_labelled_edge(u, v, None)
    }

    pub fn add_labelled_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        label: Option<String>,
    ) -> Result<EdgeId, GraphError> {
        let id = self.edges.last_key_value().map_or(0, |(&m, _)| m + 1);
        self.insert_edge(id, u, v, label)?;
        Ok(id)
    }

    pub fn insert_edge(
        &mut self,
        id: EdgeId,
        u: VertexId,
        v: VertexId,
        label: Option<String>,
    ) -> Result<(), GraphError> {
        for x in [u, v] {
            if !self.vertices.contains(&x) {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.edges.insert(id, Edge { u, v, label });
        Ok(())
    }

    /// Number of vertices, `p(G)`.
    pub fn p(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges, `q(G)`.
    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(&id, e)| (id, e))
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.keys().copied().collect()
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge, GraphError> {
        self.edges.get(&e).ok_or(GraphError::UnknownEdge(e))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn delete_edge(&self, e: EdgeId) -> Result<MultiGraph, GraphError> {
        let mut g = self.clone();
        g.edges.remove(&e).ok_or(GraphError::UnknownEdge(e))?;
        Ok(g)
    }

    pub fn contract_edge(&self, e: EdgeId) -> Result<MultiGraph, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Err(GraphError::LoopContraction(e));
        }
        let (u, v) = (edge.u, edge.v);
        let mut g = self.delete_edge(e)?;
        g.merge(u, v);
        Ok(g)
    }

    /// Merges `u` and `v` into one vertex carrying the smaller id. Edges
    /// between them become loops.
    pub fn identify_vertices(&self, u: VertexId, v: VertexId) -> Result<MultiGraph, GraphError> {
        for x in [u, v] {
            if !self.has_vertex(x) {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        if u == v {
            return Err(GraphError::IdenticalVertices(u));
        }
        let mut g = self.clone();
        g.merge(u, v);
        Ok(g)
    }

    fn merge(&mut self, u: VertexId, v: VertexId) {
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        self.vertices.remove(&gone);
        for e in self.edges.values_mut() {
            if e.u == gone {
                e.u = keep;
            }
            if e.v == gone {
                e.v = keep;
            }
        }
    }

    /// Drops a vertex together with every incident edge.
    pub fn remove_vertex(&self, v: VertexId) -> MultiGraph {
        let mut g = self.clone();
        g.vertices.remove(&v);
        g.edges.retain(|_, e| e.u != v && e.v != v);
        g
    }

    /// Connected-component representative for every vertex.
    fn component_roots(&self) -> BTreeMap<VertexId, VertexId> {
        let mut dsu = Dsu::new(self.vertices.iter().copied());
        for e in self.edges.values() {
            dsu.union(e.u, e.v);
        }
        self.vertices.iter().map(|&v| (v, dsu.find(v))).collect()
    }

    /// Number of connected components `μ` and first Betti number `β = q - p + μ`.
    pub fn mu_beta(&self) -> (usize, usize) {
        let roots = self.component_roots();
        let mu = roots.iter().filter(|(v, r)| v == r).count();
        (mu, self.q() + mu - self.p())
    }

    pub fn is_connected(&self) -> bool {
        self.mu_beta().0 <= 1
    }

    /// Splits into connected components, each keeping its original ids.
    pub fn components(&self) -> Vec<MultiGraph> {
        let roots = self.component_roots();
        let mut parts: BTreeMap<VertexId, MultiGraph> = BTreeMap::new();
        for (&v, &r) in &roots {
            parts.entry(r).or_default().vertices.insert(v);
        }
        for (&id, e) in &self.edges {
            parts.get_mut(&roots[&e.u]).unwrap().edges.insert(id, e.clone());
        }
        parts.into_values().collect()
    }

    pub fn classify_edge(&self, e: EdgeId) -> Result<EdgeKind, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(EdgeKind::Loop);
        }
        if self.is_isthmus(e)? {
            Ok(EdgeKind::Isthmus)
        } else {
            Ok(EdgeKind::Ordinary)
        }
    }

    /// Whether deleting `e` disconnects its endpoints.
    pub fn is_isthmus(&self, e: EdgeId) -> Result<bool, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        let mut dsu = Dsu::new(self.vertices.iter().copied());
        for (&id, f) in &self.edges {
            if id != e {
                dsu.union(f.u, f.v);
            }
        }
        Ok(dsu.find(edge.u) != dsu.find(edge.v))
    }

    pub fn has_isthmus(&self) -> bool {
        self.edges.keys().any(|&e| self.is_isthmus(e).unwrap_or(false))
    }

    /// A vertex whose removal leaves more non-empty pieces than it touched,
    /// together with those pieces' vertex sets.
    pub fn cut_vertex(&self) -> Option<(VertexId, Vec<BTreeSet<VertexId>>)> {
        for &v in &self.vertices {
            let rest = self.remove_vertex(v);
            let roots = rest.component_roots();
            let mut pieces: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
            for (&x, &r) in &roots {
                pieces.entry(r).or_default().insert(x);
            }
            if pieces.len() >= 2 {
                return Some((v, pieces.into_values().collect()));
            }
        }
        None
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        MultiGraph {
            vertices: keep.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(_, e)| keep.contains(&e.u) && keep.contains(&e.v))
                .map(|(&id, e)| (id, e.clone()))
                .collect(),
        }
    }

    /// Disjoint union; vertices and edges of `other` are renumbered past ours.
    /// Returns the map from `other`'s vertex ids to the new ones.
    pub fn disjoint_union(&self, other: &MultiGraph) -> (MultiGraph, BTreeMap<VertexId, VertexId>) {
        let mut g = self.clone();
        let vmap: BTreeMap<VertexId, VertexId> =
            other.vertices().map(|v| (v, g.add_fresh_vertex())).collect();
        for (_, e) in other.edges() {
            g.add_labelled_edge(vmap[&e.u], vmap[&e.v], e.label.clone())
                .expect("mapped endpoints exist");
        }
        (g, vmap)
    }

    /// Replaces every edge `a = xy` by a copy of a two-terminal graph
    /// `(K, u, v)`, gluing `u` to `x` and `v` to `y`. Edges of the copies
    /// inherit the replaced edge's label.
    pub fn substitute_edges<'k, F>(&self, mut part: F) -> Result<MultiGraph, GraphError>
    where
        F: FnMut(EdgeId, &Edge) -> (&'k MultiGraph, VertexId, VertexId),
    {
        let mut g = MultiGraph { vertices: self.vertices.clone(), edges: BTreeMap::new() };
        for (&id, edge) in &self.edges {
            let (k, u, v) = part(id, edge);
            for t in [u, v] {
                if !k.has_vertex(t) {
                    return Err(GraphError::UnknownVertex(t));
                }
            }
            if u == v {
                return Err(GraphError::IdenticalVertices(u));
            }
            let mut vmap = BTreeMap::new();
            for x in k.vertices() {
                let target = if x == u {
                    edge.u
                } else if x == v {
                    edge.v
                } else {
                    g.add_fresh_vertex()
                };
                vmap.insert(x, target);
            }
            for (_, e) in k.edges() {
                g.add_labelled_edge(vmap[&e.u], vmap[&e.v], edge.label.clone())?;
            }
        }
        Ok(g)
    }

    pub fn family(kind: Family, k: u32) -> MultiGraph {
        assert!(k >= 1, "family size must be positive");
        match kind {
            Family::Tree => Self::path_on(k + 1),
            Family::Path => Self::path_on(k),
            Family::Cycle => {
                let mut g = Self::path_on(k);
                g.add_edge(k - 1, 0).unwrap();
                g
            }
            Family::Bouquet => {
                let mut g = Self::with_vertices(1);
                for _ in 0..k {
                    g.add_edge(0, 0).unwrap();
                }
                g
            }
            Family::Theta => {
                let mut g = Self::with_vertices(2);
                for _ in 0..k {
                    g.add_edge(0, 1).unwrap();
                }
                g
            }
        }
    }

    fn path_on(n: u32) -> MultiGraph {
        let mut g = Self::with_vertices(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    /// Edge multiset as sorted endpoint pairs (ids and labels dropped).
    pub fn edge_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self.edges.values().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        out.sort_unstable();
        out
    }

    /// Isomorphism-invariant encoding obtained by trying every relabeling of
    /// the vertices that respects (degree, loop count) classes and keeping the
    /// lexicographically smallest edge multiset. `None` when the graph has more
    /// than `max_vertices` vertices or more than `max_relabelings` candidate
    /// relabelings.
    pub fn canonical_key(&self, max_vertices: usize, max_relabelings: usize) -> Option<Vec<u32>> {
        if self.p() > max_vertices {
            return None;
        }
        let mut inv: Vec<((usize, usize), VertexId)> = self
            .vertices
            .iter()
            .map(|&v| {
                let loops = self.edges.values().filter(|e| e.u == v && e.v == v).count();
                ((self.degree(v), loops), v)
            })
            .collect();
        inv.sort_unstable();
        let mut classes: Vec<Vec<VertexId>> = Vec::new();
        for (i, (key, v)) in inv.iter().enumerate() {
            if i > 0 && inv[i - 1].0 == *key {
                classes.last_mut().unwrap().push(*v);
            } else {
                classes.push(alloc::vec![*v]);
            }
        }
        let total: usize = classes
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(factorial(c.len())?))?;
        if total > max_relabelings {
            return None;
        }
        let mut best: Option<Vec<u32>> = None;
        let mut perms = classes.clone();
        loop {
            let order = perms.iter().flatten();
            let pos: BTreeMap<VertexId, u32> = order.enumerate().map(|(i, &v)| (v, i as u32)).collect();
            let mut enc: Vec<(u32, u32)> = self
                .edges
                .values()
                .map(|e| {
                    let (a, b) = (pos[&e.u], pos[&e.v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            enc.sort_unstable();
            let mut key = Vec::with_capacity(1 + 2 * enc.len());
            key.push(self.p() as u32);
            key.extend(enc.iter().flat_map(|&(a, b)| [a, b]));
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            // Odometer over the per-class permutations.
            let mut i = 0;
            loop {
                if i == perms.len() {
                    return best;
                }
                if next_permutation(&mut perms[i]) {
                    break;
                }
                i += 1;
            }
        }
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |a, b| a.checked_mul(b))
}

/// Advances to the next lexicographic permutation; on the last one, resets to
/// the first and returns `false`.
fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

struct Dsu {
    parent: BTreeMap<VertexId, VertexId>,
}

impl Dsu {
    fn new(vs: impl Iterator<Item = VertexId>) -> Self {
        Self { parent: vs.map(|v| (v, v)).collect() }
    }

    fn find(&mut self, v: VertexId) -> VertexId {
        let mut root = v;
        while self.parent[&root] != root {
            root = self.parent[&root];
        }
        let mut x = v;
        while x != root {
            let next = self.parent[&x];
            self.parent.insert(x, root);
            x = next;
        }
        root
    }

    fn union(&mut self, a: VertexId, b: VertexId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(g: &MultiGraph) -> Vec<u32> {
        g.canonical_key(8, usize::MAX).unwrap()
    }

    #[test]
    fn delete_examples() {
        let c3 = MultiGraph::family(Family::Cycle, 3);
        let path = c3.delete_edge(2).unwrap();
        assert_eq!(key(&path), key(&MultiGraph::family(Family::Path, 3)));

        let b2 = MultiGraph::family(Family::Bouquet, 2);
        assert_eq!(key(&b2.delete_edge(0).unwrap()), key(&MultiGraph::family(Family::Cycle, 1)));

        let single = MultiGraph::family(Family::Tree, 1);
        let bare = single.delete_edge(0).unwrap();
        assert_eq!((bare.p(), bare.q()), (2, 0));
        assert_eq!(single.delete_edge(9), Err(GraphError::UnknownEdge(9)));
    }

    #[test]
    fn contract_examples() {
        let c3 = MultiGraph::family(Family::Cycle, 3);
        assert_eq!(key(&c3.contract_edge(0).unwrap()), key(&MultiGraph::family(Family::Cycle, 2)));
        let t2 = MultiGraph::family(Family::Theta, 2);
        assert_eq!(key(&t2.contract_edge(0).unwrap()), key(&MultiGraph::family(Family::Bouquet, 1)));
        let single = MultiGraph::family(Family::Tree, 1);
        let dot = single.contract_edge(0).unwrap();
        assert_eq!((dot.p(), dot.q()), (1, 0));
        assert!(dot.has_vertex(0));
        let b1 = MultiGraph::family(Family::Bouquet, 1);
        assert_eq!(b1.contract_edge(0), Err(GraphError::LoopContraction(0)));
    }

    #[test]
    fn identify_examples() {
        let l3 = MultiGraph::family(Family::Path, 3);
        assert_eq!(key(&l3.identify_vertices(0, 2).unwrap()), key(&MultiGraph::family(Family::Cycle, 2)));
        let e = MultiGraph::family(Family::Tree, 1);
        assert_eq!(key(&e.identify_vertices(0, 1).unwrap()), key(&MultiGraph::family(Family::Cycle, 1)));
        for s in 1..6 {
            let t = MultiGraph::family(Family::Theta, s);
            let closed = t.identify_vertices(0, 1).unwrap();
            assert_eq!(closed.edge_multiset(), MultiGraph::family(Family::Bouquet, s).edge_multiset());
        }
        assert_eq!(e.identify_vertices(0, 0), Err(GraphError::IdenticalVertices(0)));
        assert_eq!(e.identify_vertices(0, 5), Err(GraphError::UnknownVertex(5)));
    }

    #[test]
    fn mu_beta_examples() {
        assert_eq!(MultiGraph::with_vertices(1).mu_beta(), (1, 0));
        assert_eq!(MultiGraph::family(Family::Cycle, 5).mu_beta(), (1, 1));
        assert_eq!(MultiGraph::family(Family::Bouquet, 3).mu_beta(), (1, 3));
        assert_eq!(MultiGraph::with_vertices(4).mu_beta(), (4, 0));
    }

    #[test]
    fn classify_examples() {
        let t = MultiGraph::family(Family::Tree, 4);
        for e in t.edge_ids() {
            assert_eq!(t.classify_edge(e), Ok(EdgeKind::Isthmus));
        }
        let c3 = MultiGraph::family(Family::Cycle, 3);
        assert_eq!(c3.classify_edge(1), Ok(EdgeKind::Ordinary));
        let b1 = MultiGraph::family(Family::Bouquet, 1);
        assert_eq!(b1.classify_edge(0), Ok(EdgeKind::Loop));
        assert_eq!(b1.classify_edge(3), Err(GraphError::UnknownEdge(3)));
    }

    #[test]
    fn family_shapes() {
        let t3 = MultiGraph::family(Family::Theta, 3);
        assert_eq!((t3.p(), t3.q()), (2, 3));
        assert!(t3.edges().all(|(_, e)| !e.is_loop()));
        let c1 = MultiGraph::family(Family::Cycle, 1);
        assert_eq!((c1.p(), c1.q()), (1, 1));
        let b2 = MultiGraph::family(Family::Bouquet, 2);
        assert_eq!((b2.p(), b2.q()), (1, 2));
        let l4 = MultiGraph::family(Family::Path, 4);
        assert_eq!((l4.p(), l4.q()), (4, 3));
    }

    #[test]
    fn counts_under_contraction_and_deletion() {
        let mut g = MultiGraph::family(Family::Theta, 3);
        let x = g.add_fresh_vertex();
        g.add_edge(0, x).unwrap();
        g.add_edge(1, x).unwrap();
        let (mu, beta) = g.mu_beta();
        for e in g.edge_ids() {
            assert_eq!(g.contract_edge(e).unwrap().mu_beta(), (mu, beta));
            assert_eq!(g.delete_edge(e).unwrap().mu_beta(), (mu, beta - 1));
        }
    }

    #[test]
    fn canonical_key_ignores_labels_and_ids() {
        let mut a = MultiGraph::with_vertices(3);
        a.add_edge(0, 1).unwrap();
        a.add_edge(1, 2).unwrap();
        a.add_edge(2, 2).unwrap();
        let mut b = MultiGraph::new();
        for v in [7, 3, 9] {
            b.add_vertex(v);
        }
        b.add_labelled_edge(9, 9, Some("x".into())).unwrap();
        b.add_edge(3, 9).unwrap();
        b.add_edge(7, 3).unwrap();
        assert_eq!(key(&a), key(&b));
        assert_ne!(key(&a), key(&MultiGraph::family(Family::Cycle, 3)));
    }

    #[test]
    fn cut_vertex_found() {
        let mut g = MultiGraph::family(Family::Cycle, 3);
        let x = g.add_fresh_vertex();
        let y = g.add_fresh_vertex();
        g.add_edge(0, x).unwrap();
        g.add_edge(x, y).unwrap();
        g.add_edge(y, 0).unwrap();
        let (v, pieces) = g.cut_vertex().unwrap();
        assert_eq!(v, 0);
        assert_eq!(pieces.len(), 2);
        assert!(MultiGraph::family(Family::Theta, 4).cut_vertex().is_none());
    }

    #[test]
    fn substitution_builds_theta_four() {
        let c2 = MultiGraph::family(Family::Cycle, 2);
        let t2 = MultiGraph::family(Family::Theta, 2);
        let g = c2.substitute_edges(|_, _| (&t2, 0, 1)).unwrap();
        assert_eq!(key(&g), key(&MultiGraph::family(Family::Theta, 4)));
    }
}
