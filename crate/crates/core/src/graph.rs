//! Undirected simple graphs with integer vertex and edge weights, plus the
//! partition types and feasibility checks shared by every solver.
//!
//! Vertices are the contiguous integers `1..=n`. All vertex sets are
//! [`BTreeSet`]s so iteration order (and therefore solver output) is
//! deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered by the partition")]
    Uncovered(Vertex),
    #[error("edge {0}-{1} joins the two sides of the separation")]
    CrossingEdge(Vertex, Vertex),
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<(Vertex, Weight)>>,
    vertex_weight: Vec<Weight>,
    m: usize,
}

#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeMap<(Vertex, Vertex), Weight>,
    vertex_weight: Vec<Weight>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: BTreeMap::new(),
            vertex_weight: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<&mut Self, GraphError> {
        self.add_weighted_edge(u, v, 1)
    }

    pub fn add_weighted_edge(
        &mut self,
        u: Vertex,
        v: Vertex,
        w: Weight,
    ) -> Result<&mut Self, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w == 0 {
            return Err(GraphError::ZeroWeight);
        }
        let key = (u.min(v), u.max(v));
        if self.edges.insert(key, w).is_some() {
            return Err(GraphError::ParallelEdge(key.0, key.1));
        }
        Ok(self)
    }

    /// Adds the edge unless it is already present.
    pub fn add_edge_if_absent(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.edges.contains_key(&key) {
            return Ok(false);
        }
        self.edges.insert(key, 1);
        Ok(true)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn set_vertex_weight(&mut self, v: Vertex, w: Weight) -> Result<&mut Self, GraphError> {
        self.check(v)?;
        if w == 0 {
            return Err(GraphError::ZeroWeight);
        }
        self.vertex_weight[v - 1] = w;
        Ok(self)
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.vertex_weight.push(1);
        self.n
    }

    pub fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), &w) in &self.edges {
            adj[u - 1].push((v, w));
            adj[v - 1].push((u, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            adj,
            vertex_weight: self.vertex_weight,
            m: self.edges.len(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                b.add_edge(u, v).expect("simple");
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n, &edges).expect("simple")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        if n >= 3 {
            edges.push((n, 1));
        }
        Graph::from_edges(n, &edges).expect("simple")
    }

    /// Star with center 1 and leaves `2..=leaves+1`.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (2..=leaves + 1).map(|v| (1, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v - 1].iter().map(|&(u, _)| u)
    }

    pub fn weighted_neighbors(&self, v: Vertex) -> &[(Vertex, Weight)] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return None;
        }
        let list = &self.adj[u - 1];
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// All edges as `(u, v, weight)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, Weight)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &(v, w) in &self.adj[u - 1] {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn vertex_weight(&self, v: Vertex) -> Weight {
        self.vertex_weight[v - 1]
    }

    pub fn vertex_weights(&self) -> &[Weight] {
        &self.vertex_weight
    }

    /// Total vertex weight.
    pub fn total_weight(&self) -> Weight {
        self.vertex_weight.iter().sum()
    }

    pub fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Weight {
        set.into_iter().map(|&v| self.vertex_weight(v)).sum()
    }

    pub fn has_unit_vertex_weights(&self) -> bool {
        self.vertex_weight.iter().all(|&w| w == 1)
    }

    pub fn has_unit_edge_weights(&self) -> bool {
        self.adj.iter().flatten().all(|&(_, w)| w == 1)
    }

    pub fn total_edge_weight(&self) -> Weight {
        self.edges().iter().map(|e| e.2).sum()
    }

    /// Same graph with the given vertex weights.
    pub fn with_vertex_weights(&self, weights: Vec<Weight>) -> Result<Graph, GraphError> {
        assert_eq!(weights.len(), self.n(), "one weight per vertex");
        if weights.contains(&0) {
            return Err(GraphError::ZeroWeight);
        }
        let mut g = self.clone();
        g.vertex_weight = weights;
        Ok(g)
    }

    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new(self.n());
        for (u, v, w) in self.edges() {
            b.add_weighted_edge(u, v, w).expect("already simple");
        }
        b.vertex_weight = self.vertex_weight.clone();
        b
    }

    /// Subgraph induced by `keep`, relabelled to `1..=|keep|` in increasing
    /// order. The second component maps new ids (index `i` for vertex
    /// `i + 1`) back to the original vertices.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().copied().collect();
        let mut new_id = vec![0usize; self.n() + 1];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let mut b = GraphBuilder::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            b.vertex_weight[i] = self.vertex_weight(v);
            for &(u, w) in &self.adj[v - 1] {
                if v < u && new_id[u] != 0 {
                    b.add_weighted_edge(i + 1, new_id[u], w).expect("simple");
                }
            }
        }
        (b.build(), old)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut b = self.to_builder();
        for _ in 0..other.n() {
            b.add_vertex();
        }
        for v in other.vertices() {
            b.vertex_weight[off + v - 1] = other.vertex_weight(v);
        }
        for (u, v, w) in other.edges() {
            b.add_weighted_edge(u + off, v + off, w).expect("simple");
        }
        b.build()
    }

    fn components_avoiding(&self, removed: &[bool]) -> Vec<VertexSet> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = VertexSet::new();
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn removal_mask(&self, removed: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.n() + 1];
        mask[0] = true;
        for &v in removed {
            if self.contains_vertex(v) {
                mask[v] = true;
            }
        }
        mask
    }

    /// Components of `G - removed`, sorted by smallest vertex.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<VertexSet> {
        self.components_avoiding(&self.removal_mask(removed))
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }
}

/// Maximal connected vertex sets, sorted by smallest contained vertex.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    g.components_without(&VertexSet::new())
}

/// Number of connected components of `G - S`.
pub fn count_components_after_removal(g: &Graph, s: &VertexSet) -> usize {
    g.components_without(s).len()
}

/// Anything that splits the vertex set into labelled parts.
pub trait Parts {
    fn parts(&self) -> Vec<&VertexSet>;
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bipartition {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Bipartition {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        Bipartition { a, b }
    }

    /// `A` given explicitly, `B` the rest of `V(g)`.
    pub fn from_side(g: &Graph, a: VertexSet) -> Self {
        let b = g.vertices().filter(|v| !a.contains(v)).collect();
        Bipartition { a, b }
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

impl Parts for Bipartition {
    fn parts(&self) -> Vec<&VertexSet> {
        vec![&self.a, &self.b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DPartition {
    pub parts: Vec<VertexSet>,
}

impl Parts for DPartition {
    fn parts(&self) -> Vec<&VertexSet> {
        self.parts.iter().collect()
    }
}

impl DPartition {
    /// True iff the parts partition `V(g)` and each has at most `ceil(n/d)`
    /// vertices, where `d` is the number of parts.
    pub fn is_balanced(&self, g: &Graph) -> bool {
        let d = self.parts.len();
        if d == 0 {
            return g.n() == 0;
        }
        let cap = g.n().div_ceil(d);
        part_index(g, self).is_ok() && self.parts.iter().all(|p| p.len() <= cap)
    }
}

/// A vertex separator `S` together with the two sides it separates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Separation {
    pub s: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    /// Checks that `{S, A, B}` partitions `V(g)` and no edge joins `A` and `B`.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let parts = [&self.s, &self.a, &self.b];
        let owner = part_index_of(g, &parts)?;
        for (u, v, _) in g.edges() {
            let (pu, pv) = (owner[u], owner[v]);
            if pu != 0 && pv != 0 && pu != pv {
                return Err(GraphError::CrossingEdge(u, v));
            }
        }
        Ok(())
    }

    pub fn imbalance(&self) -> usize {
        self.a.len().abs_diff(self.b.len())
    }
}

fn part_index_of(g: &Graph, parts: &[&VertexSet]) -> Result<Vec<usize>, GraphError> {
    let mut owner = vec![usize::MAX; g.n() + 1];
    for (i, part) in parts.iter().enumerate() {
        for &v in part.iter() {
            if !g.contains_vertex(v) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: g.n(),
                });
            }
            if owner[v] != usize::MAX {
                return Err(GraphError::Overlap(v));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = g.vertices().find(|&v| owner[v] == usize::MAX) {
        return Err(GraphError::Uncovered(v));
    }
    Ok(owner)
}

/// Part index of every vertex (index 0 unused), or why `p` is not a partition.
pub fn part_index<P: Parts>(g: &Graph, p: &P) -> Result<Vec<usize>, GraphError> {
    part_index_of(g, &p.parts())
}

/// Sum of weights of edges whose endpoints lie in different parts.
pub fn cut_size<P: Parts>(g: &Graph, p: &P) -> Result<Weight, GraphError> {
    let owner = part_index(g, p)?;
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v, _)| owner[u] != owner[v])
        .map(|e| e.2)
        .sum())
}

pub fn is_balanced_separator(_g: &Graph, sep: &Separation) -> bool {
    sep.imbalance() <= 1
}

/// Both sides have at most `ceil(n/2)` vertices and the cut is at most `k`.
pub fn validate_bisection(g: &Graph, p: &Bipartition, k: Weight) -> bool {
    let cap = g.n().div_ceil(2);
    if p.a.len() > cap || p.b.len() > cap {
        return false;
    }
    matches!(cut_size(g, p), Ok(c) if c <= k)
}

/// Finds a bijection `f` (index `v - 1` holds `f(v)`) with `g` and `h` having
/// identical edge sets under `f`. `labels`, when given, must be preserved.
/// Exponential backtracking; intended for small graphs.
pub fn find_isomorphism(
    g: &Graph,
    h: &Graph,
    labels: Option<(&[usize], &[usize])>,
) -> Option<Vec<Vertex>> {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return None;
    }
    let lab_g = |v: Vertex| labels.map_or(0, |(lg, _)| lg[v - 1]);
    let lab_h = |v: Vertex| labels.map_or(0, |(_, lh)| lh[v - 1]);
    let mut sig_g: Vec<_> = g.vertices().map(|v| (lab_g(v), g.degree(v))).collect();
    let mut sig_h: Vec<_> = h.vertices().map(|v| (lab_h(v), h.degree(v))).collect();
    let (sg, sh) = (sig_g.clone(), sig_h.clone());
    sig_g.sort_unstable();
    sig_h.sort_unstable();
    if sig_g != sig_h {
        return None;
    }
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut map = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];

    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        order: &[Vertex],
        g: &Graph,
        h: &Graph,
        sg: &[(usize, usize)],
        sh: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for cand in h.vertices() {
            if used[cand] || sg[v - 1] != sh[cand - 1] {
                continue;
            }
            let consistent = order[..idx]
                .iter()
                .all(|&u| g.edge_weight(u, v) == h.edge_weight(map[u], cand));
            if !consistent {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if go(idx + 1, order, g, h, sg, sh, map, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }

    if go(0, &order, g, h, &sg, &sh, &mut map, &mut used) {
        Some(map[1..].to_vec())
    } else {
        None
    }
}

/// Builds a vertex set from a slice.
pub fn vset(vs: &[Vertex]) -> VertexSet {
    vs.iter().copied().collect()
}
