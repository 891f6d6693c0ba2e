//! Annotated torsos, small minimal vertex separators between terminals, and
//! trimmers built from them.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex, VertexSet, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsoError {
    #[error("source and sink coincide at vertex {0}")]
    SameTerminal(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
}

/// Contraction of every component of `G - W` to a single vertex.
///
/// Vertices of `W` become `1..=|W|` in increasing order; component vertices
/// follow in order of their smallest original vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedTorso {
    pub g_prime: Graph,
    /// `phi[v - 1]` is the image of original vertex `v`.
    pub phi: Vec<Vertex>,
    /// `phi_inv[x - 1]` is the preimage of contracted vertex `x`.
    pub phi_inv: Vec<VertexSet>,
    pub component_vertices: VertexSet,
}

impl AnnotatedTorso {
    pub fn phi(&self, v: Vertex) -> Vertex {
        self.phi[v - 1]
    }

    pub fn phi_inv(&self, x: Vertex) -> &VertexSet {
        &self.phi_inv[x - 1]
    }

    pub fn image<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> VertexSet {
        set.into_iter().map(|&v| self.phi(v)).collect()
    }

    pub fn preimage<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> VertexSet {
        set.into_iter()
            .flat_map(|&x| self.phi_inv(x).iter().copied())
            .collect()
    }

    pub fn is_component_vertex(&self, x: Vertex) -> bool {
        self.component_vertices.contains(&x)
    }
}

/// Annotated torso of `g` with respect to `w`, in `O(n + m)`.
///
/// Each contracted vertex carries the summed weight of its preimage.
pub fn atorso(g: &Graph, w: &VertexSet) -> AnnotatedTorso {
    let n = g.n();
    let mut phi = vec![0usize; n];
    let mut phi_inv: Vec<VertexSet> = Vec::new();
    for &v in w {
        phi_inv.push(VertexSet::from([v]));
        phi[v - 1] = phi_inv.len();
    }
    let mut component_vertices = VertexSet::new();
    let mut queue = VecDeque::new();
    for start in g.vertices() {
        if phi[start - 1] != 0 {
            continue;
        }
        phi_inv.push(VertexSet::new());
        let id = phi_inv.len();
        component_vertices.insert(id);
        phi[start - 1] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            phi_inv[id - 1].insert(v);
            for u in g.neighbors(v) {
                if phi[u - 1] == 0 && !w.contains(&u) {
                    phi[u - 1] = id;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut b = GraphBuilder::new(phi_inv.len());
    for (x, pre) in phi_inv.iter().enumerate() {
        b.set_vertex_weight(x + 1, g.weight_of(pre))
            .expect("positive");
    }
    // Three cases per edge: inside W (kept with its weight), W to a
    // component (one edge per pair), inside a component (contracted away).
    for (u, v, wt) in g.edges() {
        let (pu, pv) = (phi[u - 1], phi[v - 1]);
        match (w.contains(&u), w.contains(&v)) {
            (true, true) => {
                b.add_weighted_edge(pu, pv, wt).expect("simple");
            }
            (false, false) => {}
            _ => {
                b.add_edge_if_absent(pu, pv).expect("simple");
            }
        }
    }
    AnnotatedTorso {
        g_prime: b.build(),
        phi,
        phi_inv,
        component_vertices,
    }
}

/// Torso of `g` on `w`: component-vertex neighbourhoods made into cliques,
/// component vertices removed. Vertices are numbered by rank within `w`.
pub fn torso(g: &Graph, w: &VertexSet) -> Graph {
    let at = atorso(g, w);
    let k = w.len();
    let mut b = GraphBuilder::new(k);
    for (u, v, wt) in at.g_prime.edges() {
        if u <= k && v <= k {
            b.add_weighted_edge(u, v, wt).expect("simple");
        }
    }
    for &c in &at.component_vertices {
        let nb: Vec<Vertex> = at.g_prime.neighbors(c).collect();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                b.add_edge_if_absent(x, y).expect("simple");
            }
        }
    }
    for (i, &v) in w.iter().enumerate() {
        b.set_vertex_weight(i + 1, g.vertex_weight(v))
            .expect("positive");
    }
    b.build()
}

/// Outcome of separator enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StSeparators {
    /// `s` and `t` are adjacent, so no vertex set separates them.
    Adjacent,
    Found(Vec<VertexSet>),
}

impl StSeparators {
    pub fn sets(&self) -> &[VertexSet] {
        match self {
            StSeparators::Adjacent => &[],
            StSeparators::Found(v) => v,
        }
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, stopping once
/// it exceeds `limit`.
pub fn vertex_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    // Node v splits into in = 2v and out = 2v + 1; s and t are not split.
    let n = g.n();
    let nodes = 2 * (n + 1);
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut to = Vec::new();
    let mut cap = Vec::new();
    let mut add = |a: usize, b: usize, c: u32, head: &mut Vec<Vec<usize>>| {
        head[a].push(to.len());
        to.push(b);
        cap.push(c);
        head[b].push(to.len());
        to.push(a);
        cap.push(0);
    };
    let big = u32::MAX / 4;
    for v in g.vertices() {
        let c = if v == s || v == t { big } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut head);
    }
    for (u, v, _) in g.edges() {
        add(2 * u + 1, 2 * v, big, &mut head);
        add(2 * v + 1, 2 * u, big, &mut head);
    }
    let (src, snk) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow <= limit {
        let mut prev = vec![usize::MAX; nodes];
        prev[src] = usize::MAX - 1;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == snk {
                break;
            }
            for &e in &head[x] {
                if cap[e] > 0 && prev[to[e]] == usize::MAX {
                    prev[to[e]] = e;
                    queue.push_back(to[e]);
                }
            }
        }
        if prev[snk] == usize::MAX {
            break;
        }
        let mut x = snk;
        while x != src {
            let e = prev[x];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            x = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}

fn component_of(g: &Graph, start: Vertex, removed: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.n() + 1];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if !seen[u] && !removed[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Whether `sep` is an inclusion-minimal `s`-`t` separator: `s` and `t` lie in
/// different components of `G - sep` and every separator vertex has
/// neighbours in both of those components.
pub fn is_minimal_st_separator(g: &Graph, s: Vertex, t: Vertex, sep: &VertexSet) -> bool {
    if sep.contains(&s) || sep.contains(&t) {
        return false;
    }
    let mut removed = vec![false; g.n() + 1];
    for &v in sep {
        removed[v] = true;
    }
    let cs = component_of(g, s, &removed);
    if cs[t] {
        return false;
    }
    let ct = component_of(g, t, &removed);
    sep.iter()
        .all(|&v| g.neighbors(v).any(|u| cs[u]) && g.neighbors(v).any(|u| ct[u]))
}

/// All inclusion-minimal `s`-`t` separators with at most `k` vertices, in
/// order of size and then lexicographically.
pub fn minimal_st_separators(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    k: usize,
) -> Result<StSeparators, TorsoError> {
    for v in [s, t] {
        if !g.contains_vertex(v) {
            return Err(TorsoError::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(TorsoError::SameTerminal(s));
    }
    if g.has_edge(s, t) {
        return Ok(StSeparators::Adjacent);
    }
    let reach = component_of(g, s, &vec![false; g.n() + 1]);
    if !reach[t] {
        return Ok(StSeparators::Found(vec![VertexSet::new()]));
    }
    if vertex_connectivity(g, s, t, k) > k {
        return Ok(StSeparators::Found(vec![]));
    }
    // Only vertices in the common component can belong to a minimal
    // separator.
    let cand: Vec<Vertex> = g
        .vertices()
        .filter(|&v| v != s && v != t && reach[v])
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    for size in 1..=k.min(cand.len()) {
        subsets(&cand, size, 0, &mut chosen, &mut |set| {
            let sep: VertexSet = set.iter().copied().collect();
            if is_minimal_st_separator(g, s, t, &sep) {
                out.push(sep);
            }
        });
    }
    Ok(StSeparators::Found(out))
}

fn subsets(
    items: &[Vertex],
    size: usize,
    from: usize,
    chosen: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]),
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    let need = size - chosen.len();
    for i in from..=items.len().saturating_sub(need) {
        if i >= items.len() {
            break;
        }
        chosen.push(items[i]);
        subsets(items, size, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Union of all vertices of minimal separators of size at most `k` between
/// any two terminals, with the terminals themselves removed.
pub fn separator_hull(g: &Graph, terminals: &VertexSet, k: usize) -> Result<VertexSet, TorsoError> {
    let ts: Vec<Vertex> = terminals.iter().copied().collect();
    let mut hull = VertexSet::new();
    for (i, &s) in ts.iter().enumerate() {
        for &t in &ts[i + 1..] {
            for sep in minimal_st_separators(g, s, t, k)?.sets() {
                hull.extend(sep.iter().copied());
            }
        }
    }
    for t in terminals {
        hull.remove(t);
    }
    Ok(hull)
}

/// A `(k, T)`-trimmer: the annotated torso on the separator hull plus the
/// terminals. Vertex weights of `g_star` are preimage weight sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trimmer {
    pub torso: AnnotatedTorso,
    pub k: usize,
    pub terminals: VertexSet,
    pub hull: VertexSet,
}

impl Trimmer {
    pub fn g_star(&self) -> &Graph {
        &self.torso.g_prime
    }

    pub fn phi(&self, v: Vertex) -> Vertex {
        self.torso.phi(v)
    }

    pub fn phi_inv(&self, x: Vertex) -> &VertexSet {
        self.torso.phi_inv(x)
    }

    /// Weight of a contracted vertex.
    pub fn lambda(&self, x: Vertex) -> Weight {
        self.g_star().vertex_weight(x)
    }
}

pub fn build_trimmer(g: &Graph, k: usize, terminals: &VertexSet) -> Result<Trimmer, TorsoError> {
    if let Some(&v) = terminals.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(TorsoError::UnknownVertex(v));
    }
    let hull = separator_hull(g, terminals, k)?;
    let mut w = hull.clone();
    w.extend(terminals.iter().copied());
    Ok(Trimmer {
        torso: atorso(g, &w),
        k,
        terminals: terminals.clone(),
        hull,
    })
}
