//! Generators for the gadget constructions behind the hardness results.
//! Every generator checks its output size against the closed-form count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clique size {0} must be even; pad the instance first")]
    OddCliqueSize(usize),
    #[error("clique size {k} exceeds the number of vertices {n}")]
    CliqueTooLarge { k: usize, n: usize },
    #[error("the extra clique would need a negative number of vertices ({0})")]
    NegativeClique(i64),
    #[error("cut size {k} must lie in 1..={m}")]
    CutOutOfRange { k: usize, m: usize },
    #[error("no input instances")]
    NoInstances,
    #[error("instance {0} differs in vertex count or target")]
    NonUniform(usize),
    #[error("edge weight {w} cannot be realised by disjoint edges between cliques of size {size}")]
    WeightTooLarge { w: Weight, size: usize },
    #[error("weights and parameters must be positive")]
    NonPositive,
    #[error("choice values must be strictly increasing and at most the budget")]
    BadChoice,
    #[error("colour {0} is out of range")]
    ColourOutOfRange(usize),
    #[error("colour class {0} is empty")]
    EmptyColourClass(usize),
    #[error("edge {0}-{1} joins two vertices of the same colour")]
    ImproperColouring(Vertex, Vertex),
    #[error("no edge joins colour classes {0} and {1}")]
    MissingColourPair(usize, usize),
    #[error("need at least two colours")]
    TooFewColours,
    #[error("colouring has {got} entries for {n} vertices")]
    ColouringLength { got: usize, n: usize },
}

/// Problem and parameters of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Balanced vertex separator of size at most `k`.
    VertexBisection { k: usize },
    /// Bisection of cut at most `k` (unit edge weights).
    Bisection { k: Weight },
    /// Bisection whose cut weight is at most `k`.
    WeightedBisection { k: Weight },
    /// Balanced `d`-partition of cut at most `k`.
    BalancedPartitioning { k: Weight, d: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub construction: String,
    /// Hex SHA-256 prefix of the canonical input description.
    pub fingerprint: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub target: Target,
    pub provenance: Provenance,
    /// Gadget role per vertex (index `v - 1`).
    pub roles: Vec<String>,
    pub notes: Vec<String>,
    /// `Some(answer)` when normalization produced a fixed yes/no instance.
    pub trivial: Option<bool>,
}

impl ReductionOutput {
    /// Vertices whose role starts with `prefix`.
    pub fn vertices_with_role(&self, prefix: &str) -> Vec<Vertex> {
        (1..=self.roles.len())
            .filter(|&v| self.roles[v - 1].starts_with(prefix))
            .collect()
    }
}

fn fingerprint(construction: &str, input: &str) -> Provenance {
    let digest = Sha256::digest(format!("{construction}\n{input}").as_bytes());
    let mut hex = String::new();
    for byte in &digest[..8] {
        let _ = write!(hex, "{byte:02x}");
    }
    Provenance {
        construction: construction.to_string(),
        fingerprint: hex,
    }
}

fn describe(g: &Graph) -> String {
    let mut s = format!("n={}", g.n());
    for (u, v, w) in g.edges() {
        let _ = write!(s, " {u}-{v}:{w}");
    }
    s
}

/// Incremental graph assembly with role tags; repeated edges add up their
/// weights.
#[derive(Default)]
struct Assembler {
    roles: Vec<String>,
    edges: BTreeMap<(Vertex, Vertex), Weight>,
}

impl Assembler {
    fn vertex(&mut self, role: impl Into<String>) -> Vertex {
        self.roles.push(role.into());
        self.roles.len()
    }

    fn edge(&mut self, u: Vertex, v: Vertex, w: Weight) {
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += w;
    }

    fn clique(&mut self, size: usize, role: &str) -> Vec<Vertex> {
        let vs: Vec<Vertex> = (0..size).map(|_| self.vertex(role)).collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.edge(u, v, 1);
            }
        }
        vs
    }

    fn merged(&self) -> usize {
        self.edges.values().filter(|&&w| w > 1).count()
    }

    fn finish(self) -> (Graph, Vec<String>) {
        let mut b = GraphBuilder::new(self.roles.len());
        for (&(u, v), &w) in &self.edges {
            b.add_weighted_edge(u, v, w)
                .expect("assembled edges are valid");
        }
        (b.build(), self.roles)
    }
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Vertex bisection instance from a clique instance `(g, k)` with `k` even:
/// subdivide every edge, turn the original vertices into a clique, and add
/// a disjoint clique of `n + m - k - 2 C(k,2)` vertices. Vertices `1..=n`
/// are the originals, then one vertex per edge in sorted edge order, then
/// the extra clique.
pub fn clique_to_vbisect(g: &Graph, k: usize) -> Result<ReductionOutput, ReductionError> {
    let (n, m) = (g.n(), g.m());
    if k % 2 == 1 {
        return Err(ReductionError::OddCliqueSize(k));
    }
    if k > n {
        return Err(ReductionError::CliqueTooLarge { k, n });
    }
    let d = (n + m) as i64 - k as i64 - 2 * binom2(k) as i64;
    if d < 0 {
        return Err(ReductionError::NegativeClique(d));
    }
    let mut asm = Assembler::default();
    let orig = asm.clique(n, "original");
    for (u, v, _) in g.edges() {
        let x = asm.vertex(format!("edge:{u}-{v}"));
        asm.edge(orig[u - 1], x, 1);
        asm.edge(x, orig[v - 1], 1);
    }
    asm.clique(d as usize, "extra-clique");
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), 2 * n + 2 * m - k - 2 * binom2(k));
    Ok(ReductionOutput {
        graph,
        target: Target::VertexBisection { k },
        provenance: fingerprint("clique-to-vbisect", &format!("{} k={k}", describe(g))),
        roles,
        notes: Vec::new(),
        trivial: None,
    })
}

/// Makes the clique size even by adding a vertex adjacent to everything,
/// which raises the clique number by exactly one.
pub fn pad_clique_parity(g: &Graph, k: usize) -> (Graph, usize) {
    if k.is_multiple_of(2) {
        return (g.clone(), k);
    }
    let mut b = g.to_builder();
    let x = b.add_vertex();
    for v in g.vertices() {
        b.add_edge(v, x).expect("fresh vertex");
    }
    (b.build(), k + 1)
}

/// Vertex bisection instance with budget `k + 1` from a bisection instance
/// `(g, k)`: each vertex becomes a clique of `3m + 2` vertices, each edge a
/// vertex adjacent to both end cliques, plus two cliques of `5nm` vertices
/// linked by a path with `m - 1` inner vertices. The output is equivalent to
/// bisection into two equal halves.
pub fn bisect_to_vbisect(g: &Graph, k: usize) -> Result<ReductionOutput, ReductionError> {
    let m = g.m();
    if k < 1 || k > m {
        return Err(ReductionError::CutOutOfRange { k, m });
    }
    let n = g.n();
    let input = format!("{} k={k}", describe(g));
    let mut notes = Vec::new();
    if n % 2 == 1 {
        notes.push("odd vertex count: the output encodes equal halves, add an isolated vertex for ceil(n/2) parts".to_string());
    }
    let mut asm = Assembler::default();
    let cliques: Vec<Vec<Vertex>> = g
        .vertices()
        .map(|v| asm.clique(3 * m + 2, &format!("clique:{v}")))
        .collect();
    for (u, v, _) in g.edges() {
        let x = asm.vertex(format!("edge:{u}-{v}"));
        for &y in cliques[u - 1].iter().chain(&cliques[v - 1]) {
            asm.edge(x, y, 1);
        }
    }
    let d1 = asm.clique(5 * n * m, "d1");
    let d2 = asm.clique(5 * n * m, "d2");
    let mut prev = d1[0];
    for _ in 1..m {
        let x = asm.vertex("path");
        asm.edge(prev, x, 1);
        prev = x;
    }
    asm.edge(prev, d2[0], 1);
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), n * (3 * m + 2) + m + 10 * n * m + m - 1);
    Ok(ReductionOutput {
        graph,
        target: Target::VertexBisection { k: k + 1 },
        provenance: fingerprint("bisect-to-vbisect", &input),
        roles,
        notes,
        trivial: None,
    })
}

fn trivial_bisection(answer: bool, construction: &str, input: &str, note: &str) -> ReductionOutput {
    // Two isolated vertices bisect for free; a single edge cannot be
    // bisected without cutting it.
    let graph = if answer {
        Graph::empty(2)
    } else {
        Graph::path(2)
    };
    ReductionOutput {
        roles: vec!["trivial".into(); 2],
        graph,
        target: Target::WeightedBisection { k: 0 },
        provenance: fingerprint(construction, input),
        notes: vec![note.into()],
        trivial: Some(answer),
    }
}

/// Edge-weighted bisection instance that is a yes-instance iff some input
/// max-cut instance `(G_i, k)` is. All inputs must share `n` and `k`.
pub fn maxcut_cross_compose(
    instances: &[(Graph, usize)],
) -> Result<ReductionOutput, ReductionError> {
    let Some((first, k)) = instances.first() else {
        return Err(ReductionError::NoInstances);
    };
    let (n, k) = (first.n(), *k);
    if let Some(i) = instances.iter().position(|(g, kk)| g.n() != n || *kk != k) {
        return Err(ReductionError::NonUniform(i));
    }
    let input = instances
        .iter()
        .map(|(g, k)| format!("{} k={k}", describe(g)))
        .collect::<Vec<_>>()
        .join(";");
    if k == 0 {
        return Ok(trivial_bisection(
            true,
            "maxcut-cross-compose",
            &input,
            "target 0 makes every input a yes-instance",
        ));
    }
    if k > n * n {
        return Ok(trivial_bisection(
            false,
            "maxcut-cross-compose",
            &input,
            "target exceeds n^2, every input is a no-instance",
        ));
    }
    let mut graphs: Vec<&Graph> = instances.iter().map(|(g, _)| g).collect();
    let filler = Graph::empty(n);
    let mut notes = Vec::new();
    if graphs.len().is_multiple_of(2) {
        graphs.push(&filler);
        notes.push(format!(
            "appended edgeless graph on {n} vertices to make the count odd"
        ));
    }
    let w = (n * n) as Weight;
    let mut asm = Assembler::default();
    for (i, g) in graphs.iter().enumerate() {
        let base: Vec<Vertex> = (1..=n)
            .map(|v| asm.vertex(format!("copy{}:{v}", i + 1)))
            .collect();
        let shadow: Vec<Vertex> = (1..=n)
            .map(|v| asm.vertex(format!("shadow{}:{v}", i + 1)))
            .collect();
        for a in 0..n {
            for b in 0..n {
                if a < b {
                    asm.edge(shadow[a], shadow[b], w);
                    let wt = if g.has_edge(a + 1, b + 1) { w - 1 } else { w };
                    asm.edge(base[a], base[b], wt);
                }
                asm.edge(shadow[a], base[b], w);
            }
        }
    }
    let t = graphs.len();
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), 2 * n * t);
    Ok(ReductionOutput {
        graph,
        target: Target::WeightedBisection {
            k: w * (n * n) as Weight - k as Weight,
        },
        provenance: fingerprint("maxcut-cross-compose", &input),
        roles,
        notes,
        trivial: None,
    })
}

/// Unweighted bisection instance equivalent to `(gw, k_star)`: each vertex
/// becomes a clique of `w_max + k_star + 2` vertices and an edge of weight
/// `w` becomes `w` disjoint edges between the two cliques. `w_max` defaults
/// to the largest edge weight. Equivalence relies on an even vertex count
/// of `gw`.
pub fn weighted_to_unweighted(
    gw: &Graph,
    k_star: Weight,
    w_max: Option<Weight>,
) -> Result<ReductionOutput, ReductionError> {
    let w_max = w_max.unwrap_or_else(|| gw.edges().iter().map(|e| e.2).max().unwrap_or(1));
    let size = (w_max + k_star + 2) as usize;
    if let Some(&(_, _, w)) = gw.edges().iter().find(|e| e.2 as usize > size) {
        return Err(ReductionError::WeightTooLarge { w, size });
    }
    let mut asm = Assembler::default();
    let cliques: Vec<Vec<Vertex>> = gw
        .vertices()
        .map(|v| asm.clique(size, &format!("clique:{v}")))
        .collect();
    for (u, v, w) in gw.edges() {
        for (&x, &y) in cliques[u - 1].iter().zip(&cliques[v - 1]).take(w as usize) {
            asm.edge(x, y, 1);
        }
    }
    let mut notes = Vec::new();
    if gw.n() % 2 == 1 {
        notes.push("odd vertex count: every bisection splits a clique, so the instances need not be equivalent".into());
    }
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), gw.n() * size);
    assert_eq!(
        graph.m(),
        gw.n() * binom2(size) + gw.total_edge_weight() as usize
    );
    Ok(ReductionOutput {
        graph,
        target: Target::Bisection { k: k_star },
        provenance: fingerprint(
            "weighted-to-unweighted",
            &format!("{} k={k_star} w={w_max}", describe(gw)),
        ),
        roles,
        notes,
        trivial: None,
    })
}

/// Balanced partitioning instance `(forest, k = 0, d = bins)` from unary bin
/// packing: one path per item, after padding with unit items to fill every
/// bin exactly.
pub fn binpacking_to_forest(
    weights: &[usize],
    bins: usize,
    capacity: usize,
) -> Result<ReductionOutput, ReductionError> {
    if bins == 0 || capacity == 0 || weights.contains(&0) {
        return Err(ReductionError::NonPositive);
    }
    let total: usize = weights.iter().sum();
    let input = format!("{weights:?} b={bins} C={capacity}");
    if total > bins * capacity {
        let graph = Graph::path(2);
        return Ok(ReductionOutput {
            graph,
            target: Target::BalancedPartitioning { k: 0, d: 2 },
            provenance: fingerprint("binpacking-to-forest", &input),
            roles: vec!["trivial".into(); 2],
            notes: vec![format!(
                "total weight {total} exceeds {bins} bins of capacity {capacity}"
            )],
            trivial: Some(false),
        });
    }
    let pad = bins * capacity - total;
    let mut notes = Vec::new();
    if pad > 0 {
        notes.push(format!("padded with {pad} unit items"));
    }
    let mut asm = Assembler::default();
    for (i, &w) in weights
        .iter()
        .chain(std::iter::repeat_n(&1, pad))
        .enumerate()
    {
        let mut prev = asm.vertex(format!("item{}", i + 1));
        for _ in 1..w {
            let x = asm.vertex(format!("item{}", i + 1));
            asm.edge(prev, x, 1);
            prev = x;
        }
    }
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), bins * capacity);
    Ok(ReductionOutput {
        graph,
        target: Target::BalancedPartitioning { k: 0, d: bins },
        provenance: fingerprint("binpacking-to-forest", &input),
        roles,
        notes,
        trivial: None,
    })
}

/// Path `v_1 .. v_{t+1}` with pendant vertices: `a_1` on `v_1`,
/// `a_i - a_{i-1} - 1` on `v_i`, and `b - a_t` on `v_{t+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceGadget {
    pub a_set: Vec<usize>,
    pub b: usize,
    /// Pendant count per spine vertex.
    pub pendants: Vec<usize>,
}

pub fn make_choice_gadget(a_set: &[usize], b: usize) -> Result<ChoiceGadget, ReductionError> {
    if a_set.is_empty() || a_set.windows(2).any(|w| w[0] >= w[1]) || a_set[a_set.len() - 1] > b {
        return Err(ReductionError::BadChoice);
    }
    let t = a_set.len();
    let mut pendants = vec![a_set[0]];
    pendants.extend((1..t).map(|i| a_set[i] - a_set[i - 1] - 1));
    pendants.push(b - a_set[t - 1]);
    Ok(ChoiceGadget {
        a_set: a_set.to_vec(),
        b,
        pendants,
    })
}

impl ChoiceGadget {
    pub fn spine_len(&self) -> usize {
        self.pendants.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.spine_len() + self.pendants.iter().sum::<usize>()
    }

    /// Standalone graph: spine vertices `1..=t+1`, then pendants in spine
    /// order.
    pub fn graph(&self) -> Graph {
        let t1 = self.spine_len();
        let mut b = GraphBuilder::new(self.vertex_count());
        let mut next = t1;
        for (i, &c) in self.pendants.iter().enumerate() {
            if i + 1 < t1 {
                b.add_edge(i + 1, i + 2).expect("spine");
            }
            for _ in 0..c {
                next += 1;
                b.add_edge(i + 1, next).expect("pendant");
            }
        }
        b.build()
    }

    /// Sizes of the two sides when the spine is cut between `v_p` and
    /// `v_{p+1}`, leaving out both spine endpoints.
    pub fn side_sizes(&self, p: usize) -> (usize, usize) {
        let g = self.graph();
        let t1 = self.spine_len();
        let mut seen = vec![false; g.n() + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                // Skip the cut spine edge.
                if !seen[u] && !(v == p && u == p + 1) && !(v == p + 1 && u == p) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        let left = seen.iter().filter(|&&s| s).count() - 1;
        let right = g.n() - left - 2;
        debug_assert!(!seen[t1]);
        (left, right)
    }

    /// Builds the gadget inside `asm` with `v_1 = first`, `v_{t+1} = last`.
    fn attach(&self, asm: &mut Assembler, first: Vertex, last: Vertex, role: &str) {
        let t1 = self.spine_len();
        let mut spine = vec![first];
        for _ in 1..t1 - 1 {
            spine.push(asm.vertex(format!("{role}-spine")));
        }
        spine.push(last);
        for w in spine.windows(2) {
            asm.edge(w[0], w[1], 1);
        }
        for (i, &c) in self.pendants.iter().enumerate() {
            for _ in 0..c {
                let x = asm.vertex(format!("{role}-pendant"));
                asm.edge(spine[i], x, 1);
            }
        }
    }
}

/// Closed-form data of the multicoloured-clique gadget instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McParams {
    pub z0: usize,
    pub n0: usize,
    pub d: usize,
    pub k: usize,
}

/// Balanced partitioning instance from a multicoloured clique instance.
/// `colouring[v - 1]` is the colour of `v` in `1..=s`. An odd edge count is
/// first padded with an isolated edge inside colour class 1; the offset
/// `z0 = 2|E| + 10` is taken after padding. Each anchor receives
/// `10 z0 (|V| + |E|) - z0 |V_i| - |E|/2` pendant vertices, so every part has
/// exactly `n0 = 10 z0 (|V| + |E|) + |E|/2 + 1` vertices.
pub fn mcclique_to_bpart(
    g: &Graph,
    colouring: &[usize],
    s: usize,
) -> Result<(ReductionOutput, McParams), ReductionError> {
    if s < 2 {
        return Err(ReductionError::TooFewColours);
    }
    if colouring.len() != g.n() {
        return Err(ReductionError::ColouringLength {
            got: colouring.len(),
            n: g.n(),
        });
    }
    if let Some(&c) = colouring.iter().find(|&&c| c == 0 || c > s) {
        return Err(ReductionError::ColourOutOfRange(c));
    }
    if let Some((u, v, _)) = g
        .edges()
        .into_iter()
        .find(|&(u, v, _)| colouring[u - 1] == colouring[v - 1])
    {
        return Err(ReductionError::ImproperColouring(u, v));
    }
    let input = format!("{} colours={colouring:?} s={s}", describe(g));
    let mut colour = colouring.to_vec();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
    let mut notes = Vec::new();
    if edges.len() % 2 == 1 {
        let (a, b) = (colour.len() + 1, colour.len() + 2);
        colour.extend([1, 1]);
        edges.push((a, b));
        notes.push(
            "added an isolated edge inside colour class 1 to make the edge count even".into(),
        );
    }
    let (nv, ne) = (colour.len(), edges.len());
    let classes: Vec<Vec<Vertex>> = (1..=s)
        .map(|c| (1..=nv).filter(|&v| colour[v - 1] == c).collect())
        .collect();
    if let Some(i) = classes.iter().position(|c| c.is_empty()) {
        return Err(ReductionError::EmptyColourClass(i + 1));
    }
    // Position of each vertex inside its class, starting at 1.
    let mut pos = vec![0; nv + 1];
    for class in &classes {
        for (p, &v) in class.iter().enumerate() {
            pos[v] = p + 1;
        }
    }
    let z0 = 2 * ne + 10;
    let n0 = 10 * z0 * (nv + ne) + ne / 2 + 1;
    let d = 2 * s * (s - 1);
    let k = 3 * s * (s - 1);

    let mut asm = Assembler::default();
    // Anchors N^i_j and P^i_j, in clockwise order per cycle.
    let mut nn = vec![vec![0; s + 1]; s + 1];
    let mut pp = vec![vec![0; s + 1]; s + 1];
    for i in 1..=s {
        for j in (1..=s).filter(|&j| j != i) {
            nn[i][j] = asm.vertex(format!("anchor:N{i},{j}"));
            pp[i][j] = asm.vertex(format!("anchor:P{i},{j}"));
        }
    }
    let succ = |i: usize, j: usize| -> usize {
        let mut x = j % s + 1;
        if x == i {
            x = x % s + 1;
        }
        x
    };
    for i in 1..=s {
        let size_i = classes[i - 1].len();
        let a_i: Vec<usize> = (1..=size_i).map(|p| p * z0).collect();
        let chooser = make_choice_gadget(&a_i, size_i * z0)?;
        for j in (1..=s).filter(|&j| j != i) {
            chooser.attach(
                &mut asm,
                nn[i][succ(i, j)],
                pp[i][j],
                &format!("chooser{i}"),
            );
            let mut a_ij: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter_map(|(e, &(x, y))| {
                    let (v, u) = if colour[x - 1] == i { (x, y) } else { (y, x) };
                    (colour[v - 1] == i && colour[u - 1] == j).then_some(pos[v] * z0 + e + 1)
                })
                .collect();
            if a_ij.is_empty() {
                return Err(ReductionError::MissingColourPair(i.min(j), i.max(j)));
            }
            a_ij.sort_unstable();
            make_choice_gadget(&a_ij, size_i * z0 + ne)?.attach(
                &mut asm,
                nn[i][j],
                pp[i][j],
                &format!("edgechoice{i},{j}"),
            );
        }
    }
    let transmitter = make_choice_gadget(&(1..=ne).collect::<Vec<_>>(), ne)?;
    for i in 1..=s {
        for j in i + 1..=s {
            transmitter.attach(&mut asm, pp[j][i], nn[i][j], &format!("transmitter{i},{j}"));
            transmitter.attach(&mut asm, pp[i][j], nn[j][i], &format!("transmitter{j},{i}"));
        }
    }
    for i in 1..=s {
        let extra = 10 * z0 * (nv + ne) - z0 * classes[i - 1].len() - ne / 2;
        for j in (1..=s).filter(|&j| j != i) {
            for anchor in [nn[i][j], pp[i][j]] {
                for _ in 0..extra {
                    let x = asm.vertex("anchor-pendant");
                    asm.edge(anchor, x, 1);
                }
            }
        }
    }
    let merged = asm.merged();
    if merged > 0 {
        notes.push(format!(
            "{merged} parallel gadget edges merged into weighted edges"
        ));
    }
    if s < 3 {
        notes.push("warning: fewer than three colours; the gadget argument is only claimed for large instances".into());
    }
    let (graph, roles) = asm.finish();
    assert_eq!(graph.n(), d * n0);
    let params = McParams { z0, n0, d, k };
    let out = ReductionOutput {
        graph,
        target: Target::BalancedPartitioning { k: k as Weight, d },
        provenance: fingerprint("mcclique-to-bpart", &input),
        roles,
        notes,
        trivial: None,
    };
    Ok((out, params))
}
