//! Minimum bisection through a labelled-graph expression of `G - D`, where `D`
//! is a small deletion set whose vertices are split between the sides in
//! every possible way.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{cut_size, find_isomorphism, Bipartition, Graph, Vertex, VertexSet, Weight};
use crate::qexpr::{all_joins_full, eval_qexpr, QExprError, QExpression, QNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error(transparent)]
    Expr(#[from] QExprError),
    #[error("expression does not evaluate to the graph minus the deletion set")]
    Mismatch,
    #[error("join of labels {0} and {1} is not full; normalize the expression first")]
    NonFullJoin(usize, usize),
    #[error("edges outside the deletion set must have unit weight")]
    WeightedEdges,
    #[error("split does not partition the deletion set")]
    BadSplit,
    #[error("deletion set of {0} vertices is too large to enumerate")]
    DeletionTooLarge(usize),
}

/// Assignment of the deletion set to the two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSplit {
    pub d_set: VertexSet,
    pub a0: VertexSet,
    pub b0: VertexSet,
    /// Weight of `a0`-`b0` edges.
    pub internal_cut: Weight,
}

impl DeletionSplit {
    pub fn new(g: &Graph, a0: VertexSet, b0: VertexSet) -> Self {
        let internal_cut = a0
            .iter()
            .flat_map(|&u| {
                g.weighted_neighbors(u)
                    .iter()
                    .filter(|(v, _)| b0.contains(v))
                    .map(|e| e.1)
            })
            .sum();
        let d_set = a0.union(&b0).copied().collect();
        DeletionSplit {
            d_set,
            a0,
            b0,
            internal_cut,
        }
    }
}

#[derive(Debug, Clone)]
enum Flat {
    Create {
        label: usize,
        index: usize,
    },
    Join {
        i: usize,
        j: usize,
        child: usize,
    },
    Rename {
        from: usize,
        to: usize,
        child: usize,
    },
    Union {
        left: usize,
        right: usize,
    },
}

/// Post-order arena; creation indices follow left-to-right order.
fn flatten(root: &QNode) -> Vec<Flat> {
    enum Step<'a> {
        Enter(&'a QNode),
        Exit(&'a QNode),
    }
    let mut out: Vec<Flat> = Vec::new();
    let mut results: Vec<usize> = Vec::new();
    let mut stack = vec![Step::Enter(root)];
    let mut creates = 0;
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(x) => {
                stack.push(Step::Exit(x));
                match x {
                    QNode::Create(_) => {}
                    QNode::Join(_, _, c) | QNode::Rename(_, _, c) => stack.push(Step::Enter(c)),
                    QNode::Union(l, r) => {
                        stack.push(Step::Enter(r));
                        stack.push(Step::Enter(l));
                    }
                }
            }
            Step::Exit(x) => {
                let node = match x {
                    QNode::Create(l) => {
                        creates += 1;
                        Flat::Create {
                            label: *l,
                            index: creates - 1,
                        }
                    }
                    QNode::Join(i, j, _) => Flat::Join {
                        i: *i,
                        j: *j,
                        child: results.pop().expect("child"),
                    },
                    QNode::Rename(f, t, _) => Flat::Rename {
                        from: *f,
                        to: *t,
                        child: results.pop().expect("child"),
                    },
                    QNode::Union(_, _) => {
                        let right = results.pop().expect("right");
                        let left = results.pop().expect("left");
                        Flat::Union { left, right }
                    }
                };
                out.push(node);
                results.push(out.len() - 1);
            }
        }
    }
    out
}

/// Dense table over label-count vectors `a` (with `b = counts - a`),
/// indexed in mixed radix.
#[derive(Debug, Clone)]
struct Layer {
    counts: Vec<usize>,
    strides: Vec<usize>,
    vals: Vec<Weight>,
    /// Child entry (join, rename) or left/right entries (union).
    back: Vec<(u32, u32)>,
}

const INF: Weight = Weight::MAX;

impl Layer {
    fn new(counts: Vec<usize>) -> Self {
        let mut strides = vec![0; counts.len()];
        let mut size = 1;
        for (i, &c) in counts.iter().enumerate() {
            strides[i] = size;
            size *= c + 1;
        }
        Layer {
            counts,
            strides,
            vals: vec![INF; size],
            back: vec![(0, 0); size],
        }
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.counts
            .iter()
            .map(|&c| {
                let a = idx % (c + 1);
                idx /= c + 1;
                a
            })
            .collect()
    }

    fn index(&self, a: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for ((&x, &c), &s) in a.iter().zip(&self.counts).zip(&self.strides) {
            if x > c {
                return None;
            }
            idx += x * s;
        }
        Some(idx)
    }
}

/// All per-subexpression tables for one deletion split.
#[derive(Debug, Clone)]
pub struct CutTable {
    flat: Vec<Flat>,
    layers: Vec<Layer>,
    q: usize,
}

impl CutTable {
    fn root(&self) -> &Layer {
        self.layers.last().expect("non-empty expression")
    }

    /// Label counts of the whole expression (index `i - 1` for label `i`).
    pub fn label_counts(&self) -> &[usize] {
        &self.root().counts
    }

    /// Minimum cut with `a[i-1]` vertices of label `i` on side `A` and
    /// `b[i-1]` on side `B`; `None` if the vectors do not match the label
    /// counts.
    pub fn value(&self, a: &[usize], b: &[usize]) -> Option<Weight> {
        let root = self.root();
        if a.len() != self.q || b.len() != self.q {
            return None;
        }
        if a.iter()
            .zip(b)
            .zip(&root.counts)
            .any(|((x, y), c)| x + y != *c)
        {
            return None;
        }
        let w = root.vals[root.index(a)?];
        (w != INF).then_some(w)
    }

    /// All defined root entries as `(a, b, value)`.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<usize>, Weight)> {
        let root = self.root();
        (0..root.vals.len())
            .filter(|&i| root.vals[i] != INF)
            .map(|i| {
                let a = root.decode(i);
                let b = a.iter().zip(&root.counts).map(|(x, c)| c - x).collect();
                (a, b, root.vals[i])
            })
            .collect()
    }

    /// Creation indices placed on side `A` by an optimal solution of the
    /// root entry `a`.
    fn retrace(&self, a: &[usize]) -> Vec<usize> {
        let mut on_a = Vec::new();
        let root = self.layers.len() - 1;
        let mut stack = vec![(root, self.root().index(a).expect("valid vector"))];
        while let Some((node, idx)) = stack.pop() {
            let (x, y) = self.layers[node].back[idx];
            match self.flat[node] {
                Flat::Create { index, .. } => {
                    if idx == 1 {
                        on_a.push(index);
                    }
                }
                Flat::Join { child, .. } | Flat::Rename { child, .. } => {
                    stack.push((child, x as usize))
                }
                Flat::Union { left, right } => {
                    stack.push((left, x as usize));
                    stack.push((right, y as usize));
                }
            }
        }
        on_a.sort_unstable();
        on_a
    }
}

/// Fills the tables bottom-up. `leaf_cost[i]` gives the cost of putting the
/// vertex created at index `i` on side `A` and on side `B`.
fn fill(
    phi: &QExpression,
    flat: Vec<Flat>,
    leaf_cost: &[(Weight, Weight)],
) -> Result<CutTable, CwError> {
    let q = phi.q;
    let mut layers: Vec<Layer> = Vec::with_capacity(flat.len());
    for node in &flat {
        let layer = match *node {
            Flat::Create { label, index } => {
                let mut counts = vec![0; q];
                counts[label - 1] = 1;
                let mut l = Layer::new(counts);
                // Index 0: vertex on B; index stride(label) = 1 since all
                // lower labels have count 0.
                l.vals[0] = leaf_cost[index].1;
                l.vals[1] = leaf_cost[index].0;
                l
            }
            Flat::Join { i, j, child } => {
                let c = &layers[child];
                let mut l = Layer::new(c.counts.clone());
                let (ni, nj) = (c.counts[i - 1], c.counts[j - 1]);
                for idx in 0..c.vals.len() {
                    if c.vals[idx] == INF {
                        continue;
                    }
                    let a = c.decode(idx);
                    let (ai, aj) = (a[i - 1], a[j - 1]);
                    let extra = (ai * (nj - aj) + aj * (ni - ai)) as Weight;
                    l.vals[idx] = c.vals[idx] + extra;
                    l.back[idx] = (idx as u32, 0);
                }
                l
            }
            Flat::Rename { from, to, child } => {
                let c = &layers[child];
                let mut counts = c.counts.clone();
                counts[to - 1] += counts[from - 1];
                counts[from - 1] = 0;
                let mut l = Layer::new(counts);
                for idx in 0..c.vals.len() {
                    let w = c.vals[idx];
                    if w == INF {
                        continue;
                    }
                    let mut a = c.decode(idx);
                    a[to - 1] += a[from - 1];
                    a[from - 1] = 0;
                    let p = l.index(&a).expect("within counts");
                    if w < l.vals[p] {
                        l.vals[p] = w;
                        l.back[p] = (idx as u32, 0);
                    }
                }
                l
            }
            Flat::Union { left, right } => {
                let (x, y) = (&layers[left], &layers[right]);
                let counts: Vec<usize> =
                    x.counts.iter().zip(&y.counts).map(|(a, b)| a + b).collect();
                let mut l = Layer::new(counts);
                let offset = |src: &Layer, idx: usize| -> usize {
                    src.decode(idx)
                        .iter()
                        .zip(&l.strides)
                        .map(|(a, s)| a * s)
                        .sum()
                };
                let ox: Vec<usize> = (0..x.vals.len()).map(|i| offset(x, i)).collect();
                let oy: Vec<usize> = (0..y.vals.len()).map(|i| offset(y, i)).collect();
                for (ix, &wx) in x.vals.iter().enumerate() {
                    if wx == INF {
                        continue;
                    }
                    for (iy, &wy) in y.vals.iter().enumerate() {
                        if wy == INF {
                            continue;
                        }
                        let p = ox[ix] + oy[iy];
                        if wx + wy < l.vals[p] {
                            l.vals[p] = wx + wy;
                            l.back[p] = (ix as u32, iy as u32);
                        }
                    }
                }
                l
            }
        };
        layers.push(layer);
    }
    Ok(CutTable { flat, layers, q })
}

/// Checks fullness and label ranges of `phi`, then locates the vertex of `g`
/// behind every creation symbol.
fn correspondence(
    g: &Graph,
    d: &VertexSet,
    phi: &QExpression,
    mapping: Option<&[Vertex]>,
) -> Result<Vec<Vertex>, CwError> {
    phi.check()?;
    if let Some((i, j)) = first_non_full_join(phi) {
        return Err(CwError::NonFullJoin(i, j));
    }
    let rest: VertexSet = g.vertices().filter(|v| !d.contains(v)).collect();
    let (h, back) = g.induced_subgraph(&rest);
    if !h.has_unit_edge_weights() {
        return Err(CwError::WeightedEdges);
    }
    let val = eval_qexpr(phi)?.graph;
    if val.n() != h.n() {
        return Err(CwError::Mismatch);
    }
    let matches = |map: &[Vertex]| -> bool {
        // map[i] is a vertex of g; translate to h ids.
        let mut hid = vec![0usize; g.n() + 1];
        for (i, &v) in back.iter().enumerate() {
            hid[v] = i + 1;
        }
        let mut seen = vec![false; h.n() + 1];
        for &v in map {
            if v == 0 || v > g.n() || hid[v] == 0 || seen[hid[v]] {
                return false;
            }
            seen[hid[v]] = true;
        }
        val.m() == h.m()
            && val
                .edges()
                .iter()
                .all(|&(x, y, _)| h.has_edge(hid[map[x - 1]], hid[map[y - 1]]))
    };
    if let Some(map) = mapping {
        return if map.len() == val.n() && matches(map) {
            Ok(map.to_vec())
        } else {
            Err(CwError::Mismatch)
        };
    }
    if matches(&back) {
        return Ok(back);
    }
    if h.n() <= 10 {
        if let Some(f) = find_isomorphism(&val, &h, None) {
            return Ok(f.iter().map(|&x| back[x - 1]).collect());
        }
    }
    Err(CwError::Mismatch)
}

fn first_non_full_join(phi: &QExpression) -> Option<(usize, usize)> {
    if all_joins_full(phi) {
        return None;
    }
    // Find the offending join by testing subexpressions bottom-up.
    fn go(x: &QNode, q: usize) -> Option<(usize, usize)> {
        match x {
            QNode::Create(_) => None,
            QNode::Rename(_, _, c) => go(c, q),
            QNode::Union(l, r) => go(l, q).or_else(|| go(r, q)),
            QNode::Join(i, j, c) => go(c, q).or_else(|| {
                let e = QExpression { q, root: x.clone() };
                (!all_joins_full(&e)).then_some((*i, *j))
            }),
        }
    }
    go(&phi.root, phi.q)
}

fn leaf_costs(g: &Graph, map: &[Vertex], split: &DeletionSplit) -> Vec<(Weight, Weight)> {
    map.iter()
        .map(|&v| {
            let mut to_a = 0;
            let mut to_b = 0;
            for &(u, w) in g.weighted_neighbors(v) {
                if split.a0.contains(&u) {
                    to_a += w;
                } else if split.b0.contains(&u) {
                    to_b += w;
                }
            }
            // Side A pays for edges into B0 and vice versa.
            (to_b, to_a)
        })
        .collect()
}

/// Tables of the cut recurrence for one split of `D`. Edges inside `D` are
/// not included; edges between `D` and the rest are charged at the leaves.
pub fn cut_dp(
    g: &Graph,
    d: &VertexSet,
    split: &DeletionSplit,
    phi: &QExpression,
    mapping: Option<&[Vertex]>,
) -> Result<CutTable, CwError> {
    if split.a0.intersection(&split.b0).next().is_some() || &split.d_set != d {
        return Err(CwError::BadSplit);
    }
    let map = correspondence(g, d, phi, mapping)?;
    fill(phi, flatten(&phi.root), &leaf_costs(g, &map, split))
}

/// Optimal bisection of `g` given an expression `phi` of `G - D`. Every split
/// of `D` is tried (in parallel); ties go to the split enumerated first.
pub fn solve_bisection_cwd(
    g: &Graph,
    d: &VertexSet,
    phi: &QExpression,
    mapping: Option<&[Vertex]>,
) -> Result<(Bipartition, Weight), CwError> {
    if d.len() > 24 {
        return Err(CwError::DeletionTooLarge(d.len()));
    }
    let map = correspondence(g, d, phi, mapping)?;
    let n = g.n();
    let dv: Vec<Vertex> = d.iter().copied().collect();
    let flat = flatten(&phi.root);
    let sizes = [n / 2, n.div_ceil(2)];
    let best = (0u64..1 << dv.len())
        .into_par_iter()
        .map(|mask| {
            let a0: VertexSet = (0..dv.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| dv[i])
                .collect();
            let b0: VertexSet = d.difference(&a0).copied().collect();
            let split = DeletionSplit::new(g, a0, b0);
            let table =
                fill(phi, flat.clone(), &leaf_costs(g, &map, &split)).expect("checked expression");
            let mut best: Option<(Weight, Vec<usize>)> = None;
            for (a, _, w) in table.entries() {
                let size = split.a0.len() + a.iter().sum::<usize>();
                if sizes.contains(&size) && best.as_ref().is_none_or(|(b, _)| w < *b) {
                    best = Some((w, a));
                }
            }
            best.map(|(w, a)| {
                let on_a = table.retrace(&a);
                (w + split.internal_cut, split, on_a)
            })
        })
        .filter_map(|x| x)
        .min_by_key(|x| x.0);
    let (cut, split, on_a) = best.expect("some split always yields a bisection");
    let mut a = split.a0.clone();
    a.extend(on_a.iter().map(|&i| map[i]));
    let p = Bipartition::from_side(g, a);
    debug_assert_eq!(cut_size(g, &p).ok(), Some(cut));
    Ok((p, cut))
}

fn is_forest_without(g: &Graph, d: &VertexSet) -> bool {
    let rest: VertexSet = g.vertices().filter(|v| !d.contains(v)).collect();
    let (h, _) = g.induced_subgraph(&rest);
    h.m() + crate::graph::connected_components(&h).len() == h.n()
}

/// An inclusion-minimal vertex set whose removal leaves a forest: vertices of
/// largest degree in the 2-core are taken greedily, then redundant ones are
/// dropped in increasing order.
pub fn forest_deletion_set(g: &Graph) -> VertexSet {
    let mut d = VertexSet::new();
    loop {
        // Peel degree <= 1 vertices to expose the 2-core.
        let mut deg: Vec<usize> = (0..=g.n())
            .map(|v| {
                if v == 0 || d.contains(&v) {
                    0
                } else {
                    g.neighbors(v).filter(|u| !d.contains(u)).count()
                }
            })
            .collect();
        let mut alive: Vec<bool> = (0..=g.n()).map(|v| v != 0 && !d.contains(&v)).collect();
        let mut stack: Vec<Vertex> = g.vertices().filter(|&v| alive[v] && deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for u in g.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        let pick = g
            .vertices()
            .filter(|&v| alive[v])
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)));
        match pick {
            Some(v) => {
                d.insert(v);
            }
            None => break,
        }
    }
    for v in d.clone() {
        d.remove(&v);
        if !is_forest_without(g, &d) {
            d.insert(v);
        }
    }
    d
}

/// Bisection through a forest deletion set and the standard forest
/// expression with three labels. Returns the deletion set used as well.
pub fn solve_bisection_auto(g: &Graph) -> Result<(Bipartition, Weight, VertexSet), CwError> {
    let d = forest_deletion_set(g);
    let rest: VertexSet = g.vertices().filter(|v| !d.contains(v)).collect();
    let (h, back) = g.induced_subgraph(&rest);
    if h.n() == 0 {
        // Everything was deleted; only possible for graphs without vertices.
        return Ok((Bipartition::new(VertexSet::new(), VertexSet::new()), 0, d));
    }
    let (phi, order) = crate::qexpr::family_qexpr(crate::qexpr::Family::Forest(&h))?;
    let map: Vec<Vertex> = order.iter().map(|&x| back[x - 1]).collect();
    let (p, cut) = solve_bisection_cwd(g, &d, &phi, Some(&map))?;
    Ok((p, cut, d))
}
