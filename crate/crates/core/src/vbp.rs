//! Minimum-weight `c`-component separators by dynamic programming over nice
//! tree decompositions, and the vertex-bisection driver on top of trimmers.
//!
//! A table state fixes, for every bag vertex, whether it lies in `S`, `A` or
//! `B` and which bag vertices share a connected component of `G_t[A]` or
//! `G_t[B]` (the subgraph induced by the vertices seen so far). Each state
//! carries a dense array indexed by `(c, ℓ)`: the number `c` of components
//! that no longer touch the bag and the weight `ℓ = λ(A)`.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::decomp::{self, DecompError, NiceTreeDecomposition, NodeKind};
use crate::graph::{count_components_after_removal, Graph, Vertex, VertexSet, Weight};
use crate::torso::{build_trimmer, TorsoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VbpError {
    #[error("decomposition is not a nice tree decomposition of the graph")]
    InvalidDecomposition,
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Torso(#[from] TorsoError),
    #[error("component count must be at least 2, got {0}")]
    TooFewComponents(usize),
    #[error("separation violates the move precondition")]
    MovePrecondition,
    #[error("no vertex can be moved without changing the component count")]
    NoMovableVertex,
}

const INF: Weight = Weight::MAX;
const S_CODE: u8 = 0;

/// Side of a bag vertex in a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    S,
    A,
    B,
}

/// Decoded state: per bag position a side and, for `A`/`B`, a part id.
type Decoded = Vec<(Side, u8)>;

fn encode(dec: &[(Side, u8)]) -> Vec<u8> {
    let mut relabel = [u8::MAX; 256];
    let mut next = 0u8;
    dec.iter()
        .map(|&(side, part)| match side {
            Side::S => S_CODE,
            _ => {
                if relabel[part as usize] == u8::MAX {
                    relabel[part as usize] = next;
                    next += 1;
                }
                1 + 2 * relabel[part as usize] + u8::from(side == Side::B)
            }
        })
        .collect()
}

fn decode(code: &[u8]) -> Decoded {
    code.iter()
        .map(|&x| match x {
            S_CODE => (Side::S, 0),
            _ => {
                let side = if (x - 1) % 2 == 0 { Side::A } else { Side::B };
                (side, (x - 1) / 2)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Back {
    a: u32,
    b: u32,
    c1: u32,
    l1: u32,
}

#[derive(Debug, Clone)]
struct NodeTable {
    keys: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    vals: Vec<Weight>,
    back: Vec<Back>,
}

impl NodeTable {
    fn new() -> Self {
        NodeTable {
            keys: Vec::new(),
            index: HashMap::new(),
            vals: Vec::new(),
            back: Vec::new(),
        }
    }

    fn state(&mut self, key: Vec<u8>, width: usize) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i as usize;
        }
        let i = self.keys.len();
        self.index.insert(key.clone(), i as u32);
        self.keys.push(key);
        self.vals.extend(std::iter::repeat_n(INF, width));
        self.back
            .extend(std::iter::repeat_n(Back::default(), width));
        i
    }
}

/// A fully specified table key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepKey {
    pub node: usize,
    pub s_t: VertexSet,
    pub p_a: Vec<VertexSet>,
    pub p_b: Vec<VertexSet>,
    pub c: usize,
    pub ell: Weight,
}

/// The completed table for every node of a nice decomposition.
#[derive(Debug, Clone)]
pub struct SepTable {
    ntd: NiceTreeDecomposition,
    tables: Vec<NodeTable>,
    c_max: usize,
    total: Weight,
    weights: Vec<Weight>,
}

impl SepTable {
    fn width(&self) -> usize {
        (self.c_max + 1) * (self.total as usize + 1)
    }

    fn slot(&self, c: usize, l: Weight) -> usize {
        c * (self.total as usize + 1) + l as usize
    }

    pub fn c_max(&self) -> usize {
        self.c_max
    }

    pub fn total_weight(&self) -> Weight {
        self.total
    }

    pub fn decomposition(&self) -> &NiceTreeDecomposition {
        &self.ntd
    }

    /// Number of materialized states at `node`.
    pub fn state_count(&self, node: usize) -> usize {
        self.tables[node].keys.len()
    }

    /// Minimum `λ(S)` at the (empty-bag) root with exactly `c` components
    /// in `G - S` and `λ(A) = ell`.
    pub fn root_value(&self, c: usize, ell: Weight) -> Option<Weight> {
        self.get(&SepKey {
            node: self.ntd.root,
            s_t: VertexSet::new(),
            p_a: vec![],
            p_b: vec![],
            c,
            ell,
        })
    }

    /// All finite root values as `(c, ℓ, λ(S))`.
    pub fn root_entries(&self) -> Vec<(usize, Weight, Weight)> {
        let mut out = Vec::new();
        for c in 0..=self.c_max {
            for l in 0..=self.total {
                if let Some(w) = self.root_value(c, l) {
                    out.push((c, l, w));
                }
            }
        }
        out
    }

    fn locate(&self, key: &SepKey) -> Option<(usize, usize)> {
        if key.node >= self.tables.len() || key.c > self.c_max || key.ell > self.total {
            return None;
        }
        let bag = &self.ntd.nodes[key.node].bag;
        let mut slots: Vec<Option<(Side, u8)>> = vec![None; bag.len()];
        let mut assign = |v: &Vertex, val: (Side, u8)| -> Option<()> {
            let p = bag.binary_search(v).ok()?;
            if slots[p].is_some() {
                return None;
            }
            slots[p] = Some(val);
            Some(())
        };
        for v in &key.s_t {
            assign(v, (Side::S, 0))?;
        }
        let parts = key
            .p_a
            .iter()
            .map(|p| (Side::A, p))
            .chain(key.p_b.iter().map(|p| (Side::B, p)));
        for (i, (side, part)) in parts.enumerate() {
            if part.is_empty() {
                return None;
            }
            for v in part {
                assign(v, (side, i as u8))?;
            }
        }
        let dec: Decoded = slots.into_iter().collect::<Option<_>>()?;
        let state = *self.tables[key.node].index.get(&encode(&dec))? as usize;
        Some((state, self.slot(key.c, key.ell)))
    }

    pub fn get(&self, key: &SepKey) -> Option<Weight> {
        let (state, slot) = self.locate(key)?;
        let w = self.tables[key.node].vals[state * self.width() + slot];
        (w != INF).then_some(w)
    }

    /// Reconstructs a separation achieving the value of `key`.
    pub fn retrace(&self, key: &SepKey) -> Option<crate::graph::Separation> {
        let (state, _) = self.locate(key)?;
        self.get(key)?;
        let mut side: HashMap<Vertex, Side> = HashMap::new();
        let mut stack = vec![(key.node, state, key.c, key.ell)];
        while let Some((node, st, c, l)) = stack.pop() {
            let x = &self.ntd.nodes[node];
            let dec = decode(&self.tables[node].keys[st]);
            for (p, &v) in x.bag.iter().enumerate() {
                side.insert(v, dec[p].0);
            }
            let back = self.tables[node].back[st * self.width() + self.slot(c, l)];
            match x.kind {
                NodeKind::Leaf => {}
                NodeKind::Introduce(_) | NodeKind::Forget(_) => {
                    stack.push((
                        x.children[0],
                        back.a as usize,
                        back.c1 as usize,
                        back.l1 as Weight,
                    ));
                }
                NodeKind::Join => {
                    let bag_a: Weight = x
                        .bag
                        .iter()
                        .zip(&dec)
                        .filter(|(_, d)| d.0 == Side::A)
                        .map(|(&v, _)| self.weight_of(v))
                        .sum();
                    let l1 = back.l1 as Weight;
                    let l2 = l + bag_a - l1;
                    stack.push((x.children[0], back.a as usize, back.c1 as usize, l1));
                    stack.push((x.children[1], back.b as usize, c - back.c1 as usize, l2));
                }
            }
        }
        let mut sep = crate::graph::Separation::default();
        for (v, s) in side {
            match s {
                Side::S => sep.s.insert(v),
                Side::A => sep.a.insert(v),
                Side::B => sep.b.insert(v),
            };
        }
        Some(sep)
    }

    fn weight_of(&self, v: Vertex) -> Weight {
        self.weights[v - 1]
    }
}

/// Union-find over a handful of part ids.
fn find(parent: &mut [u8], x: u8) -> u8 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut y = x;
    while parent[y as usize] != r {
        let next = parent[y as usize];
        parent[y as usize] = r;
        y = next;
    }
    r
}

/// Fills the table bottom-up for every node of `ntd`, keeping component
/// counters up to `c_max`. Vertex weights are taken from `g`.
pub fn sep_dp(g: &Graph, ntd: &NiceTreeDecomposition, c_max: usize) -> Result<SepTable, VbpError> {
    if !ntd.check_nice() || !decomp::validate_td(g, &ntd.to_td())? {
        return Err(VbpError::InvalidDecomposition);
    }
    let total = g.total_weight();
    let mut table = SepTable {
        ntd: ntd.clone(),
        tables: Vec::with_capacity(ntd.len()),
        c_max,
        total,
        weights: g.vertex_weights().to_vec(),
    };
    let width = table.width();
    let lw = total as usize + 1;
    for (i, x) in ntd.nodes.iter().enumerate() {
        let mut nt = NodeTable::new();
        match x.kind {
            NodeKind::Leaf => {
                if let Some(&v) = x.bag.first() {
                    let wv = g.vertex_weight(v);
                    for (side, w, l) in [(Side::S, wv, 0), (Side::A, 0, wv), (Side::B, 0, 0)] {
                        let st = nt.state(encode(&[(side, 0)]), width);
                        nt.vals[st * width + l as usize] = w;
                    }
                } else {
                    let st = nt.state(Vec::new(), width);
                    nt.vals[st * width] = 0;
                }
            }
            NodeKind::Introduce(v) => {
                let child = x.children[0];
                let ct = &table.tables[child];
                let pos = x.bag.binary_search(&v).expect("introduced vertex in bag");
                let wv = g.vertex_weight(v);
                let nbr_pos: Vec<usize> = (0..x.bag.len())
                    .filter(|&p| p != pos && g.has_edge(v, x.bag[p]))
                    .collect();
                for (cs, key) in ct.keys.iter().enumerate() {
                    let dec = decode(key);
                    for side in [Side::S, Side::A, Side::B] {
                        // Parent positions: child positions with v spliced in.
                        let inner = |p: usize| if p < pos { p } else { p - 1 };
                        let fresh = u8::MAX;
                        let (dw, dl) = match side {
                            Side::S => (wv, 0),
                            Side::A => (0, wv),
                            Side::B => (0, 0),
                        };
                        let mut merged: Vec<u8> = Vec::new();
                        let mut ok = true;
                        if side != Side::S {
                            for &p in &nbr_pos {
                                let (s2, part) = dec[inner(p)];
                                if s2 == Side::S {
                                    continue;
                                }
                                if s2 != side {
                                    ok = false;
                                    break;
                                }
                                merged.push(part);
                            }
                        }
                        if !ok {
                            continue;
                        }
                        let mut nd: Decoded = Vec::with_capacity(x.bag.len());
                        for p in 0..x.bag.len() {
                            if p == pos {
                                nd.push((side, fresh));
                            } else {
                                let (s2, part) = dec[inner(p)];
                                let part = if s2 == side && merged.contains(&part) {
                                    fresh
                                } else {
                                    part
                                };
                                nd.push((s2, part));
                            }
                        }
                        let st = nt.state(encode(&nd), width);
                        for c in 0..=c_max {
                            for l in 0..lw {
                                let w = ct.vals[cs * width + c * lw + l];
                                if w == INF || l + dl as usize >= lw {
                                    continue;
                                }
                                let slot = st * width + c * lw + l + dl as usize;
                                if w + dw < nt.vals[slot] {
                                    nt.vals[slot] = w + dw;
                                    nt.back[slot] = Back {
                                        a: cs as u32,
                                        b: 0,
                                        c1: c as u32,
                                        l1: l as u32,
                                    };
                                }
                            }
                        }
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child = x.children[0];
                let ct = &table.tables[child];
                let cbag = &ntd.nodes[child].bag;
                let pos = cbag
                    .binary_search(&v)
                    .expect("forgotten vertex in child bag");
                for (cs, key) in ct.keys.iter().enumerate() {
                    let dec = decode(key);
                    let (side, part) = dec[pos];
                    let closes = side != Side::S
                        && !dec
                            .iter()
                            .enumerate()
                            .any(|(p, &d)| p != pos && d.0 != Side::S && d.1 == part);
                    let nd: Decoded = dec
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != pos)
                        .map(|(_, &d)| d)
                        .collect();
                    let st = nt.state(encode(&nd), width);
                    let dc = usize::from(closes);
                    for c in 0..=c_max.saturating_sub(dc) {
                        if c + dc > c_max {
                            break;
                        }
                        for l in 0..lw {
                            let w = ct.vals[cs * width + c * lw + l];
                            if w == INF {
                                continue;
                            }
                            let slot = st * width + (c + dc) * lw + l;
                            if w < nt.vals[slot] {
                                nt.vals[slot] = w;
                                nt.back[slot] = Back {
                                    a: cs as u32,
                                    b: 0,
                                    c1: c as u32,
                                    l1: l as u32,
                                };
                            }
                        }
                    }
                }
            }
            NodeKind::Join => {
                let (c1, c2) = (x.children[0], x.children[1]);
                let (t1, t2) = (&table.tables[c1], &table.tables[c2]);
                let sides = |key: &[u8]| -> Vec<Side> { decode(key).iter().map(|d| d.0).collect() };
                let mut by_sides: HashMap<Vec<Side>, Vec<usize>> = HashMap::new();
                for (s2, key) in t2.keys.iter().enumerate() {
                    by_sides.entry(sides(key)).or_default().push(s2);
                }
                for (s1, k1) in t1.keys.iter().enumerate() {
                    let d1 = decode(k1);
                    let side_vec: Vec<Side> = d1.iter().map(|d| d.0).collect();
                    let Some(partners) = by_sides.get(&side_vec) else {
                        continue;
                    };
                    let bag_s: Weight = x
                        .bag
                        .iter()
                        .zip(&d1)
                        .filter(|(_, d)| d.0 == Side::S)
                        .map(|(&v, _)| g.vertex_weight(v))
                        .sum();
                    let bag_a = x
                        .bag
                        .iter()
                        .zip(&d1)
                        .filter(|(_, d)| d.0 == Side::A)
                        .map(|(&v, _)| g.vertex_weight(v))
                        .sum::<Weight>() as usize;
                    for &s2 in partners {
                        let d2 = decode(&t2.keys[s2]);
                        // Finest common coarsening of the two part structures.
                        let mut parent: Vec<u8> = (0..=255u8).collect();
                        for (a, b) in d1.iter().zip(&d2) {
                            if a.0 != Side::S {
                                let (ra, rb) =
                                    (find(&mut parent, a.1), find(&mut parent, 128 + b.1));
                                parent[ra.max(rb) as usize] = ra.min(rb);
                            }
                        }
                        let nd: Decoded = d1
                            .iter()
                            .map(|&(s, p)| {
                                if s == Side::S {
                                    (s, 0)
                                } else {
                                    (s, find(&mut parent, p))
                                }
                            })
                            .collect();
                        let st = nt.state(encode(&nd), width);
                        let base1 = s1 * width;
                        let base2 = s2 * width;
                        for ca in 0..=c_max {
                            for la in bag_a..lw {
                                let wa = t1.vals[base1 + ca * lw + la];
                                if wa == INF {
                                    continue;
                                }
                                for cb in 0..=c_max - ca {
                                    for lb in bag_a..lw {
                                        let wb = t2.vals[base2 + cb * lw + lb];
                                        if wb == INF {
                                            continue;
                                        }
                                        let l = la + lb - bag_a;
                                        if l >= lw {
                                            break;
                                        }
                                        let w = wa + wb - bag_s;
                                        let slot = st * width + (ca + cb) * lw + l;
                                        if w < nt.vals[slot] {
                                            nt.vals[slot] = w;
                                            nt.back[slot] = Back {
                                                a: s1 as u32,
                                                b: s2 as u32,
                                                c1: ca as u32,
                                                l1: la as u32,
                                            };
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        debug_assert_eq!(table.tables.len(), i);
        table.tables.push(nt);
    }
    Ok(table)
}

/// Minimum-weight separator with exactly `c` components in `G - S` and
/// `λ(A) = s`, using an optimal decomposition for small graphs and a
/// minimum-degree one otherwise.
pub fn min_weight_separator(
    g: &Graph,
    c: usize,
    s: Weight,
) -> Result<Option<crate::graph::Separation>, VbpError> {
    let ntd = decomp::make_nice(&decomp::decompose(g, 12))?;
    min_weight_separator_with(g, &ntd, c, s)
}

pub fn min_weight_separator_with(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    c: usize,
    s: Weight,
) -> Result<Option<crate::graph::Separation>, VbpError> {
    let table = sep_dp(g, ntd, c)?;
    let key = SepKey {
        node: ntd.root,
        s_t: VertexSet::new(),
        p_a: vec![],
        p_b: vec![],
        c,
        ell: s,
    };
    Ok(table.retrace(&key))
}

fn bfs_last(g: &Graph, comp: &VertexSet) -> Vertex {
    let start = *comp.iter().next().expect("non-empty");
    let mut seen = VertexSet::from([start]);
    let mut queue = std::collections::VecDeque::from([start]);
    let mut last = start;
    while let Some(v) = queue.pop_front() {
        last = v;
        for u in g.neighbors(v) {
            if comp.contains(&u) && seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    last
}

/// Moves `k - |S|` vertices, one at a time from the currently larger side,
/// into `S`. Each moved vertex is the last vertex of a breadth-first search
/// in a component with at least two vertices, so the component count stays
/// the same. Stops early only if the sides are balanced and nothing can move.
pub fn rebalance_move(
    g: &Graph,
    sep: &crate::graph::Separation,
    k: usize,
) -> Result<crate::graph::Separation, VbpError> {
    if sep.s.len() > k || sep.imbalance() > k - sep.s.len() + 1 {
        return Err(VbpError::MovePrecondition);
    }
    let mut out = sep.clone();
    for _ in sep.s.len()..k {
        let larger = if out.a.len() >= out.b.len() {
            &mut out.a
        } else {
            &mut out.b
        };
        let (sub, back) = g.induced_subgraph(larger);
        let Some(comp) = crate::graph::connected_components(&sub)
            .into_iter()
            .find(|c| c.len() >= 2)
        else {
            break;
        };
        let v = back[bfs_last(&sub, &comp) - 1];
        larger.remove(&v);
        out.s.insert(v);
    }
    if out.imbalance() > 1 {
        return Err(VbpError::NoMovableVertex);
    }
    Ok(out)
}

/// Maps a separation of the trimmed graph back to the original graph.
fn pull_back(
    tr: &crate::torso::Trimmer,
    sep: &crate::graph::Separation,
) -> crate::graph::Separation {
    crate::graph::Separation {
        s: tr.torso.preimage(&sep.s),
        a: tr.torso.preimage(&sep.a),
        b: tr.torso.preimage(&sep.b),
    }
}

/// Tries one terminal set; returns a valid separator when the scan succeeds.
fn try_terminals(
    g: &Graph,
    k: usize,
    c: usize,
    terminals: &VertexSet,
) -> Result<Option<crate::graph::Separation>, VbpError> {
    let n = g.n() as i64;
    let tr = build_trimmer(g, k, terminals)?;
    let counts: Vec<Weight> = (1..=tr.g_star().n())
        .map(|x| tr.phi_inv(x).len() as Weight)
        .collect();
    let gs = tr
        .g_star()
        .with_vertex_weights(counts)
        .expect("non-empty preimages");
    let ntd = decomp::make_nice(&decomp::decompose(&gs, 12))?;
    let table = sep_dp(&gs, &ntd, c)?;
    let kk = k as i64;
    // Window n/2 - 1 - k <= s <= n/2 + k, doubled to stay integral.
    let lo = ((n - 2 - 2 * kk).max(0) + 1) / 2;
    let hi = ((n + 2 * kk) / 2).min(n);
    for s in lo..=hi {
        let Some(w) = table.root_value(c, s as Weight) else {
            continue;
        };
        let w = w as i64;
        let b = n - w - s;
        if w > kk || (s - b).abs() > kk - w + 1 {
            continue;
        }
        let key = SepKey {
            node: ntd.root,
            s_t: VertexSet::new(),
            p_a: vec![],
            p_b: vec![],
            c,
            ell: s as Weight,
        };
        let sep = table.retrace(&key).expect("finite entry retraces");
        let pulled = pull_back(&tr, &sep);
        if let Ok(done) = rebalance_move(g, &pulled, k) {
            return Ok(Some(done));
        }
    }
    Ok(None)
}

/// All `size`-subsets of `1..=n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = Vec::with_capacity(size);
    fn go(n: usize, size: usize, from: Vertex, cur: &mut Vec<Vertex>, out: &mut Vec<VertexSet>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        for v in from..=n {
            if n - v + 1 < size - cur.len() {
                break;
            }
            cur.push(v);
            go(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    go(n, size, 1, &mut cur, &mut out);
    out
}

/// A balanced separator of at most `k` vertices leaving exactly `c`
/// components, if one exists.
///
/// Every `c`-subset of vertices is tried as a terminal set (in parallel); the
/// lexicographically first terminal set that yields a separator wins, so the
/// output does not depend on scheduling.
pub fn solve_vertex_bisection(
    g: &Graph,
    k: usize,
    c: usize,
) -> Result<Option<crate::graph::Separation>, VbpError> {
    if c < 2 {
        return Err(VbpError::TooFewComponents(c));
    }
    if g.n() < c {
        return Ok(None);
    }
    let unit = g.with_vertex_weights(vec![1; g.n()]).expect("unit weights");
    let sets = combinations(g.n(), c);
    let found = sets
        .par_iter()
        .map(|t| try_terminals(&unit, k, c, t))
        .find_map_first(|r| match r {
            Ok(Some(sep)) => Some(Ok(sep)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
    match found {
        None => Ok(None),
        Some(Ok(sep)) => {
            debug_assert!(sep.validate(g).is_ok());
            debug_assert_eq!(count_components_after_removal(g, &sep.s), c);
            Ok(Some(sep))
        }
        Some(Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_balanced_separator, vset, Separation};

    fn nice(g: &Graph) -> NiceTreeDecomposition {
        decomp::make_nice(&decomp::exact_treewidth_small(g).unwrap().1).unwrap()
    }

    #[test]
    fn encoding_is_canonical() {
        let a = encode(&[(Side::A, 7), (Side::B, 3), (Side::S, 0), (Side::A, 7)]);
        let b = encode(&[(Side::A, 1), (Side::B, 9), (Side::S, 5), (Side::A, 1)]);
        assert_eq!(a, b);
        assert_eq!(
            decode(&a),
            vec![(Side::A, 0), (Side::B, 1), (Side::S, 0), (Side::A, 0)]
        );
    }

    #[test]
    fn p3_root_value() {
        let g = Graph::path(3);
        let t = sep_dp(&g, &nice(&g), 2).unwrap();
        assert_eq!(t.root_value(2, 1), Some(1));
        assert_eq!(t.root_value(1, 3), Some(0));
        assert_eq!(t.root_value(2, 2), Some(1));
        assert_eq!(t.root_value(2, 3), None);
    }

    #[test]
    fn single_vertex_leaf() {
        let g = Graph::empty(1).with_vertex_weights(vec![4]).unwrap();
        let ntd = nice(&g);
        let t = sep_dp(&g, &ntd, 1).unwrap();
        let leaf = ntd
            .nodes
            .iter()
            .position(|x| x.kind == NodeKind::Leaf)
            .unwrap();
        let key = |ell| SepKey {
            node: leaf,
            s_t: VertexSet::new(),
            p_a: vec![vset(&[1])],
            p_b: vec![],
            c: 0,
            ell,
        };
        assert_eq!(t.get(&key(4)), Some(0));
        assert_eq!(t.get(&key(3)), None);
    }

    #[test]
    fn triangle_has_no_small_two_sided_separator() {
        let g = Graph::complete(3);
        let t = sep_dp(&g, &nice(&g), 3).unwrap();
        for (c, l, w) in t.root_entries() {
            if c >= 2 {
                assert!(w >= 2, "c={c} l={l} w={w}");
            }
        }
        assert_eq!(t.root_value(2, 1), None);
    }

    #[test]
    fn weighted_path_separator() {
        let g = Graph::path(3).with_vertex_weights(vec![3, 1, 3]).unwrap();
        let sep = min_weight_separator(&g, 2, 3).unwrap().unwrap();
        assert_eq!(sep.s, vset(&[2]));
        let g = Graph::path(5);
        let sep = min_weight_separator(&g, 2, 2).unwrap().unwrap();
        assert_eq!(sep.s, vset(&[3]));
        let sep = min_weight_separator(&Graph::cycle(6), 2, 2)
            .unwrap()
            .unwrap();
        assert_eq!(sep.s.len(), 2);
        assert!(sep.validate(&Graph::cycle(6)).is_ok());
    }

    #[test]
    fn moves_bfs_leaf() {
        let p6 = Graph::path(6);
        let sep = Separation {
            s: vset(&[3]),
            a: vset(&[1, 2]),
            b: vset(&[4, 5, 6]),
        };
        let out = rebalance_move(&p6, &sep, 2).unwrap();
        assert_eq!(
            out,
            Separation {
                s: vset(&[3, 6]),
                a: vset(&[1, 2]),
                b: vset(&[4, 5])
            }
        );
        assert_eq!(count_components_after_removal(&p6, &out.s), 2);
        let p5 = Graph::path(5);
        let sep = Separation {
            s: vset(&[3]),
            a: vset(&[1, 2]),
            b: vset(&[4, 5]),
        };
        assert_eq!(rebalance_move(&p5, &sep, 1).unwrap(), sep);
        let star = Graph::star(4);
        let sep = Separation {
            s: vset(&[1]),
            a: vset(&[2, 3, 4]),
            b: vset(&[5]),
        };
        assert_eq!(
            rebalance_move(&star, &sep, 3).unwrap_err(),
            VbpError::NoMovableVertex
        );
    }

    #[test]
    fn driver_examples() {
        let c6 = Graph::cycle(6);
        let sep = solve_vertex_bisection(&c6, 2, 2).unwrap().unwrap();
        assert_eq!(sep.s.len(), 2);
        assert!(is_balanced_separator(&c6, &sep));
        assert!(solve_vertex_bisection(&c6, 1, 2).unwrap().is_none());
        let p5 = Graph::path(5);
        let sep = solve_vertex_bisection(&p5, 1, 2).unwrap().unwrap();
        assert_eq!(sep.s, vset(&[3]));
        assert_eq!(
            solve_vertex_bisection(&p5, 1, 1).unwrap_err(),
            VbpError::TooFewComponents(1)
        );
    }
}
