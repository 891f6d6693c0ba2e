//! Exhaustive reference solvers. Every routine refuses inputs past a fixed
//! size guard instead of running for hours.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Bipartition, DPartition, Graph, Separation, Vertex, VertexSet, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} limited to {limit}, got {got}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },
}

fn guard(what: &'static str, limit: usize, got: usize) -> Result<(), OracleError> {
    if got > limit {
        Err(OracleError::TooLarge { what, limit, got })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Bipartition(Bipartition),
    Separation(Separation),
    DPartition(DPartition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when no feasible solution exists.
    pub optimum: Option<Weight>,
    pub witness: Option<Witness>,
    pub explored: u64,
}

fn mask_set(mask: u64, n: usize) -> VertexSet {
    (0..n)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// Weighted adjacency as `(neighbour mask, [(neighbour, weight)])` per vertex.
fn weighted_rows(g: &Graph, edge_weighted: bool) -> Vec<Vec<(usize, Weight)>> {
    g.vertices()
        .map(|v| {
            g.weighted_neighbors(v)
                .iter()
                .map(|&(u, w)| (u - 1, if edge_weighted { w } else { 1 }))
                .collect()
        })
        .collect()
}

fn cut_of(rows: &[Vec<(usize, Weight)>], mask: u64) -> Weight {
    let mut cut = 0;
    for (v, row) in rows.iter().enumerate() {
        if mask >> v & 1 == 1 {
            for &(u, w) in row {
                if mask >> u & 1 == 0 {
                    cut += w;
                }
            }
        }
    }
    cut
}

/// Next integer with the same number of set bits.
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Minimum (edge-weighted if asked) cut over all bisections, `n <= 24`.
pub fn brute_bisection(g: &Graph, edge_weighted: bool) -> Result<OracleResult, OracleError> {
    let n = g.n();
    guard("bisection oracle vertex count", 24, n)?;
    let rows = weighted_rows(g, edge_weighted);
    let half = n / 2;
    let mut best: Option<(Weight, u64)> = None;
    let mut explored = 0u64;
    if half == 0 {
        let p = Bipartition::from_side(g, VertexSet::new());
        return Ok(OracleResult {
            optimum: Some(0),
            witness: Some(Witness::Bipartition(p)),
            explored: 1,
        });
    }
    let mut mask: u64 = (1 << half) - 1;
    while mask < 1 << n {
        explored += 1;
        let cut = cut_of(&rows, mask);
        if best.is_none_or(|(b, _)| cut < b) {
            best = Some((cut, mask));
        }
        mask = next_same_popcount(mask);
    }
    let (cut, mask) = best.expect("at least one subset");
    let p = Bipartition::from_side(g, mask_set(mask, n));
    Ok(OracleResult {
        optimum: Some(cut),
        witness: Some(Witness::Bipartition(p)),
        explored,
    })
}

/// Maximum cut value, `n <= 20`.
pub fn brute_maxcut(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.n();
    guard("max-cut oracle vertex count", 20, n)?;
    let rows = weighted_rows(g, true);
    let mut best = (0, 0u64);
    let mut explored = 0;
    // Vertex 1 stays on the complement side; the cut is symmetric.
    let top = if n == 0 { 1 } else { 1u64 << (n - 1) };
    for half in 0..top {
        let mask = half << 1;
        explored += 1;
        let cut = cut_of(&rows, mask);
        if cut > best.0 {
            best = (cut, mask);
        }
    }
    let p = Bipartition::from_side(g, mask_set(best.1, n));
    Ok(OracleResult {
        optimum: Some(best.0),
        witness: Some(Witness::Bipartition(p)),
        explored,
    })
}

/// Minimum cut over partitions into `d` parts of at most `ceil(n/d)`
/// vertices each, `n <= 12`.
pub fn brute_balanced_partition(g: &Graph, d: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    guard("partition oracle vertex count", 12, n)?;
    assert!(d >= 1, "need at least one part");
    let cap = n.div_ceil(d);
    let rows = weighted_rows(g, true);
    let mut assign = vec![usize::MAX; n];
    let mut sizes = vec![0usize; d];
    let mut best: Option<(Weight, Vec<usize>)> = None;
    let mut explored = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go(
        v: usize,
        used: usize,
        cut: Weight,
        rows: &[Vec<(usize, Weight)>],
        cap: usize,
        assign: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        best: &mut Option<(Weight, Vec<usize>)>,
        explored: &mut u64,
    ) {
        let n = assign.len();
        if v == n {
            *explored += 1;
            if best.as_ref().is_none_or(|(b, _)| cut < *b) {
                *best = Some((cut, assign.clone()));
            }
            return;
        }
        let d = sizes.len();
        for j in 0..(used + 1).min(d) {
            if sizes[j] == cap {
                continue;
            }
            let add: Weight = rows[v]
                .iter()
                .filter(|&&(u, _)| u < v && assign[u] != j)
                .map(|&(_, w)| w)
                .sum();
            assign[v] = j;
            sizes[j] += 1;
            go(
                v + 1,
                used.max(j + 1),
                cut + add,
                rows,
                cap,
                assign,
                sizes,
                best,
                explored,
            );
            sizes[j] -= 1;
            assign[v] = usize::MAX;
        }
    }

    go(
        0,
        0,
        0,
        &rows,
        cap,
        &mut assign,
        &mut sizes,
        &mut best,
        &mut explored,
    );
    let (cut, assign) = best.expect("cap * d >= n guarantees a partition");
    let mut parts = vec![VertexSet::new(); d];
    for (v, &j) in assign.iter().enumerate() {
        parts[j].insert(v + 1);
    }
    Ok(OracleResult {
        optimum: Some(cut),
        witness: Some(Witness::DPartition(DPartition { parts })),
        explored,
    })
}

/// Classes of pairwise twins: true twins first, then false twins among the
/// remaining singletons. Swapping two members of a class is an automorphism.
pub fn twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let closed = |v: Vertex| {
        let mut s: VertexSet = g.neighbors(v).collect();
        s.insert(v);
        s
    };
    let open = |v: Vertex| -> VertexSet { g.neighbors(v).collect() };
    let mut by_closed: BTreeMap<VertexSet, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices() {
        by_closed.entry(closed(v)).or_default().push(v);
    }
    let mut classes = Vec::new();
    let mut by_open: BTreeMap<VertexSet, Vec<Vertex>> = BTreeMap::new();
    for (_, members) in by_closed {
        if members.len() > 1 {
            classes.push(members);
        } else {
            by_open
                .entry(open(members[0]))
                .or_default()
                .push(members[0]);
        }
    }
    classes.extend(by_open.into_values());
    classes.sort();
    classes
}

/// Sizes of balanced sides reachable by grouping `comps`; returns the
/// components that go to `A`, if a split with `||A| - |B|| <= 1` exists.
fn balanced_grouping(sizes: &[usize]) -> Option<Vec<bool>> {
    let total: usize = sizes.iter().sum();
    // reach[i][s]: some subset of the first i components sums to s.
    let mut reach = vec![vec![false; total + 1]; sizes.len() + 1];
    reach[0][0] = true;
    for (i, &sz) in sizes.iter().enumerate() {
        for s in 0..=total {
            if reach[i][s] {
                reach[i + 1][s] = true;
                reach[i + 1][s + sz] = true;
            }
        }
    }
    let target = [total / 2, total.div_ceil(2)]
        .into_iter()
        .find(|&t| reach[sizes.len()][t])?;
    let mut pick = vec![false; sizes.len()];
    let mut s = target;
    for i in (0..sizes.len()).rev() {
        if !reach[i][s] {
            pick[i] = true;
            s -= sizes[i];
        }
    }
    Some(pick)
}

/// Smallest balanced separator with at most `k` vertices, optionally with
/// exactly `c` components left. Candidates are enumerated up to twin
/// symmetry, in order of size; at most two million candidates, `k <= 4`.
pub fn brute_vertex_bisection(
    g: &Graph,
    k: usize,
    c: Option<usize>,
) -> Result<OracleResult, OracleError> {
    guard("vertex-bisection oracle budget", 4, k)?;
    let classes = twin_classes(g);
    // Count multisets of class choices with total size <= k.
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for cl in &classes {
        let mut next = vec![0u64; k + 1];
        for (s, &w) in ways.iter().enumerate() {
            for take in 0..=cl.len().min(k - s) {
                next[s + take] = next[s + take].saturating_add(w);
            }
        }
        ways = next;
    }
    let candidates: u64 = ways.iter().fold(0u64, |a, &b| a.saturating_add(b));
    guard(
        "vertex-bisection oracle candidates",
        2_000_000,
        candidates as usize,
    )?;

    let mut explored = 0u64;
    for size in 0..=k.min(g.n()) {
        let mut take = vec![0usize; classes.len()];
        let mut found = None;
        enumerate_takes(&classes, 0, size, &mut take, &mut |take| {
            explored += 1;
            let s: VertexSet = classes
                .iter()
                .zip(take)
                .flat_map(|(cl, &t)| cl[..t].iter().copied())
                .collect();
            let comps = g.components_without(&s);
            if c.is_some_and(|c| comps.len() != c) {
                return false;
            }
            let sizes: Vec<usize> = comps.iter().map(|x| x.len()).collect();
            if let Some(pick) = balanced_grouping(&sizes) {
                let mut sep = Separation {
                    s,
                    ..Default::default()
                };
                for (comp, to_a) in comps.into_iter().zip(pick) {
                    if to_a {
                        sep.a.extend(comp);
                    } else {
                        sep.b.extend(comp);
                    }
                }
                found = Some(sep);
                return true;
            }
            false
        });
        if let Some(sep) = found {
            return Ok(OracleResult {
                optimum: Some(size as Weight),
                witness: Some(Witness::Separation(sep)),
                explored,
            });
        }
    }
    Ok(OracleResult {
        optimum: None,
        witness: None,
        explored,
    })
}

/// Calls `f` on every way of taking `left` vertices from the classes from
/// `i` on; stops when `f` returns true. Returns whether it stopped.
fn enumerate_takes(
    classes: &[Vec<Vertex>],
    i: usize,
    left: usize,
    take: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if i == classes.len() {
        return left == 0 && f(take);
    }
    let rest: usize = classes[i + 1..].iter().map(|c| c.len()).sum();
    let lo = left.saturating_sub(rest);
    for t in lo..=classes[i].len().min(left) {
        take[i] = t;
        if enumerate_takes(classes, i + 1, left - t, take, f) {
            return true;
        }
    }
    take[i] = 0;
    false
}

/// For every `(c, ℓ)`: the minimum `λ(S)` over separations `{S, A, B}` with
/// exactly `c` components in `G - S` and `λ(A) = ℓ`, by enumerating every
/// `S` and every grouping of the remaining components. `n <= 12`.
pub fn brute_separator_weights(
    g: &Graph,
    c_max: usize,
) -> Result<BTreeMap<(usize, Weight), Weight>, OracleError> {
    let n = g.n();
    guard("separator table oracle vertex count", 12, n)?;
    let mut best: BTreeMap<(usize, Weight), Weight> = BTreeMap::new();
    for mask in 0u64..1 << n {
        let s = mask_set(mask, n);
        let ws = g.weight_of(&s);
        let comps = g.components_without(&s);
        if comps.len() > c_max {
            continue;
        }
        let cw: Vec<Weight> = comps.iter().map(|c| g.weight_of(c)).collect();
        for pick in 0u64..1 << comps.len() {
            let l: Weight = (0..comps.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| cw[i])
                .sum();
            let e = best.entry((comps.len(), l)).or_insert(Weight::MAX);
            *e = (*e).min(ws);
        }
    }
    Ok(best)
}
