//! Instance generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use bisectkit::graph::{Graph, GraphBuilder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Small graph as adjacency bitmasks, vertex `i` is bit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl Bits {
    pub fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    b.add_edge(u + 1, v + 1).expect("in range");
                }
            }
        }
        b.build()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    fn extended(&self, nbrs: u32) -> Bits {
        let mut adj = self.adj.clone();
        for (u, row) in adj.iter_mut().enumerate() {
            if nbrs >> u & 1 == 1 {
                *row |= 1 << self.n;
            }
        }
        adj.push(nbrs);
        Bits { n: self.n + 1, adj }
    }
}

fn mix(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    x ^ x >> 33
}

/// Colour refinement started from degrees. Colours are comparable across
/// graphs because they are computed from values only.
fn refined_colours(g: &Bits) -> Vec<u64> {
    let mut col: Vec<u64> = g.adj.iter().map(|a| a.count_ones() as u64).collect();
    for _ in 0..g.n.min(4) {
        col = (0..g.n)
            .map(|v| {
                let mut nb: Vec<u64> = (0..g.n)
                    .filter(|&u| g.adj[v] >> u & 1 == 1)
                    .map(|u| col[u])
                    .collect();
                nb.sort_unstable();
                nb.iter().fold(mix(col[v] + 0x9e37), |h, &c| {
                    mix(h ^ c.wrapping_add(0x1234_5678))
                })
            })
            .collect();
    }
    col
}

fn isomorphic(a: &Bits, ca: &[u64], b: &Bits, cb: &[u64]) -> bool {
    fn go(
        a: &Bits,
        ca: &[u64],
        b: &Bits,
        cb: &[u64],
        v: usize,
        f: &mut Vec<usize>,
        used: u32,
    ) -> bool {
        if v == a.n {
            return true;
        }
        for w in 0..b.n {
            if used >> w & 1 == 1 || ca[v] != cb[w] {
                continue;
            }
            let ok = (0..v).all(|u| (a.adj[u] >> v & 1) == (b.adj[f[u]] >> w & 1));
            if ok {
                f.push(w);
                if go(a, ca, b, cb, v + 1, f, used | 1 << w) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    let mut sa = ca.to_vec();
    let mut sb = cb.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    sa == sb && go(a, ca, b, cb, 0, &mut Vec::new(), 0)
}

/// Keeps one representative per isomorphism class, in first-seen order.
fn dedupe(candidates: impl IntoIterator<Item = Bits>) -> Vec<Bits> {
    let mut buckets: HashMap<Vec<u64>, Vec<(usize, Vec<u64>)>> = HashMap::new();
    let mut out: Vec<Bits> = Vec::new();
    for g in candidates {
        let col = refined_colours(&g);
        let mut key = col.clone();
        key.sort_unstable();
        key.push(g.adj.iter().map(|a| a.count_ones() as u64).sum());
        let bucket = buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|(i, c)| isomorphic(&out[*i], c, &g, &col))
        {
            continue;
        }
        bucket.push((out.len(), col));
        out.push(g);
    }
    out
}

/// All graphs on `0..=n_max` vertices up to isomorphism, indexed by order.
pub fn graph_classes(n_max: usize) -> Vec<Vec<Bits>> {
    let mut by_n = vec![vec![Bits { n: 0, adj: vec![] }]];
    for n in 1..=n_max {
        let prev = &by_n[n - 1];
        let next = dedupe(
            prev.iter()
                .flat_map(|g| (0..1u32 << (n - 1)).map(move |m| g.extended(m))),
        );
        by_n.push(next);
    }
    by_n
}

/// All trees on `1..=n_max` vertices up to isomorphism, indexed by order
/// (index 0 is empty).
pub fn tree_classes(n_max: usize) -> Vec<Vec<Bits>> {
    let mut by_n = vec![vec![], vec![Bits { n: 1, adj: vec![0] }]];
    for n in 2..=n_max {
        let prev = &by_n[n - 1];
        let next = dedupe(
            prev.iter()
                .flat_map(|g| (0..n - 1).map(move |v| g.extended(1 << v))),
        );
        by_n.push(next);
    }
    by_n
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    b.build()
}

/// Random subgraph of a random `k`-tree; treewidth at most `k`.
pub fn random_partial_ktree(rng: &mut ChaCha8Rng, n: usize, k: usize, keep: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    let base = (k + 1).min(n);
    let mut cliques: Vec<Vec<usize>> = vec![(1..=base).collect()];
    let mut edges = Vec::new();
    for u in 1..=base {
        for v in u + 1..=base {
            edges.push((u, v));
        }
    }
    for v in base + 1..=n {
        let host = cliques[rng.gen_range(0..cliques.len())].clone();
        let drop = rng.gen_range(0..host.len());
        let attach: Vec<usize> = if host.len() > k {
            host.iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &u)| u)
                .collect()
        } else {
            host.clone()
        };
        for &u in &attach {
            edges.push((u, v));
        }
        let mut c = attach;
        c.push(v);
        cliques.push(c);
    }
    for (u, v) in edges {
        if rng.gen_bool(keep) {
            b.add_edge(u, v).expect("in range");
        }
    }
    b.build()
}
