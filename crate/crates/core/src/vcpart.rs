//! Balanced d-partition through a small vertex cover: every way of splitting
//! the cover is tried, and the remaining independent vertices are placed by
//! a capacitated min-cost assignment.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{cut_size, DPartition, Graph, Vertex, VertexSet, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcError {
    #[error("capacities {capacity} cannot hold {items} items")]
    Infeasible { items: usize, capacity: usize },
    #[error("number of parts must be at least 1")]
    NoParts,
    #[error("cost matrix row {0} has the wrong length")]
    RaggedCosts(usize),
    #[error("set is not a vertex cover")]
    NotACover,
}

/// A split of the cover into groups, padded with empty groups up to `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPartition {
    /// Non-empty groups, ordered by smallest member.
    pub groups: Vec<VertexSet>,
    /// Remaining room per part, one entry for each of the `d` parts.
    pub capacities: Vec<usize>,
}

/// `costs[v][j]` is the price of putting item `v` into group `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentProblem {
    pub costs: Vec<Vec<Weight>>,
    pub capacities: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Group index per item.
    pub group_of: Vec<usize>,
    pub cost: Weight,
}

/// A minimum vertex cover if one of size at most `tau_max` exists.
pub fn min_vertex_cover(g: &Graph, tau_max: usize) -> Option<VertexSet> {
    fn branch(g: &Graph, k: usize, chosen: &mut Vec<bool>) -> bool {
        let open = g
            .edges()
            .into_iter()
            .find(|&(u, v, _)| !chosen[u] && !chosen[v]);
        let Some((u, v, _)) = open else { return true };
        if k == 0 {
            return false;
        }
        for x in [u, v] {
            chosen[x] = true;
            if branch(g, k - 1, chosen) {
                return true;
            }
            chosen[x] = false;
        }
        false
    }
    (0..=tau_max.min(g.n())).find_map(|k| {
        let mut chosen = vec![false; g.n() + 1];
        branch(g, k, &mut chosen).then(|| g.vertices().filter(|&v| chosen[v]).collect())
    })
}

/// Every set partition of `c` into at most `min(d, |c|)` groups of size at
/// most `ceil(n/d)`, each emitted once.
pub fn enumerate_cover_partitions(c: &VertexSet, d: usize, n: usize) -> Vec<CoverPartition> {
    if d == 0 {
        return Vec::new();
    }
    let cap = n.div_ceil(d);
    let members: Vec<Vertex> = c.iter().copied().collect();
    let limit = d.min(members.len());
    let mut out = Vec::new();
    let mut groups: Vec<VertexSet> = Vec::new();

    fn go(
        i: usize,
        members: &[Vertex],
        limit: usize,
        cap: usize,
        d: usize,
        groups: &mut Vec<VertexSet>,
        out: &mut Vec<CoverPartition>,
    ) {
        if i == members.len() {
            let mut capacities: Vec<usize> = groups.iter().map(|g| cap - g.len()).collect();
            capacities.resize(d, cap);
            out.push(CoverPartition {
                groups: groups.clone(),
                capacities,
            });
            return;
        }
        for j in 0..groups.len() {
            if groups[j].len() < cap {
                groups[j].insert(members[i]);
                go(i + 1, members, limit, cap, d, groups, out);
                groups[j].remove(&members[i]);
            }
        }
        if groups.len() < limit && cap >= 1 {
            groups.push(VertexSet::from([members[i]]));
            go(i + 1, members, limit, cap, d, groups, out);
            groups.pop();
        }
    }
    go(0, &members, limit, cap, d, &mut groups, &mut out);
    out
}

/// Minimum-cost assignment of every item to a group within capacities, by
/// successive shortest augmenting paths (Bellman-Ford on the residual graph).
pub fn min_cost_assignment(p: &AssignmentProblem) -> Result<Assignment, VcError> {
    let items = p.costs.len();
    let groups = p.capacities.len();
    if let Some(i) = p.costs.iter().position(|r| r.len() != groups) {
        return Err(VcError::RaggedCosts(i));
    }
    let capacity: usize = p.capacities.iter().sum();
    if capacity < items {
        return Err(VcError::Infeasible { items, capacity });
    }
    // Nodes: source, items, groups, sink.
    let (src, sink) = (0, items + groups + 1);
    let mut net = Network::new(sink + 1);
    for v in 0..items {
        net.add(src, 1 + v, 1, 0);
        for j in 0..groups {
            net.add(1 + v, 1 + items + j, 1, p.costs[v][j] as i64);
        }
    }
    for (j, &s) in p.capacities.iter().enumerate() {
        net.add(1 + items + j, sink, s, 0);
    }
    let mut cost = 0i64;
    for _ in 0..items {
        cost += net.augment(src, sink).expect("capacity suffices");
    }
    let mut group_of = vec![0; items];
    for (v, slot) in group_of.iter_mut().enumerate() {
        *slot = net.adj[1 + v]
            .iter()
            .map(|&e| &net.edges[e])
            .find(|e| e.to > items && e.to <= items + groups && e.cap == 0)
            .map(|e| e.to - 1 - items)
            .expect("item is matched");
    }
    Ok(Assignment {
        group_of,
        cost: cost as Weight,
    })
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: usize,
    cost: i64,
}

struct Network {
    edges: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: usize, cost: i64) {
        self.adj[u].push(self.edges.len());
        self.edges.push(Arc { to: v, cap, cost });
        self.adj[v].push(self.edges.len());
        self.edges.push(Arc {
            to: u,
            cap: 0,
            cost: -cost,
        });
    }

    /// Pushes one unit along a cheapest path; returns its cost.
    fn augment(&mut self, s: usize, t: usize) -> Option<i64> {
        let n = self.adj.len();
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        dist[s] = 0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                if dist[u] == i64::MAX {
                    continue;
                }
                for &e in &self.adj[u] {
                    let a = &self.edges[e];
                    if a.cap > 0 && dist[u] + a.cost < dist[a.to] {
                        dist[a.to] = dist[u] + a.cost;
                        via[a.to] = e;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[t] == i64::MAX {
            return None;
        }
        let mut x = t;
        while x != s {
            let e = via[x];
            self.edges[e].cap -= 1;
            self.edges[e ^ 1].cap += 1;
            x = self.edges[e ^ 1].to;
        }
        Some(dist[t])
    }
}

/// Best completion of one cover partition: `(cut, parts)`.
fn complete(g: &Graph, cover: &VertexSet, cp: &CoverPartition) -> Option<(Weight, Vec<VertexSet>)> {
    let d = cp.capacities.len();
    let mut group = vec![usize::MAX; g.n() + 1];
    for (j, grp) in cp.groups.iter().enumerate() {
        for &v in grp {
            group[v] = j;
        }
    }
    let internal: Weight = g
        .edges()
        .iter()
        .filter(|&&(u, v, _)| cover.contains(&u) && cover.contains(&v) && group[u] != group[v])
        .map(|e| e.2)
        .sum();
    let items: Vec<Vertex> = g.vertices().filter(|v| !cover.contains(v)).collect();
    let costs = items
        .iter()
        .map(|&v| {
            let total: Weight = g.weighted_neighbors(v).iter().map(|e| e.1).sum();
            (0..d)
                .map(|j| {
                    total
                        - g.weighted_neighbors(v)
                            .iter()
                            .filter(|e| group[e.0] == j)
                            .map(|e| e.1)
                            .sum::<Weight>()
                })
                .collect()
        })
        .collect();
    let a = min_cost_assignment(&AssignmentProblem {
        costs,
        capacities: cp.capacities.clone(),
    })
    .ok()?;
    let mut parts: Vec<VertexSet> = cp.groups.clone();
    parts.resize(d, VertexSet::new());
    for (i, &j) in a.group_of.iter().enumerate() {
        parts[j].insert(items[i]);
    }
    Some((internal + a.cost, parts))
}

/// Minimum-cut balanced partition into `d` parts using the cover `cover`.
pub fn solve_balanced_partition_with_cover(
    g: &Graph,
    d: usize,
    cover: &VertexSet,
) -> Result<(DPartition, Weight), VcError> {
    if d == 0 {
        return Err(VcError::NoParts);
    }
    if g.edges()
        .iter()
        .any(|&(u, v, _)| !cover.contains(&u) && !cover.contains(&v))
    {
        return Err(VcError::NotACover);
    }
    let candidates = enumerate_cover_partitions(cover, d, g.n());
    let best = candidates
        .par_iter()
        .enumerate()
        .filter_map(|(i, cp)| complete(g, cover, cp).map(|(w, parts)| (w, i, parts)))
        .min_by_key(|x| (x.0, x.1));
    let (cut, _, parts) = best.ok_or(VcError::Infeasible {
        items: g.n(),
        capacity: g.n().div_ceil(d) * d,
    })?;
    let p = DPartition { parts };
    debug_assert_eq!(cut_size(g, &p).ok(), Some(cut));
    Ok((p, cut))
}

/// Minimum-cut balanced partition into `d` parts, computing a minimum vertex
/// cover first.
pub fn solve_balanced_partition_vc(g: &Graph, d: usize) -> Result<(DPartition, Weight), VcError> {
    let cover = min_vertex_cover(g, g.n()).expect("the whole vertex set is a cover");
    solve_balanced_partition_with_cover(g, d, &cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;
    use crate::oracle::brute_balanced_partition;

    #[test]
    fn covers_of_small_graphs() {
        assert_eq!(min_vertex_cover(&Graph::path(3), 3), Some(vset(&[2])));
        assert_eq!(min_vertex_cover(&Graph::cycle(4), 4).unwrap().len(), 2);
        assert_eq!(min_vertex_cover(&Graph::complete(4), 4).unwrap().len(), 3);
        assert_eq!(min_vertex_cover(&Graph::complete(4), 2), None);
    }

    #[test]
    fn partitions_follow_bell_numbers() {
        assert_eq!(enumerate_cover_partitions(&vset(&[1, 2]), 2, 4).len(), 2);
        assert_eq!(enumerate_cover_partitions(&vset(&[1, 2, 3]), 3, 9).len(), 5);
        assert_eq!(enumerate_cover_partitions(&vset(&[1, 2]), 1, 4).len(), 1);
        assert_eq!(
            enumerate_cover_partitions(&vset(&[1, 2, 3, 4]), 2, 6).len(),
            4 + 3
        );
        for cp in enumerate_cover_partitions(&vset(&[1, 2, 3, 4]), 3, 6) {
            assert!(cp.groups.iter().all(|g| g.len() <= 2));
            assert_eq!(cp.capacities.len(), 3);
        }
    }

    #[test]
    fn assignment_examples() {
        let one = AssignmentProblem {
            costs: vec![vec![0, 5]],
            capacities: vec![1, 1],
        };
        assert_eq!(
            min_cost_assignment(&one).unwrap(),
            Assignment {
                group_of: vec![0],
                cost: 0
            }
        );
        let two = AssignmentProblem {
            costs: vec![vec![1, 2], vec![1, 2]],
            capacities: vec![1, 1],
        };
        assert_eq!(min_cost_assignment(&two).unwrap().cost, 3);
        let xy = AssignmentProblem {
            costs: vec![vec![0, 9], vec![0, 1]],
            capacities: vec![1, 1],
        };
        assert_eq!(
            min_cost_assignment(&xy).unwrap(),
            Assignment {
                group_of: vec![0, 1],
                cost: 1
            }
        );
        let bad = AssignmentProblem {
            costs: vec![vec![0], vec![0]],
            capacities: vec![1],
        };
        assert!(matches!(
            min_cost_assignment(&bad),
            Err(VcError::Infeasible { .. })
        ));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(
            solve_balanced_partition_vc(&Graph::star(3), 2).unwrap().1,
            2
        );
        assert_eq!(
            solve_balanced_partition_vc(&Graph::cycle(4), 2).unwrap().1,
            2
        );
        assert_eq!(
            solve_balanced_partition_vc(&Graph::path(3), 3).unwrap().1,
            2
        );
    }

    #[test]
    fn agrees_with_oracle_on_small_graphs() {
        let graphs = [
            Graph::complete(5),
            Graph::cycle(7),
            Graph::star(6),
            Graph::path(8),
        ];
        for g in &graphs {
            for d in 1..=4 {
                let (p, cut) = solve_balanced_partition_vc(g, d).unwrap();
                assert!(p.is_balanced(g));
                assert_eq!(cut_size(g, &p).unwrap(), cut);
                assert_eq!(Some(cut), brute_balanced_partition(g, d).unwrap().optimum);
            }
        }
    }
}
