//! Tree decompositions, their nice form, and an exact treewidth routine for
//! small graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("bag {node} references vertex {vertex}, graph has {n} vertices")]
    UnknownVertex {
        node: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("tree edge references missing node {0}")]
    UnknownNode(usize),
    #[error("decomposition has no bags")]
    Empty,
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("bags containing vertex {0} do not form a subtree")]
    Disconnected(Vertex),
    #[error("graph has {0} vertices; exact treewidth is limited to 15, supply a .td file instead")]
    TooLarge(usize),
}

/// A tree decomposition. Nodes are `0..bags.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition {
            bags,
            edges,
            root: 0,
        }
    }

    /// Largest bag size minus one (`0` for an edgeless decomposition of an
    /// empty bag).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    fn adjacency(&self) -> Result<Vec<Vec<usize>>, DecompError> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.edges {
            if x >= self.bags.len() {
                return Err(DecompError::UnknownNode(x));
            }
            if y >= self.bags.len() {
                return Err(DecompError::UnknownNode(y));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(adj)
    }

    /// Checks the tree shape and the running-intersection property, which
    /// together do not depend on the graph.
    fn check_structure(&self) -> Result<Vec<Vec<usize>>, DecompError> {
        if self.bags.is_empty() {
            return Err(DecompError::Empty);
        }
        if self.root >= self.bags.len() {
            return Err(DecompError::UnknownNode(self.root));
        }
        let adj = self.adjacency()?;
        if self.edges.len() + 1 != self.bags.len()
            || reach(&adj, 0, |_| true).len() != self.bags.len()
        {
            return Err(DecompError::NotATree);
        }
        let vertices: BTreeSet<Vertex> = self.bags.iter().flatten().copied().collect();
        for &v in &vertices {
            let holders: Vec<usize> = (0..self.bags.len())
                .filter(|&x| self.bags[x].contains(&v))
                .collect();
            if reach(&adj, holders[0], |x| self.bags[x].contains(&v)).len() != holders.len() {
                return Err(DecompError::Disconnected(v));
            }
        }
        Ok(adj)
    }
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut out = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

/// True iff `td` is a tree decomposition of `g`: a tree whose bags cover
/// every vertex and edge, with connected occurrence sets.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<bool, DecompError> {
    for (node, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| !g.contains_vertex(v)) {
            return Err(DecompError::UnknownVertex {
                node,
                vertex: v,
                n: g.n(),
            });
        }
    }
    for &(x, y) in &td.edges {
        if x >= td.bags.len() || y >= td.bags.len() {
            return Err(DecompError::UnknownNode(x.max(y)));
        }
    }
    match td.check_structure() {
        Ok(_) => {}
        Err(DecompError::Empty | DecompError::NotATree | DecompError::Disconnected(_)) => {
            return Ok(false)
        }
        Err(e) => return Err(e),
    }
    let covered: BTreeSet<Vertex> = td.bags.iter().flatten().copied().collect();
    if covered.len() != g.n() {
        return Ok(false);
    }
    for (u, v, _) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted bag contents.
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// Rooted binary decomposition. Children always precede their parent in
/// `nodes`, so a forward scan is a valid bottom-up order. The root bag is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Plain tree decomposition with the same bags and tree.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self
            .nodes
            .iter()
            .map(|x| x.bag.iter().copied().collect())
            .collect();
        let mut edges = Vec::new();
        for (i, x) in self.nodes.iter().enumerate() {
            for &c in &x.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition {
            bags,
            edges,
            root: self.root,
        }
    }

    /// Checks the local shape rules of every node kind.
    pub fn check_nice(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, x)| {
            let kids: Vec<&NiceNode> = x.children.iter().map(|&c| &self.nodes[c]).collect();
            if x.children.iter().any(|&c| c >= i) {
                return false;
            }
            match x.kind {
                NodeKind::Leaf => kids.is_empty() && x.bag.len() <= 1,
                NodeKind::Join => kids.len() == 2 && kids.iter().all(|k| k.bag == x.bag),
                NodeKind::Introduce(v) => {
                    kids.len() == 1 && x.bag.contains(&v) && {
                        let mut b = kids[0].bag.clone();
                        b.push(v);
                        b.sort_unstable();
                        b == x.bag
                    }
                }
                NodeKind::Forget(v) => {
                    kids.len() == 1 && kids[0].bag.contains(&v) && {
                        let mut b = x.bag.clone();
                        b.push(v);
                        b.sort_unstable();
                        b == kids[0].bag
                    }
                }
            }
        }) && self.nodes[self.root].bag.is_empty()
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, bag: &VertexSet, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            bag: bag.iter().copied().collect(),
            kind,
            children,
        });
        self.nodes.len() - 1
    }

    /// Forget down to `bag ∩ target`, then introduce up to `target`.
    fn transition(&mut self, mut node: usize, from: &VertexSet, target: &VertexSet) -> usize {
        let mut cur = from.clone();
        for &v in from.difference(target) {
            cur.remove(&v);
            node = self.push(&cur, NodeKind::Forget(v), vec![node]);
        }
        for &v in target.difference(from) {
            cur.insert(v);
            node = self.push(&cur, NodeKind::Introduce(v), vec![node]);
        }
        node
    }

    fn join(&mut self, a: usize, b: usize, bag: &VertexSet) -> usize {
        self.push(bag, NodeKind::Join, vec![a, b])
    }
}

/// Converts a tree decomposition to nice form with the same width.
///
/// Adjacent bags where one contains the other are merged first; children are
/// forgotten down to their intersection with the parent and branches with
/// related intersections are joined before introducing the rest. The root bag
/// is emptied by a final forget chain.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition, DecompError> {
    let adj = td.check_structure()?;
    let (bags, children, root) = contract(td, &adj);

    let mut b = NiceBuilder { nodes: Vec::new() };
    // Post-order without recursion.
    let mut order = Vec::new();
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend(children[x].iter().copied());
    }
    let mut built = vec![usize::MAX; bags.len()];
    for &x in order.iter().rev() {
        let bag = &bags[x];
        let node = if children[x].is_empty() {
            let mut cur = VertexSet::new();
            let first = bag.iter().next().copied();
            if let Some(v) = first {
                cur.insert(v);
            }
            let leaf = b.push(&cur, NodeKind::Leaf, vec![]);
            b.transition(leaf, &cur, bag)
        } else {
            // Each child forgotten down to its intersection with this bag.
            let mut branches: Vec<(VertexSet, usize)> = children[x]
                .iter()
                .map(|&c| {
                    let inter: VertexSet = bags[c].intersection(bag).copied().collect();
                    (inter.clone(), b.transition(built[c], &bags[c], &inter))
                })
                .collect();
            branches.sort_by(|p, q| q.0.len().cmp(&p.0.len()).then_with(|| p.0.cmp(&q.0)));
            let (mut acc_bag, mut acc) = branches[0].clone();
            for (inter, node) in branches.into_iter().skip(1) {
                let target: VertexSet = acc_bag.union(&inter).copied().collect();
                let left = b.transition(acc, &acc_bag, &target);
                let right = b.transition(node, &inter, &target);
                acc = b.join(left, right, &target);
                acc_bag = target;
            }
            b.transition(acc, &acc_bag, bag)
        };
        built[x] = node;
    }
    let top = b.transition(built[root], &bags[root], &VertexSet::new());
    Ok(NiceTreeDecomposition {
        nodes: b.nodes,
        root: top,
    })
}

/// Merges tree edges whose bags are nested. Returns bags, rooted children
/// lists on the surviving nodes, and the new root.
fn contract(
    td: &TreeDecomposition,
    adj: &[Vec<usize>],
) -> (Vec<VertexSet>, Vec<Vec<usize>>, usize) {
    let n = td.bags.len();
    let mut nbrs: Vec<BTreeSet<usize>> = adj.iter().map(|l| l.iter().copied().collect()).collect();
    let mut bags = td.bags.clone();
    let mut alive = vec![true; n];
    let mut root = td.root;
    loop {
        let mut merged = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let found = nbrs[x]
                .iter()
                .copied()
                .find(|&y| bags[x].is_subset(&bags[y]));
            if let Some(y) = found {
                // Absorb x into y.
                let xs: Vec<usize> = nbrs[x].iter().copied().filter(|&z| z != y).collect();
                for z in xs {
                    nbrs[z].remove(&x);
                    nbrs[z].insert(y);
                    nbrs[y].insert(z);
                }
                nbrs[y].remove(&x);
                nbrs[x].clear();
                alive[x] = false;
                if root == x {
                    root = y;
                }
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &nbrs[x] {
            if !seen[y] {
                seen[y] = true;
                children[x].push(y);
                queue.push_back(y);
            }
        }
    }
    for (x, bag) in bags.iter_mut().enumerate() {
        if !alive[x] {
            bag.clear();
        }
    }
    (bags, children, root)
}

/// Exact treewidth and an optimal decomposition, by dynamic programming over
/// eliminated vertex subsets. Limited to 15 vertices.
pub fn exact_treewidth_small(g: &Graph) -> Result<(usize, TreeDecomposition), DecompError> {
    let n = g.n();
    if n > 15 {
        return Err(DecompError::TooLarge(n));
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::new(vec![VertexSet::new()], vec![])));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v + 1).fold(0u32, |m, u| m | (1 << (u - 1))))
        .collect();
    // q(s, v): vertices outside s ∪ {v} reachable from v through s.
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[x];
            }
            next &= !seen;
            seen |= next;
            out |= next & !s;
            frontier = next & s;
        }
        out
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    let mut pick = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = tw[prev as usize].max(q(prev, v).count_ones() as u8);
            if cost < tw[s as usize] {
                tw[s as usize] = cost;
                pick[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = pick[s as usize] as usize;
        order.push(v + 1);
        s &= !(1 << v);
    }
    order.reverse();
    let td = elimination_decomposition(g, &order);
    Ok((tw[full as usize] as usize, td))
}

/// Decomposition from an elimination ordering: one bag per vertex holding the
/// vertex and its later neighbours in the filled graph.
pub fn elimination_decomposition(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut fill: Vec<BTreeSet<Vertex>> = (0..=n)
        .map(|v| {
            if v == 0 {
                BTreeSet::new()
            } else {
                g.neighbors(v).collect()
            }
        })
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = fill[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                fill[x].insert(y);
                fill[y].insert(x);
            }
        }
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            parent[i] = pos[p];
        }
        let mut bag: VertexSet = later.into_iter().collect();
        bag.insert(v);
        bags.push(bag);
    }
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i] == usize::MAX).collect();
    let mut edges: Vec<(usize, usize)> = (0..n)
        .filter(|&i| parent[i] != usize::MAX)
        .map(|i| (i, parent[i]))
        .collect();
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition {
        bags,
        edges,
        root: *roots.last().expect("n > 0"),
    }
}

/// Greedy minimum-degree elimination ordering; ties go to the smallest
/// vertex.
pub fn min_degree_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut nb: Vec<BTreeSet<Vertex>> = (0..=n)
        .map(|v| {
            if v == 0 {
                BTreeSet::new()
            } else {
                g.neighbors(v).collect()
            }
        })
        .collect();
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = alive.iter().min_by_key(|&&v| (nb[v].len(), v)) {
        alive.remove(&v);
        let later: Vec<Vertex> = nb[v].iter().copied().collect();
        for &x in &later {
            nb[x].remove(&v);
        }
        for (i, &x) in later.iter().enumerate() {
            for &y in &later[i + 1..] {
                nb[x].insert(y);
                nb[y].insert(x);
            }
        }
        order.push(v);
    }
    order
}

/// An optimal decomposition for graphs with at most `exact_limit` vertices,
/// otherwise one from a minimum-degree ordering.
pub fn decompose(g: &Graph, exact_limit: usize) -> TreeDecomposition {
    if g.n() <= exact_limit.min(15) {
        if let Ok((_, td)) = exact_treewidth_small(g) {
            return td;
        }
    }
    if g.n() == 0 {
        return TreeDecomposition::new(vec![VertexSet::new()], vec![]);
    }
    elimination_decomposition(g, &min_degree_order(g))
}

/// Bags keyed by node id, used by the td file writer.
pub fn bag_map(td: &TreeDecomposition) -> BTreeMap<usize, &VertexSet> {
    td.bags.iter().enumerate().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn sample_graphs() -> Vec<Graph> {
        vec![
            Graph::path(5),
            Graph::cycle(6),
            Graph::complete(4),
            Graph::star(4),
            Graph::from_edges(6, &[(1, 2), (2, 3), (3, 1), (4, 5)]).unwrap(),
            Graph::empty(3),
        ]
    }

    #[test]
    fn validate_small_examples() {
        let p3 = Graph::path(3);
        let td = TreeDecomposition::new(vec![vset(&[1, 2]), vset(&[2, 3])], vec![(0, 1)]);
        assert!(validate_td(&p3, &td).unwrap());
        assert_eq!(td.width(), 1);
        let k3 = Graph::complete(3);
        let td = TreeDecomposition::new(vec![vset(&[1, 2, 3])], vec![]);
        assert!(validate_td(&k3, &td).unwrap());
        assert_eq!(td.width(), 2);
        let td = TreeDecomposition::new(vec![vset(&[1, 2]), vset(&[3])], vec![(0, 1)]);
        assert!(!validate_td(&p3, &td).unwrap());
        let td = TreeDecomposition::new(vec![vset(&[1, 9])], vec![]);
        assert!(matches!(
            validate_td(&p3, &td),
            Err(DecompError::UnknownVertex { vertex: 9, .. })
        ));
    }

    #[test]
    fn rejects_broken_running_intersection() {
        let p3 = Graph::path(3);
        let td = TreeDecomposition::new(
            vec![vset(&[1, 2]), vset(&[2, 3]), vset(&[1])],
            vec![(0, 1), (1, 2)],
        );
        assert!(!validate_td(&p3, &td).unwrap());
        assert!(matches!(make_nice(&td), Err(DecompError::Disconnected(1))));
    }

    #[test]
    fn nice_single_bag() {
        let td = TreeDecomposition::new(vec![vset(&[1, 2, 3])], vec![]);
        let nice = make_nice(&td).unwrap();
        assert!(nice.check_nice());
        assert_eq!(nice.width(), 2);
        let kinds: Vec<NodeKind> = nice.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(
            &kinds[..3],
            &[
                NodeKind::Leaf,
                NodeKind::Introduce(2),
                NodeKind::Introduce(3)
            ]
        );
    }

    #[test]
    fn nice_path_of_bags() {
        let p4 = Graph::path(4);
        let td = TreeDecomposition::new(
            vec![vset(&[1, 2]), vset(&[2, 3]), vset(&[3, 4])],
            vec![(0, 1), (1, 2)],
        );
        let nice = make_nice(&td).unwrap();
        assert!(nice.check_nice());
        assert!(validate_td(&p4, &nice.to_td()).unwrap());
        assert_eq!(nice.width(), 1);
        assert!(nice
            .nodes
            .iter()
            .any(|x| matches!(x.kind, NodeKind::Forget(_))));
    }

    #[test]
    fn exact_treewidth_examples() {
        assert_eq!(exact_treewidth_small(&Graph::star(4)).unwrap().0, 1);
        assert_eq!(exact_treewidth_small(&Graph::path(5)).unwrap().0, 1);
        assert_eq!(exact_treewidth_small(&Graph::cycle(6)).unwrap().0, 2);
        assert_eq!(exact_treewidth_small(&Graph::complete(4)).unwrap().0, 3);
        assert!(matches!(
            exact_treewidth_small(&Graph::empty(16)),
            Err(DecompError::TooLarge(16))
        ));
    }

    #[test]
    fn exact_decompositions_are_valid_and_tight() {
        for g in sample_graphs() {
            let (w, td) = exact_treewidth_small(&g).unwrap();
            assert!(validate_td(&g, &td).unwrap());
            assert_eq!(td.width(), w);
            let nice = make_nice(&td).unwrap();
            assert!(nice.check_nice());
            assert!(validate_td(&g, &nice.to_td()).unwrap());
            assert_eq!(nice.width(), w);
            assert!(nice.len() <= 4 * g.n().max(1));
        }
    }

    #[test]
    fn c6_nice_fits_node_bound() {
        let (_, td) = exact_treewidth_small(&Graph::cycle(6)).unwrap();
        let nice = make_nice(&td).unwrap();
        assert_eq!(nice.width(), 2);
        assert!(nice.len() <= 24);
    }
}
