//! Labelled-graph expressions built from vertex creation, label joins,
//! relabelling and disjoint union.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QExprError {
    #[error("label {label} out of range 1..={q}")]
    LabelOutOfRange { label: usize, q: usize },
    #[error("labels must differ, got {0} twice")]
    SameLabel(usize),
    #[error("graph is not a forest")]
    NotAForest,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QNode {
    Create(usize),
    Join(usize, usize, Box<QNode>),
    Rename(usize, usize, Box<QNode>),
    Union(Box<QNode>, Box<QNode>),
}

impl QNode {
    pub fn create(i: usize) -> QNode {
        QNode::Create(i)
    }

    pub fn join(i: usize, j: usize, child: QNode) -> QNode {
        QNode::Join(i, j, Box::new(child))
    }

    pub fn rename(from: usize, to: usize, child: QNode) -> QNode {
        QNode::Rename(from, to, Box::new(child))
    }

    pub fn union(l: QNode, r: QNode) -> QNode {
        QNode::Union(Box::new(l), Box::new(r))
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        match self {
            QNode::Create(_) => 1,
            QNode::Join(_, _, c) | QNode::Rename(_, _, c) => 1 + c.size(),
            QNode::Union(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of created vertices.
    pub fn vertex_count(&self) -> usize {
        match self {
            QNode::Create(_) => 1,
            QNode::Join(_, _, c) | QNode::Rename(_, _, c) => c.vertex_count(),
            QNode::Union(l, r) => l.vertex_count() + r.vertex_count(),
        }
    }

    fn max_label(&self) -> usize {
        match self {
            QNode::Create(i) => *i,
            QNode::Join(i, j, c) | QNode::Rename(i, j, c) => (*i).max(*j).max(c.max_label()),
            QNode::Union(l, r) => l.max_label().max(r.max_label()),
        }
    }

    /// Set of labels carried by the value.
    pub fn labels(&self) -> BTreeSet<usize> {
        match self {
            QNode::Create(i) => BTreeSet::from([*i]),
            QNode::Join(_, _, c) => c.labels(),
            QNode::Rename(i, j, c) => {
                let mut l = c.labels();
                if l.remove(i) {
                    l.insert(*j);
                }
                l
            }
            QNode::Union(l, r) => {
                let mut s = l.labels();
                s.extend(r.labels());
                s
            }
        }
    }
}

impl fmt::Display for QNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QNode::Create(i) => write!(f, "v({i})"),
            QNode::Join(i, j, c) => write!(f, "join({i},{j},{c})"),
            QNode::Rename(i, j, c) => write!(f, "ren({i}->{j},{c})"),
            QNode::Union(l, r) => write!(f, "union({l},{r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpression {
    pub q: usize,
    pub root: QNode,
}

impl fmt::Display for QExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl QExpression {
    /// Uses the largest label occurring in `root` as `q`.
    pub fn new(root: QNode) -> Self {
        QExpression {
            q: root.max_label().max(1),
            root,
        }
    }

    pub fn with_q(q: usize, root: QNode) -> Result<Self, QExprError> {
        let e = QExpression { q, root };
        e.check()?;
        Ok(e)
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    /// Labels in range and distinct where required.
    pub fn check(&self) -> Result<(), QExprError> {
        fn go(x: &QNode, q: usize) -> Result<(), QExprError> {
            let ok = |l: usize| {
                if l == 0 || l > q {
                    Err(QExprError::LabelOutOfRange { label: l, q })
                } else {
                    Ok(())
                }
            };
            match x {
                QNode::Create(i) => ok(*i),
                QNode::Join(i, j, c) | QNode::Rename(i, j, c) => {
                    ok(*i)?;
                    ok(*j)?;
                    if i == j {
                        return Err(QExprError::SameLabel(*i));
                    }
                    go(c, q)
                }
                QNode::Union(l, r) => {
                    go(l, q)?;
                    go(r, q)
                }
            }
        }
        go(&self.root, self.q)
    }
}

/// A graph together with one label per vertex (index `v - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// Evaluates the expression. Vertices are numbered by the left-to-right order
/// of their creation symbols.
pub fn eval_qexpr(phi: &QExpression) -> Result<LabeledGraph, QExprError> {
    phi.check()?;
    let n = phi.root.vertex_count();
    let mut b = GraphBuilder::new(n);
    let mut labels = vec![0usize; n];
    let mut next = 0usize;

    // Returns the vertex range created inside `x`.
    fn go(
        x: &QNode,
        b: &mut GraphBuilder,
        labels: &mut [usize],
        next: &mut usize,
    ) -> std::ops::Range<usize> {
        match x {
            QNode::Create(i) => {
                labels[*next] = *i;
                *next += 1;
                *next - 1..*next
            }
            QNode::Union(l, r) => {
                let a = go(l, b, labels, next);
                let c = go(r, b, labels, next);
                a.start..c.end
            }
            QNode::Rename(i, j, c) => {
                let range = go(c, b, labels, next);
                for l in &mut labels[range.clone()] {
                    if *l == *i {
                        *l = *j;
                    }
                }
                range
            }
            QNode::Join(i, j, c) => {
                let range = go(c, b, labels, next);
                let is: Vec<usize> = range.clone().filter(|&v| labels[v] == *i).collect();
                let js: Vec<usize> = range.clone().filter(|&v| labels[v] == *j).collect();
                for &u in &is {
                    for &w in &js {
                        b.add_edge_if_absent(u + 1, w + 1)
                            .expect("distinct vertices");
                    }
                }
                range
            }
        }
    }

    go(&phi.root, &mut b, &mut labels, &mut next);
    Ok(LabeledGraph {
        graph: b.build(),
        labels,
    })
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Rewrites the expression so that every join is full, i.e. adds only edges
/// that do not exist yet. A join is dropped when an enclosing join is
/// guaranteed to add the same label pair again, or when its operand lacks one
/// of the two labels. Renames of absent labels are dropped as well. The
/// result never has more symbols than the input.
pub fn normalize_qexpr(phi: &QExpression) -> QExpression {
    fn go(x: &QNode, pending: &BTreeSet<(usize, usize)>) -> (QNode, BTreeSet<usize>) {
        match x {
            QNode::Create(i) => (QNode::Create(*i), BTreeSet::from([*i])),
            QNode::Union(l, r) => {
                let (l, mut ll) = go(l, pending);
                let (r, rl) = go(r, pending);
                ll.extend(rl);
                (QNode::union(l, r), ll)
            }
            QNode::Join(i, j, c) => {
                let p = pair(*i, *j);
                if pending.contains(&p) {
                    return go(c, pending);
                }
                let mut inner = pending.clone();
                inner.insert(p);
                // Labels do not depend on joins, so a cheap pre-check decides
                // whether this join does anything at all.
                let child_labels = c.labels();
                if !(child_labels.contains(i) && child_labels.contains(j)) {
                    return go(c, pending);
                }
                let (c, labels) = go(c, &inner);
                (QNode::join(*i, *j, c), labels)
            }
            QNode::Rename(i, j, c) => {
                if !c.labels().contains(i) {
                    return go(c, pending);
                }
                let f = |l: usize| if l == *i { *j } else { l };
                let candidates: BTreeSet<usize> = c.labels();
                let mut inner = BTreeSet::new();
                for &a in &candidates {
                    for &b in &candidates {
                        if a < b && f(a) != f(b) && pending.contains(&pair(f(a), f(b))) {
                            inner.insert((a, b));
                        }
                    }
                }
                let (c, mut labels) = go(c, &inner);
                labels.remove(i);
                labels.insert(*j);
                (QNode::rename(*i, *j, c), labels)
            }
        }
    }
    QExpression {
        q: phi.q,
        root: go(&phi.root, &BTreeSet::new()).0,
    }
}

/// Replays the expression and reports whether every join adds only new edges.
pub fn all_joins_full(phi: &QExpression) -> bool {
    // Returns (labels present, label pairs with at least one edge) or None.
    type State = (BTreeSet<usize>, BTreeSet<(usize, usize)>);
    fn go(x: &QNode) -> Option<State> {
        match x {
            QNode::Create(i) => Some((BTreeSet::from([*i]), BTreeSet::new())),
            QNode::Union(l, r) => {
                let (mut la, mut pa) = go(l)?;
                let (lb, pb) = go(r)?;
                la.extend(lb);
                pa.extend(pb);
                Some((la, pa))
            }
            QNode::Join(i, j, c) => {
                let (labels, mut pairs) = go(c)?;
                if pairs.contains(&pair(*i, *j)) {
                    return None;
                }
                if labels.contains(i) && labels.contains(j) {
                    pairs.insert(pair(*i, *j));
                }
                Some((labels, pairs))
            }
            QNode::Rename(i, j, c) => {
                let (labels, pairs) = go(c)?;
                let f = |l: usize| if l == *i { *j } else { l };
                let labels = labels.into_iter().map(f).collect();
                let pairs = pairs
                    .into_iter()
                    .filter(|&(a, b)| f(a) != f(b))
                    .map(|(a, b)| pair(f(a), f(b)))
                    .collect();
                Some((labels, pairs))
            }
        }
    }
    go(&phi.root).is_some()
}

/// Graph families with a known small-label expression.
#[derive(Debug, Clone)]
pub enum Family<'a> {
    Clique(usize),
    Path(usize),
    /// Any forest; each component is rooted at its smallest vertex.
    Forest(&'a Graph),
}

/// Builds an expression for the requested family. The second component maps
/// creation index `i` (left-to-right) to the vertex of the intended graph.
pub fn family_qexpr(kind: Family<'_>) -> Result<(QExpression, Vec<Vertex>), QExprError> {
    match kind {
        Family::Clique(n) => {
            assert!(n >= 1, "clique needs a vertex");
            let e = if n == 1 {
                QNode::create(1)
            } else {
                clique_chain(n)
            };
            Ok((QExpression { q: 2, root: e }, (1..=n).collect()))
        }
        Family::Path(n) => {
            let g = Graph::path(n);
            forest_qexpr(&g)
        }
        Family::Forest(g) => forest_qexpr(g),
    }
}

fn clique_chain(n: usize) -> QNode {
    let mut e = QNode::join(1, 2, QNode::union(QNode::create(1), QNode::create(2)));
    for _ in 2..n {
        e = QNode::join(1, 2, QNode::union(QNode::rename(2, 1, e), QNode::create(2)));
    }
    e
}

fn forest_qexpr(g: &Graph) -> Result<(QExpression, Vec<Vertex>), QExprError> {
    let comps = crate::graph::connected_components(g);
    if g.m() + comps.len() != g.n() {
        return Err(QExprError::NotAForest);
    }
    let mut parts: Vec<(QNode, Vec<Vertex>)> = Vec::new();
    for comp in &comps {
        let root = *comp.iter().next().expect("non-empty");
        parts.push(tree_expr(g, root));
    }
    let mut it = parts.into_iter();
    let (mut e, mut order) = it.next().unwrap_or((QNode::create(2), vec![]));
    for (pe, po) in it {
        e = QNode::union(e, pe);
        order.extend(po);
    }
    Ok((QExpression { q: 3, root: e }, order))
}

/// Expression for the tree containing `root`: the root carries label 2, every
/// other vertex label 1.
fn tree_expr(g: &Graph, root: Vertex) -> (QNode, Vec<Vertex>) {
    // Iterative post-order to stay safe on long paths.
    let mut parent = vec![0usize; g.n() + 1];
    let mut order = vec![root];
    let mut i = 0;
    parent[root] = usize::MAX;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for u in g.neighbors(v) {
            if parent[v] != u && parent[u] == 0 && u != root {
                parent[u] = v;
                order.push(u);
            }
        }
    }
    let mut built: Vec<Option<(QNode, Vec<Vertex>)>> = vec![None; g.n() + 1];
    for &v in order.iter().rev() {
        let mut cur = QNode::create(2);
        let mut verts = vec![v];
        let mut kids: Vec<Vertex> = g.neighbors(v).filter(|&u| parent[u] == v).collect();
        kids.sort_unstable();
        for c in kids {
            let (ce, cv) = built[c].take().expect("child built");
            cur = QNode::rename(
                3,
                1,
                QNode::join(2, 3, QNode::union(cur, QNode::rename(2, 3, ce))),
            );
            verts.extend(cv);
        }
        built[v] = Some((cur, verts));
    }
    built[root].take().expect("root built")
}
