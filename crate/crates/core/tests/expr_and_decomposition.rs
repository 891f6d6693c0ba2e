use bisectkit::decomp::{
    decompose, elimination_decomposition, exact_treewidth_small, make_nice, min_degree_order,
    validate_td,
};
use bisectkit::graph::{Graph, GraphBuilder};
use bisectkit::qexpr::{
    all_joins_full, eval_qexpr, family_qexpr, normalize_qexpr, Family, QExpression, QNode,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut b = GraphBuilder::new(n);
            let mut it = bits.into_iter();
            for u in 1..=n {
                for v in u + 1..=n {
                    if it.next().unwrap() {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
            b.build()
        })
    })
}

fn node_strategy() -> impl Strategy<Value = QNode> {
    let leaf = (1usize..=3).prop_map(QNode::create);
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| QNode::union(l, r)),
            (1usize..=3, 1usize..=3, inner.clone())
                .prop_filter("distinct labels", |(i, j, _)| i != j)
                .prop_map(|(i, j, c)| QNode::join(i, j, c)),
            (1usize..=3, 1usize..=3, inner)
                .prop_filter("distinct labels", |(i, j, _)| i != j)
                .prop_map(|(i, j, c)| QNode::rename(i, j, c)),
        ]
    })
}

fn forest_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((any::<bool>(), any::<usize>()), n).prop_map(move |links| {
            let mut b = GraphBuilder::new(n);
            for (v, &(keep, parent)) in links.iter().enumerate().skip(1) {
                if keep {
                    b.add_edge(parent % v + 1, v + 1).unwrap();
                }
            }
            b.build()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_keeps_the_graph(root in node_strategy()) {
        let phi = QExpression::with_q(3, root).unwrap();
        let norm = normalize_qexpr(&phi);
        prop_assert!(all_joins_full(&norm));
        prop_assert!(norm.size() <= phi.size());
        prop_assert_eq!(eval_qexpr(&norm).unwrap(), eval_qexpr(&phi).unwrap());
    }

    #[test]
    fn forest_expressions_evaluate_to_the_forest(g in forest_strategy(12)) {
        let (phi, order) = family_qexpr(Family::Forest(&g)).unwrap();
        prop_assert!(phi.q <= 3);
        prop_assert!(all_joins_full(&phi));
        let lg = eval_qexpr(&phi).unwrap();
        prop_assert_eq!(lg.graph.n(), g.n());
        let mut mapped: Vec<(usize, usize)> = lg
            .graph
            .edges()
            .into_iter()
            .map(|(x, y, _)| {
                let (u, v) = (order[x - 1], order[y - 1]);
                (u.min(v), u.max(v))
            })
            .collect();
        mapped.sort_unstable();
        let want: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
        prop_assert_eq!(mapped, want);
    }

    #[test]
    fn elimination_orders_give_valid_decompositions(g in graph_strategy(10), seed in any::<u64>()) {
        let mut order: Vec<usize> = g.vertices().collect();
        let mut x = seed;
        for i in (1..order.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let td = elimination_decomposition(&g, &order);
        prop_assert!(validate_td(&g, &td).unwrap());
        let ntd = make_nice(&td).unwrap();
        prop_assert!(ntd.check_nice());
        prop_assert_eq!(ntd.width(), td.width());
        prop_assert!(validate_td(&g, &ntd.to_td()).unwrap());
    }

    #[test]
    fn exact_width_is_a_lower_bound(g in graph_strategy(10)) {
        let (tw, td) = exact_treewidth_small(&g).unwrap();
        prop_assert!(validate_td(&g, &td).unwrap());
        prop_assert_eq!(td.width(), tw);
        let heuristic = elimination_decomposition(&g, &min_degree_order(&g));
        prop_assert!(tw <= heuristic.width());
        prop_assert_eq!(decompose(&g, 12).width(), tw);
    }
}

#[test]
fn known_treewidths() {
    assert_eq!(exact_treewidth_small(&Graph::path(6)).unwrap().0, 1);
    assert_eq!(exact_treewidth_small(&Graph::cycle(7)).unwrap().0, 2);
    assert_eq!(exact_treewidth_small(&Graph::complete(6)).unwrap().0, 5);
    assert_eq!(exact_treewidth_small(&Graph::empty(4)).unwrap().0, 0);
}
