use bisectkit::decomp::{exact_treewidth_small, make_nice};
use bisectkit::graph::{
    count_components_after_removal, is_balanced_separator, Graph, GraphBuilder,
};
use bisectkit::oracle::{brute_separator_weights, brute_vertex_bisection};
use bisectkit::vbp::{sep_dp, solve_vertex_bisection, SepKey};
use bisectkit::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

#[test]
fn root_table_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..60 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.7);
        let mut g = random_graph(&mut rng, n, p);
        if round % 2 == 1 {
            let w = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            g = g.with_vertex_weights(w).unwrap();
        }
        let ntd = make_nice(&exact_treewidth_small(&g).unwrap().1).unwrap();
        let table = sep_dp(&g, &ntd, 3).unwrap();
        let brute = brute_separator_weights(&g, 3).unwrap();
        for c in 0..=3 {
            for l in 0..=g.total_weight() {
                let want = brute.get(&(c, l)).copied();
                assert_eq!(
                    table.root_value(c, l),
                    want,
                    "round {round} c={c} l={l} {:?}",
                    g.edges()
                );
                if let Some(want) = want {
                    let key = SepKey {
                        node: ntd.root,
                        s_t: VertexSet::new(),
                        p_a: vec![],
                        p_b: vec![],
                        c,
                        ell: l,
                    };
                    let sep = table.retrace(&key).unwrap();
                    sep.validate(&g).unwrap();
                    assert_eq!(g.weight_of(&sep.a), l);
                    assert_eq!(g.weight_of(&sep.s), want);
                    assert_eq!(count_components_after_removal(&g, &sep.s), c);
                }
            }
        }
    }
}

#[test]
fn driver_agrees_with_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = Vec::new();
    for _ in 0..150 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.6);
        let g = random_graph(&mut rng, n, p);
        for k in 0..=3 {
            for c in 2..=3 {
                let got = solve_vertex_bisection(&g, k, c).unwrap();
                let want = brute_vertex_bisection(&g, k, Some(c)).unwrap().optimum;
                if let Some(sep) = &got {
                    sep.validate(&g).unwrap();
                    assert!(is_balanced_separator(&g, sep));
                    assert!(sep.s.len() <= k);
                    assert_eq!(count_components_after_removal(&g, &sep.s), c);
                }
                if got.is_some() != want.is_some() {
                    mismatches.push((g.edges(), n, k, c, got.is_some()));
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}
