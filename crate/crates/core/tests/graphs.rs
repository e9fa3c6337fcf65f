use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use srstirling::graphcombi::{
    clique_partition_counts, clique_partition_total, constrained_orientation_formula, count_acyclic_orientations,
    count_acyclic_orientations_scan, count_constrained_orientations, independent_partition_counts, Graph,
    Orientation,
};
use srstirling::polyseq::poly_bernoulli;
use srstirling::{Guards, IndexSet, Rational, SRContext};

fn set(s: &str) -> IndexSet {
    s.parse().unwrap()
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

#[test]
fn constrained_orientations_match_the_formula() {
    let g = Guards::default();
    for s in ["all", "{1,2}", "odd"] {
        for n1 in 0..=2 {
            for n2 in 0..=2 {
                for r in 0..=1 {
                    let brute = count_constrained_orientations(n1, n2, r, &set(s), &g).unwrap();
                    let formula = constrained_orientation_formula(n1, n2, r, &set(s)).unwrap();
                    assert_eq!(brute, formula, "S={s} n1={n1} n2={n2} r={r}");
                }
            }
        }
    }
    // k = 1 gives 1, k = 2 gives 2!^2
    assert_eq!(constrained_orientation_formula(2, 2, 0, &set("all")).unwrap(), BigInt::from(5));
}

#[test]
fn bipartite_orientations_are_poly_bernoulli_numbers() {
    let g = Guards::default();
    let ctx = SRContext::new(IndexSet::all(), 0).unwrap();
    let r1 = SRContext::new(IndexSet::all(), 1).unwrap();
    for n1 in 0..=3 {
        for n2 in 0..=3 {
            let brute = count_acyclic_orientations(&Graph::complete_bipartite(n1, n2), &g).unwrap();
            let pb = poly_bernoulli(&ctx, -(n2 as i64), n1).unwrap();
            assert_eq!(Rational::from_integer(brute.clone()), pb, "n1={n1} n2={n2}");
            // sum over m of (m!)^2 {n1+1, m+1} {n2+1, m+1}
            let mut cameron = BigInt::from(0);
            for m in 0..=n1.min(n2) {
                let f: BigInt = (1..=m).map(BigInt::from).product();
                cameron += &f * &f * r1.stirling2(n1, m).unwrap() * r1.stirling2(n2, m).unwrap();
            }
            assert_eq!(brute, cameron);
        }
    }
}

#[test]
fn join_with_empty_graph_gives_stirling_numbers() {
    let g = Guards::default();
    for s in ["all", "odd", "{1,2}", "{1,3,8}", "2..", "mod 3", "even"] {
        for r in 0..=2 {
            let ctx = SRContext::new(set(s), r).unwrap();
            for n in 0..=5 {
                let graph = Graph::join_complete_empty(n, r);
                let counts = clique_partition_counts(&graph, &set(s), &g).unwrap();
                for k in 0..=n {
                    assert_eq!(counts[k + r], ctx.stirling2(n, k).unwrap(), "S={s} r={r} n={n} k={k}");
                }
                // fewer than r cliques is impossible when r >= 1
                assert!(counts[..r].iter().all(|c| *c == BigInt::from(0)));
                assert_eq!(clique_partition_total(&graph, &set(s), &g).unwrap(), ctx.bell(n).unwrap());
            }
        }
    }
}

#[test]
fn clique_partitions_of_a_graph_are_independent_partitions_of_its_complement() {
    let g = Guards::default();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(0..=8);
        let graph = random_graph(&mut rng, n, 0.5);
        for s in ["all", "{1,2}", "odd"] {
            let cliques = clique_partition_counts(&graph, &set(s), &g).unwrap();
            let indep = independent_partition_counts(&graph.complement(), &set(s), &g).unwrap();
            assert_eq!(cliques, indep);
            let total: BigInt = cliques.iter().sum();
            assert_eq!(clique_partition_total(&graph, &set(s), &g).unwrap(), total);
        }
    }
}

#[test]
fn acyclicity_checkers_agree_on_random_orientations() {
    let g = Guards::default();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=9);
        let graph = random_graph(&mut rng, n, 0.6);
        let m = graph.edge_count();
        let bits = if m == 0 { 0 } else { rng.gen::<u64>() >> (64 - m) };
        let o = Orientation::new(&graph, bits).unwrap();
        assert_eq!(o.is_acyclic(&graph), !o.has_cycle_dfs(&graph));
    }
    for _ in 0..10 {
        let graph = random_graph(&mut rng, 7, 0.5);
        if graph.edge_count() <= 16 {
            assert_eq!(
                count_acyclic_orientations(&graph, &g).unwrap(),
                count_acyclic_orientations_scan(&graph, &g).unwrap()
            );
        }
    }
}
