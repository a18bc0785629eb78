use std::collections::HashMap;

use momst::mutation::{mutate_in_place, MutationStrategy, StrategyKind};
use momst::oracles::enumerate_spanning_trees;
use momst::{random_spanning_tree, Graph, SpanningTree, WeightVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn complete(n: usize) -> Graph<i64> {
    let mut t = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            t.push((u, v, WeightVec::single((u + 2 * v) as i64)));
        }
    }
    Graph::from_triples(n, t).unwrap()
}

fn chi_square_p(counts: &[usize], samples: usize) -> f64 {
    let expected = samples as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

fn tree_frequencies(g: &Graph<i64>, samples: usize, seed: u64) -> Vec<usize> {
    let index: HashMap<Vec<usize>, usize> =
        enumerate_spanning_trees(g).unwrap().iter().enumerate().map(|(i, t)| (t.edge_ids(), i)).collect();
    let mut counts = vec![0; index.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        counts[index[&random_spanning_tree(g, &mut rng).edge_ids()]] += 1;
    }
    counts
}

#[test]
fn random_tree_is_uniform_on_triangle() {
    let counts = tree_frequencies(&complete(3), 30_000, 1);
    assert_eq!(counts.len(), 3);
    assert!(chi_square_p(&counts, 30_000) > 0.001, "{counts:?}");
}

#[test]
fn random_tree_is_uniform_on_k4() {
    let counts = tree_frequencies(&complete(4), 32_000, 2);
    assert_eq!(counts.len(), 16);
    assert!(chi_square_p(&counts, 32_000) > 0.001, "{counts:?}");
}

#[test]
fn random_tree_is_uniform_on_sparse_graph() {
    // a 4-cycle with one chord: 8 spanning trees
    let g = Graph::from_triples(
        4,
        [
            (0, 1, WeightVec::single(1)),
            (1, 2, WeightVec::single(1)),
            (2, 3, WeightVec::single(1)),
            (3, 0, WeightVec::single(1)),
            (0, 2, WeightVec::single(1)),
        ],
    )
    .unwrap();
    let counts = tree_frequencies(&g, 40_000, 3);
    assert_eq!(counts.len(), 8);
    assert!(chi_square_p(&counts, 40_000) > 0.001, "{counts:?}");
}

/// Exact one-step transition matrix of a single uniform insert-and-drop on
/// the triangle, by enumerating (inserted edge, dropped edge) pairs.
fn exact_triangle_matrix(g: &Graph<i64>, trees: &[SpanningTree<i64>]) -> Vec<Vec<f64>> {
    let m = g.m();
    let index = |ids: &[usize]| trees.iter().position(|t| t.edge_ids() == ids).unwrap();
    let mut p = vec![vec![0.0; trees.len()]; trees.len()];
    for (from, t) in trees.iter().enumerate() {
        for e in 0..m {
            if t.contains(e) {
                p[from][from] += 1.0 / m as f64;
                continue;
            }
            let mut cycle = t.edge_ids();
            cycle.push(e);
            for &drop in &cycle {
                let next: Vec<usize> = {
                    let mut ids: Vec<usize> = cycle.iter().copied().filter(|&x| x != drop).collect();
                    ids.sort_unstable();
                    ids
                };
                p[from][index(&next)] += 1.0 / m as f64 / cycle.len() as f64;
            }
        }
    }
    p
}

#[test]
fn single_step_transitions_match_exact_matrix() {
    let g = complete(3);
    let trees = enumerate_spanning_trees(&g).unwrap();
    let exact = exact_triangle_matrix(&g, &trees);
    let strategy = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (from, start) in trees.iter().enumerate() {
        let mut counts = vec![0usize; trees.len()];
        let mut total = 0usize;
        while total < 30_000 {
            let mut t = start.clone();
            if mutate_in_place(&g, &mut t, &strategy, &mut rng).k != 1 {
                continue;
            }
            total += 1;
            counts[trees.iter().position(|x| *x == t).unwrap()] += 1;
        }
        for to in 0..trees.len() {
            let p = exact[from][to];
            let freq = counts[to] as f64 / total as f64;
            let sigma = (p * (1.0 - p) / total as f64).sqrt();
            assert!((freq - p).abs() < 4.0 * sigma, "{from}->{to}: {freq} vs {p}");
        }
    }
    assert!((exact[0][0] - 7.0 / 9.0).abs() < 1e-12);
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph<i64> {
    let mut t = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if v == u + 1 || rng.gen_bool(0.4) {
                t.push((u, v, WeightVec::single(rng.gen_range(1..50))));
            }
        }
    }
    Graph::from_triples(n, t).unwrap()
}

#[test]
fn mutation_fuzz_preserves_trees_and_bounds_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100_000 {
        let n = rng.gen_range(2..=12);
        let g = random_connected_graph(&mut rng, n);
        let kind = [StrategyKind::Um, StrategyKind::Bm, StrategyKind::Mm][rng.gen_range(0..3)];
        let strategy = MutationStrategy::for_graph(&g, kind, rng.gen()).unwrap();
        let mut tree = random_spanning_tree(&g, &mut rng);
        for _ in 0..1000 {
            let before = tree.clone();
            let info = mutate_in_place(&g, &mut tree, &strategy, &mut rng);
            tree.validate(&g).unwrap();
            assert!(before.distance(&tree) <= info.k);
            assert_eq!(tree.edge_ids().len(), n - 1);
            done += 1;
        }
    }
}

#[test]
fn functional_mutation_leaves_input_alone() {
    let g = complete(6);
    let strategy = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let t = random_spanning_tree(&g, &mut rng);
    let copy = t.clone();
    for _ in 0..100 {
        let _ = momst::mutate(&g, &t, &strategy, &mut rng);
    }
    assert_eq!(t, copy);
}
