//! The (1+1) EA for the single-objective MST.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::{Family, Instance};
use crate::graph::Graph;
use crate::mutation::{mutate_in_place, MutationStrategy};
use crate::oracles::kruskal_mst;
use crate::tree::{random_spanning_tree, SpanningTree};
use crate::weight::Weight;

/// Hard cap on any iteration budget.
pub const MAX_BUDGET: u64 = 100_000_000;

/// One algorithm execution.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub graph: String,
    pub algo: String,
    pub n: usize,
    pub m: usize,
    /// Outer iterations performed; 0 when the initial solution already
    /// succeeds.
    pub iterations: u64,
    pub success: bool,
    /// Final weight (single-objective) or per-objective minimum over the
    /// final archive (bi-objective).
    pub final_w1: f64,
    pub final_w2: Option<f64>,
    pub budget: u64,
    pub wall_ms: u64,
}

impl RunRecord {
    pub const CSV_HEADER: [&'static str; 11] =
        ["seed", "graph", "algo", "n", "m", "iterations", "success", "final_w1", "final_w2", "budget", "wall_ms"];

    pub fn csv_row(&self) -> [String; 11] {
        [
            self.seed.to_string(),
            self.graph.clone(),
            self.algo.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.iterations.to_string(),
            self.success.to_string(),
            self.final_w1.to_string(),
            self.final_w2.map(|w| w.to_string()).unwrap_or_default(),
            self.budget.to_string(),
            self.wall_ms.to_string(),
        ]
    }
}

/// `10 * ceil(n^2 ln n) * m / n`, capped at [`MAX_BUDGET`].
pub fn default_budget(n: usize, m: usize) -> u64 {
    let nf = n as f64;
    let base = (nf * nf * nf.ln()).ceil() as u64;
    (10 * base * m as u64 / n as u64).clamp(1, MAX_BUDGET)
}

#[derive(Clone, Copy, Debug)]
pub struct EaOptions<W> {
    pub budget: u64,
    /// Optimal weight; computed with Kruskal when absent.
    pub target: Option<W>,
}

/// One iteration as seen by an observer.
pub struct Step<'a, W> {
    pub iteration: u64,
    pub parent: &'a SpanningTree<W>,
    pub offspring: &'a SpanningTree<W>,
    pub accepted: bool,
}

fn reached<W: Weight>(w: W, target: W) -> bool {
    if W::EXACT {
        w <= target
    } else {
        w.to_f64() <= target.to_f64() * (1.0 + 1e-12)
    }
}

fn start<W: Weight>(graph: &Graph<W>, seed: u64) -> (ChaCha8Rng, SpanningTree<W>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_spanning_tree(graph, &mut rng);
    (rng, tree)
}

/// The tree a (1+1) EA run with `seed` starts from.
pub fn initial_tree<W: Weight>(graph: &Graph<W>, seed: u64) -> SpanningTree<W> {
    start(graph, seed).1
}

pub fn run_one_plus_one<W: Weight>(
    graph: &Graph<W>,
    strategy: &MutationStrategy,
    opts: EaOptions<W>,
    seed: u64,
) -> Result<RunRecord> {
    run_one_plus_one_observed(graph, strategy, opts, seed, |_| {})
}

/// Runs the (1+1) EA from a uniform random spanning tree, accepting every
/// offspring that is no heavier than its parent. `observe` sees every
/// iteration before the acceptance takes effect.
pub fn run_one_plus_one_observed<W: Weight>(
    graph: &Graph<W>,
    strategy: &MutationStrategy,
    opts: EaOptions<W>,
    seed: u64,
    mut observe: impl FnMut(&Step<'_, W>),
) -> Result<RunRecord> {
    graph.require_dim(1, "the (1+1) EA")?;
    if opts.budget == 0 {
        return Err(Error::usage("budget must be at least 1"));
    }
    if strategy.edge_count() != graph.m() {
        return Err(Error::usage("mutation strategy was built for a different graph"));
    }
    let clock = Instant::now();
    let target = match opts.target {
        Some(t) => t,
        None => kruskal_mst(graph)?.1,
    };
    let (mut rng, mut parent) = start(graph, seed);
    let mut offspring = parent.clone();
    let mut iterations = 0;
    let mut success = reached(parent.weight().first(), target);
    while !success && iterations < opts.budget {
        iterations += 1;
        offspring.clone_from(&parent);
        mutate_in_place(graph, &mut offspring, strategy, &mut rng);
        let accepted = offspring.weight().first() <= parent.weight().first();
        observe(&Step { iteration: iterations, parent: &parent, offspring: &offspring, accepted });
        if accepted {
            std::mem::swap(&mut parent, &mut offspring);
            success = reached(parent.weight().first(), target);
        }
    }
    Ok(RunRecord {
        seed,
        graph: graph.label().to_string(),
        algo: format!("ea-{}", strategy.kind().label()),
        n: graph.n(),
        m: graph.m(),
        iterations,
        success,
        final_w1: parent.weight().first().to_f64(),
        final_w2: None,
        budget: opts.budget,
        wall_ms: clock.elapsed().as_millis() as u64,
    })
}

/// Number of bottom (heaviest) tail edges in `tree`.
pub fn bad_edge_count<W: Weight>(tree: &SpanningTree<W>, instance: &Instance<W>) -> Result<usize> {
    match instance.meta.family {
        Some(Family::G1 | Family::G2) if tree.belongs_to(&instance.graph) => {
            Ok(instance.meta.tail_bottom.iter().filter(|&&e| tree.contains(e)).count())
        }
        Some(Family::G1 | Family::G2) => Err(Error::usage("tree does not belong to the instance graph")),
        _ => Err(Error::usage("bad-edge count needs a g1 or g2 instance")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{lollipop, triangular_tailed, TailVariant};
    use crate::mutation::StrategyKind;
    use crate::oracles::enumerate_spanning_trees;
    use crate::weight::WeightVec;
    use rand::Rng;

    #[test]
    fn tree_graph_succeeds_immediately() {
        let g = Graph::from_triples(3, [(0, 1, WeightVec::single(4)), (1, 2, WeightVec::single(1))]).unwrap();
        let s = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
        let rec = run_one_plus_one(&g, &s, EaOptions { budget: 10, target: None }, 1).unwrap();
        assert!(rec.success);
        assert_eq!(rec.iterations, 0);
        assert_eq!(rec.final_w1, 5.0);
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::from_triples(3, [(0, 1, WeightVec::pair(1, 1)), (1, 2, WeightVec::pair(1, 1))]).unwrap();
        let s = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
        let err = run_one_plus_one(&g, &s, EaOptions { budget: 10, target: None }, 1).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
        let g = triangular_tailed(8, TailVariant::G1).unwrap().graph;
        let s = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
        assert!(run_one_plus_one(&g, &s, EaOptions { budget: 0, target: None }, 1).is_err());
    }

    #[test]
    fn fitness_never_increases_and_bad_edges_never_grow() {
        for (variant, kind) in [(TailVariant::G1, StrategyKind::Um), (TailVariant::G2, StrategyKind::Mm)] {
            let inst = triangular_tailed(16, variant).unwrap();
            let s = MutationStrategy::for_graph(&inst.graph, kind, 4).unwrap();
            let mut violations = 0;
            run_one_plus_one_observed(&inst.graph, &s, EaOptions { budget: 20_000, target: None }, 9, |step| {
                if step.accepted {
                    let before = bad_edge_count(step.parent, &inst).unwrap();
                    let after = bad_edge_count(step.offspring, &inst).unwrap();
                    if after > before || step.offspring.weight().first() > step.parent.weight().first() {
                        violations += 1;
                    }
                }
            })
            .unwrap();
            assert_eq!(violations, 0);
        }
    }

    #[test]
    fn bad_edge_count_examples() {
        let inst = triangular_tailed(16, TailVariant::G1).unwrap();
        let (mst, _) = kruskal_mst(&inst.graph).unwrap();
        assert_eq!(bad_edge_count(&mst, &inst).unwrap(), 0);
        let mut ids: Vec<usize> = inst.meta.tail_upper.iter().map(|u| u[0]).collect();
        ids.extend(&inst.meta.tail_bottom);
        ids.extend(mst.edge_ids().into_iter().filter(|e| inst.meta.clique_edges.contains(e)));
        let t = SpanningTree::from_edges(&inst.graph, &ids).unwrap();
        assert_eq!(bad_edge_count(&t, &inst).unwrap(), 4);
        let lolli = lollipop(8).unwrap();
        let (t, _) = kruskal_mst(&lolli.graph).unwrap();
        assert!(matches!(bad_edge_count(&t, &lolli), Err(Error::Usage(_))));
    }

    #[test]
    fn random_trees_hold_two_thirds_bad_edges() {
        let inst = triangular_tailed(64, TailVariant::G1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = 10_000;
        let total: usize =
            (0..samples).map(|_| bad_edge_count(&random_spanning_tree(&inst.graph, &mut rng), &inst).unwrap()).sum();
        let mean = total as f64 / samples as f64;
        let expected = 2.0 / 3.0 * 16.0;
        assert!((mean - expected).abs() < 0.05 * expected, "mean {mean}");
    }

    #[test]
    fn weight_gap_is_non_negative() {
        let inst = triangular_tailed(8, TailVariant::G2).unwrap();
        let (_, opt) = kruskal_mst(&inst.graph).unwrap();
        for t in enumerate_spanning_trees(&inst.graph).unwrap() {
            assert!(t.weight().first() >= opt);
        }
    }

    /// Maximum bipartite matching by augmenting paths.
    fn perfect_matching(adj: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
        fn augment(x: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    if owner[y].is_none() || augment(owner[y].unwrap(), adj, seen, owner) {
                        owner[y] = Some(x);
                        return true;
                    }
                }
            }
            false
        }
        let mut owner = vec![None; right];
        for x in 0..adj.len() {
            let mut seen = vec![false; right];
            if !augment(x, adj, &mut seen, &mut owner) {
                return None;
            }
        }
        let mut alpha = vec![0; adj.len()];
        for (y, o) in owner.iter().enumerate() {
            if let Some(x) = o {
                alpha[*x] = y;
            }
        }
        Some(alpha)
    }

    #[test]
    fn exchange_bijection_towards_the_optimum() {
        // For every tree T and MST T*, the edges of T* \ T can be matched to
        // the edges of T \ T* so that each pair is a valid exchange that does
        // not increase the weight.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(4..=7);
            let mut t = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if v == u + 1 || rng.gen_bool(0.6) {
                        t.push((u, v, WeightVec::single(rng.gen_range(1..20i64))));
                    }
                }
            }
            let g = Graph::from_triples(n, t).unwrap();
            let (opt, _) = kruskal_mst(&g).unwrap();
            for tree in enumerate_spanning_trees(&g).unwrap() {
                let inserts: Vec<usize> = opt.edge_ids().into_iter().filter(|&e| !tree.contains(e)).collect();
                let removes: Vec<usize> = tree.edge_ids().into_iter().filter(|&e| !opt.contains(e)).collect();
                assert_eq!(inserts.len(), removes.len());
                let mut probe = tree.clone();
                let adj: Vec<Vec<usize>> = inserts
                    .iter()
                    .map(|&e| {
                        let cycle = probe.cycle_edges(&g, e).unwrap();
                        removes
                            .iter()
                            .enumerate()
                            .filter(|(_, f)| cycle.contains(f) && g.weight(e).first() <= g.weight(**f).first())
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect();
                let alpha = perfect_matching(&adj, removes.len()).expect("bijection exists");
                for (i, &e) in inserts.iter().enumerate() {
                    let f = removes[alpha[i]];
                    let mut ids: Vec<usize> = tree.edge_ids().into_iter().filter(|&x| x != f).collect();
                    ids.push(e);
                    let swapped = SpanningTree::from_edges(&g, &ids).unwrap();
                    assert!(swapped.weight().first() <= tree.weight().first());
                }
            }
        }
    }
}
