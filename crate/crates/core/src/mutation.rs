//! The k-fold edge-exchange mutation with uniform, biased or mixed edge
//! selection.

use rand::Rng;

use crate::error::Result;
use crate::graph::Graph;
use crate::rank::{
    biased_distribution, rank_by_domination, rank_by_weight, uniform_distribution, SelectionDistribution,
};
use crate::tree::SpanningTree;
use crate::weight::Weight;

/// Which selection scheme a run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Uniform edge selection.
    Um,
    /// Rank-biased edge selection.
    Bm,
    /// Fair coin between uniform and biased, once per iteration.
    Mm,
}

impl StrategyKind {
    pub fn label(self) -> &'static str {
        match self {
            StrategyKind::Um => "um",
            StrategyKind::Bm => "bm",
            StrategyKind::Mm => "mm",
        }
    }
}

#[derive(Clone, Debug)]
pub enum MutationStrategy {
    Uniform(SelectionDistribution),
    Biased(SelectionDistribution),
    Mixed { uniform: SelectionDistribution, biased: SelectionDistribution },
}

impl MutationStrategy {
    /// Builds the strategy for `graph`. Biased selection ranks edges by
    /// weight on single-objective graphs and by domination number on
    /// bi-objective graphs, breaking ties with `tie_seed`.
    pub fn for_graph<W: Weight>(graph: &Graph<W>, kind: StrategyKind, tie_seed: u64) -> Result<Self> {
        let biased = || -> Result<SelectionDistribution> {
            let ranking = if graph.weight_dim() == 1 {
                rank_by_weight(graph, tie_seed)?
            } else {
                rank_by_domination(graph, tie_seed)?
            };
            biased_distribution(&ranking, graph.n())
        };
        Ok(match kind {
            StrategyKind::Um => MutationStrategy::Uniform(uniform_distribution(graph.m())?),
            StrategyKind::Bm => MutationStrategy::Biased(biased()?),
            StrategyKind::Mm => {
                MutationStrategy::Mixed { uniform: uniform_distribution(graph.m())?, biased: biased()? }
            }
        })
    }

    pub fn kind(&self) -> StrategyKind {
        match self {
            MutationStrategy::Uniform(_) => StrategyKind::Um,
            MutationStrategy::Biased(_) => StrategyKind::Bm,
            MutationStrategy::Mixed { .. } => StrategyKind::Mm,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            MutationStrategy::Uniform(d) | MutationStrategy::Biased(d) => d.len(),
            MutationStrategy::Mixed { uniform, .. } => uniform.len(),
        }
    }
}

/// `1 + Pois(1)`, drawn by inverse transform (product of uniforms).
pub fn sample_k<R: Rng + ?Sized>(rng: &mut R) -> usize {
    let threshold = (-1.0f64).exp();
    let mut product = 1.0;
    let mut k = 0;
    loop {
        product *= rng.gen::<f64>();
        if product <= threshold {
            return k + 1;
        }
        k += 1;
    }
}

/// The distribution used for one outer iteration; a mixed strategy flips a
/// fair coin.
pub fn choose_distribution<'a, R: Rng + ?Sized>(
    strategy: &'a MutationStrategy,
    rng: &mut R,
) -> &'a SelectionDistribution {
    match strategy {
        MutationStrategy::Uniform(d) | MutationStrategy::Biased(d) => d,
        MutationStrategy::Mixed { uniform, biased } => {
            if rng.gen::<bool>() {
                biased
            } else {
                uniform
            }
        }
    }
}

/// What a single mutation did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MutationInfo {
    /// Number of sequential insert-and-drop sub-steps.
    pub k: usize,
    /// Whether the biased distribution was used.
    pub biased: bool,
}

/// Mutates `tree` in place: draws `k`, picks a distribution, then performs
/// `k` sequential insert-and-drop sub-steps.
pub fn mutate_in_place<W: Weight, R: Rng + ?Sized>(
    graph: &Graph<W>,
    tree: &mut SpanningTree<W>,
    strategy: &MutationStrategy,
    rng: &mut R,
) -> MutationInfo {
    debug_assert!(tree.belongs_to(graph));
    debug_assert_eq!(strategy.edge_count(), graph.m());
    let k = sample_k(rng);
    let dist = choose_distribution(strategy, rng);
    for _ in 0..k {
        let e = dist.sample(rng);
        tree.exchange(graph, e, rng);
    }
    MutationInfo { k, biased: dist.kind() != crate::rank::SelectionKind::Uniform }
}

/// Returns a mutated copy of `tree`.
pub fn mutate<W: Weight, R: Rng + ?Sized>(
    graph: &Graph<W>,
    tree: &SpanningTree<W>,
    strategy: &MutationStrategy,
    rng: &mut R,
) -> SpanningTree<W> {
    let mut out = tree.clone();
    mutate_in_place(graph, &mut out, strategy, rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::random_spanning_tree;
    use crate::weight::WeightVec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> Graph<i64> {
        Graph::from_triples(
            3,
            [(0, 1, WeightVec::single(1)), (1, 2, WeightVec::single(2)), (0, 2, WeightVec::single(5))],
        )
        .unwrap()
    }

    #[test]
    fn k_distribution() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let draws = 1_000_000;
        let mut ones = 0;
        let mut twos = 0;
        let mut total = 0usize;
        for _ in 0..draws {
            let k = sample_k(&mut rng);
            assert!(k >= 1);
            total += k;
            match k {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
        }
        let e_inv = (-1.0f64).exp();
        assert!((ones as f64 / draws as f64 - e_inv).abs() < 0.003);
        assert!((twos as f64 / draws as f64 - e_inv).abs() < 0.003);
        assert!((total as f64 / draws as f64 - 2.0).abs() < 0.01);
    }

    #[test]
    fn coin_is_fair_and_fixed_strategies_are_fixed() {
        let g = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let um = MutationStrategy::for_graph(&g, StrategyKind::Um, 0).unwrap();
        let bm = MutationStrategy::for_graph(&g, StrategyKind::Bm, 0).unwrap();
        let mm = MutationStrategy::for_graph(&g, StrategyKind::Mm, 0).unwrap();
        for _ in 0..100 {
            assert_eq!(choose_distribution(&um, &mut rng).kind(), crate::rank::SelectionKind::Uniform);
            assert_eq!(choose_distribution(&bm, &mut rng).kind(), crate::rank::SelectionKind::BiasedSingle);
        }
        let iters = 1_000_000;
        let biased = (0..iters)
            .filter(|_| choose_distribution(&mm, &mut rng).kind() != crate::rank::SelectionKind::Uniform)
            .count();
        assert!((biased as f64 / iters as f64 - 0.5).abs() < 0.002);
    }

    #[test]
    fn tree_graph_is_fixed_point() {
        let g = Graph::from_triples(
            4,
            [(0, 1, WeightVec::single(3)), (1, 2, WeightVec::single(1)), (2, 3, WeightVec::single(2))],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = random_spanning_tree(&g, &mut rng);
        let s = MutationStrategy::for_graph(&g, StrategyKind::Mm, 1).unwrap();
        for _ in 0..1000 {
            assert_eq!(mutate(&g, &t, &s, &mut rng), t);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let g = triangle();
        let s = MutationStrategy::for_graph(&g, StrategyKind::Mm, 1).unwrap();
        let t = SpanningTree::from_edges(&g, &[0, 1]).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| mutate(&g, &t, &s, &mut rng).edge_ids()).collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
    }
}
