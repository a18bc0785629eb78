//! Edge rankings and edge-selection distributions.
//!
//! Biased selection favors low-rank edges geometrically. With `a = (n-1)/n`
//! and `p(r) = a^r`, single-objective ranking (by weight) selects rank `r`
//! with probability proportional to `sqrt(p(r))`; bi-objective ranking (by
//! domination number) selects it proportional to `p(r)`.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankBasis {
    SingleObjectiveWeight,
    DominationNumber,
}

/// A bijection from edges to ranks `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRanking {
    ranks: Vec<usize>,
    basis: RankBasis,
    tie_seed: u64,
    domination: Option<Vec<usize>>,
}

impl EdgeRanking {
    /// Wraps explicit 1-based ranks indexed by edge id; they must form a
    /// permutation of `1..=m`.
    pub fn from_ranks(ranks: Vec<usize>, basis: RankBasis, tie_seed: u64) -> Result<Self> {
        let m = ranks.len();
        let mut seen = vec![false; m + 1];
        for &r in &ranks {
            if r == 0 || r > m || std::mem::replace(&mut seen[r], true) {
                return Err(Error::usage(format!("ranks are not a permutation of 1..={m}")));
            }
        }
        Ok(EdgeRanking { ranks, basis, tie_seed, domination: None })
    }

    pub fn rank(&self, e: EdgeId) -> usize {
        self.ranks[e]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn basis(&self) -> RankBasis {
        self.basis
    }

    pub fn tie_seed(&self) -> u64 {
        self.tie_seed
    }

    /// Domination numbers, when the ranking was built from them.
    pub fn domination_numbers(&self) -> Option<&[usize]> {
        self.domination.as_deref()
    }

    /// Edge ids ordered by rank, lowest first.
    pub fn edges_by_rank(&self) -> Vec<EdgeId> {
        let mut order = vec![0; self.ranks.len()];
        for (e, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = e;
        }
        order
    }
}

/// Orders edges by `key`; edges with equal keys receive a uniformly random
/// permutation of their rank block, determined by `tie_seed`.
fn rank_by_key<K: PartialOrd>(keys: &[K], tie_seed: u64) -> Vec<usize> {
    let mut order: Vec<EdgeId> = (0..keys.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(tie_seed));
    // stable sort keeps the shuffled order inside tie groups
    order.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).expect("comparable keys"));
    let mut ranks = vec![0; keys.len()];
    for (pos, e) in order.into_iter().enumerate() {
        ranks[e] = pos + 1;
    }
    ranks
}

pub fn rank_by_weight<W: Weight>(graph: &Graph<W>, tie_seed: u64) -> Result<EdgeRanking> {
    graph.require_dim(1, "ranking by weight")?;
    let keys: Vec<W> = graph.edges().iter().map(|e| e.weight.first()).collect();
    Ok(EdgeRanking {
        ranks: rank_by_key(&keys, tie_seed),
        basis: RankBasis::SingleObjectiveWeight,
        tie_seed,
        domination: None,
    })
}

/// `d(e)`: the number of edges (including `e`) whose weight weakly
/// dominates `w(e)`.
pub fn domination_number<W: Weight>(graph: &Graph<W>) -> Result<Vec<usize>> {
    graph.require_dim(2, "domination numbers")?;
    let edges = graph.edges();
    Ok(edges.iter().map(|e| edges.iter().filter(|f| f.weight.weakly_dominates(&e.weight)).count()).collect())
}

pub fn rank_by_domination<W: Weight>(graph: &Graph<W>, tie_seed: u64) -> Result<EdgeRanking> {
    let d = domination_number(graph)?;
    Ok(EdgeRanking {
        ranks: rank_by_key(&d, tie_seed),
        basis: RankBasis::DominationNumber,
        tie_seed,
        domination: Some(d),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionKind {
    Uniform,
    BiasedSingle,
    BiasedMulti,
}

/// Per-edge selection probabilities, with a cumulative table for sampling.
#[derive(Clone, Debug)]
pub struct SelectionDistribution {
    probs: Vec<f64>,
    cumulative: Vec<f64>,
    kind: SelectionKind,
    base: Option<f64>,
}

/// Sum with Neumaier compensation.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

impl SelectionDistribution {
    fn from_probs(probs: Vec<f64>, kind: SelectionKind, base: Option<f64>) -> Result<Self> {
        if probs.iter().any(|&p| !p.is_finite() || p <= 0.0) {
            return Err(Error::usage("selection probabilities underflowed to zero"));
        }
        let total = compensated_sum(probs.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::usage(format!("selection probabilities sum to {total}")));
        }
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        Ok(SelectionDistribution { probs, cumulative, kind, base })
    }

    pub fn kind(&self) -> SelectionKind {
        self.kind
    }

    /// The geometric base `(n-1)/n` of biased distributions.
    pub fn base(&self) -> Option<f64> {
        self.base
    }

    pub fn prob(&self, e: EdgeId) -> f64 {
        self.probs[e]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Draws an edge id.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> EdgeId {
        match self.kind {
            SelectionKind::Uniform => rng.gen_range(0..self.probs.len()),
            _ => {
                let total = *self.cumulative.last().expect("non-empty distribution");
                let x = rng.gen::<f64>() * total;
                self.cumulative.partition_point(|&c| c <= x).min(self.probs.len() - 1)
            }
        }
    }
}

pub fn uniform_distribution(m: usize) -> Result<SelectionDistribution> {
    if m == 0 {
        return Err(Error::usage("uniform distribution over zero edges"));
    }
    SelectionDistribution::from_probs(vec![1.0 / m as f64; m], SelectionKind::Uniform, None)
}

/// Rank-biased selection distribution for a graph on `n` vertices.
pub fn biased_distribution(ranking: &EdgeRanking, n: usize) -> Result<SelectionDistribution> {
    if n < 2 {
        return Err(Error::usage(format!("biased selection needs n >= 2, got {n}")));
    }
    if ranking.is_empty() {
        return Err(Error::usage("biased selection over an empty ranking"));
    }
    let a = (n as f64 - 1.0) / n as f64;
    let (exponent_scale, kind) = match ranking.basis() {
        RankBasis::SingleObjectiveWeight => (0.5, SelectionKind::BiasedSingle),
        RankBasis::DominationNumber => (1.0, SelectionKind::BiasedMulti),
    };
    let mass = |r: usize| a.powf(exponent_scale * r as f64);
    let total = compensated_sum((1..=ranking.len()).map(mass));
    let probs = ranking.ranks().iter().map(|&r| mass(r) / total).collect();
    SelectionDistribution::from_probs(probs, kind, Some(a))
}

/// Writes `edge_id,rank,d,prob` rows; `d` is left empty for weight rankings.
pub fn write_ranking_csv<Wr: Write>(out: Wr, ranking: &EdgeRanking, dist: &SelectionDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge_id", "rank", "d", "prob"])?;
    for e in 0..ranking.len() {
        let d = ranking.domination_numbers().map(|d| d[e].to_string()).unwrap_or_default();
        w.write_record([e.to_string(), ranking.rank(e).to_string(), d, dist.prob(e).to_string()])?;
    }
    w.flush()?;
    Ok(())
}
