//! Exact reference solvers: Kruskal, spanning-tree counting and enumeration,
//! exact Pareto fronts and the weighted-sum front approximation.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::disjoint::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::tree::SpanningTree;
use crate::weight::{Weight, WeightVec};

/// Largest number of spanning trees the enumerator will produce.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Default number of weighted-sum steps (`λ = k / steps`).
pub const DEFAULT_WSUM_STEPS: u64 = 1000;

/// Kruskal's algorithm over the edge order given by `cmp`; equal edges are
/// taken in edge-id order.
pub fn kruskal_by<W: Weight>(graph: &Graph<W>, cmp: impl Fn(EdgeId, EdgeId) -> Ordering) -> SpanningTree<W> {
    let mut order: Vec<EdgeId> = (0..graph.m()).collect();
    order.sort_by(|&a, &b| cmp(a, b));
    let mut ds = DisjointSets::new(graph.n());
    let mut chosen = Vec::with_capacity(graph.n() - 1);
    for id in order {
        let e = graph.edge(id);
        if ds.union(e.u, e.v) {
            chosen.push(id);
            if chosen.len() == graph.n() - 1 {
                break;
            }
        }
    }
    SpanningTree::from_edges(graph, &chosen).expect("graph is connected")
}

/// A minimum spanning tree of a single-objective graph and its weight.
pub fn kruskal_mst<W: Weight>(graph: &Graph<W>) -> Result<(SpanningTree<W>, W)> {
    graph.require_dim(1, "kruskal_mst")?;
    let tree = kruskal_by(graph, |a, b| graph.weight(a).first().total_cmp(&graph.weight(b).first()));
    let w = tree.weight().first();
    Ok((tree, w))
}

/// Number of spanning trees by the matrix-tree theorem (floating point).
pub fn kirchhoff_count<W: Weight>(graph: &Graph<W>) -> f64 {
    let size = graph.n() - 1;
    let mut lap = vec![vec![0.0f64; size]; size];
    for e in graph.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x < size {
                lap[x][x] += 1.0;
                if y < size {
                    lap[x][y] -= 1.0;
                }
            }
        }
    }
    let mut det = 1.0;
    for col in 0..size {
        let pivot =
            (col..size).max_by(|&a, &b| lap[a][col].abs().total_cmp(&lap[b][col].abs())).expect("non-empty range");
        if lap[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            lap.swap(pivot, col);
            det = -det;
        }
        det *= lap[col][col];
        let (top, rest) = lap.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let factor = row[col] / pivot[col];
            if factor != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= factor * p;
                }
            }
        }
    }
    det.abs()
}

fn check_enumerable<W: Weight>(graph: &Graph<W>) -> Result<()> {
    let count = kirchhoff_count(graph);
    if count.round() > ENUMERATION_LIMIT as f64 {
        return Err(Error::TooManyTrees { count: count.round(), limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Disjoint sets without path compression, so unions can be undone.
struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackSets {
    fn new(n: usize) -> Self {
        RollbackSets { parent: (0..n).collect(), size: vec![1; n], history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((a, b));
        true
    }

    fn undo(&mut self) {
        let (a, b) = self.history.pop().expect("undo without union");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

struct Enumerator<'g, W, F> {
    graph: &'g Graph<W>,
    excluded: Vec<bool>,
    chosen: Vec<EdgeId>,
    sets: RollbackSets,
    visit: F,
}

impl<W: Weight, F: FnMut(&[EdgeId])> Enumerator<'_, W, F> {
    fn connected_without_excluded(&self) -> bool {
        let mut ds = DisjointSets::new(self.graph.n());
        for (id, e) in self.graph.edges().iter().enumerate() {
            if !self.excluded[id] {
                ds.union(e.u, e.v);
            }
        }
        ds.count() == 1
    }

    // Invariant: the chosen edges are acyclic and the non-excluded edges
    // connect the graph, so every branch reaches at least one tree.
    fn recurse(&mut self, next: EdgeId) {
        if self.chosen.len() == self.graph.n() - 1 {
            (self.visit)(&self.chosen);
            return;
        }
        let e = self.graph.edge(next);
        if self.sets.union(e.u, e.v) {
            self.chosen.push(next);
            self.recurse(next + 1);
            self.chosen.pop();
            self.sets.undo();
        }
        self.excluded[next] = true;
        if self.connected_without_excluded() {
            self.recurse(next + 1);
        }
        self.excluded[next] = false;
    }
}

/// Calls `visit` with the sorted edge ids of every spanning tree, each
/// exactly once. Refuses graphs with more than [`ENUMERATION_LIMIT`] trees.
pub fn for_each_spanning_tree<W: Weight>(graph: &Graph<W>, visit: impl FnMut(&[EdgeId])) -> Result<()> {
    check_enumerable(graph)?;
    let mut en = Enumerator {
        graph,
        excluded: vec![false; graph.m()],
        chosen: Vec::with_capacity(graph.n() - 1),
        sets: RollbackSets::new(graph.n()),
        visit,
    };
    en.recurse(0);
    Ok(())
}

pub fn enumerate_spanning_trees<W: Weight>(graph: &Graph<W>) -> Result<Vec<SpanningTree<W>>> {
    let mut out = Vec::new();
    for_each_spanning_tree(graph, |ids| {
        out.push(SpanningTree::from_edges(graph, ids).expect("enumerated edge set is a spanning tree"));
    })?;
    Ok(out)
}

/// Keeps the indices of points not strictly dominated by another point.
/// Equal points are all kept.
fn non_dominated<W: Weight>(points: &[WeightVec<W>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    let mut keep = Vec::new();
    let mut best: Option<WeightVec<W>> = None;
    for idx in order {
        let p = points[idx];
        match best {
            Some(b) if b.strictly_dominates(&p) => {}
            _ => {
                keep.push(idx);
                best = Some(p);
            }
        }
    }
    keep
}

/// One point of a Pareto front together with a tree attaining it.
#[derive(Clone, Debug)]
pub struct FrontPoint<W> {
    pub weight: WeightVec<W>,
    pub witness: SpanningTree<W>,
}

/// Exact Pareto front by exhaustive enumeration, ascending in the first
/// objective, one witness tree per point.
pub fn exact_pareto_front<W: Weight>(graph: &Graph<W>) -> Result<Vec<FrontPoint<W>>> {
    graph.require_dim(2, "exact_pareto_front")?;
    let mut front: Vec<(WeightVec<W>, Vec<EdgeId>)> = Vec::new();
    for_each_spanning_tree(graph, |ids| {
        let w = ids.iter().fold(WeightVec::zero(2), |acc, &id| acc + graph.weight(id));
        if front.iter().any(|(f, _)| f.weakly_dominates(&w)) {
            return;
        }
        front.retain(|(f, _)| !w.weakly_dominates(f));
        front.push((w, ids.to_vec()));
    })?;
    front.sort_by(|a, b| a.0.lex_cmp(&b.0));
    front
        .into_iter()
        .map(|(_, ids)| {
            let witness = SpanningTree::from_edges(graph, &ids)?;
            Ok(FrontPoint { weight: witness.weight(), witness })
        })
        .collect()
}

/// Result of the weighted-sum sweep.
#[derive(Clone, Debug)]
pub struct WeightedSumFront<W> {
    /// Distinct non-dominated weight vectors, ascending in the first objective.
    pub points: Vec<WeightVec<W>>,
    /// Every distinct tree found by the sweep whose weight is non-dominated.
    pub trees: Vec<SpanningTree<W>>,
}

/// Runs Kruskal on `k * w1 + (steps - k) * w2` for `k = 0..=steps`, i.e. on
/// `λ w1 + (1 - λ) w2` with `λ = k / steps` scaled by `steps`, and keeps
/// the non-dominated results.
pub fn weighted_sum_front<W: Weight>(graph: &Graph<W>, steps: u64) -> Result<WeightedSumFront<W>> {
    graph.require_dim(2, "weighted_sum_front")?;
    if steps == 0 {
        return Err(Error::usage("weighted_sum_front needs steps >= 1"));
    }
    let mut seen = HashSet::new();
    let mut trees = Vec::new();
    for k in 0..=steps {
        let key = |id: EdgeId| {
            let w = graph.weight(id);
            w.get(0).scale(k) + w.get(1).scale(steps - k)
        };
        let tree = kruskal_by(graph, |a, b| key(a).total_cmp(&key(b)));
        if seen.insert(tree.edge_ids()) {
            trees.push(tree);
        }
    }
    let weights: Vec<WeightVec<W>> = trees.iter().map(|t| t.weight()).collect();
    let mut keep = non_dominated(&weights);
    keep.sort_unstable();
    let trees: Vec<SpanningTree<W>> = keep.iter().map(|&i| trees[i].clone()).collect();
    let mut points: Vec<WeightVec<W>> = Vec::new();
    for t in &trees {
        if !points.contains(&t.weight()) {
            points.push(t.weight());
        }
    }
    points.sort_by(|a, b| a.lex_cmp(b));
    Ok(WeightedSumFront { points, trees })
}
