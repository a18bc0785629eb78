//! Spanning trees and the edge-exchange primitive.
//!
//! A tree is stored as parent pointers rooted at a fixed vertex together with
//! an edge-membership table. Inserting an edge `(u, v)` walks up from both
//! endpoints to their lowest common ancestor, so a cycle query costs time
//! proportional to the cycle length. Dropping a cycle edge re-hangs the
//! detached subtree by reversing the parent pointers along one side of the
//! cycle.

use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::weight::{Weight, WeightVec};

const NONE: usize = usize::MAX;

#[derive(Debug)]
pub struct SpanningTree<W> {
    parent: Vec<usize>,
    parent_edge: Vec<EdgeId>,
    in_tree: Vec<bool>,
    root: usize,
    weight: WeightVec<W>,
    // scratch for lowest-common-ancestor queries
    marks: Vec<u64>,
    stamp: u64,
}

impl<W: Clone> Clone for SpanningTree<W> {
    fn clone(&self) -> Self {
        SpanningTree {
            parent: self.parent.clone(),
            parent_edge: self.parent_edge.clone(),
            in_tree: self.in_tree.clone(),
            root: self.root,
            weight: self.weight.clone(),
            marks: vec![0; self.marks.len()],
            stamp: 0,
        }
    }

    fn clone_from(&mut self, source: &Self) {
        self.parent.clone_from(&source.parent);
        self.parent_edge.clone_from(&source.parent_edge);
        self.in_tree.clone_from(&source.in_tree);
        self.root = source.root;
        self.weight = source.weight.clone();
        if self.marks.len() != source.marks.len() {
            self.marks = vec![0; source.marks.len()];
            self.stamp = 0;
        }
    }
}

/// Trees compare and hash by edge set.
impl<W> PartialEq for SpanningTree<W> {
    fn eq(&self, other: &Self) -> bool {
        self.in_tree == other.in_tree
    }
}

impl<W> Eq for SpanningTree<W> {}

impl<W> Hash for SpanningTree<W> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.in_tree.hash(state);
    }
}

impl<W: Weight> SpanningTree<W> {
    /// Builds a tree from exactly `n - 1` edge ids forming a spanning tree
    /// of `graph`.
    pub fn from_edges(graph: &Graph<W>, edge_ids: &[EdgeId]) -> Result<Self> {
        let n = graph.n();
        if edge_ids.len() != n - 1 {
            return Err(Error::usage(format!(
                "a spanning tree on {n} vertices has {} edges, got {}",
                n - 1,
                edge_ids.len()
            )));
        }
        let mut in_tree = vec![false; graph.m()];
        let mut adjacency = vec![Vec::new(); n];
        for &id in edge_ids {
            graph.check_edge(id)?;
            if std::mem::replace(&mut in_tree[id], true) {
                return Err(Error::usage(format!("edge {id} listed twice")));
            }
            let e = graph.edge(id);
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }

        let root = 0;
        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &(y, id) in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    parent_edge[y] = id;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached != n {
            return Err(Error::usage("edge set does not span the graph (it contains a cycle)"));
        }

        let mut tree = SpanningTree {
            parent,
            parent_edge,
            in_tree,
            root,
            weight: WeightVec::zero(graph.weight_dim()),
            marks: vec![0; n],
            stamp: 0,
        };
        tree.weight = tree.canonical_weight(graph);
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Total weight, maintained across exchanges.
    pub fn weight(&self) -> WeightVec<W> {
        self.weight
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree.get(e).copied().unwrap_or(false)
    }

    /// Edge ids in ascending order.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = (0..self.n()).filter(|&v| v != self.root).map(|v| self.parent_edge[v]).collect();
        ids.sort_unstable();
        ids
    }

    /// Number of edges of `self` that are not in `other`, i.e. half the
    /// symmetric difference.
    pub fn distance(&self, other: &Self) -> usize {
        self.in_tree.iter().zip(&other.in_tree).filter(|&(&a, &b)| a && !b).count()
    }

    pub fn belongs_to(&self, graph: &Graph<W>) -> bool {
        self.parent.len() == graph.n() && self.in_tree.len() == graph.m()
    }

    fn check_graph(&self, graph: &Graph<W>) -> Result<()> {
        if self.belongs_to(graph) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "tree over {} vertices / {} edges does not belong to graph '{}' ({} / {})",
                self.parent.len(),
                self.in_tree.len(),
                graph.label(),
                graph.n(),
                graph.m()
            )))
        }
    }

    /// Weight summed in ascending edge-id order, so that floating-point
    /// totals depend only on the edge set.
    fn canonical_weight(&self, graph: &Graph<W>) -> WeightVec<W> {
        self.edge_ids().into_iter().fold(WeightVec::zero(graph.weight_dim()), |acc, id| acc + graph.weight(id))
    }

    /// Tree edges on the cycle closed by inserting `e`; empty when `e` is
    /// already a tree edge.
    pub fn cycle_edges(&mut self, graph: &Graph<W>, e: EdgeId) -> Result<Vec<EdgeId>> {
        self.check_graph(graph)?;
        graph.check_edge(e)?;
        if self.in_tree[e] {
            return Ok(Vec::new());
        }
        let edge = graph.edge(e);
        let lca = self.meet(edge.u, edge.v);
        let mut path = Vec::new();
        for start in [edge.u, edge.v] {
            let mut x = start;
            while x != lca {
                path.push(self.parent_edge[x]);
                x = self.parent[x];
            }
        }
        Ok(path)
    }

    /// Inserts `e` and removes one edge of the resulting cycle chosen
    /// uniformly at random; the inserted edge itself is one of the
    /// candidates. Inserting a tree edge leaves the tree unchanged.
    pub fn insert_and_break_cycle<R: Rng + ?Sized>(&mut self, graph: &Graph<W>, e: EdgeId, rng: &mut R) -> Result<()> {
        self.check_graph(graph)?;
        graph.check_edge(e)?;
        self.exchange(graph, e, rng);
        Ok(())
    }

    /// Unchecked edge exchange used on the mutation hot path.
    pub(crate) fn exchange<R: Rng + ?Sized>(&mut self, graph: &Graph<W>, e: EdgeId, rng: &mut R) {
        if self.in_tree[e] {
            return;
        }
        let edge = graph.edge(e);
        let (u, v) = (edge.u, edge.v);
        let lca = self.meet(u, v);
        let du = self.steps_to(u, lca);
        let dv = self.steps_to(v, lca);
        let pick = rng.gen_range(0..du + dv + 1);
        if pick == du + dv {
            // the inserted edge was dropped again
            return;
        }
        let (near, far, steps) = if pick < du { (u, v, pick) } else { (v, u, pick - du) };
        let mut cut = near;
        for _ in 0..steps {
            cut = self.parent[cut];
        }
        let dropped = self.parent_edge[cut];

        // Reverse the parent pointers on near..=cut and hang near below far.
        let (mut prev, mut prev_edge, mut cur) = (far, e, near);
        loop {
            let next = self.parent[cur];
            let next_edge = self.parent_edge[cur];
            self.parent[cur] = prev;
            self.parent_edge[cur] = prev_edge;
            if cur == cut {
                break;
            }
            prev = cur;
            prev_edge = next_edge;
            cur = next;
        }
        self.in_tree[e] = true;
        self.in_tree[dropped] = false;
        self.weight =
            if W::EXACT { self.weight + graph.weight(e) - graph.weight(dropped) } else { self.canonical_weight(graph) };
    }

    /// Lowest common ancestor of `u` and `v`, found by climbing from both
    /// ends in lockstep until one side reaches a vertex marked by the other.
    fn meet(&mut self, u: usize, v: usize) -> usize {
        if u == v {
            return u;
        }
        self.stamp += 1;
        let from_u = 2 * self.stamp;
        let from_v = from_u + 1;
        self.marks[u] = from_u;
        if self.marks[v] == from_u {
            return v;
        }
        self.marks[v] = from_v;
        let (mut x, mut y) = (u, v);
        loop {
            if self.parent[x] != NONE {
                x = self.parent[x];
                if self.marks[x] == from_v {
                    return x;
                }
                self.marks[x] = from_u;
            }
            if self.parent[y] != NONE {
                y = self.parent[y];
                if self.marks[y] == from_u {
                    return y;
                }
                self.marks[y] = from_v;
            }
        }
    }

    fn steps_to(&self, mut x: usize, ancestor: usize) -> usize {
        let mut steps = 0;
        while x != ancestor {
            x = self.parent[x];
            steps += 1;
        }
        steps
    }

    /// Checks every structural invariant of a spanning tree of `graph`.
    pub fn validate(&self, graph: &Graph<W>) -> Result<()> {
        self.check_graph(graph)?;
        let n = graph.n();
        let bad = |msg: String| Err(Error::Instance(format!("invalid spanning tree: {msg}")));
        if self.parent[self.root] != NONE {
            return bad("root has a parent".into());
        }
        for v in 0..n {
            if v == self.root {
                continue;
            }
            let (p, id) = (self.parent[v], self.parent_edge[v]);
            if p == NONE || id >= graph.m() {
                return bad(format!("vertex {v} has no parent"));
            }
            let e = graph.edge(id);
            if !((e.u == v && e.v == p) || (e.v == v && e.u == p)) {
                return bad(format!("edge {id} does not join {v} and its parent {p}"));
            }
            if !self.in_tree[id] {
                return bad(format!("parent edge {id} of {v} not marked as tree edge"));
            }
            let mut x = v;
            let mut steps = 0;
            while x != self.root {
                x = self.parent[x];
                steps += 1;
                if steps > n {
                    return bad(format!("parent pointers from {v} cycle"));
                }
            }
        }
        let count = self.in_tree.iter().filter(|&&b| b).count();
        if count != n - 1 {
            return bad(format!("{count} edges marked, expected {}", n - 1));
        }
        if self.canonical_weight(graph) != self.weight {
            return bad(format!(
                "stored weight {} differs from edge sum {}",
                self.weight,
                self.canonical_weight(graph)
            ));
        }
        Ok(())
    }
}

/// Componentwise sum of the tree's edge weights.
pub fn tree_weight<W: Weight>(tree: &SpanningTree<W>, graph: &Graph<W>) -> Result<WeightVec<W>> {
    tree.check_graph(graph)?;
    Ok(tree.canonical_weight(graph))
}

/// Functional form of [`SpanningTree::insert_and_break_cycle`].
pub fn insert_and_break_cycle<W: Weight, R: Rng + ?Sized>(
    tree: &SpanningTree<W>,
    graph: &Graph<W>,
    e: EdgeId,
    rng: &mut R,
) -> Result<SpanningTree<W>> {
    let mut out = tree.clone();
    out.insert_and_break_cycle(graph, e, rng)?;
    Ok(out)
}

/// Uniformly random spanning tree via the random-walk (Aldous–Broder)
/// construction: walk until every vertex is covered and keep the edge of
/// first entry into each vertex.
pub fn random_spanning_tree<W: Weight, R: Rng + ?Sized>(graph: &Graph<W>, rng: &mut R) -> SpanningTree<W> {
    let n = graph.n();
    let mut visited = vec![false; n];
    let mut current = rng.gen_range(0..n);
    visited[current] = true;
    let mut edges = Vec::with_capacity(n - 1);
    while edges.len() < n - 1 {
        let neighbors = graph.neighbors(current);
        let (next, id) = neighbors[rng.gen_range(0..neighbors.len())];
        if !visited[next] {
            visited[next] = true;
            edges.push(id);
        }
        current = next;
    }
    SpanningTree::from_edges(graph, &edges).expect("first-entry edges form a spanning tree")
}
