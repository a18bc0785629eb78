//! Immutable undirected weighted graphs.

use std::collections::HashSet;

use crate::disjoint::DisjointSets;
use crate::error::{Error, Result};
use crate::weight::{Weight, WeightVec};

/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: WeightVec<W>,
}

impl<W> Edge<W> {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A connected simple undirected graph whose edges all carry weight vectors
/// of the same dimension (1 or 2).
#[derive(Clone, Debug)]
pub struct Graph<W> {
    n: usize,
    dim: usize,
    edges: Vec<Edge<W>>,
    adjacency: Vec<Vec<(usize, EdgeId)>>,
    label: String,
}

impl<W: Weight> Graph<W> {
    /// Builds and validates a graph. Edge ids follow the order of `edges`.
    pub fn new(n: usize, edges: Vec<Edge<W>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::instance(format!("graph needs at least 2 vertices, got {n}")));
        }
        let dim = edges.first().map_or(1, |e| e.weight.dim());
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        let mut components = DisjointSets::new(n);
        for (id, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::instance(format!(
                    "edge {id} ({}, {}) references a vertex outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::instance(format!("edge {id} is a self-loop at {}", e.u)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::instance(format!(
                    "edge {id} duplicates an earlier edge between {} and {}",
                    e.u, e.v
                )));
            }
            if e.weight.dim() != dim {
                return Err(Error::instance(format!(
                    "edge {id} has weight dimension {}, expected {dim}",
                    e.weight.dim()
                )));
            }
            if !e.weight.as_slice().iter().all(|w| w.is_valid_edge_weight()) {
                return Err(Error::instance(format!("edge {id} has a non-positive weight {}", e.weight)));
            }
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
            components.union(e.u, e.v);
        }
        if components.count() != 1 {
            return Err(Error::instance(format!("graph is disconnected ({} components)", components.count())));
        }
        Ok(Graph { n, dim, edges, adjacency, label: String::from("graph") })
    }

    /// Convenience constructor from `(u, v, weight)` triples.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = (usize, usize, WeightVec<W>)>) -> Result<Self> {
        Self::new(n, triples.into_iter().map(|(u, v, weight)| Edge { u, v, weight }).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weight_dim(&self) -> usize {
        self.dim
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<W> {
        &self.edges[id]
    }

    pub fn weight(&self, id: EdgeId) -> WeightVec<W> {
        self.edges[id].weight
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adjacency[v]
    }

    /// Largest weight component over all edges.
    pub fn max_weight(&self) -> W {
        let mut best = self.edges[0].weight.first();
        for e in &self.edges {
            for &w in e.weight.as_slice() {
                if w > best {
                    best = w;
                }
            }
        }
        best
    }

    pub(crate) fn check_edge(&self, id: EdgeId) -> Result<()> {
        if id < self.m() {
            Ok(())
        } else {
            Err(Error::usage(format!("edge id {id} out of range 0..{}", self.m())))
        }
    }

    pub(crate) fn require_dim(&self, dim: usize, what: &str) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::usage(format!("{what} requires weight dimension {dim}, graph has {}", self.dim)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: i64) -> WeightVec<i64> {
        WeightVec::single(x)
    }

    #[test]
    fn rejects_invalid_graphs() {
        let self_loop = Graph::from_triples(2, [(0, 0, w(1)), (0, 1, w(1))]);
        assert!(matches!(self_loop, Err(Error::Instance(_))));

        let dup = Graph::from_triples(2, [(0, 1, w(1)), (1, 0, w(2))]);
        assert!(matches!(dup, Err(Error::Instance(_))));

        let disconnected = Graph::from_triples(4, [(0, 1, w(1)), (2, 3, w(1))]);
        assert!(matches!(disconnected, Err(Error::Instance(_))));

        let zero = Graph::from_triples(2, [(0, 1, w(0))]);
        assert!(matches!(zero, Err(Error::Instance(_))));

        let mixed = Graph::from_triples(3, [(0, 1, w(1)), (1, 2, WeightVec::pair(1, 2))]);
        assert!(matches!(mixed, Err(Error::Instance(_))));

        let out_of_range = Graph::from_triples(2, [(0, 2, w(1))]);
        assert!(matches!(out_of_range, Err(Error::Instance(_))));
    }

    #[test]
    fn adjacency_and_accessors() {
        let g = Graph::from_triples(3, [(0, 1, w(1)), (1, 2, w(2)), (0, 2, w(5))]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.weight_dim(), 1);
        assert_eq!(g.neighbors(1), &[(0, 0), (2, 1)]);
        assert_eq!(g.max_weight(), 5);
        assert_eq!(g.edge(2).other(2), 0);
    }
}
