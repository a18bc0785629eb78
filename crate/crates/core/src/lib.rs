//! Evolutionary algorithms for the single- and bi-objective minimum
//! spanning tree problem with uniform, rank-biased and mixed edge-exchange
//! mutation, together with exact oracles, instance generators and an
//! experiment harness.

pub mod disjoint;
pub mod ea;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod gsemo;
pub mod io;
pub mod mutation;
pub mod oracles;
pub mod rank;
pub mod tree;
pub mod weight;

pub use ea::{bad_edge_count, run_one_plus_one, EaOptions, RunRecord};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph};
pub use gsemo::{run_gsemo, s_count, GsemoOptions, ParetoArchive};
pub use mutation::{mutate, MutationStrategy, StrategyKind};
pub use tree::{random_spanning_tree, tree_weight, SpanningTree};
pub use weight::{dominance, Dominance, Weight, WeightVec};
