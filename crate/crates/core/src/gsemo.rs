//! GSEMO for the bi-objective MST.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ea::RunRecord;
use crate::error::{Error, Result};
use crate::generators::{Family, Instance};
use crate::graph::Graph;
use crate::mutation::{mutate_in_place, MutationStrategy};
use crate::tree::{random_spanning_tree, SpanningTree};
use crate::weight::{Weight, WeightVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Accepted,
    Rejected,
}

/// Mutually non-dominated trees, one per weight vector.
#[derive(Clone, Debug, Default)]
pub struct ParetoArchive<W> {
    members: Vec<SpanningTree<W>>,
}

impl<W: Weight> ParetoArchive<W> {
    pub fn new() -> Self {
        ParetoArchive { members: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SpanningTree<W>] {
        &self.members
    }

    pub fn weights(&self) -> impl Iterator<Item = WeightVec<W>> + '_ {
        self.members.iter().map(|t| t.weight())
    }

    /// Rejects `tree` if a member strictly dominates it; otherwise removes
    /// every member it weakly dominates (equal weights included) and adds it.
    pub fn insert(&mut self, tree: SpanningTree<W>) -> InsertOutcome {
        let mut slot = tree;
        self.insert_swap(&mut slot)
    }

    /// Like [`insert`](Self::insert), but takes the candidate from `scratch`
    /// and leaves a spare tree buffer behind in it when accepted.
    pub fn insert_swap(&mut self, scratch: &mut SpanningTree<W>) -> InsertOutcome {
        let w = scratch.weight();
        if self.members.iter().any(|m| m.weight().strictly_dominates(&w)) {
            return InsertOutcome::Rejected;
        }
        match self.members.iter().position(|m| w.weakly_dominates(&m.weight())) {
            Some(first) => {
                std::mem::swap(&mut self.members[first], scratch);
                let mut i = first + 1;
                while i < self.members.len() {
                    if w.weakly_dominates(&self.members[i].weight()) {
                        self.members.swap_remove(i);
                    } else {
                        i += 1;
                    }
                }
            }
            None => self.members.push(scratch.clone()),
        }
        debug_assert!(self.is_mutually_non_dominated());
        InsertOutcome::Accepted
    }

    pub fn is_mutually_non_dominated(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members[i + 1..]
                .iter()
                .all(|b| !a.weight().weakly_dominates(&b.weight()) && !b.weight().weakly_dominates(&a.weight()))
        })
    }

    /// Members sorted by weight, as CSV `w1,w2,edge_ids...`.
    pub fn write_csv<Wr: Write>(&self, out: Wr) -> Result<()> {
        let mut sorted: Vec<&SpanningTree<W>> = self.members.iter().collect();
        sorted.sort_by(|a, b| a.weight().lex_cmp(&b.weight()));
        let mut wtr = csv::WriterBuilder::new().flexible(true).from_writer(out);
        wtr.write_record(["w1", "w2", "edge_ids"])?;
        for t in sorted {
            let w = t.weight();
            let mut row = vec![w.get(0).to_string(), w.get(1).to_string()];
            row.extend(t.edge_ids().iter().map(|e| e.to_string()));
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GsemoOptions {
    pub budget: u64,
}

/// A finished GSEMO run.
#[derive(Clone, Debug)]
pub struct GsemoRun<W> {
    pub record: RunRecord,
    pub archive: ParetoArchive<W>,
    /// `(iteration, covered target points)`, one entry per change, starting
    /// at iteration 0.
    pub trace: Vec<(u64, usize)>,
}

/// Writes a coverage trace as CSV `iteration,covered`.
pub fn write_trace_csv<Wr: Write>(out: Wr, trace: &[(u64, usize)]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["iteration", "covered"])?;
    for (it, c) in trace {
        wtr.write_record([it.to_string(), c.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Runs GSEMO until every point of `target_front` is held by the archive or
/// the budget runs out.
pub fn run_gsemo<W: Weight>(
    graph: &Graph<W>,
    strategy: &MutationStrategy,
    target_front: &[WeightVec<W>],
    opts: GsemoOptions,
    seed: u64,
) -> Result<GsemoRun<W>> {
    run_gsemo_observed(graph, strategy, target_front, opts, seed, |_, _| {})
}

/// [`run_gsemo`] with a hook that sees the archive after every iteration.
pub fn run_gsemo_observed<W: Weight>(
    graph: &Graph<W>,
    strategy: &MutationStrategy,
    target_front: &[WeightVec<W>],
    opts: GsemoOptions,
    seed: u64,
    mut observe: impl FnMut(u64, &ParetoArchive<W>),
) -> Result<GsemoRun<W>> {
    graph.require_dim(2, "GSEMO")?;
    if opts.budget == 0 {
        return Err(Error::usage("budget must be at least 1"));
    }
    if strategy.edge_count() != graph.m() {
        return Err(Error::usage("mutation strategy was built for a different graph"));
    }
    if target_front.iter().any(|p| p.dim() != 2) {
        return Err(Error::usage("target front must be bi-objective"));
    }
    let start = Instant::now();
    let mut target: Vec<WeightVec<W>> = target_front.to_vec();
    target.sort_by(|a, b| a.lex_cmp(b));
    target.dedup();
    let mut covered = vec![false; target.len()];
    let mut covered_count = 0;
    let mut mark = |w: &WeightVec<W>, covered_count: &mut usize| {
        if let Ok(i) = target.binary_search_by(|p| p.lex_cmp(w)) {
            if !covered[i] {
                covered[i] = true;
                *covered_count += 1;
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut archive = ParetoArchive::new();
    let initial = random_spanning_tree(graph, &mut rng);
    mark(&initial.weight(), &mut covered_count);
    let mut scratch = initial.clone();
    archive.insert(initial);
    let mut trace = vec![(0, covered_count)];
    let total = target.len();
    let mut iterations = 0;
    while covered_count < total && iterations < opts.budget {
        iterations += 1;
        let parent = rng.gen_range(0..archive.len());
        scratch.clone_from(&archive.members[parent]);
        mutate_in_place(graph, &mut scratch, strategy, &mut rng);
        let w = scratch.weight();
        if archive.insert_swap(&mut scratch) == InsertOutcome::Accepted {
            let before = covered_count;
            mark(&w, &mut covered_count);
            if covered_count != before {
                trace.push((iterations, covered_count));
            }
        }
        observe(iterations, &archive);
    }
    let min_of = |i: usize| archive.weights().map(|w| w.get(i).to_f64()).fold(f64::INFINITY, f64::min);
    let record = RunRecord {
        seed,
        graph: graph.label().to_string(),
        algo: format!("gsemo-{}", strategy.kind().label()),
        n: graph.n(),
        m: graph.m(),
        iterations,
        success: covered_count == total,
        final_w1: min_of(0),
        final_w2: Some(min_of(1)),
        budget: opts.budget,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok(GsemoRun { record, archive, trace })
}

/// Number of edges of the cheap clique subset contained in `tree`.
pub fn s_count<W: Weight>(tree: &SpanningTree<W>, instance: &Instance<W>) -> Result<usize> {
    if instance.meta.family != Some(Family::G2m) {
        return Err(Error::usage("s-count needs a g2m instance"));
    }
    if !tree.belongs_to(&instance.graph) {
        return Err(Error::usage("tree does not belong to the instance graph"));
    }
    Ok(instance.meta.special_edges.iter().filter(|&&e| tree.contains(e)).count())
}
