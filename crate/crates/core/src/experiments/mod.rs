//! Experiment pipelines: edge shares and their per-rank averages, the
//! fixed-base regression model, and runtime scaling.

pub mod stats;

use std::io::{Read, Write};

use rayon::prelude::*;

use crate::ea::{default_budget, run_one_plus_one, EaOptions, RunRecord, MAX_BUDGET};
use crate::error::{Error, Result};
use crate::generators::{
    lollipop, random_graph, tailed_pareto_front, triangular_tailed, triangular_tailed_mo, EdgeClass, Family, Instance,
    MoParams, TailVariant, WeightModel,
};
use crate::graph::Graph;
use crate::gsemo::{run_gsemo, GsemoOptions};
use crate::mutation::{MutationStrategy, StrategyKind};
use crate::oracles::{kruskal_mst, weighted_sum_front};
use crate::rank::{rank_by_domination, EdgeRanking};
use crate::weight::Weight;

/// Deterministic per-run seed derived from a master seed (splitmix64).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Edge shares of one instance.
#[derive(Clone, Debug)]
pub struct ShareTable {
    /// `shares[e]`: fraction of the non-dominated trees containing edge `e`.
    pub shares: Vec<f64>,
    /// `p_hat[r - 1]`: share of the edge with domination rank `r`.
    pub p_hat: Vec<f64>,
    pub ranking: EdgeRanking,
    /// Number of distinct non-dominated trees the shares are based on.
    pub trees: usize,
}

/// Shares over the trees found by the weighted-sum sweep, distinct trees
/// counted once.
pub fn estimate_shares<W: Weight>(graph: &Graph<W>, steps: u64, tie_seed: u64) -> Result<ShareTable> {
    let front = weighted_sum_front(graph, steps)?;
    let mut counts = vec![0usize; graph.m()];
    for t in &front.trees {
        for e in t.edge_ids() {
            counts[e] += 1;
        }
    }
    let total = front.trees.len();
    let shares: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
    let ranking = rank_by_domination(graph, tie_seed)?;
    let p_hat = ranking.edges_by_rank().iter().map(|&e| shares[e]).collect();
    Ok(ShareTable { shares, p_hat, ranking, trees: total })
}

/// Random instance family for share estimation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomFamily {
    pub class: EdgeClass,
    pub model: WeightModel,
    pub n: usize,
}

/// Rankwise mean of `p_hat` over many instances. Delaunay graphs differ in
/// edge count, so each rank keeps its own sample count.
#[derive(Clone, Debug, PartialEq)]
pub struct PmCurve {
    pub mean: Vec<f64>,
    pub counts: Vec<usize>,
}

impl PmCurve {
    pub fn write_csv<Wr: Write>(&self, out: Wr) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["rank", "p_hat", "count"])?;
        for (i, (m, c)) in self.mean.iter().zip(&self.counts).enumerate() {
            wtr.write_record([(i + 1).to_string(), m.to_string(), c.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Reads a `rank,p_hat[,count]` table.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(input);
        let mut mean = Vec::new();
        let mut counts = Vec::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row?;
            let line = i + 2;
            let field = |k: usize| row.get(k).map(str::trim);
            let rank: usize =
                field(0).and_then(|s| s.parse().ok()).ok_or(Error::Parse { line, msg: "bad rank".into() })?;
            if rank != i + 1 {
                return Err(Error::Parse { line, msg: format!("expected rank {}, found {rank}", i + 1) });
            }
            let p: f64 = field(1).and_then(|s| s.parse().ok()).ok_or(Error::Parse { line, msg: "bad p_hat".into() })?;
            let c: usize = match field(2) {
                Some(s) => s.parse().map_err(|_| Error::Parse { line, msg: "bad count".into() })?,
                None => 1,
            };
            mean.push(p);
            counts.push(c);
        }
        Ok(PmCurve { mean, counts })
    }
}

pub fn estimate_pm(family: RandomFamily, instances: usize, seed: u64, steps: u64) -> Result<PmCurve> {
    if instances == 0 {
        return Err(Error::usage("estimate_pm needs at least one instance"));
    }
    let tables: Vec<Vec<f64>> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i as u64);
            let inst = random_graph(family.class, family.model, family.n, s)?;
            Ok(estimate_shares(&inst.graph, steps, s)?.p_hat)
        })
        .collect::<Result<_>>()?;
    let len = tables.iter().map(Vec::len).max().unwrap_or(0);
    let mut sum = vec![0.0; len];
    let mut counts = vec![0usize; len];
    for t in &tables {
        for (r, &p) in t.iter().enumerate() {
            sum[r] += p;
            counts[r] += 1;
        }
    }
    let mean = sum.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect();
    Ok(PmCurve { mean, counts })
}

/// Least-squares fit of `beta * a^r` with `a = (n - 1) / n` fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegressionFit {
    pub beta: f64,
    pub r_squared: f64,
    pub rmse: f64,
    pub n: usize,
    pub points: usize,
}

/// Fits `curve[r - 1] ≈ beta * ((n - 1) / n)^r` for `r = 1..=len`.
pub fn fit_beta_model(curve: &[f64], n: usize) -> Result<RegressionFit> {
    if curve.is_empty() {
        return Err(Error::DegenerateFit("empty curve".into()));
    }
    if n < 2 {
        return Err(Error::usage(format!("the model base needs n >= 2, got {n}")));
    }
    if curve.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateFit("curve contains non-finite values".into()));
    }
    if curve.iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateFit("curve is identically zero".into()));
    }
    let a = (n as f64 - 1.0) / n as f64;
    let x: Vec<f64> = (1..=curve.len()).map(|r| a.powi(r as i32)).collect();
    let sxy: f64 = x.iter().zip(curve).map(|(x, y)| x * y).sum();
    let sxx: f64 = x.iter().map(|x| x * x).sum();
    let beta = sxy / sxx;
    let mean = curve.iter().sum::<f64>() / curve.len() as f64;
    let ss_res: f64 = x.iter().zip(curve).map(|(x, y)| (y - beta * x).powi(2)).sum();
    let ss_tot: f64 = curve.iter().map(|y| (y - mean).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };
    Ok(RegressionFit { beta, r_squared, rmse: (ss_res / curve.len() as f64).sqrt(), n, points: curve.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// The (1+1) EA.
    Ea,
    Gsemo,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Ea => "ea",
            Algorithm::Gsemo => "gsemo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetPolicy {
    /// [`default_budget`] for the EA; that times `n/4 + 1` (the front
    /// size) for GSEMO.
    Auto,
    Fixed(u64),
}

impl BudgetPolicy {
    pub fn budget(self, algo: Algorithm, n: usize, m: usize) -> u64 {
        match self {
            BudgetPolicy::Fixed(b) => b,
            BudgetPolicy::Auto => match algo {
                Algorithm::Ea => default_budget(n, m),
                Algorithm::Gsemo => (default_budget(n, m) * (n as u64 / 4 + 1)).min(MAX_BUDGET),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScalingConfig {
    pub algo: Algorithm,
    pub strategy: StrategyKind,
    pub family: Family,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub budget: BudgetPolicy,
    pub seed: u64,
}

/// Iteration statistics at one size, over successful runs only.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub m: usize,
    pub budget: u64,
    pub reps: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    /// Whether this size entered the exponent fit (success rate >= 50%).
    pub included: bool,
}

#[derive(Clone, Debug)]
pub struct ScalingResult {
    pub rows: Vec<SizeSummary>,
    /// Slope and intercept of `ln(median) = alpha ln(n) + c`; absent when
    /// fewer than two sizes qualify.
    pub fit: Option<(f64, f64)>,
    pub records: Vec<RunRecord>,
}

impl ScalingResult {
    pub fn alpha(&self) -> Option<f64> {
        self.fit.map(|(a, _)| a)
    }

    pub fn write_csv<Wr: Write>(&self, out: Wr) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["n", "m", "budget", "reps", "successes", "success_rate", "median", "q1", "q3", "included"])?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            wtr.write_record([
                r.n.to_string(),
                r.m.to_string(),
                r.budget.to_string(),
                r.reps.to_string(),
                r.successes.to_string(),
                r.success_rate.to_string(),
                opt(r.median),
                opt(r.q1),
                opt(r.q3),
                r.included.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Seed of replication `rep` at size `n`; independent of algorithm and
/// strategy, so runs with different strategies are paired.
pub fn run_seed(master: u64, n: usize, rep: usize) -> u64 {
    derive_seed(derive_seed(master, n as u64), rep as u64)
}

/// Builds a single-objective constructed instance.
pub fn single_objective_instance(family: Family, n: usize) -> Result<Instance<i64>> {
    match family {
        Family::G1 => triangular_tailed(n, TailVariant::G1),
        Family::G2 => triangular_tailed(n, TailVariant::G2),
        Family::Lollipop => lollipop(n),
        other => Err(Error::usage(format!("{} is not a single-objective constructed family", other.label()))),
    }
}

/// Runs `reps` replications of a (1+1) EA or GSEMO configuration on a
/// constructed instance of size `n`, in parallel, in replication order.
pub fn run_replications(
    algo: Algorithm,
    strategy: StrategyKind,
    instance: &Instance<i64>,
    budget: u64,
    reps: usize,
    master: u64,
) -> Result<Vec<RunRecord>> {
    let graph = &instance.graph;
    let n = graph.n();
    match algo {
        Algorithm::Ea => {
            let target = kruskal_mst(graph)?.1;
            (0..reps)
                .into_par_iter()
                .map(|rep| {
                    let seed = run_seed(master, n, rep);
                    let s = MutationStrategy::for_graph(graph, strategy, seed)?;
                    run_one_plus_one(graph, &s, EaOptions { budget, target: Some(target) }, seed)
                })
                .collect()
        }
        Algorithm::Gsemo => {
            let front = tailed_pareto_front(&instance.meta)?;
            (0..reps)
                .into_par_iter()
                .map(|rep| {
                    let seed = run_seed(master, n, rep);
                    let s = MutationStrategy::for_graph(graph, strategy, seed)?;
                    Ok(run_gsemo(graph, &s, &front, GsemoOptions { budget }, seed)?.record)
                })
                .collect()
        }
    }
}

/// Builds the instance a scaling experiment uses at size `n`.
pub fn scaling_instance(algo: Algorithm, family: Family, n: usize) -> Result<Instance<i64>> {
    match algo {
        Algorithm::Ea => single_objective_instance(family, n),
        Algorithm::Gsemo => match family {
            Family::G1m | Family::G2m => triangular_tailed_mo(n, family, MoParams::defaults(n, family)),
            other => Err(Error::usage(format!(
                "gsemo scaling runs on g1m or g2m, whose fronts are known in closed form; got {}",
                other.label()
            ))),
        },
    }
}

/// Runs every size, summarizes the successful runs and fits the exponent
/// of the median iteration count over sizes with at least 50% success.
pub fn runtime_scaling(config: &ScalingConfig) -> Result<ScalingResult> {
    if config.sizes.len() < 2 {
        return Err(Error::usage("scaling needs at least two sizes"));
    }
    if config.reps < 10 {
        return Err(Error::usage(format!("scaling needs at least 10 replications, got {}", config.reps)));
    }
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for &n in &config.sizes {
        let inst = scaling_instance(config.algo, config.family, n)?;
        let budget = config.budget.budget(config.algo, n, inst.graph.m());
        let recs = run_replications(config.algo, config.strategy, &inst, budget, config.reps, config.seed)?;
        let its: Vec<f64> = recs.iter().filter(|r| r.success).map(|r| r.iterations as f64).collect();
        let success_rate = its.len() as f64 / recs.len() as f64;
        rows.push(SizeSummary {
            n,
            m: inst.graph.m(),
            budget,
            reps: recs.len(),
            successes: its.len(),
            success_rate,
            median: stats::median(&its),
            q1: stats::quantile(&its, 0.25),
            q3: stats::quantile(&its, 0.75),
            included: success_rate >= 0.5 && stats::median(&its).is_some_and(|m| m > 0.0),
        });
        records.extend(recs);
    }
    let fit = fit_exponent(&rows).ok();
    Ok(ScalingResult { rows, fit, records })
}

/// Least-squares fit of `ln(median) = alpha ln(n) + c` over included rows.
pub fn fit_exponent(rows: &[SizeSummary]) -> Result<(f64, f64)> {
    let (x, y): (Vec<f64>, Vec<f64>) =
        rows.iter().filter(|r| r.included).filter_map(|r| r.median.map(|m| ((r.n as f64).ln(), m.ln()))).unzip();
    stats::least_squares(&x, &y)
}
