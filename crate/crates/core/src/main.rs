use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use momst::ea::{default_budget, run_one_plus_one, EaOptions, RunRecord};
use momst::experiments::{
    derive_seed, estimate_pm, fit_beta_model, runtime_scaling, Algorithm, BudgetPolicy, PmCurve, RandomFamily,
    ScalingConfig,
};
use momst::generators::{
    lollipop, random_graph, tailed_pareto_front, triangular_tailed, triangular_tailed_mo, EdgeClass, Family, MoParams,
    TailVariant, WeightModel,
};
use momst::gsemo::{run_gsemo, GsemoOptions};
use momst::io::{read_front_csv, read_graph, write_front_csv, write_graph, write_records_csv, AnyGraph};
use momst::mutation::{MutationStrategy, StrategyKind};
use momst::oracles::{exact_pareto_front, weighted_sum_front, DEFAULT_WSUM_STEPS};
use momst::{Error, Graph, Result, Weight, WeightVec};

#[derive(Parser)]
#[command(name = "momst", version, about = "Evolutionary MST experiments with biased edge-exchange mutation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    G1,
    G2,
    Lollipop,
    G1m,
    G2m,
    Ceg,
    Deg,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::G1 => Family::G1,
            FamilyArg::G2 => Family::G2,
            FamilyArg::Lollipop => Family::Lollipop,
            FamilyArg::G1m => Family::G1m,
            FamilyArg::G2m => Family::G2m,
            FamilyArg::Ceg => Family::Ceg,
            FamilyArg::Deg => Family::Deg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsArg {
    Rndrnd,
    Eucrnd,
}

impl From<WeightsArg> for WeightModel {
    fn from(w: WeightsArg) -> Self {
        match w {
            WeightsArg::Rndrnd => WeightModel::RndRnd,
            WeightsArg::Eucrnd => WeightModel::EucRnd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Ea,
    Gsemo,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Ea => Algorithm::Ea,
            AlgoArg::Gsemo => Algorithm::Gsemo,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Um,
    Bm,
    Mm,
}

impl From<StrategyArg> for StrategyKind {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Um => StrategyKind::Um,
            StrategyArg::Bm => StrategyKind::Bm,
            StrategyArg::Mm => StrategyKind::Mm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Wsum,
}

fn parse_budget_policy(s: &str) -> std::result::Result<BudgetPolicy, String> {
    if s == "auto" {
        return Ok(BudgetPolicy::Auto);
    }
    match s.parse::<u64>() {
        Ok(b) if b > 0 => Ok(BudgetPolicy::Fixed(b)),
        _ => Err(format!("expected 'auto' or a positive integer, got '{s}'")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in the momst graph format
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rndrnd")]
        weights: WeightsArg,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        u: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the closed-form Pareto front (g1m / g2m only)
        #[arg(long)]
        front_out: Option<PathBuf>,
    },
    /// Run the (1+1) EA or GSEMO on a graph file
    Run {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long)]
        graph: PathBuf,
        /// Iteration budget; defaults to 10 * ceil(n^2 ln n) * m / n
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Target front as `w1,w2` CSV (gsemo); computed exactly when absent
        #[arg(long)]
        front: Option<PathBuf>,
    },
    /// Compute a Pareto front exactly or by weighted sums
    Pareto {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_WSUM_STEPS)]
        steps: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the per-rank share curve over random instances
    EstimatePm {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "rndrnd")]
        weights: WeightsArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WSUM_STEPS)]
        steps: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit beta * ((n-1)/n)^r to a share curve
    FitBeta {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Measure how iteration counts scale with n
    Scale {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        #[arg(long, default_value = "auto", value_parser = parse_budget_policy)]
        budget_policy: BudgetPolicy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write every run record
        #[arg(long)]
        runs_out: Option<PathBuf>,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

fn gen(
    family: Family,
    n: usize,
    weights: WeightModel,
    (l, u, k): (Option<usize>, Option<i64>, Option<i64>),
    seed: u64,
    out: &Path,
    front_out: Option<&Path>,
) -> Result<()> {
    if front_out.is_some() && !matches!(family, Family::G1m | Family::G2m) {
        return Err(Error::Usage("--front-out is only available for g1m and g2m".into()));
    }
    match family {
        Family::Ceg | Family::Deg => {
            let class = if family == Family::Ceg { EdgeClass::Complete } else { EdgeClass::Delaunay };
            write_graph(&random_graph(class, weights, n, seed)?.graph, create(out)?)
        }
        Family::G1m | Family::G2m => {
            if n < 8 || !n.is_multiple_of(4) {
                return Err(Error::Usage(format!(
                    "triangular-tailed graphs need n divisible by 4 and n >= 8, got {n}"
                )));
            }
            let d = MoParams::defaults(n, family);
            let params = MoParams { l: l.unwrap_or(d.l), u: u.unwrap_or(d.u), k: k.unwrap_or(d.k) };
            let inst = triangular_tailed_mo(n, family, params)?;
            write_graph(&inst.graph, create(out)?)?;
            if let Some(path) = front_out {
                write_front_csv(create(path)?, &tailed_pareto_front(&inst.meta)?)?;
            }
            Ok(())
        }
        Family::G1 => write_graph(&triangular_tailed(n, TailVariant::G1)?.graph, create(out)?),
        Family::G2 => write_graph(&triangular_tailed(n, TailVariant::G2)?.graph, create(out)?),
        Family::Lollipop => write_graph(&lollipop(n)?.graph, create(out)?),
    }
}

fn run_on<W: Weight>(
    graph: &Graph<W>,
    algo: Algorithm,
    strategy: StrategyKind,
    budget: Option<u64>,
    reps: usize,
    seed: u64,
    front: Option<&Path>,
) -> Result<Vec<RunRecord>> {
    if reps == 0 {
        return Err(Error::Usage("--reps must be at least 1".into()));
    }
    let budget = budget.unwrap_or_else(|| default_budget(graph.n(), graph.m()));
    if budget == 0 {
        return Err(Error::Usage("--budget must be at least 1".into()));
    }
    match algo {
        Algorithm::Ea => {
            if graph.weight_dim() != 1 {
                return Err(Error::Usage("the (1+1) EA needs a single-objective graph".into()));
            }
            let target = momst::oracles::kruskal_mst(graph)?.1;
            (0..reps)
                .into_par_iter()
                .map(|i| {
                    let s = derive_seed(seed, i as u64);
                    let strat = MutationStrategy::for_graph(graph, strategy, s)?;
                    run_one_plus_one(graph, &strat, EaOptions { budget, target: Some(target) }, s)
                })
                .collect()
        }
        Algorithm::Gsemo => {
            if graph.weight_dim() != 2 {
                return Err(Error::Usage("GSEMO needs a bi-objective graph".into()));
            }
            let target: Vec<WeightVec<W>> = match front {
                Some(path) => read_front_csv(open(path)?)?,
                None => exact_pareto_front(graph)?.into_iter().map(|p| p.weight).collect(),
            };
            (0..reps)
                .into_par_iter()
                .map(|i| {
                    let s = derive_seed(seed, i as u64);
                    let strat = MutationStrategy::for_graph(graph, strategy, s)?;
                    Ok(run_gsemo(graph, &strat, &target, GsemoOptions { budget }, s)?.record)
                })
                .collect()
        }
    }
}

fn pareto_on<W: Weight>(graph: &Graph<W>, method: MethodArg, steps: u64, out: &Path) -> Result<()> {
    let front: Vec<WeightVec<W>> = match method {
        MethodArg::Exact => exact_pareto_front(graph)?.into_iter().map(|p| p.weight).collect(),
        MethodArg::Wsum => weighted_sum_front(graph, steps)?.points,
    };
    write_front_csv(create(out)?, &front)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { family, n, weights, l, u, k, seed, out, front_out } => {
            gen(family.into(), n, weights.into(), (l, u, k), seed, &out, front_out.as_deref())
        }
        Command::Run { algo, strategy, graph, budget, reps, seed, out, front } => {
            let g = read_graph(open(&graph)?)?;
            let records = match &g {
                AnyGraph::Int(g) => run_on(g, algo.into(), strategy.into(), budget, reps, seed, front.as_deref())?,
                AnyGraph::Float(g) => run_on(g, algo.into(), strategy.into(), budget, reps, seed, front.as_deref())?,
            };
            write_records_csv(create(&out)?, &records)?;
            let wins = records.iter().filter(|r| r.success).count();
            println!("{wins}/{} runs succeeded", records.len());
            Ok(())
        }
        Command::Pareto { graph, method, steps, out } => match read_graph(open(&graph)?)? {
            AnyGraph::Int(g) => pareto_on(&g, method, steps, &out),
            AnyGraph::Float(g) => pareto_on(&g, method, steps, &out),
        },
        Command::EstimatePm { family, weights, n, instances, seed, steps, out } => {
            let class = match Family::from(family) {
                Family::Ceg => EdgeClass::Complete,
                Family::Deg => EdgeClass::Delaunay,
                other => {
                    return Err(Error::Usage(format!("estimate-pm needs ceg or deg, got {}", other.label())));
                }
            };
            let curve = estimate_pm(RandomFamily { class, model: weights.into(), n }, instances, seed, steps)?;
            curve.write_csv(create(&out)?)
        }
        Command::FitBeta { input, n } => {
            let curve = PmCurve::read_csv(open(&input)?)?;
            let fit = fit_beta_model(&curve.mean, n)?;
            println!("beta={} r2={} rmse={}", fit.beta, fit.r_squared, fit.rmse);
            Ok(())
        }
        Command::Scale { algo, strategy, family, sizes, reps, budget_policy, seed, out, runs_out } => {
            let config = ScalingConfig {
                algo: algo.into(),
                strategy: strategy.into(),
                family: family.into(),
                sizes,
                reps,
                budget: budget_policy,
                seed,
            };
            let result = runtime_scaling(&config)?;
            result.write_csv(create(&out)?)?;
            if let Some(path) = runs_out {
                write_records_csv(create(&path)?, &result.records)?;
            }
            for row in result.rows.iter().filter(|r| !r.included) {
                eprintln!("n={} excluded from the fit (success rate {})", row.n, row.success_rate);
            }
            match result.fit {
                Some((alpha, c)) => println!("alpha={alpha} intercept={c}"),
                None => println!("alpha=NA (fewer than two sizes with success rate >= 0.5)"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
