//! Graph families: triangular-tailed graphs (single- and bi-objective), the
//! lollipop graph, and random complete / Delaunay graphs.

mod delaunay;

pub use delaunay::delaunay_edges;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph};
use crate::weight::WeightVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    G1,
    G2,
    Lollipop,
    G1m,
    G2m,
    Ceg,
    Deg,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::G1 => "g1",
            Family::G2 => "g2",
            Family::Lollipop => "lollipop",
            Family::G1m => "g1m",
            Family::G2m => "g2m",
            Family::Ceg => "ceg",
            Family::Deg => "deg",
        }
    }

    pub fn is_triangular_tailed(self) -> bool {
        matches!(self, Family::G1 | Family::G2 | Family::G1m | Family::G2m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightModel {
    /// Both weights i.i.d. uniform on [5, 200].
    RndRnd,
    /// First weight Euclidean distance, second uniform on [5, 200].
    EucRnd,
}

impl WeightModel {
    pub fn label(self) -> &'static str {
        match self {
            WeightModel::RndRnd => "rndrnd",
            WeightModel::EucRnd => "eucrnd",
        }
    }
}

/// Weights of the bi-objective clique: `k` on ordinary clique edges, `u` on
/// the `l` edges of the special acyclic subset (bi-objective variant 2 only).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoParams {
    pub l: usize,
    pub u: i64,
    pub k: i64,
}

impl MoParams {
    /// Defaults: `k = 3` for variant 1; `u = 3`, `k = u + n + 2`,
    /// `l = n/2 - 1` for variant 2.
    pub fn defaults(n: usize, family: Family) -> Self {
        match family {
            Family::G2m => MoParams { l: n / 2 - 1, u: 3, k: 3 + n as i64 + 2 },
            _ => MoParams { l: 0, u: 0, k: 3 },
        }
    }
}

/// Structure of a generated instance, kept for instrumentation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InstanceMeta {
    pub family: Option<Family>,
    pub n: usize,
    /// Weight unit `a = n^2` of the single-objective triangular families.
    pub a: Option<i64>,
    /// The two upper edges of each tail triangle.
    pub tail_upper: Vec<[EdgeId; 2]>,
    /// The bottom edge of each tail triangle.
    pub tail_bottom: Vec<EdgeId>,
    pub clique_edges: Vec<EdgeId>,
    /// The cheap acyclic clique subset (bi-objective variant 2).
    pub special_edges: Vec<EdgeId>,
    /// Lollipop path edges.
    pub path_edges: Vec<EdgeId>,
    pub mo_params: Option<MoParams>,
    pub weight_model: Option<WeightModel>,
    pub seed: Option<u64>,
}

impl InstanceMeta {
    /// Number of tail triangles.
    pub fn triangles(&self) -> usize {
        self.tail_bottom.len()
    }

    pub fn tail_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.tail_upper.iter().zip(&self.tail_bottom).flat_map(|(up, &b)| [up[0], up[1], b])
    }
}

#[derive(Clone, Debug)]
pub struct Instance<W> {
    pub graph: Graph<W>,
    pub meta: InstanceMeta,
}

fn check_tailed_n(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::usage(format!("triangular-tailed graphs need n divisible by 4 and n >= 8, got {n}")));
    }
    Ok(())
}

/// Builds the shared topology: tail vertices `0..=n/2` (vertex `n/2` is
/// also a clique vertex) and the clique on `n/2..n`. Edges are emitted
/// triangle by triangle (upper, upper, bottom) and then clique edges in
/// lexicographic order.
fn tailed_topology<W: crate::weight::Weight>(
    n: usize,
    upper: WeightVec<W>,
    bottom: WeightVec<W>,
    clique_weight: impl Fn(usize, usize) -> WeightVec<W>,
) -> Result<(Graph<W>, InstanceMeta)> {
    check_tailed_n(n)?;
    let triangles = n / 4;
    let mut edges = Vec::new();
    let mut meta = InstanceMeta { n, ..InstanceMeta::default() };
    for i in 0..triangles {
        let (x, y, z) = (2 * i, 2 * i + 1, 2 * i + 2);
        let id = edges.len();
        edges.push(Edge { u: x, v: y, weight: upper });
        edges.push(Edge { u: y, v: z, weight: upper });
        edges.push(Edge { u: x, v: z, weight: bottom });
        meta.tail_upper.push([id, id + 1]);
        meta.tail_bottom.push(id + 2);
    }
    let first = n / 2;
    for x in first..n {
        for y in x + 1..n {
            meta.clique_edges.push(edges.len());
            edges.push(Edge { u: x, v: y, weight: clique_weight(x - first, y - first) });
        }
    }
    Ok((Graph::new(n, edges)?, meta))
}

/// Single-objective variant of the triangular-tailed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailVariant {
    /// Clique edges `4a`, heavier than every tail edge.
    G1,
    /// Clique edges `a`, lighter than every tail edge.
    G2,
}

/// Chain of `n/4` triangles (two `2a` edges and one `3a` bottom edge each,
/// `a = n^2`) hanging off a clique on `n/2` vertices.
pub fn triangular_tailed(n: usize, variant: TailVariant) -> Result<Instance<i64>> {
    check_tailed_n(n)?;
    let a = (n * n) as i64;
    let clique = match variant {
        TailVariant::G1 => 4 * a,
        TailVariant::G2 => a,
    };
    let (graph, mut meta) =
        tailed_topology(n, WeightVec::single(2 * a), WeightVec::single(3 * a), |_, _| WeightVec::single(clique))?;
    let family = match variant {
        TailVariant::G1 => Family::G1,
        TailVariant::G2 => Family::G2,
    };
    meta.family = Some(family);
    meta.a = Some(a);
    Ok(Instance { graph: graph.with_label(format!("{}-n{n}", family.label())), meta })
}

/// Bi-objective triangular-tailed graph: upper tail edges `(1, 2)`, bottom
/// edges `(2, 1)`. Variant 1 weighs every clique edge `(k, k)`; variant 2
/// weighs a path of `l` clique edges `(u, u)` and the rest `(k, k)`.
pub fn triangular_tailed_mo(n: usize, family: Family, params: MoParams) -> Result<Instance<i64>> {
    check_tailed_n(n)?;
    let MoParams { l, u, k } = params;
    match family {
        Family::G1m => {
            if k <= 2 {
                return Err(Error::usage(format!("g1m requires k > 2, got k = {k}")));
            }
        }
        Family::G2m => {
            if l > n / 2 - 1 {
                return Err(Error::usage(format!("g2m requires l <= n/2 - 1 = {}, got l = {l}", n / 2 - 1)));
            }
            if u <= 2 {
                return Err(Error::usage(format!("g2m requires u > 2, got u = {u}")));
            }
            if k <= u + n as i64 + 1 {
                return Err(Error::usage(format!("g2m requires k > u + n + 1 = {}, got k = {k}", u + n as i64 + 1)));
            }
        }
        other => {
            return Err(Error::usage(format!("{} is not a bi-objective tailed family", other.label())));
        }
    }
    let special = |x: usize, y: usize| family == Family::G2m && y == x + 1 && y <= l;
    let (graph, mut meta) = tailed_topology(n, WeightVec::pair(1, 2), WeightVec::pair(2, 1), |x, y| {
        if special(x, y) {
            WeightVec::pair(u, u)
        } else {
            WeightVec::pair(k, k)
        }
    })?;
    let first = n / 2;
    meta.special_edges = meta
        .clique_edges
        .iter()
        .copied()
        .filter(|&id| {
            let e = graph.edge(id);
            special(e.u - first, e.v - first)
        })
        .collect();
    meta.family = Some(family);
    meta.mo_params = Some(params);
    let label = match family {
        Family::G2m => format!("g2m-n{n}-l{l}-u{u}-k{k}"),
        _ => format!("g1m-n{n}-k{k}"),
    };
    Ok(Instance { graph: graph.with_label(label), meta })
}

/// Clique on `n/2` vertices (weight 1) with a path of `n/2` edges (weight 2)
/// attached to clique vertex `n/2 - 1`.
pub fn lollipop(n: usize) -> Result<Instance<i64>> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::usage(format!("lollipop needs an even n >= 6, got {n}")));
    }
    let half = n / 2;
    let mut edges = Vec::new();
    let mut meta = InstanceMeta { n, family: Some(Family::Lollipop), ..InstanceMeta::default() };
    for x in 0..half {
        for y in x + 1..half {
            meta.clique_edges.push(edges.len());
            edges.push(Edge { u: x, v: y, weight: WeightVec::single(1) });
        }
    }
    for x in half - 1..n - 1 {
        meta.path_edges.push(edges.len());
        edges.push(Edge { u: x, v: x + 1, weight: WeightVec::single(2) });
    }
    Ok(Instance { graph: Graph::new(n, edges)?.with_label(format!("lollipop-n{n}")), meta })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Complete graph.
    Complete,
    /// Delaunay triangulation of the points.
    Delaunay,
}

/// Random bi-objective graph on `n` points uniform in `[0, 100]^2`.
pub fn random_graph(class: EdgeClass, model: WeightModel, n: usize, seed: u64) -> Result<Instance<f64>> {
    if n < 3 {
        return Err(Error::usage(format!("random graphs need n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..=100.0), rng.gen_range(0.0..=100.0))).collect();
    let pairs: Vec<(usize, usize)> = match class {
        EdgeClass::Complete => (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect(),
        EdgeClass::Delaunay => delaunay_edges(&points, seed),
    };
    let mut draw = || rng.gen_range(5.0..=200.0);
    let edges = pairs
        .into_iter()
        .map(|(x, y)| {
            let w1 = match model {
                WeightModel::RndRnd => draw(),
                WeightModel::EucRnd => {
                    let (dx, dy) = (points[x].0 - points[y].0, points[x].1 - points[y].1);
                    dx.hypot(dy)
                }
            };
            let w2 = draw();
            Edge { u: x, v: y, weight: WeightVec::pair(w1, w2) }
        })
        .collect();
    let family = match class {
        EdgeClass::Complete => Family::Ceg,
        EdgeClass::Delaunay => Family::Deg,
    };
    let graph = Graph::new(n, edges)?.with_label(format!("{}-{}-n{n}-s{seed}", family.label(), model.label()));
    let meta = InstanceMeta {
        family: Some(family),
        n,
        weight_model: Some(model),
        seed: Some(seed),
        ..InstanceMeta::default()
    };
    Ok(Instance { graph, meta })
}

/// Exact Pareto front of a bi-objective tailed instance, in ascending order
/// of the first weight.
///
/// Every spanning tree holds two edges per triangle and a spanning tree of
/// the clique. With `b` bottom edges the tail weighs `(2η + b, 4η - b)`, so
/// all tail choices are mutually incomparable; the clique contributes its
/// cheapest spanning tree, which in variant 2 contains the whole special
/// path.
pub fn tailed_pareto_front(meta: &InstanceMeta) -> Result<Vec<WeightVec<i64>>> {
    let params = match (meta.family, meta.mo_params) {
        (Some(Family::G1m | Family::G2m), Some(p)) => p,
        _ => return Err(Error::usage("closed-form front only exists for g1m / g2m instances")),
    };
    let eta = meta.triangles() as i64;
    let clique_edges = (meta.n / 2 - 1) as i64;
    let special = meta.special_edges.len() as i64;
    let clique = special * params.u + (clique_edges - special) * params.k;
    Ok((0..=eta).map(|b| WeightVec::pair(2 * eta + b + clique, 4 * eta - b + clique)).collect())
}
