//! Block interpolation: collapse each block of indeterminates to a single
//! variable, evaluate on a product grid through an oracle, interpolate and
//! aggregate by total degree.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::interp::{aggregate_by_total_degree, interpolate_grid_with, Grid};
use crate::poly::{Rational, UniPoly};

/// Which graph elements carry the indeterminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Edges,
    Vertices,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Edges => "edges",
            ElementKind::Vertices => "vertices",
        })
    }
}

/// Partition of the indeterminate carriers into blocks of size `≤ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPlan {
    kind: ElementKind,
    elements: Vec<usize>,
    d: usize,
    blocks: Vec<Vec<usize>>,
}

/// Round-robin partition of `elements` into `⌈|elements| / d⌉` blocks.
pub fn make_block_plan(kind: ElementKind, elements: Vec<usize>, d: usize) -> Result<BlockPlan> {
    if d == 0 {
        return Err(Error::ZeroCapacity);
    }
    let t = elements.len().div_ceil(d);
    let mut blocks = vec![Vec::new(); t];
    for (i, &e) in elements.iter().enumerate() {
        blocks[i % t].push(e);
    }
    Ok(BlockPlan {
        kind,
        elements,
        d,
        blocks,
    })
}

impl BlockPlan {
    /// Builds a plan from an explicit partition (used to check that the
    /// result does not depend on how elements are grouped).
    pub fn from_blocks(kind: ElementKind, blocks: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroCapacity);
        }
        let mut elements: Vec<usize> = blocks.iter().flatten().copied().collect();
        if let Some(b) = blocks.iter().find(|b| b.is_empty() || b.len() > d) {
            return Err(Error::hypothesis(format!(
                "block of size {} with capacity {d}",
                b.len()
            )));
        }
        let total = elements.len();
        elements.sort_unstable();
        elements.dedup();
        if elements.len() != total {
            return Err(Error::hypothesis("blocks overlap"));
        }
        Ok(BlockPlan {
            kind,
            elements,
            d,
            blocks,
        })
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn capacity(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    /// Per-axis degree bounds `min(d, |block|)`.
    pub fn axis_bounds(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len().min(self.d)).collect()
    }

    /// `∏ (d_i + 1)`.
    pub fn grid_size(&self) -> usize {
        self.axis_bounds().iter().map(|d| d + 1).product()
    }
}

/// An injective sequence `w_0, w_1, …` generated on demand.
#[derive(Clone)]
pub struct WeightList {
    at: Arc<dyn Fn(usize) -> Rational + Send + Sync>,
}

impl fmt::Debug for WeightList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..4).map(|i| self.at(i))).finish()
    }
}

impl WeightList {
    pub fn new(at: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        WeightList { at: Arc::new(at) }
    }

    /// `1, 2, 3, …`
    pub fn positive_integers() -> Self {
        WeightList::new(|i| Rational::from_integer((i + 1).into()))
    }

    pub fn at(&self, i: usize) -> Rational {
        (self.at)(i)
    }

    /// The first `len` weights, checked pairwise distinct.
    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>> {
        let out: Vec<Rational> = (0..len).map(|i| self.at(i)).collect();
        for (i, w) in out.iter().enumerate() {
            if out[..i].contains(w) {
                return Err(Error::DuplicateNode(w.clone()));
            }
        }
        Ok(out)
    }
}

/// Counters shared by every query of one reduction run.
#[derive(Debug, Default)]
pub struct QueryLog {
    queries: AtomicUsize,
    max_size: AtomicUsize,
    max_edges: AtomicUsize,
    weighted: AtomicUsize,
    non_bipartite: AtomicUsize,
}

impl QueryLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one oracle call on `g`.
    pub fn record(&self, g: &Graph) {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.max_size.fetch_max(g.size(), Ordering::Relaxed);
        self.max_edges.fetch_max(g.m(), Ordering::Relaxed);
        if !g.is_unweighted() {
            self.weighted.fetch_add(1, Ordering::Relaxed);
        }
        if !g.is_bipartite() {
            self.non_bipartite.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn queries(&self) -> usize {
        self.queries.load(Ordering::Relaxed)
    }

    /// Largest `|V| + |E|` over recorded queries.
    pub fn max_size(&self) -> usize {
        self.max_size.load(Ordering::Relaxed)
    }

    /// Largest `|E|` over recorded queries.
    pub fn max_edges(&self) -> usize {
        self.max_edges.load(Ordering::Relaxed)
    }

    /// Queries whose graph still carried weights.
    pub fn weighted_queries(&self) -> usize {
        self.weighted.load(Ordering::Relaxed)
    }

    pub fn non_bipartite_queries(&self) -> usize {
        self.non_bipartite.load(Ordering::Relaxed)
    }
}

/// Evaluates the multivariate polynomial at a weighted graph. Every
/// implementation must call [`QueryLog::record`] once per graph it hands to
/// the underlying evaluator.
pub trait EvalOracle: Sync {
    fn eval(&self, g: &Graph, log: &QueryLog) -> Result<Rational>;
}

impl<F> EvalOracle for F
where
    F: Fn(&Graph) -> Result<Rational> + Sync,
{
    fn eval(&self, g: &Graph, log: &QueryLog) -> Result<Rational> {
        log.record(g);
        self(g)
    }
}

/// Outcome of a block-interpolation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub coefficients: UniPoly,
    pub queries: usize,
    pub grid_size: usize,
    pub t: usize,
    pub d: usize,
    pub max_query_size: usize,
    pub max_query_edges: usize,
    pub weighted_queries: usize,
    pub non_bipartite_queries: usize,
}

impl ReductionReport {
    /// Exponent rate `log₂(d+1)/d` as text, e.g. `log2(3)/2`.
    pub fn rate(&self) -> String {
        format!("log2({})/{}", self.d + 1, self.d)
    }
}

/// Grid weight index per block for grid point `idx`.
fn weight_indices(bounds: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; bounds.len()];
    for (slot, d) in out.iter_mut().zip(bounds).rev() {
        *slot = idx % (d + 1);
        idx /= d + 1;
    }
    out
}

/// The base graph with every element of block `i` carrying `values[i]`.
pub fn decorate(g: &Graph, plan: &BlockPlan, values: &[Rational]) -> Result<Graph> {
    let mut out = g.unweighted();
    for (block, value) in plan.blocks.iter().zip(values) {
        for &e in block {
            match plan.kind {
                ElementKind::Edges => out.set_edge_weight(e, value.clone())?,
                ElementKind::Vertices => out.set_vertex_weight(e, value.clone())?,
            }
        }
    }
    Ok(out)
}

pub fn run_block_interpolation<O: EvalOracle + ?Sized>(
    g: &Graph,
    plan: &BlockPlan,
    weights: &WeightList,
    oracle: &O,
) -> Result<ReductionReport> {
    run_block_interpolation_with(g, plan, weights, oracle, Execution::default())
}

pub fn run_block_interpolation_with<O: EvalOracle + ?Sized>(
    g: &Graph,
    plan: &BlockPlan,
    weights: &WeightList,
    oracle: &O,
    exec: Execution,
) -> Result<ReductionReport> {
    let bounds = plan.axis_bounds();
    let nodes = weights.prefix(plan.d + 1)?;
    let grid = Grid::new(bounds.iter().map(|&d| nodes[..=d].to_vec()).collect())?;
    let log = QueryLog::new();
    let values = exec.try_map(grid.size(), |idx| {
        let point: Vec<Rational> = weight_indices(&bounds, idx)
            .into_iter()
            .map(|i| nodes[i].clone())
            .collect();
        oracle.eval(&decorate(g, plan, &point)?, &log)
    })?;
    let coeffs = interpolate_grid_with(&grid, &values, exec)?;
    Ok(ReductionReport {
        coefficients: aggregate_by_total_degree(&coeffs),
        queries: log.queries(),
        grid_size: grid.size(),
        t: plan.t(),
        d: plan.d,
        max_query_size: log.max_size(),
        max_query_edges: log.max_edges(),
        weighted_queries: log.weighted_queries(),
        non_bipartite_queries: log.non_bipartite_queries(),
    })
}

/// One row of the query trade-off table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPoint {
    pub d: usize,
    pub t: usize,
    pub queries: BigUint,
}

/// Exact grid sizes for `m` elements at each capacity in `ds`.
pub fn query_curve(m: usize, ds: &[usize]) -> Result<Vec<QueryPoint>> {
    ds.iter()
        .map(|&d| {
            let plan = make_block_plan(ElementKind::Edges, (0..m).collect(), d)?;
            let queries = plan
                .axis_bounds()
                .iter()
                .fold(BigUint::one(), |acc, &b| acc * BigUint::from(b + 1));
            Ok(QueryPoint {
                d,
                t: plan.t(),
                queries,
            })
        })
        .collect()
}

/// Smallest `d` with `3·log₂(d+1)/d ≤ ε` for `ε = num/den > 0`, decided
/// exactly as `(d+1)^{3·den} ≤ 2^{num·d}`.
pub fn d_for_epsilon(num: u64, den: u64) -> Result<usize> {
    if num == 0 || den == 0 {
        return Err(Error::hypothesis("epsilon must be positive"));
    }
    let exp = 3 * den;
    let exp32 = u32::try_from(exp).map_err(|_| Error::hypothesis("epsilon denominator too large"))?;
    (1usize..)
        .find(|&d| {
            let lhs = BigUint::from(d + 1).pow(exp32);
            let rhs = BigUint::one() << (num as usize * d);
            lhs <= rhs
        })
        .ok_or_else(|| Error::hypothesis("no capacity found"))
}

impl QueryPoint {
    pub fn queries_u64(&self) -> Option<u64> {
        self.queries.to_u64()
    }
}
