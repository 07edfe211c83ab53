//! End-to-end coefficient recovery from a single-point unweighted oracle,
//! plus the line-graph and 2-CNF reduction chains.
//!
//! Each pipeline builds a block plan, decorates the input with grid weights,
//! splices the family's gadgets in, and asks the unweighted evaluator for
//! one value per grid point. Only two things are consulted: the family's
//! point evaluator on the spliced (unweighted) graph and its factor
//! function. Every query graph passes through [`QueryLog::record`], so a
//! report with `weighted_queries == 0` certifies that no weighted graph
//! reached the evaluator.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::blockinterp::{
    make_block_plan, run_block_interpolation_with, EvalOracle, QueryLog, ReductionReport,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gadgets::{mu_pendant_family, pm_parallel_family, tutte_stretch_family, GadgetFamily};
use crate::graph::Graph;
use crate::poly::{rpow, Rational, UniPoly};
use crate::polyval::{self, frontier, Monotone2Cnf};

/// Evaluates a weighted graph as `value(T(G)) / F(G)`.
struct SplicingOracle<'a, V> {
    family: &'a GadgetFamily,
    value: V,
}

impl<V> EvalOracle for SplicingOracle<'_, V>
where
    V: Fn(&Graph) -> Result<Rational> + Sync,
{
    fn eval(&self, g: &Graph, log: &QueryLog) -> Result<Rational> {
        let spliced = self.family.splice(g)?;
        log.record(&spliced);
        let value = (self.value)(&spliced)?;
        Ok(value / self.family.factor(g)?)
    }
}

/// Recovered signed-permanent polynomial and `perm(G) = p(−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermanentReport {
    pub report: ReductionReport,
    pub permanent: Rational,
}

/// Recovers the polynomial counting perfect matchings by their number of
/// `−1` edges, querying only `#PM` of unweighted spliced graphs.
pub fn recover_signed_permanent(g: &Graph, d: usize) -> Result<PermanentReport> {
    recover_signed_permanent_with(g, d, false, Execution::default())
}

/// As [`recover_signed_permanent`]; with `require_bipartite` a
/// non-bipartite input or any non-bipartite query is an error.
pub fn recover_signed_permanent_with(
    g: &Graph,
    d: usize,
    require_bipartite: bool,
    exec: Execution,
) -> Result<PermanentReport> {
    if require_bipartite && !g.is_bipartite() {
        return Err(Error::hypothesis("input graph is not bipartite"));
    }
    let negative = polyval::negative_edges(g)?;
    let family = pm_parallel_family();
    let plan = make_block_plan(family.kind(), negative, d)?;
    let oracle = SplicingOracle {
        family: &family,
        value: |h: &Graph| frontier::perfmatch(h),
    };
    let report = run_block_interpolation_with(g, &plan, &family.weight_list(), &oracle, exec)?;
    if require_bipartite && report.non_bipartite_queries > 0 {
        return Err(Error::Oracle(format!(
            "{} query graphs were not bipartite",
            report.non_bipartite_queries
        )));
    }
    let permanent = report.coefficients.eval(&-Rational::one());
    Ok(PermanentReport { report, permanent })
}

/// Divides the `x^k` coefficient by `scale^k`.
fn unscale(p: &UniPoly, scale: &Rational) -> UniPoly {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c / rpow(scale, k as i64).expect("scale != 0"))
        .collect();
    UniPoly::with_bound(coeffs, p.degree_bound())
}

/// Recovers `μ(G)` from evaluations of `μ(·; ξ)` on pendant-star spliced
/// graphs.
///
/// The oracle value `μ(T(G); ξ) / F(G)` weights an unmatched vertex of
/// weight `y` by `ξ·y`, so the interpolated `x^k` coefficient is
/// `ξ^k` times the matching count and is rescaled afterwards.
pub fn recover_matching_poly(g: &Graph, xi: &Rational, d: usize) -> Result<ReductionReport> {
    recover_matching_poly_with(g, xi, d, Execution::default())
}

pub fn recover_matching_poly_with(
    g: &Graph,
    xi: &Rational,
    d: usize,
    exec: Execution,
) -> Result<ReductionReport> {
    let family = mu_pendant_family(xi.clone())?;
    let plan = make_block_plan(family.kind(), (0..g.n()).collect(), d)?;
    let oracle = SplicingOracle {
        family: &family,
        value: |h: &Graph| frontier::matching_eval(h, xi),
    };
    let mut report = run_block_interpolation_with(g, &plan, &family.weight_list(), &oracle, exec)?;
    report.coefficients = unscale(&report.coefficients, xi);
    Ok(report)
}

/// `a + b·√c` over the rationals, enough ring structure for the frontier
/// matching kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRational {
    pub a: Rational,
    pub b: Rational,
    c: Rational,
}

impl QuadraticRational {
    pub fn rational(a: Rational, c: &Rational) -> Self {
        QuadraticRational {
            a,
            b: Rational::zero(),
            c: c.clone(),
        }
    }

    /// `√c` itself.
    pub fn root(c: &Rational) -> Self {
        QuadraticRational {
            a: Rational::zero(),
            b: Rational::one(),
            c: c.clone(),
        }
    }

    /// Division by `√c`: `(a + b√c)/√c = b + (a/c)√c`.
    fn div_root(self) -> Self {
        QuadraticRational {
            a: self.b,
            b: self.a / &self.c,
            c: self.c,
        }
    }
}

impl Add for QuadraticRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadraticRational {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c,
        }
    }
}

impl<'a> Mul<&'a QuadraticRational> for QuadraticRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        QuadraticRational {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &self.c,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            c: self.c,
        }
    }
}

/// [`recover_matching_poly`] at `ξ = √c` for a rational `c ≠ 0`, on graphs
/// with an even number of vertices. Only even powers of `ξ` survive there,
/// so every oracle answer and every coefficient stays rational.
pub fn recover_matching_poly_sqrt(g: &Graph, c: &Rational, d: usize) -> Result<ReductionReport> {
    recover_matching_poly_sqrt_with(g, c, d, Execution::default())
}

pub fn recover_matching_poly_sqrt_with(
    g: &Graph,
    c: &Rational,
    d: usize,
    exec: Execution,
) -> Result<ReductionReport> {
    if c.is_zero() {
        return Err(Error::hypothesis("c = xi^2 must be nonzero"));
    }
    if g.n() % 2 == 1 {
        return Err(Error::hypothesis("the sqrt(c) pipeline needs an even vertex count"));
    }
    // w_t = 1 + t/c; the family at ξ = 1 provides the gadgets, index
    // lookups go through the scaled list.
    let family = mu_pendant_family(Rational::one())?;
    let c_owned = c.clone();
    let weights = crate::blockinterp::WeightList::new(move |t| {
        Rational::one() + Rational::from_integer(t.into()) / &c_owned
    });
    let plan = make_block_plan(family.kind(), (0..g.n()).collect(), d)?;
    let oracle = |gw: &Graph, log: &QueryLog| -> Result<Rational> {
        // Translate weights 1 + t/c to the gadget index t.
        let mut indexed = gw.unweighted();
        let mut stars = 0usize;
        for v in 0..gw.n() {
            let t = (gw.vertex_weight(v) - Rational::one()) * c;
            if !t.is_integer() || t < Rational::zero() {
                return Err(Error::UnknownVertexWeight {
                    vertex: v,
                    weight: gw.vertex_weight(v),
                });
            }
            let t: usize = t.to_integer().try_into().map_err(|_| {
                Error::hypothesis("gadget index does not fit in usize")
            })?;
            stars += t;
            indexed.set_vertex_weight(v, family.weight_at(t))?;
        }
        let spliced = family.splice(&indexed)?;
        log.record(&spliced);
        let root = QuadraticRational::root(c);
        let xs = vec![root; spliced.n()];
        let mut value = frontier::matching_sum(
            &spliced,
            &xs,
            &QuadraticRational::rational(Rational::zero(), c),
            &QuadraticRational::rational(Rational::one(), c),
        )?;
        for _ in 0..stars {
            value = value.div_root();
        }
        if !value.b.is_zero() {
            return Err(Error::Oracle("irrational part did not cancel".into()));
        }
        Ok(value.a)
    };
    struct Adapter<F>(F);
    impl<F> EvalOracle for Adapter<F>
    where
        F: Fn(&Graph, &QueryLog) -> Result<Rational> + Sync,
    {
        fn eval(&self, g: &Graph, log: &QueryLog) -> Result<Rational> {
            (self.0)(g, log)
        }
    }
    let mut report = run_block_interpolation_with(g, &plan, &weights, &Adapter(oracle), exec)?;
    // Coefficient k carries ξ^k = c^{k/2}; odd k must vanish.
    let coeffs = report
        .coefficients
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if k % 2 == 1 {
                if !v.is_zero() {
                    return Err(Error::Oracle(format!("odd coefficient {k} is nonzero")));
                }
                Ok(Rational::zero())
            } else {
                Ok(v / rpow(c, (k / 2) as i64).expect("c != 0"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    report.coefficients = UniPoly::with_bound(coeffs, report.coefficients.degree_bound());
    Ok(report)
}

/// Recovers `Z(G; q, ·)` (or `Z₀(G; 0, ·)` when `q = 0`) as a polynomial in
/// the edge weight, from evaluations at the single point `w` on stretched
/// graphs.
pub fn recover_z_poly(g: &Graph, q: &Rational, w: &Rational, d: usize) -> Result<ReductionReport> {
    recover_z_poly_with(g, q, w, d, Execution::default())
}

pub fn recover_z_poly_with(
    g: &Graph,
    q: &Rational,
    w: &Rational,
    d: usize,
    exec: Execution,
) -> Result<ReductionReport> {
    let family = tutte_stretch_family(q.clone(), w.clone())?;
    let plan = make_block_plan(family.kind(), (0..g.m()).collect(), d)?;
    let oracle = SplicingOracle {
        family: &family,
        value: |h: &Graph| family.evaluate_target(h),
    };
    run_block_interpolation_with(g, &plan, &family.weight_list(), &oracle, exec)
}

/// `T(G; x, y)` through the random-cluster form: with `q = (x−1)(y−1)` and
/// `w = y−1`, `T = (x−1)^{−k(E)} (y−1)^{−n} Z(q, w)`; on the line `x = 1`,
/// `T = (y−1)^{k(E)−n} Z₀(0, y−1)`. Needs `y ≠ 1`.
pub fn tutte_point_via_z(g: &Graph, x: &Rational, y: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let (xm, ym) = (x - &one, y - &one);
    if ym.is_zero() {
        return Err(Error::hypothesis("tutte_point_via_z needs y != 1"));
    }
    let h = g.unweighted();
    let components = g.components() as i64;
    let n = g.n() as i64;
    if xm.is_zero() {
        let z0 = frontier::z0_eval(&h, &Rational::zero(), &ym)?;
        return Ok(z0 * rpow(&ym, components - n).expect("y != 1"));
    }
    let q = &xm * &ym;
    let z = frontier::z_eval(&h, &q, &ym)?;
    Ok(z * rpow(&xm, -components).expect("x != 1") * rpow(&ym, -n).expect("y != 1"))
}

/// `L(G)` and its number of independent sets of size `n/2`, which equals
/// the number of perfect matchings of `G`.
pub fn pm_to_line_graph_mis(g: &Graph) -> Result<(Graph, Rational)> {
    if g.n() % 2 == 1 {
        return Err(Error::hypothesis("perfect matchings need an even vertex count"));
    }
    let line = g.line_graph();
    let count = polyval::indep_poly(&line)?.coeff(g.n() / 2);
    Ok((line, count))
}

/// Monotone 2-CNF whose satisfying assignments are the vertex covers of
/// `g`.
pub fn vc_to_monotone_2cnf(g: &Graph) -> Monotone2Cnf {
    Monotone2Cnf::from_vertex_cover(g)
}

/// `μ(G; ξ) = ξⁿ · I(L(G); ξ⁻²)`.
pub fn mu_via_indep_on_line_graph(g: &Graph, xi: &Rational) -> Result<Rational> {
    if xi.is_zero() {
        return Err(Error::hypothesis("xi must be nonzero"));
    }
    let line = g.line_graph();
    let inv_sq = (xi * xi).recip();
    let indep = polyval::Enumerator::new().indep_eval(&line, &inv_sq)?;
    Ok(rpow(xi, g.n() as i64).expect("xi != 0") * indep)
}
