//! Brute-force evaluators and coefficient extractors.
//!
//! [`Enumerator`] holds the oracles of record: exhaustive edge-subset sums
//! for `Z`, `Z₀` and `T`, and branch-on-vertex recursions for matchings,
//! independent sets and perfect matchings. Every reduction in this crate is
//! checked against these.
//!
//! The [`frontier`] kernels evaluate the same quantities by dynamic
//! programming along the edge order. They are what the pipelines use as
//! single-point oracles on large spliced query graphs, and they are
//! cross-checked against the enumerators in the test suites.

mod cnf;
pub mod frontier;

use std::collections::HashMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Graph, RollbackUnionFind};
use crate::poly::{rpow, Rational, UniPoly};

pub use cnf::{count_monotone_2cnf, Monotone2Cnf};

/// Largest `n` or `m` accepted by exhaustive enumeration without `force`.
pub const ENUMERATION_LIMIT: usize = 30;

/// Configuration for the exhaustive evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerator {
    /// Lift the size guardrail.
    pub force: bool,
    pub exec: Execution,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            force: false,
            exec: Execution::default(),
        }
    }
}

/// Integer-coefficient polynomial used for counting recursions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct CountPoly(Vec<BigInt>);

impl CountPoly {
    fn one() -> Self {
        CountPoly(vec![BigInt::one()])
    }

    fn shifted(&self) -> Self {
        let mut c = Vec::with_capacity(self.0.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.0.iter().cloned());
        CountPoly(c)
    }

    fn into_unipoly(self, bound: usize) -> UniPoly {
        UniPoly::with_bound(self.0.into_iter().map(Rational::from_integer).collect(), bound)
    }
}

impl Add for CountPoly {
    type Output = CountPoly;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.0.len() >= rhs.0.len() {
            (self.0, rhs.0)
        } else {
            (rhs.0, self.0)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        CountPoly(long)
    }
}

impl Zero for CountPoly {
    fn zero() -> Self {
        CountPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    let mut nb = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        nb[u] |= 1 << v;
        nb[v] |= 1 << u;
    }
    nb
}

/// `Σ_{M matching} ∏_{v unmatched} unmatched(v)` by branching on the lowest
/// remaining vertex, memoized on the remaining-vertex set. `one` is the
/// value of the empty product.
fn matching_sum<T, F>(g: &Graph, one: T, unmatched: F) -> T
where
    T: Clone + Zero + Add<Output = T>,
    F: Fn(usize, T) -> T,
{
    fn rec<T, F>(s: u64, nb: &[u64], unmatched: &F, memo: &mut HashMap<u64, T>) -> T
    where
        T: Clone + Zero + Add<Output = T>,
        F: Fn(usize, T) -> T,
    {
        if let Some(v) = memo.get(&s) {
            return v.clone();
        }
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        let mut total = unmatched(v, rec(rest, nb, unmatched, memo));
        let mut partners = nb[v] & rest;
        while partners != 0 {
            let u = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            total = total + rec(rest & !(1 << u), nb, unmatched, memo);
        }
        memo.insert(s, total.clone());
        total
    }
    let nb = neighbor_masks(g);
    let mut memo = HashMap::new();
    memo.insert(0u64, one);
    rec(full_mask(g.n()), &nb, &unmatched, &mut memo)
}

/// `Σ_{S independent} ∏_{v∈S} chosen(v)` by branching on the lowest
/// remaining vertex.
fn indep_sum<T, F>(g: &Graph, one: T, chosen: F) -> T
where
    T: Clone + Zero + Add<Output = T>,
    F: Fn(usize, T) -> T,
{
    fn rec<T, F>(s: u64, nb: &[u64], chosen: &F, memo: &mut HashMap<u64, T>) -> T
    where
        T: Clone + Zero + Add<Output = T>,
        F: Fn(usize, T) -> T,
    {
        if let Some(v) = memo.get(&s) {
            return v.clone();
        }
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        let skip = rec(rest, nb, chosen, memo);
        let take = chosen(v, rec(rest & !nb[v], nb, chosen, memo));
        let total = skip + take;
        memo.insert(s, total.clone());
        total
    }
    let nb = neighbor_masks(g);
    let mut memo = HashMap::new();
    memo.insert(0u64, one);
    rec(full_mask(g.n()), &nb, &chosen, &mut memo)
}

/// `Σ_{M perfect matching} ∏_{e∈M} edge(e)`, branching on the lowest
/// unmatched vertex.
fn perfect_matching_sum<T, F>(g: &Graph, one: T, edge: F) -> T
where
    T: Clone + Zero + Add<Output = T>,
    F: Fn(usize, T) -> T,
{
    fn rec<T, F>(
        s: u64,
        inc: &[Vec<(usize, usize)>],
        edge: &F,
        memo: &mut HashMap<u64, T>,
    ) -> T
    where
        T: Clone + Zero + Add<Output = T>,
        F: Fn(usize, T) -> T,
    {
        if let Some(v) = memo.get(&s) {
            return v.clone();
        }
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        let mut total = T::zero();
        for &(u, e) in &inc[v] {
            if rest >> u & 1 == 1 {
                total = total + edge(e, rec(rest & !(1 << u), inc, edge, memo));
            }
        }
        memo.insert(s, total.clone());
        total
    }
    if g.n() % 2 == 1 {
        return T::zero();
    }
    let inc = g.incidence();
    let mut memo = HashMap::new();
    memo.insert(0u64, one);
    rec(full_mask(g.n()), &inc, &edge, &mut memo)
}

/// Visits every edge subset `A` and folds `(|A|, k(G,A), ∏_{e∈A} x_e)` into
/// an accumulator. The first `split` edges are fixed per task so the walk
/// can be spread over threads; partial accumulators are merged in task
/// order.
fn walk_subsets<T, Acc, Leaf, Merge>(
    g: &Graph,
    weight: &[T],
    one: T,
    exec: Execution,
    init: impl Fn() -> Acc + Sync + Send,
    leaf: Leaf,
    merge: Merge,
) -> Acc
where
    T: Clone + Send + Sync + for<'a> std::ops::Mul<&'a T, Output = T>,
    Acc: Send,
    Leaf: Fn(&mut Acc, usize, usize, &T) + Sync + Send,
    Merge: Fn(Acc, Acc) -> Acc,
{
    let m = g.m();
    let edges = g.edges();
    let split = if exec.is_parallel() { m.min(8) } else { 0 };

    #[allow(clippy::too_many_arguments)]
    fn dfs<T, Acc, Leaf>(
        i: usize,
        edges: &[(usize, usize)],
        weight: &[T],
        uf: &mut RollbackUnionFind,
        size: usize,
        prod: &T,
        acc: &mut Acc,
        leaf: &Leaf,
    ) where
        T: Clone + for<'a> std::ops::Mul<&'a T, Output = T>,
        Leaf: Fn(&mut Acc, usize, usize, &T),
    {
        if i == edges.len() {
            leaf(acc, size, uf.components(), prod);
            return;
        }
        dfs(i + 1, edges, weight, uf, size, prod, acc, leaf);
        let (u, v) = edges[i];
        uf.union(u, v);
        let next = prod.clone() * &weight[i];
        dfs(i + 1, edges, weight, uf, size + 1, &next, acc, leaf);
        uf.undo();
    }

    let partials = exec.map(1usize << split, |prefix| {
        let mut uf = RollbackUnionFind::new(g.n());
        let mut prod = one.clone();
        let mut size = 0;
        for (i, &(u, v)) in edges.iter().enumerate().take(split) {
            if prefix >> i & 1 == 1 {
                uf.union(u, v);
                prod = prod * &weight[i];
                size += 1;
            }
        }
        let mut acc = init();
        dfs(split, edges, weight, &mut uf, size, &prod, &mut acc, &leaf);
        acc
    });
    partials
        .into_iter()
        .reduce(merge)
        .unwrap_or_else(|| init())
}

/// Table `counts[j][k]` = number of edge subsets of size `j` with `k`
/// components.
fn subset_counts(g: &Graph, exec: Execution) -> Vec<Vec<u64>> {
    let (n, m) = (g.n(), g.m());
    // Products are irrelevant here; use the unit type as a trivial ring.
    #[derive(Clone)]
    struct Unit;
    impl<'a> std::ops::Mul<&'a Unit> for Unit {
        type Output = Unit;
        fn mul(self, _: &Unit) -> Unit {
            Unit
        }
    }
    let weight = vec![Unit; m];
    walk_subsets(
        g,
        &weight,
        Unit,
        exec,
        || vec![vec![0u64; n + 1]; m + 1],
        |acc, size, k, _| acc[size][k] += 1,
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        },
    )
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    fn check_vertices(&self, g: &Graph) -> Result<()> {
        let limit = if self.force { 64 } else { ENUMERATION_LIMIT };
        if g.n() > limit {
            return Err(Error::TooLarge {
                what: "n",
                size: g.n(),
                limit,
            });
        }
        Ok(())
    }

    fn check_edges(&self, g: &Graph) -> Result<()> {
        let limit = if self.force { 63 } else { ENUMERATION_LIMIT };
        if g.m() > limit {
            return Err(Error::TooLarge {
                what: "m",
                size: g.m(),
                limit,
            });
        }
        Ok(())
    }

    /// `μ(G; x)`: coefficient of `x^k` counts matchings leaving exactly `k`
    /// vertices unmatched. Weights are ignored.
    pub fn matching_poly(&self, g: &Graph) -> Result<UniPoly> {
        self.check_vertices(g)?;
        let p = matching_sum(g, CountPoly::one(), |_, p| p.shifted());
        Ok(p.into_unipoly(g.n()))
    }

    /// `Σ_M ∏_{v unmatched} x_v` with vertex weights as `x_v`.
    pub fn matching_multivar(&self, g: &Graph) -> Result<Rational> {
        self.check_vertices(g)?;
        let w: Vec<Rational> = (0..g.n()).map(|v| g.vertex_weight(v)).collect();
        Ok(matching_sum(g, Rational::one(), |v, r| r * &w[v]))
    }

    /// `μ(G; x)` at a single point, weights ignored.
    pub fn matching_eval(&self, g: &Graph, x: &Rational) -> Result<Rational> {
        self.check_vertices(g)?;
        Ok(matching_sum(g, Rational::one(), |_, r| r * x))
    }

    /// `I(G; x)`: coefficient of `x^k` counts independent sets of size `k`.
    pub fn indep_poly(&self, g: &Graph) -> Result<UniPoly> {
        self.check_vertices(g)?;
        let p = indep_sum(g, CountPoly::one(), |_, p| p.shifted());
        Ok(p.into_unipoly(g.n()))
    }

    /// `Σ_{S independent} ∏_{v∈S} x_v` with vertex weights as `x_v`.
    pub fn indep_multivar(&self, g: &Graph) -> Result<Rational> {
        self.check_vertices(g)?;
        let w: Vec<Rational> = (0..g.n()).map(|v| g.vertex_weight(v)).collect();
        Ok(indep_sum(g, Rational::one(), |v, r| r * &w[v]))
    }

    pub fn indep_eval(&self, g: &Graph, x: &Rational) -> Result<Rational> {
        self.check_vertices(g)?;
        Ok(indep_sum(g, Rational::one(), |_, r| r * x))
    }

    /// `Z(G; q, w)` as a polynomial in `w`.
    pub fn z_poly(&self, g: &Graph, q: &Rational) -> Result<UniPoly> {
        self.check_edges(g)?;
        let counts = subset_counts(g, self.exec);
        let coeffs = counts
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(Rational::zero(), |acc, (k, &c)| {
                    if c == 0 {
                        acc
                    } else {
                        acc + Rational::from_integer(c.into()) * rpow(q, k as i64).expect("k >= 0")
                    }
                })
            })
            .collect();
        Ok(UniPoly::with_bound(coeffs, g.m()))
    }

    /// `Z₀(G; q, w) = Σ_A q^{k(A) - k(E)} w^{|A|}`, with `0^0 = 1`.
    pub fn z0_poly(&self, g: &Graph, q: &Rational) -> Result<UniPoly> {
        self.check_edges(g)?;
        let base = g.components() as i64;
        let counts = subset_counts(g, self.exec);
        let coeffs = counts
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(Rational::zero(), |acc, (k, &c)| {
                    if c == 0 {
                        acc
                    } else {
                        // k(A) >= k(E) always, so the exponent is non-negative.
                        acc + Rational::from_integer(c.into())
                            * rpow(q, k as i64 - base).expect("k(A) >= k(E)")
                    }
                })
            })
            .collect();
        Ok(UniPoly::with_bound(coeffs, g.m()))
    }

    /// Multivariate `Σ_A q^{k(A)} ∏_{e∈A} x_e` with edge weights as `x_e`;
    /// with `zero_variant` the exponent is `k(A) - k(E)`.
    pub fn z_multivar(&self, g: &Graph, q: &Rational, zero_variant: bool) -> Result<Rational> {
        self.check_edges(g)?;
        let n = g.n();
        let weight: Vec<Rational> = (0..g.m()).map(|i| g.edge_weight(i)).collect();
        let by_k = walk_subsets(
            g,
            &weight,
            Rational::one(),
            self.exec,
            || vec![Rational::zero(); n + 1],
            |acc: &mut Vec<Rational>, _, k, prod| acc[k] += prod,
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
        let shift = if zero_variant { g.components() as i64 } else { 0 };
        Ok(by_k
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| s * rpow(q, k as i64 - shift).expect("k(A) >= k(E)"))
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// `T(G; x, y) = Σ_A (x-1)^{k(A)-k(E)} (y-1)^{k(A)+|A|-|V|}`, summed
    /// directly so it is defined everywhere.
    pub fn tutte_eval(&self, g: &Graph, x: &Rational, y: &Rational) -> Result<Rational> {
        self.check_edges(g)?;
        let (xm, ym) = (x - Rational::one(), y - Rational::one());
        let base = g.components() as i64;
        let n = g.n() as i64;
        let counts = subset_counts(g, self.exec);
        let mut total = Rational::zero();
        for (size, row) in counts.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let k = k as i64;
                let term = rpow(&xm, k - base).expect("k(A) >= k(E)")
                    * rpow(&ym, k + size as i64 - n).expect("nullity >= 0");
                total += Rational::from_integer(c.into()) * term;
            }
        }
        Ok(total)
    }

    /// `PerfMatch(G) = Σ_{M perfect} ∏_{e∈M} x_e` with edge weights as `x_e`.
    pub fn perfmatch(&self, g: &Graph) -> Result<Rational> {
        self.check_vertices(g)?;
        let w: Vec<Rational> = (0..g.m()).map(|i| g.edge_weight(i)).collect();
        Ok(perfect_matching_sum(g, Rational::one(), |e, r| r * &w[e]))
    }

    /// Polynomial whose `x^k` coefficient counts perfect matchings using
    /// exactly `k` edges of weight `−1`. Requires all edge weights in
    /// `{−1, 1}`.
    pub fn signed_perm_poly(&self, g: &Graph) -> Result<UniPoly> {
        self.check_vertices(g)?;
        let negative = negative_edges(g)?;
        let mut is_neg = vec![false; g.m()];
        for &e in &negative {
            is_neg[e] = true;
        }
        let p = perfect_matching_sum(g, CountPoly::one(), |e, p| {
            if is_neg[e] {
                p.shifted()
            } else {
                p
            }
        });
        Ok(p.into_unipoly(negative.len()))
    }
}

/// Indices of the `−1` edges of a `±1`-weighted graph.
pub fn negative_edges(g: &Graph) -> Result<Vec<usize>> {
    let one = Rational::one();
    let minus = -Rational::one();
    let mut out = Vec::new();
    for i in 0..g.m() {
        let w = g.edge_weight(i);
        if w == minus {
            out.push(i);
        } else if w != one {
            return Err(Error::hypothesis(format!(
                "edge {i} has weight {w}; signed permanent needs weights in {{-1, 1}}"
            )));
        }
    }
    Ok(out)
}

pub fn matching_poly(g: &Graph) -> Result<UniPoly> {
    Enumerator::default().matching_poly(g)
}

pub fn matching_poly_multivar_eval(g: &Graph) -> Result<Rational> {
    Enumerator::default().matching_multivar(g)
}

pub fn indep_poly(g: &Graph) -> Result<UniPoly> {
    Enumerator::default().indep_poly(g)
}

pub fn indep_multivar_eval(g: &Graph) -> Result<Rational> {
    Enumerator::default().indep_multivar(g)
}

pub fn z_poly(g: &Graph, q: &Rational) -> Result<UniPoly> {
    Enumerator::default().z_poly(g, q)
}

pub fn z0_poly(g: &Graph, q: &Rational) -> Result<UniPoly> {
    Enumerator::default().z0_poly(g, q)
}

pub fn z_multivar_eval(g: &Graph, q: &Rational, zero_variant: bool) -> Result<Rational> {
    Enumerator::default().z_multivar(g, q, zero_variant)
}

pub fn tutte_eval(g: &Graph, x: &Rational, y: &Rational) -> Result<Rational> {
    Enumerator::default().tutte_eval(g, x, y)
}

pub fn perfmatch_eval(g: &Graph) -> Result<Rational> {
    Enumerator::default().perfmatch(g)
}

pub fn signed_perm_poly(g: &Graph) -> Result<UniPoly> {
    Enumerator::default().signed_perm_poly(g)
}

#[cfg(test)]
pub(crate) mod tests;
