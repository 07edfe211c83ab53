//! Exact univariate and tensor-grid interpolation.
//!
//! Grid interpolation solves `(A₁ ⊗ … ⊗ A_t) c = v` where each `A_i` is the
//! Vandermonde matrix of axis `i` with exponents `0..=d_i`. The Kronecker
//! structure is used directly: each axis inverse is formed once from the
//! Lagrange basis and applied along that axis's fibers, so the cost is
//! `O(|Ξ| · Σ (d_i + 1))` rational operations.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poly::{MultiCoeffs, Rational, UniPoly};

/// Product grid `Ξ₁ × … × Ξ_t` with pairwise-distinct nodes per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    axes: Vec<Vec<Rational>>,
}

impl Grid {
    pub fn new(axes: Vec<Vec<Rational>>) -> Result<Self> {
        for axis in &axes {
            check_distinct(axis)?;
        }
        Ok(Grid { axes })
    }

    /// Axis `i` has nodes `0, 1, …, d_i`.
    pub fn integer(bounds: &[usize]) -> Self {
        Grid {
            axes: bounds
                .iter()
                .map(|&d| (0..=d).map(|k| Rational::from_integer(k.into())).collect())
                .collect(),
        }
    }

    pub fn axes(&self) -> &[Vec<Rational>] {
        &self.axes
    }

    /// Per-axis degree bounds `d_i = |Ξ_i| - 1`.
    pub fn bounds(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len().saturating_sub(1)).collect()
    }

    /// Number of grid points (1 for a grid with no axes).
    pub fn size(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    /// Node-index tuple of the `idx`-th point in lexicographic order.
    pub fn index_tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.axes.len()];
        for (slot, axis) in t.iter_mut().zip(&self.axes).rev() {
            *slot = idx % axis.len();
            idx /= axis.len();
        }
        t
    }

    pub fn point(&self, idx: usize) -> Vec<Rational> {
        self.index_tuple(idx)
            .into_iter()
            .zip(&self.axes)
            .map(|(i, axis)| axis[i].clone())
            .collect()
    }
}

fn check_distinct(nodes: &[Rational]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].contains(a) {
            return Err(Error::DuplicateNode(a.clone()));
        }
    }
    Ok(())
}

/// Inverse of the Vandermonde matrix `A[i][j] = nodes[i]^j`, returned
/// row-major: `inv[j][i]` is the `x^j` coefficient of the `i`-th Lagrange
/// basis polynomial.
pub fn vandermonde_inverse(nodes: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    check_distinct(nodes)?;
    let len = nodes.len();
    // P(x) = ∏ (x - x_k), low degree first.
    let mut full = vec![Rational::one()];
    for x in nodes {
        let mut next = vec![Rational::zero(); full.len() + 1];
        for (k, c) in full.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * x;
        }
        full = next;
    }
    let mut inv = vec![vec![Rational::zero(); len]; len];
    for (i, xi) in nodes.iter().enumerate() {
        // P(x) / (x - x_i) by synthetic division from the top.
        let mut quotient = vec![Rational::zero(); len];
        let mut carry = Rational::zero();
        for k in (1..=len).rev() {
            carry = &full[k] + &carry * xi;
            quotient[k - 1] = carry.clone();
        }
        let denom = nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(Rational::one(), |acc, (_, xk)| acc * (xi - xk));
        let scale = denom.recip();
        for (j, c) in quotient.into_iter().enumerate() {
            inv[j][i] = c * &scale;
        }
    }
    Ok(inv)
}

/// The unique polynomial of degree `< points.len()` through all points.
pub fn interpolate_univariate(points: &[(Rational, Rational)]) -> Result<UniPoly> {
    let nodes: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
    let inv = vandermonde_inverse(&nodes)?;
    let coeffs = inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(points)
                .fold(Rational::zero(), |acc, (a, (_, y))| acc + a * y)
        })
        .collect();
    Ok(UniPoly::new(coeffs))
}

/// Recovers the coefficients of a polynomial with per-axis degree
/// `≤ |Ξ_i| - 1` from its values on every grid point, given in the grid's
/// lexicographic point order.
pub fn interpolate_grid(grid: &Grid, values: &[Rational]) -> Result<MultiCoeffs> {
    interpolate_grid_with(grid, values, Execution::default())
}

pub fn interpolate_grid_with(
    grid: &Grid,
    values: &[Rational],
    exec: Execution,
) -> Result<MultiCoeffs> {
    if values.len() != grid.size() {
        return Err(Error::GridSizeMismatch {
            expected: grid.size(),
            got: values.len(),
        });
    }
    let mut data = values.to_vec();
    let sizes: Vec<usize> = grid.axes.iter().map(Vec::len).collect();
    for (axis, nodes) in grid.axes.iter().enumerate() {
        let inv = vandermonde_inverse(nodes)?;
        let len = sizes[axis];
        let stride: usize = sizes[axis + 1..].iter().product();
        exec.for_each_chunk_mut(&mut data, len * stride, |block| {
            let mut fiber = Vec::with_capacity(len);
            for offset in 0..stride {
                fiber.clear();
                fiber.extend((0..len).map(|j| block[j * stride + offset].clone()));
                for (j, row) in inv.iter().enumerate() {
                    block[j * stride + offset] = row
                        .iter()
                        .zip(&fiber)
                        .fold(Rational::zero(), |acc, (a, v)| acc + a * v);
                }
            }
        });
    }
    Ok(MultiCoeffs::from_dense(grid.bounds(), data).expect("grid size matches bounds"))
}

/// Grid interpolation from a point → value map.
pub fn interpolate_grid_map(
    grid: &Grid,
    values: &HashMap<Vec<Rational>, Rational>,
) -> Result<MultiCoeffs> {
    let dense = (0..grid.size())
        .map(|i| {
            values
                .get(&grid.point(i))
                .cloned()
                .ok_or_else(|| Error::MissingGridPoint(grid.index_tuple(i)))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_grid(grid, &dense)
}

/// Substitutes every indeterminate by a single `x`: the coefficient of
/// `x^k` is the sum over exponent tuples of total degree `k`.
pub fn aggregate_by_total_degree(mc: &MultiCoeffs) -> UniPoly {
    let bound: usize = mc.bounds().iter().sum();
    let mut out = vec![Rational::zero(); bound + 1];
    for (exps, c) in mc.nonzero() {
        out[exps.iter().sum::<usize>()] += c;
    }
    UniPoly::with_bound(out, bound)
}
