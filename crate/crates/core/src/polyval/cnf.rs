use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::ENUMERATION_LIMIT;

/// Monotone 2-CNF: every clause is `(x_a ∨ x_b)` with no negations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monotone2Cnf {
    pub nvars: usize,
    pub clauses: Vec<(usize, usize)>,
}

impl Monotone2Cnf {
    /// One variable per vertex, one clause per edge. Satisfying assignments
    /// are exactly the vertex covers of `g`.
    pub fn from_vertex_cover(g: &Graph) -> Self {
        Monotone2Cnf {
            nvars: g.n(),
            clauses: g.edges().to_vec(),
        }
    }

    pub fn count(&self, min_weight_only: bool) -> Result<u64> {
        count_monotone_2cnf(&self.clauses, self.nvars, min_weight_only)
    }
}

/// Counts satisfying assignments of a monotone 2-CNF by enumerating all
/// `2^nvars` assignments; with `min_weight_only`, counts only those of
/// minimum Hamming weight.
pub fn count_monotone_2cnf(
    clauses: &[(usize, usize)],
    nvars: usize,
    min_weight_only: bool,
) -> Result<u64> {
    if nvars > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "nvars",
            size: nvars,
            limit: ENUMERATION_LIMIT,
        });
    }
    if let Some(&(a, b)) = clauses.iter().find(|&&(a, b)| a >= nvars || b >= nvars) {
        return Err(Error::invalid_graph(format!(
            "clause ({a}, {b}) mentions a variable >= {nvars}"
        )));
    }
    let masks: Vec<u64> = clauses.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    let mut total = 0u64;
    let mut best: Option<(u32, u64)> = None;
    for assignment in 0u64..(1u64 << nvars) {
        if masks.iter().all(|&c| assignment & c != 0) {
            total += 1;
            let w = assignment.count_ones();
            best = match best {
                Some((bw, c)) if bw == w => Some((bw, c + 1)),
                Some((bw, c)) if bw < w => Some((bw, c)),
                _ => Some((w, 1)),
            };
        }
    }
    Ok(if min_weight_only {
        best.map_or(0, |(_, c)| c)
    } else {
        total
    })
}
