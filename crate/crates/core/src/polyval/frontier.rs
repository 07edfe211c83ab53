//! Edge-order dynamic programming kernels.
//!
//! Edges are processed in index order. A vertex is *active* from its first
//! incident edge up to and including its last one; states only describe
//! active vertices, so cost grows with the frontier width rather than with
//! `n` or `m`. Spliced gadget graphs keep every gadget's edges contiguous,
//! which keeps the frontier close to the original vertex count.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{rpow, Rational};

/// Largest frontier (number of simultaneously active vertices) supported.
pub const MAX_FRONTIER: usize = 64;

struct Schedule {
    first: Vec<Option<usize>>,
    last: Vec<Option<usize>>,
    isolated: Vec<usize>,
}

fn schedule(g: &Graph) -> Schedule {
    let mut first = vec![None; g.n()];
    let mut last = vec![None; g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for x in [u, v] {
            first[x].get_or_insert(i);
            last[x] = Some(i);
        }
    }
    let isolated = (0..g.n()).filter(|&v| first[v].is_none()).collect();
    Schedule {
        first,
        last,
        isolated,
    }
}

fn frontier_error(width: usize) -> Error {
    Error::TooLarge {
        what: "frontier width",
        size: width,
        limit: MAX_FRONTIER,
    }
}

/// Removes bit `p` from `s`, shifting higher bits down.
fn drop_bit(s: u64, p: usize) -> u64 {
    let low = s & ((1u64 << p) - 1);
    let high = if p + 1 >= 64 { 0 } else { (s >> (p + 1)) << p };
    low | high
}

/// `Σ_{M matching} ∏_{v unmatched} x_v` for per-vertex values `x`, over any
/// commutative ring given by `zero`/`one` and the operator impls.
pub fn matching_sum<T>(g: &Graph, x: &[T], zero: &T, one: &T) -> Result<T>
where
    T: Clone + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    assert_eq!(x.len(), g.n(), "one value per vertex");
    let sched = schedule(g);
    let mut base = one.clone();
    for &v in &sched.isolated {
        base = base * &x[v];
    }
    let mut active: Vec<usize> = Vec::new();
    let mut states: HashMap<u64, T> = HashMap::from([(0u64, base)]);

    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for w in [u, v] {
            if sched.first[w] == Some(i) {
                if active.len() == MAX_FRONTIER {
                    return Err(frontier_error(active.len() + 1));
                }
                active.push(w);
            }
        }
        let pu = active.iter().position(|&a| a == u).expect("active");
        let pv = active.iter().position(|&a| a == v).expect("active");
        let mut next: HashMap<u64, T> = HashMap::with_capacity(states.len() * 2);
        let mut put = |k: u64, val: T| {
            match next.remove(&k) {
                Some(old) => next.insert(k, old + val),
                None => next.insert(k, val),
            };
        };
        for (s, val) in states {
            if s >> pu & 1 == 0 && s >> pv & 1 == 0 {
                put(s | 1 << pu | 1 << pv, val.clone());
            }
            put(s, val);
        }
        states = next;

        // Retire in descending position order so earlier positions stay valid.
        let mut retiring: Vec<usize> = [u, v]
            .into_iter()
            .filter(|&w| sched.last[w] == Some(i))
            .map(|w| active.iter().position(|&a| a == w).expect("active"))
            .collect();
        retiring.sort_unstable_by(|a, b| b.cmp(a));
        for p in retiring {
            let w = active.remove(p);
            let mut next: HashMap<u64, T> = HashMap::with_capacity(states.len());
            for (s, val) in states {
                let val = if s >> p & 1 == 1 { val } else { val * &x[w] };
                let k = drop_bit(s, p);
                match next.remove(&k) {
                    Some(old) => next.insert(k, old + val),
                    None => next.insert(k, val),
                };
            }
            states = next;
        }
    }
    debug_assert!(active.is_empty());
    Ok(states.remove(&0).unwrap_or_else(|| zero.clone()))
}

/// `μ(G; x)` at a rational point.
pub fn matching_eval(g: &Graph, x: &Rational) -> Result<Rational> {
    let xs = vec![x.clone(); g.n()];
    matching_sum(g, &xs, &Rational::zero(), &Rational::one())
}

/// `Σ_M ∏_{v unmatched} x_v` with vertex weights as `x_v`.
pub fn matching_multivar(g: &Graph) -> Result<Rational> {
    let xs: Vec<Rational> = (0..g.n()).map(|v| g.vertex_weight(v)).collect();
    matching_sum(g, &xs, &Rational::zero(), &Rational::one())
}

/// `PerfMatch(G) = Σ_{M perfect} ∏_{e∈M} x_e` with edge weights as `x_e`.
pub fn perfmatch(g: &Graph) -> Result<Rational> {
    let sched = schedule(g);
    if !sched.isolated.is_empty() || g.n() % 2 == 1 {
        return Ok(Rational::zero());
    }
    let mut active: Vec<usize> = Vec::new();
    let mut states: HashMap<u64, Rational> = HashMap::from([(0u64, Rational::one())]);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for w in [u, v] {
            if sched.first[w] == Some(i) {
                if active.len() == MAX_FRONTIER {
                    return Err(frontier_error(active.len() + 1));
                }
                active.push(w);
            }
        }
        let pu = active.iter().position(|&a| a == u).expect("active");
        let pv = active.iter().position(|&a| a == v).expect("active");
        let weight = g.edge_weight(i);
        let mut next: HashMap<u64, Rational> = HashMap::with_capacity(states.len() * 2);
        for (s, val) in states {
            if s >> pu & 1 == 0 && s >> pv & 1 == 0 {
                *next.entry(s | 1 << pu | 1 << pv).or_insert_with(Rational::zero) += &val * &weight;
            }
            *next.entry(s).or_insert_with(Rational::zero) += val;
        }
        states = next;

        let mut retiring: Vec<usize> = [u, v]
            .into_iter()
            .filter(|&w| sched.last[w] == Some(i))
            .map(|w| active.iter().position(|&a| a == w).expect("active"))
            .collect();
        retiring.sort_unstable_by(|a, b| b.cmp(a));
        for p in retiring {
            active.remove(p);
            // An unmatched retiring vertex can never be matched later.
            states = states
                .into_iter()
                .filter(|(s, _)| s >> p & 1 == 1)
                .fold(HashMap::new(), |mut acc, (s, val)| {
                    *acc.entry(drop_bit(s, p)).or_insert_with(Rational::zero) += val;
                    acc
                });
        }
    }
    Ok(states.remove(&0).unwrap_or_else(Rational::zero))
}

fn add_into(acc: &mut Vec<Rational>, other: &[Rational]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), Rational::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

/// Canonical relabeling: blocks numbered by first occurrence.
fn canonical(labels: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

/// Random-cluster sum with edge weights as `x_e`, returned as a polynomial
/// in `q`: entry `j` is `Σ_{A : k(A) = j} ∏_{e∈A} x_e`.
pub fn z_by_components(g: &Graph) -> Result<Vec<Rational>> {
    let sched = schedule(g);
    // Polynomial in q: index = number of closed components.
    let mut base = vec![Rational::zero(); sched.isolated.len() + 1];
    base[sched.isolated.len()] = Rational::one();
    let mut active: Vec<usize> = Vec::new();
    let mut states: HashMap<Vec<u8>, Vec<Rational>> = HashMap::from([(Vec::new(), base)]);

    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for w in [u, v] {
            if sched.first[w] == Some(i) {
                if active.len() == MAX_FRONTIER {
                    return Err(frontier_error(active.len() + 1));
                }
                active.push(w);
                // Fresh singleton block; labels stay < 128 since the
                // frontier is at most 64 wide.
                states = states
                    .into_iter()
                    .map(|(mut s, val)| {
                        let fresh = s.iter().copied().max().map_or(0, |m| m + 1);
                        s.push(fresh);
                        (s, val)
                    })
                    .collect();
            }
        }
        let pu = active.iter().position(|&a| a == u).expect("active");
        let pv = active.iter().position(|&a| a == v).expect("active");
        let weight = g.edge_weight(i);
        let mut next: HashMap<Vec<u8>, Vec<Rational>> = HashMap::with_capacity(states.len() * 2);
        for (s, val) in states {
            let (lu, lv) = (s[pu], s[pv]);
            let merged: Vec<u8> = if lu == lv {
                s.clone()
            } else {
                canonical(&s.iter().map(|&l| if l == lv { lu } else { l }).collect::<Vec<_>>())
            };
            let scaled: Vec<Rational> = val.iter().map(|c| c * &weight).collect();
            add_into(next.entry(merged).or_default(), &scaled);
            add_into(next.entry(s).or_default(), &val);
        }
        states = next;

        let mut retiring: Vec<usize> = [u, v]
            .into_iter()
            .filter(|&w| sched.last[w] == Some(i))
            .map(|w| active.iter().position(|&a| a == w).expect("active"))
            .collect();
        retiring.sort_unstable_by(|a, b| b.cmp(a));
        for p in retiring {
            active.remove(p);
            let mut next: HashMap<Vec<u8>, Vec<Rational>> = HashMap::with_capacity(states.len());
            for (mut s, val) in states {
                let label = s.remove(p);
                let closes = !s.contains(&label);
                let val = if closes {
                    let mut shifted = Vec::with_capacity(val.len() + 1);
                    shifted.push(Rational::zero());
                    shifted.extend(val);
                    shifted
                } else {
                    val
                };
                add_into(next.entry(canonical(&s)).or_default(), &val);
            }
            states = next;
        }
    }
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

/// `Z(G; q, w)` at a point, weights ignored.
pub fn z_eval(g: &Graph, q: &Rational, w: &Rational) -> Result<Rational> {
    let h = uniform_edge_weights(g, w);
    let by_k = z_by_components(&h)?;
    Ok(by_k
        .iter()
        .enumerate()
        .map(|(k, c)| c * rpow(q, k as i64).expect("k >= 0"))
        .fold(Rational::zero(), |a, b| a + b))
}

/// `Z₀(G; q, w)` at a point, weights ignored; `0^0 = 1`.
pub fn z0_eval(g: &Graph, q: &Rational, w: &Rational) -> Result<Rational> {
    let h = uniform_edge_weights(g, w);
    let base = g.components();
    let by_k = z_by_components(&h)?;
    Ok(by_k
        .iter()
        .enumerate()
        .skip(base)
        .map(|(k, c)| c * rpow(q, (k - base) as i64).expect("k >= k(E)"))
        .fold(Rational::zero(), |a, b| a + b))
}

/// Multivariate `Z` (or `Z₀` with `zero_variant`) with edge weights as `x_e`.
pub fn z_multivar(g: &Graph, q: &Rational, zero_variant: bool) -> Result<Rational> {
    let base = if zero_variant { g.components() } else { 0 };
    let by_k = z_by_components(g)?;
    Ok(by_k
        .iter()
        .enumerate()
        .skip(base)
        .map(|(k, c)| c * rpow(q, (k - base) as i64).expect("k >= k(E)"))
        .fold(Rational::zero(), |a, b| a + b))
}

fn uniform_edge_weights(g: &Graph, w: &Rational) -> Graph {
    let mut h = g.unweighted();
    for i in 0..h.m() {
        h.set_edge_weight(i, w.clone()).expect("edge index in range");
    }
    h
}
