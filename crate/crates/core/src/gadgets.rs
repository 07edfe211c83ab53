//! Weight-simulation gadget families.
//!
//! A family bundles an injective weight list `w_0, w_1, …`, a gadget per
//! weight index and a nonzero factor function `F` such that, for a graph
//! `G` weighted from the list, the weighted polynomial equals
//! `p(T(G); ξ) / F(G)` where `T(G)` is `G` with every weighted element
//! replaced by its gadget and `p(·; ξ)` is the unweighted evaluation.
//!
//! All families use a 0-based index: index `i` is the `i`-th weight and the
//! gadget realizing it. Index 0 is the identity weight of each family
//! (weight 1 for perfect matchings and μ, the stretch point `w` itself for
//! the random-cluster family), so unweighted elements behave as if they
//! carried `w_0`.

use num_traits::{One, Signed, Zero};

use crate::blockinterp::{ElementKind, WeightList};
use crate::error::{Error, Result};
use crate::graph::{EdgeGadget, Graph, VertexGadget};
use crate::poly::{rpow, PolyId, Rational};
use crate::polyval::{frontier, Enumerator};

/// Gadget of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gadget {
    Edge(EdgeGadget),
    Vertex(VertexGadget),
}

impl Gadget {
    pub fn size(&self) -> usize {
        match self {
            Gadget::Edge(g) => g.size(),
            Gadget::Vertex(g) => g.size(),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Gadget::Edge(g) => &g.graph,
            Gadget::Vertex(g) => &g.graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Family {
    PmParallel,
    MuPendant { xi: Rational },
    TutteStretch { q: Rational, w: Rational },
}

/// One of the three weight-simulation families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetFamily {
    family: Family,
}

/// Perfect matchings: weight `i + 1` realized by `i + 1` parallel paths of
/// length 3; factor 1.
pub fn pm_parallel_family() -> GadgetFamily {
    GadgetFamily {
        family: Family::PmParallel,
    }
}

/// μ at `ξ ≠ 0`: weight `1 + t/ξ²` realized by `t` pendant leaves; factor
/// `∏ ξ^t`.
pub fn mu_pendant_family(xi: Rational) -> Result<GadgetFamily> {
    if xi.is_zero() {
        return Err(Error::hypothesis("mu-pendant family needs xi != 0"));
    }
    Ok(GadgetFamily {
        family: Family::MuPendant { xi },
    })
}

/// Random-cluster `Z_q` at `w` (`Z₀` when `q = 0`): index `i` stretches an
/// edge into a path with `i + 1` edges.
pub fn tutte_stretch_family(q: Rational, w: Rational) -> Result<GadgetFamily> {
    if w.is_zero() {
        return Err(Error::hypothesis("tutte-stretch family needs w != 0"));
    }
    let two_w = &w + &w;
    if q.is_one() || q == -w.clone() || q == -two_w {
        return Err(Error::hypothesis(format!(
            "tutte-stretch family needs q not in {{1, -w, -2w}} (q = {q}, w = {w})"
        )));
    }
    Ok(GadgetFamily {
        family: Family::TutteStretch { q, w },
    })
}

/// Parallel-path gadget with `k` branches `u – a – b – v`.
fn parallel_paths(k: usize) -> EdgeGadget {
    let edges = (0..k)
        .flat_map(|j| {
            let (a, b) = (2 + 2 * j, 3 + 2 * j);
            [(0, a), (a, b), (b, 1)]
        })
        .collect();
    EdgeGadget::new(Graph::new(2 + 2 * k, edges).expect("simple"), 0, 1).expect("attachments")
}

fn is_nonneg_integer(r: &Rational) -> Option<usize> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().try_into().ok()
    } else {
        None
    }
}

impl GadgetFamily {
    pub fn name(&self) -> &'static str {
        match self.family {
            Family::PmParallel => "pm-parallel",
            Family::MuPendant { .. } => "mu-pendant",
            Family::TutteStretch { .. } => "tutte-stretch",
        }
    }

    pub fn kind(&self) -> ElementKind {
        match self.family {
            Family::MuPendant { .. } => ElementKind::Vertices,
            _ => ElementKind::Edges,
        }
    }

    /// The unweighted polynomial queried on spliced graphs.
    pub fn target(&self) -> PolyId {
        match &self.family {
            Family::PmParallel => PolyId::PerfMatch,
            Family::MuPendant { .. } => PolyId::Matching,
            Family::TutteStretch { q, .. } if q.is_zero() => PolyId::RandomClusterZ0(q.clone()),
            Family::TutteStretch { q, .. } => PolyId::RandomClusterZ(q.clone()),
        }
    }

    pub fn weight_at(&self, i: usize) -> Rational {
        let idx = Rational::from_integer(i.into());
        match &self.family {
            Family::PmParallel => idx + Rational::one(),
            Family::MuPendant { xi } => Rational::one() + idx / (xi * xi),
            Family::TutteStretch { q, w } => {
                let k = Rational::from_integer((i + 1).into());
                if q.is_zero() {
                    w / k
                } else {
                    let r = Rational::one() + q / w;
                    q / (rpow(&r, i as i64 + 1).expect("positive power") - Rational::one())
                }
            }
        }
    }

    pub fn weight_list(&self) -> WeightList {
        let family = self.clone();
        WeightList::new(move |i| family.weight_at(i))
    }

    /// `w_0, …, w_{len-1}`.
    pub fn weights(&self, len: usize) -> Vec<Rational> {
        (0..len).map(|i| self.weight_at(i)).collect()
    }

    /// Index of `x` in the weight list, if it occurs.
    pub fn index_of(&self, x: &Rational) -> Option<usize> {
        match &self.family {
            Family::PmParallel => is_nonneg_integer(&(x - Rational::one())),
            Family::MuPendant { xi } => is_nonneg_integer(&((x - Rational::one()) * xi * xi)),
            Family::TutteStretch { q, w } => {
                if x.is_zero() {
                    return None;
                }
                if q.is_zero() {
                    return is_nonneg_integer(&(w / x))
                        .filter(|&k| k >= 1)
                        .map(|k| k - 1);
                }
                // w_k = q / (r^k - 1)  ⇔  r^k = 1 + q/x.
                let r = Rational::one() + q / w;
                let target = Rational::one() + q / x;
                let growing = r.abs() > Rational::one();
                let mut power = r.clone();
                for k in 1usize.. {
                    if power == target {
                        return Some(k - 1);
                    }
                    let past = if growing {
                        power.abs() > target.abs()
                    } else {
                        power.abs() < target.abs()
                    };
                    if past {
                        return None;
                    }
                    power *= &r;
                }
                None
            }
        }
    }

    pub fn gadget_at(&self, i: usize) -> Gadget {
        match self.family {
            Family::PmParallel => Gadget::Edge(parallel_paths(i + 1)),
            Family::MuPendant { .. } => {
                Gadget::Vertex(VertexGadget::new(Graph::star(i), 0).expect("centre"))
            }
            Family::TutteStretch { .. } => {
                Gadget::Edge(EdgeGadget::new(Graph::path(i + 2), 0, i + 1).expect("ends"))
            }
        }
    }

    fn edge_gadget(&self, i: usize) -> Option<EdgeGadget> {
        match self.gadget_at(i) {
            Gadget::Edge(g) => Some(g),
            Gadget::Vertex(_) => None,
        }
    }

    fn vertex_gadget(&self, i: usize) -> Option<VertexGadget> {
        match self.gadget_at(i) {
            Gadget::Vertex(g) => Some(g),
            Gadget::Edge(_) => None,
        }
    }

    /// Weight indices of the elements of `g` (0 for unweighted elements).
    pub fn element_indices(&self, g: &Graph) -> Result<Vec<usize>> {
        match self.kind() {
            ElementKind::Edges => (0..g.m())
                .map(|e| match g.edge_weights().get(&e) {
                    None => Ok(0),
                    Some(x) => self.index_of(x).ok_or_else(|| Error::UnknownWeight {
                        edge: e,
                        weight: x.clone(),
                    }),
                })
                .collect(),
            ElementKind::Vertices => (0..g.n())
                .map(|v| match g.vertex_weights().get(&v) {
                    None => Ok(0),
                    Some(x) => self.index_of(x).ok_or_else(|| Error::UnknownVertexWeight {
                        vertex: v,
                        weight: x.clone(),
                    }),
                })
                .collect(),
        }
    }

    /// `F(G)`, never zero for admissible inputs.
    pub fn factor(&self, g: &Graph) -> Result<Rational> {
        let indices = self.element_indices(g)?;
        Ok(match &self.family {
            Family::PmParallel => Rational::one(),
            Family::MuPendant { xi } => {
                let total: usize = indices.iter().sum();
                rpow(xi, total as i64).expect("xi != 0")
            }
            Family::TutteStretch { q, w } => indices
                .iter()
                .map(|&i| {
                    let k = i as i64 + 1;
                    if q.is_zero() {
                        Rational::from_integer(k.into()) * rpow(w, k - 1).expect("w != 0")
                    } else {
                        let qw = q + w;
                        (rpow(&qw, k).expect("k >= 1") - rpow(w, k).expect("k >= 1")) / q
                    }
                })
                .fold(Rational::one(), |a, b| a * b),
        })
    }

    /// `T(G)`: every weighted element replaced by its gadget. The result is
    /// unweighted.
    pub fn splice(&self, g: &Graph) -> Result<Graph> {
        let indices = self.element_indices(g)?;
        let len = indices.iter().copied().max().map_or(1, |m| m + 1);
        let weights = self.weights(len);
        match self.kind() {
            ElementKind::Edges => {
                let h = g.splice_edge_gadgets(&weights, |i| self.edge_gadget(i))?;
                Ok(h.unweighted())
            }
            ElementKind::Vertices => {
                let h = g.splice_vertex_gadgets(&weights, |i| self.vertex_gadget(i))?;
                Ok(h.unweighted())
            }
        }
    }

    /// The target polynomial at the family's point on an unweighted graph,
    /// through the frontier kernels (weights on `h` are ignored).
    pub fn evaluate_target(&self, h: &Graph) -> Result<Rational> {
        let h = h.unweighted();
        match &self.family {
            Family::PmParallel => frontier::perfmatch(&h),
            Family::MuPendant { xi } => frontier::matching_eval(&h, xi),
            Family::TutteStretch { q, w } if q.is_zero() => frontier::z0_eval(&h, q, w),
            Family::TutteStretch { q, w } => frontier::z_eval(&h, q, w),
        }
    }

    /// `g` with every unweighted element given the identity weight `w_0`.
    pub fn materialize(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        let w0 = self.weight_at(0);
        match self.kind() {
            ElementKind::Edges => {
                for e in (0..g.m()).filter(|e| !g.edge_weights().contains_key(e)) {
                    out.set_edge_weight(e, w0.clone())?;
                }
            }
            ElementKind::Vertices => {
                for v in (0..g.n()).filter(|v| !g.vertex_weights().contains_key(v)) {
                    out.set_vertex_weight(v, w0.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// The weighted polynomial of `g` by exhaustive enumeration, with
    /// unweighted elements read as `w_0`.
    ///
    /// For μ the weighted form gives each unmatched vertex `v` the value
    /// `ξ·x_v`: the attachment vertex itself contributes one factor `ξ`
    /// besides the `ξ^t(1 + t/ξ²)` of its leaves.
    pub fn evaluate_weighted(&self, g: &Graph) -> Result<Rational> {
        let g = self.materialize(g)?;
        let en = Enumerator::new();
        match &self.family {
            Family::PmParallel => en.perfmatch(&g),
            Family::MuPendant { xi } => {
                let mut scaled = g.clone();
                for v in 0..g.n() {
                    scaled.set_vertex_weight(v, xi * g.vertex_weight(v))?;
                }
                en.matching_multivar(&scaled)
            }
            Family::TutteStretch { q, .. } => en.z_multivar(&g, q, q.is_zero()),
        }
    }
}

/// Checks `p⃗(G) = p(T(G); ξ) / F(G)` exactly. The left side is enumerated,
/// the right side spliced and evaluated once.
pub fn verify_simulation(family: &GadgetFamily, g: &Graph) -> Result<bool> {
    let lhs = family.evaluate_weighted(g)?;
    let factor = family.factor(g)?;
    if factor.is_zero() {
        return Err(Error::Oracle("factor function vanished".into()));
    }
    let rhs = family.evaluate_target(&family.splice(g)?)? / factor;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};
    use crate::polyval;
    use proptest::prelude::*;

    fn families() -> Vec<GadgetFamily> {
        vec![
            pm_parallel_family(),
            mu_pendant_family(rat(1)).unwrap(),
            mu_pendant_family(rat(2)).unwrap(),
            mu_pendant_family(ratio(-1, 3)).unwrap(),
            tutte_stretch_family(rat(2), rat(1)).unwrap(),
            tutte_stretch_family(rat(-1), rat(2)).unwrap(),
            tutte_stretch_family(ratio(1, 2), ratio(-3, 2)).unwrap(),
            tutte_stretch_family(rat(0), rat(5)).unwrap(),
        ]
    }

    #[test]
    fn pm_examples() {
        let f = pm_parallel_family();
        assert_eq!(f.weights(3), vec![rat(1), rat(2), rat(3)]);
        let Gadget::Edge(h1) = f.gadget_at(0) else { panic!() };
        assert_eq!((h1.graph.n(), h1.graph.m()), (4, 3));
        assert_eq!(polyval::perfmatch_eval(&h1.graph).unwrap(), rat(1));
        let edge = Graph::path(2).with_edge_weight(0, rat(2)).unwrap();
        let h = f.splice(&edge).unwrap();
        assert_eq!((h.n(), h.m()), (6, 6));
        assert_eq!(polyval::perfmatch_eval(&h).unwrap(), rat(2));
        assert_eq!(f.factor(&edge).unwrap(), rat(1));
        for k in 0..8 {
            let Gadget::Edge(g) = f.gadget_at(k) else { panic!() };
            let colors = g.graph.two_coloring().expect("bipartite");
            assert_ne!(colors[g.u], colors[g.v]);
        }
    }

    #[test]
    fn c4_weight_index_one_splice() {
        let f = pm_parallel_family();
        let mut g = Graph::cycle(4);
        for e in 0..4 {
            g.set_edge_weight(e, f.weight_at(1)).unwrap();
        }
        let h = f.splice(&g).unwrap();
        assert_eq!((h.n(), h.m()), (20, 24));
    }

    #[test]
    fn mu_examples() {
        assert!(mu_pendant_family(rat(0)).is_err());
        let f = mu_pendant_family(rat(1)).unwrap();
        assert_eq!(f.weights(3), vec![rat(1), rat(2), rat(3)]);
        assert_eq!(f.gadget_at(0).graph().size(), 1);
        let v = Graph::empty(1).with_vertex_weight(0, f.weight_at(2)).unwrap();
        let h = f.splice(&v).unwrap();
        assert_eq!(h, Graph::star(2));
        assert_eq!(polyval::matching_poly(&h).unwrap().eval(&rat(1)), rat(3));
        assert_eq!(f.factor(&v).unwrap(), rat(1));

        let f = mu_pendant_family(rat(2)).unwrap();
        assert_eq!(f.weight_at(1), ratio(5, 4));
        let v = Graph::empty(1).with_vertex_weight(0, f.weight_at(1)).unwrap();
        // ξ^{t+1} + t·ξ^{t-1} = ξ·ξ^t·(1 + t/ξ²): 4 + 1 = 2·2·(5/4)
        assert_eq!(f.evaluate_target(&f.splice(&v).unwrap()).unwrap(), rat(5));
        assert_eq!(f.factor(&v).unwrap(), rat(2));
        assert!(verify_simulation(&f, &v).unwrap());

        let f = mu_pendant_family(rat(1)).unwrap();
        let g = Graph::complete(3)
            .with_vertex_weight(0, rat(1))
            .and_then(|g| g.with_vertex_weight(1, rat(2)))
            .and_then(|g| g.with_vertex_weight(2, rat(3)))
            .unwrap();
        assert!(verify_simulation(&f, &g).unwrap());
    }

    #[test]
    fn stretch_examples() {
        assert!(tutte_stretch_family(rat(1), rat(1)).is_err());
        assert!(tutte_stretch_family(rat(-1), rat(1)).is_err());
        assert!(tutte_stretch_family(rat(-2), rat(1)).is_err());
        assert!(tutte_stretch_family(rat(2), rat(0)).is_err());
        assert!(tutte_stretch_family(rat(0), rat(0)).is_err());

        let f = tutte_stretch_family(rat(2), rat(1)).unwrap();
        assert_eq!(f.weight_at(0), rat(1));
        assert_eq!(f.weight_at(1), ratio(1, 4));
        let e = Graph::path(2).with_edge_weight(0, ratio(1, 4)).unwrap();
        assert_eq!(f.evaluate_weighted(&e).unwrap(), ratio(9, 2));
        let h = f.splice(&e).unwrap();
        assert_eq!(h, Graph::new(3, vec![(0, 2), (2, 1)]).unwrap());
        assert_eq!(f.evaluate_target(&h).unwrap(), rat(18));
        assert_eq!(f.factor(&e).unwrap(), rat(4));
        assert!(verify_simulation(&f, &e).unwrap());

        let unit = Graph::path(2).with_edge_weight(0, rat(1)).unwrap();
        assert_eq!(f.factor(&unit).unwrap(), rat(1));
        assert_eq!(f.splice(&unit).unwrap(), Graph::path(2));

        let f = tutte_stretch_family(rat(0), rat(7)).unwrap();
        assert_eq!(f.target(), PolyId::RandomClusterZ0(rat(0)));
        let e = Graph::path(2).with_edge_weight(0, ratio(7, 2)).unwrap();
        assert_eq!(f.evaluate_target(&f.splice(&e).unwrap()).unwrap(), rat(49));
        assert_eq!(f.factor(&e).unwrap(), rat(14));
        assert!(verify_simulation(&f, &e).unwrap());

        let f = tutte_stretch_family(rat(2), rat(1)).unwrap();
        let mut k3 = Graph::complete(3);
        for e in 0..3 {
            k3.set_edge_weight(e, f.weight_at(e)).unwrap();
        }
        assert!(verify_simulation(&f, &k3).unwrap());
    }

    #[test]
    fn unweighted_graphs_verify_trivially() {
        for f in families() {
            for g in [Graph::complete(3), Graph::cycle(4), Graph::path(3)] {
                assert!(verify_simulation(&f, &g).unwrap(), "{}", f.name());
            }
        }
    }

    #[test]
    fn weights_injective_and_indexable() {
        for f in families() {
            let ws = f.weights(16);
            for (i, w) in ws.iter().enumerate() {
                assert!(!ws[..i].contains(w), "{} repeats at {i}", f.name());
                assert_eq!(f.index_of(w), Some(i), "{}", f.name());
            }
            assert_eq!(f.index_of(&ratio(1234567, 89)), None);
        }
    }

    #[test]
    fn gadget_sizes_grow_linearly() {
        for f in families() {
            let sizes: Vec<usize> = (0..6).map(|i| f.gadget_at(i).size()).collect();
            let steps: Vec<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
            assert!(steps.iter().all(|&s| s == steps[0] && s > 0), "{} {sizes:?}", f.name());
        }
    }

    #[test]
    fn unknown_weight_is_rejected() {
        let f = pm_parallel_family();
        let g = Graph::path(2).with_edge_weight(0, ratio(1, 2)).unwrap();
        assert!(matches!(f.splice(&g), Err(Error::UnknownWeight { .. })));
        assert!(verify_simulation(&f, &g).is_err());
    }

    fn arb_weighted(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
        crate::polyval::tests::arb_graph(max_n)
            .prop_filter("at most 10 edges", |g| g.m() <= 10)
            .prop_flat_map(|g| {
                let len = g.n().max(g.m());
                (Just(g), proptest::collection::vec(0usize..4, len))
            })
    }

    fn decorate(f: &GadgetFamily, g: &Graph, idx: &[usize]) -> Graph {
        let mut out = g.clone();
        match f.kind() {
            ElementKind::Edges => {
                for e in 0..g.m() {
                    out.set_edge_weight(e, f.weight_at(idx[e])).unwrap();
                }
            }
            ElementKind::Vertices => {
                for v in 0..g.n() {
                    out.set_vertex_weight(v, f.weight_at(idx[v])).unwrap();
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn simulation_identity_holds((g, idx) in arb_weighted(7)) {
            for f in families() {
                let h = decorate(&f, &g, &idx);
                prop_assert!(verify_simulation(&f, &h).unwrap(), "{} on {:?}", f.name(), h);
                prop_assert!(!f.factor(&h).unwrap().is_zero());
            }
        }

        #[test]
        fn spliced_size_bound((g, idx) in arb_weighted(7)) {
            for f in families() {
                let h = decorate(&f, &g, &idx);
                let largest = idx.iter().map(|&i| f.gadget_at(i).size()).max().unwrap_or(0);
                let count = match f.kind() { ElementKind::Edges => g.m(), ElementKind::Vertices => g.n() };
                prop_assert!(f.splice(&h).unwrap().size() <= g.size() + largest * count);
            }
        }

        #[test]
        fn pm_splice_preserves_bipartiteness((g, idx) in arb_weighted(7)) {
            prop_assume!(g.is_bipartite());
            let f = pm_parallel_family();
            prop_assert!(f.splice(&decorate(&f, &g, &idx)).unwrap().is_bipartite());
        }
    }
}
