use proptest::prelude::*;

use super::*;
use crate::graph::connected_graphs;
use crate::poly::{rat, ratio};

// Independent oracles: plain subset enumeration with no recursion or memo.

fn naive_matchings(g: &Graph) -> Vec<u64> {
    (0u64..1 << g.m())
        .filter(|&mask| {
            let mut used = 0u64;
            g.edges().iter().enumerate().all(|(i, &(u, v))| {
                if mask >> i & 1 == 0 {
                    return true;
                }
                let ok = used >> u & 1 == 0 && used >> v & 1 == 0;
                used |= 1 << u | 1 << v;
                ok
            })
        })
        .collect()
}

fn naive_matching_poly(g: &Graph) -> UniPoly {
    let mut c = vec![0i64; g.n() + 1];
    for mask in naive_matchings(g) {
        c[g.n() - 2 * mask.count_ones() as usize] += 1;
    }
    UniPoly::from_ints(&c)
}

fn naive_indep_poly(g: &Graph) -> UniPoly {
    let mut c = vec![0i64; g.n() + 1];
    for s in 0u64..1 << g.n() {
        if g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0) {
            c[s.count_ones() as usize] += 1;
        }
    }
    UniPoly::from_ints(&c)
}

fn naive_perfmatch(g: &Graph) -> Rational {
    naive_matchings(g)
        .into_iter()
        .filter(|m| 2 * m.count_ones() as usize == g.n())
        .map(|m| {
            (0..g.m())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| g.edge_weight(i))
                .fold(Rational::one(), |a, b| a * b)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

fn naive_z(g: &Graph, q: &Rational) -> Rational {
    (0u64..1 << g.m())
        .map(|mask| {
            let subset: Vec<usize> = (0..g.m()).filter(|i| mask >> i & 1 == 1).collect();
            let k = g.component_count(&subset) as i64;
            subset
                .iter()
                .map(|&i| g.edge_weight(i))
                .fold(rpow(q, k).unwrap(), |a, b| a * b)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

pub(crate) fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| ratio(a, b))
}

#[test]
fn matching_poly_examples() {
    assert_eq!(matching_poly(&Graph::path(2)).unwrap(), UniPoly::from_ints(&[1, 0, 1]));
    assert_eq!(
        matching_poly(&Graph::complete(3)).unwrap(),
        UniPoly::from_ints(&[0, 3, 0, 1])
    );
    assert_eq!(
        matching_poly(&Graph::empty(4)).unwrap(),
        UniPoly::from_ints(&[0, 0, 0, 0, 1])
    );
    assert_eq!(matching_poly(&Graph::complete(3)).unwrap(), naive_matching_poly(&Graph::complete(3)));
}

#[test]
fn matching_multivar_examples() {
    let v = Graph::empty(1).with_vertex_weight(0, rat(3)).unwrap();
    assert_eq!(matching_poly_multivar_eval(&v).unwrap(), rat(3));
    let k2 = Graph::path(2)
        .with_vertex_weight(0, rat(2))
        .unwrap()
        .with_vertex_weight(1, rat(3))
        .unwrap();
    assert_eq!(matching_poly_multivar_eval(&k2).unwrap(), rat(7));
    assert_eq!(matching_poly_multivar_eval(&Graph::complete(3)).unwrap(), rat(4));
}

#[test]
fn indep_poly_examples() {
    assert_eq!(indep_poly(&Graph::complete(3)).unwrap(), UniPoly::from_ints(&[1, 3]));
    assert_eq!(indep_poly(&Graph::empty(3)).unwrap(), UniPoly::from_ints(&[1, 3, 3, 1]));
    assert_eq!(indep_poly(&Graph::path(2)).unwrap(), UniPoly::from_ints(&[1, 2]));
}

#[test]
fn z_poly_examples() {
    assert_eq!(z_poly(&Graph::path(2), &rat(2)).unwrap(), UniPoly::from_ints(&[4, 2]));
    let c4 = Graph::cycle(4);
    assert_eq!(z_poly(&c4, &rat(1)).unwrap(), UniPoly::from_ints(&[1, 4, 6, 4, 1]));
    assert_eq!(z_poly(&Graph::path(3), &rat(2)).unwrap(), UniPoly::from_ints(&[8, 8, 2]));
}

#[test]
fn z0_poly_examples() {
    assert_eq!(z0_poly(&Graph::path(3), &rat(0)).unwrap(), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(z0_poly(&Graph::path(2), &rat(0)).unwrap(), UniPoly::from_ints(&[0, 1]));
    let k3 = Graph::complete(3);
    let q = rat(3);
    assert_eq!(
        z0_poly(&k3, &q).unwrap().scale(&q),
        z_poly(&k3, &q).unwrap()
    );
}

#[test]
fn z_multivar_examples() {
    let e = Graph::path(2).with_edge_weight(0, ratio(1, 4)).unwrap();
    assert_eq!(z_multivar_eval(&e, &rat(2), false).unwrap(), ratio(9, 2));
    let w = ratio(7, 3);
    let e = Graph::path(2).with_edge_weight(0, &w / rat(2)).unwrap();
    assert_eq!(z_multivar_eval(&e, &rat(0), true).unwrap(), &w / rat(2));
    let mut k4 = Graph::complete(4);
    for i in 0..k4.m() {
        k4.set_edge_weight(i, w.clone()).unwrap();
    }
    assert_eq!(
        z_multivar_eval(&k4, &rat(-1), false).unwrap(),
        z_poly(&k4, &rat(-1)).unwrap().eval(&w)
    );
}

#[test]
fn tutte_examples() {
    for g in [Graph::complete(3), Graph::cycle(4), Graph::complete(4)] {
        assert_eq!(tutte_eval(&g, &rat(2), &rat(2)).unwrap(), rat(1 << g.m()));
    }
    // T(K3) = x^2 + x + y
    assert_eq!(tutte_eval(&Graph::complete(3), &rat(3), &rat(5)).unwrap(), rat(17));
    // Boundary points are well-defined.
    assert_eq!(tutte_eval(&Graph::complete(3), &rat(1), &rat(1)).unwrap(), rat(3));
}

#[test]
fn perfmatch_examples() {
    let c4 = Graph::cycle(4);
    assert_eq!(perfmatch_eval(&c4).unwrap(), rat(2));
    let signed = c4.clone().with_edge_weight(0, rat(-1)).unwrap();
    assert_eq!(perfmatch_eval(&signed).unwrap(), rat(0));
    assert_eq!(perfmatch_eval(&Graph::complete(3)).unwrap(), rat(0));
}

#[test]
fn signed_perm_examples() {
    let c4 = Graph::cycle(4);
    let signed = c4.clone().with_edge_weight(0, rat(-1)).unwrap();
    let p = signed_perm_poly(&signed).unwrap();
    assert_eq!(p, UniPoly::from_ints(&[1, 1]));
    assert_eq!(p.eval(&rat(-1)), rat(0));
    assert_eq!(signed_perm_poly(&c4).unwrap(), UniPoly::from_ints(&[2]));
    let bad = c4.with_edge_weight(1, rat(2)).unwrap();
    assert!(matches!(signed_perm_poly(&bad), Err(Error::Hypothesis(_))));
}

#[test]
fn size_guard() {
    let g = Graph::empty(31);
    assert!(matches!(matching_poly(&g), Err(Error::TooLarge { .. })));
    assert!(Enumerator::default().forced(true).matching_poly(&g).is_ok());
    let big = Graph::path(32);
    assert!(matches!(z_poly(&big, &rat(2)), Err(Error::TooLarge { what: "m", .. })));
}

#[test]
fn sequential_and_parallel_agree() {
    let g = Graph::complete_bipartite(3, 3);
    let seq = Enumerator::default().with_execution(Execution::Sequential);
    let par = Enumerator::default().with_execution(Execution::Parallel);
    assert_eq!(seq.z_poly(&g, &rat(3)).unwrap(), par.z_poly(&g, &rat(3)).unwrap());
    assert_eq!(
        seq.tutte_eval(&g, &ratio(1, 2), &rat(3)).unwrap(),
        par.tutte_eval(&g, &ratio(1, 2), &rat(3)).unwrap()
    );
}

#[test]
fn cross_check_against_naive_oracles() {
    for n in 1..=5 {
        for g in connected_graphs(n) {
            assert_eq!(matching_poly(&g).unwrap(), naive_matching_poly(&g));
            assert_eq!(indep_poly(&g).unwrap(), naive_indep_poly(&g));
            assert_eq!(perfmatch_eval(&g).unwrap(), naive_perfmatch(&g));
            for q in [rat(-1), rat(2), ratio(1, 3)] {
                assert_eq!(z_poly(&g, &q).unwrap().eval(&rat(1)), naive_z(&g, &q));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_parity(g in arb_graph(7)) {
        let p = matching_poly(&g).unwrap();
        for (k, c) in p.coeffs().iter().enumerate() {
            if (k + g.n()) % 2 == 1 {
                prop_assert!(c.is_zero());
            }
        }
        prop_assert_eq!(p.eval(&rat(1)), rat(naive_matchings(&g).len() as i64));
    }

    #[test]
    fn indep_at_one_counts_sets(g in arb_graph(7)) {
        let total: i64 = naive_indep_poly(&g).coeffs().iter().map(|c| c.to_integer().try_into().unwrap_or(0i64)).sum();
        prop_assert_eq!(indep_poly(&g).unwrap().eval(&rat(1)), rat(total));
    }

    #[test]
    fn z_equals_scaled_z0(g in arb_graph(6), q in small_rational()) {
        prop_assume!(!q.is_zero());
        let k = g.components() as i64;
        prop_assert_eq!(
            z_poly(&g, &q).unwrap(),
            z0_poly(&g, &q).unwrap().scale(&rpow(&q, k).unwrap())
        );
    }

    #[test]
    fn tutte_z_relation(g in arb_graph(6), x in small_rational(), y in small_rational()) {
        let (xm, ym) = (&x - rat(1), &y - rat(1));
        prop_assume!(!xm.is_zero() && !ym.is_zero());
        let q = &xm * &ym;
        let mut h = g.clone();
        for i in 0..h.m() {
            h.set_edge_weight(i, ym.clone()).unwrap();
        }
        let lhs = tutte_eval(&g, &x, &y).unwrap()
            * rpow(&xm, g.components() as i64).unwrap()
            * rpow(&ym, g.n() as i64).unwrap();
        prop_assert_eq!(lhs, z_multivar_eval(&h, &q, false).unwrap());
    }

    #[test]
    fn mu_via_line_graph_indep(g in arb_graph(6), xi in small_rational()) {
        prop_assume!(!xi.is_zero());
        let lhs = matching_poly(&g).unwrap().eval(&xi);
        let rhs = rpow(&xi, g.n() as i64).unwrap()
            * indep_poly(&g.line_graph()).unwrap().eval(&rpow(&xi, -2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn perfect_matchings_are_large_line_graph_independent_sets(g in arb_graph(7)) {
        prop_assume!(g.n() % 2 == 0);
        let pm = perfmatch_eval(&g.unweighted()).unwrap();
        let lg = indep_poly(&g.line_graph()).unwrap();
        prop_assert_eq!(pm, lg.coeff(g.n() / 2));
    }

    #[test]
    fn signed_perm_endpoints(g in arb_graph(6), signs in proptest::collection::vec(any::<bool>(), 15)) {
        let mut h = g.clone();
        for i in 0..h.m() {
            if signs[i] {
                h.set_edge_weight(i, rat(-1)).unwrap();
            }
        }
        let p = signed_perm_poly(&h).unwrap();
        prop_assert_eq!(p.eval(&rat(1)), perfmatch_eval(&g).unwrap());
        prop_assert_eq!(p.eval(&rat(-1)), perfmatch_eval(&h).unwrap());
    }

    #[test]
    fn matching_multivar_substitution(g in arb_graph(7), xi in small_rational()) {
        let mut h = g.clone();
        for v in 0..h.n() {
            h.set_vertex_weight(v, xi.clone()).unwrap();
        }
        prop_assert_eq!(
            matching_poly_multivar_eval(&h).unwrap(),
            matching_poly(&g).unwrap().eval(&xi)
        );
    }

    #[test]
    fn frontier_kernels_match_enumeration(
        g in arb_graph(7),
        weights in proptest::collection::vec(small_rational(), 28),
        q in small_rational(),
    ) {
        let mut h = g.clone();
        for i in 0..h.m() {
            h.set_edge_weight(i, weights[i].clone()).unwrap();
        }
        for v in 0..h.n() {
            h.set_vertex_weight(v, weights[27 - v].clone()).unwrap();
        }
        prop_assert_eq!(frontier::perfmatch(&h).unwrap(), perfmatch_eval(&h).unwrap());
        prop_assert_eq!(frontier::matching_multivar(&h).unwrap(), matching_poly_multivar_eval(&h).unwrap());
        prop_assert_eq!(frontier::z_multivar(&h, &q, false).unwrap(), z_multivar_eval(&h, &q, false).unwrap());
        prop_assert_eq!(frontier::z_multivar(&h, &q, true).unwrap(), z_multivar_eval(&h, &q, true).unwrap());
    }
}
