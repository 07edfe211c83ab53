//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphpoly::blockinterp::{
    make_block_plan, query_curve, run_block_interpolation, ElementKind, WeightList,
};
use graphpoly::gadgets::{
    mu_pendant_family, pm_parallel_family, tutte_stretch_family, verify_simulation, GadgetFamily,
};
use graphpoly::graph::{connected_graphs, graphs_with_edges};
use graphpoly::interp::{interpolate_grid, Grid};
use graphpoly::pipeline::{
    mu_via_indep_on_line_graph, pm_to_line_graph_mis, recover_matching_poly,
    recover_signed_permanent_with, recover_z_poly, tutte_point_via_z,
};
use graphpoly::poly::rpow;
use graphpoly::polyval::{self, Enumerator};
use graphpoly::{Execution, Graph, MultiCoeffs, Rational};

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Every connected graph with at most five vertices, plus `K_{3,3}`.
fn corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    out.push(Graph::complete_bipartite(3, 3));
    out
}

fn capacities(elements: usize) -> Vec<usize> {
    let mut ds: Vec<usize> = [1, 2, 3, elements].into_iter().filter(|&d| d >= 1).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

fn criterion_block_interpolation() -> String {
    let weights = WeightList::positive_integers();
    let en = Enumerator::new();
    let mut runs = 0;
    for g in corpus() {
        let mu = polyval::matching_poly(&g).unwrap();
        let indep = polyval::indep_poly(&g).unwrap();
        for d in capacities(g.n()) {
            let plan = make_block_plan(ElementKind::Vertices, (0..g.n()).collect(), d).unwrap();
            let r = run_block_interpolation(&g, &plan, &weights, &|h: &Graph| en.matching_multivar(h))
                .unwrap();
            assert_eq!(r.coefficients, mu, "mu on {g:?}, d = {d}");
            assert_eq!(r.queries, plan.grid_size());
            let r = run_block_interpolation(&g, &plan, &weights, &|h: &Graph| en.indep_multivar(h))
                .unwrap();
            assert_eq!(r.coefficients, indep, "I on {g:?}, d = {d}");
            runs += 2;
        }
        for q in [rat(-1), rat(2), rat(3)] {
            let z = polyval::z_poly(&g, &q).unwrap();
            for d in capacities(g.m()) {
                let plan = make_block_plan(ElementKind::Edges, (0..g.m()).collect(), d).unwrap();
                let r = run_block_interpolation(&g, &plan, &weights, &|h: &Graph| {
                    en.z_multivar(h, &q, false)
                })
                .unwrap();
                assert_eq!(r.coefficients, z, "Z_{q} on {g:?}, d = {d}");
                assert_eq!(r.queries, plan.grid_size());
                runs += 1;
            }
        }
    }
    format!("{runs} reductions matched the direct extractors")
}

/// Random graph on `1..=max_n` vertices with at most `max_m` edges.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=pairs.len().min(max_m));
    pairs.truncate(m);
    Graph::new(n, pairs).unwrap()
}

fn decorate_randomly(family: &GadgetFamily, g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut out = g.clone();
    match family.kind() {
        ElementKind::Edges => {
            for e in 0..g.m() {
                out.set_edge_weight(e, family.weight_at(rng.gen_range(0..4))).unwrap();
            }
        }
        ElementKind::Vertices => {
            for v in 0..g.n() {
                out.set_vertex_weight(v, family.weight_at(rng.gen_range(0..4))).unwrap();
            }
        }
    }
    out
}

fn criterion_gadget_identity() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mu_points = [rat(1), rat(2), ratio(1, 2), rat(-3)];
    let stretch_points = [(rat(2), rat(1)), (rat(3), rat(1)), (rat(-1), rat(2)), (ratio(1, 2), ratio(-3, 2))];
    let zero_points = [rat(5), rat(1), ratio(-2, 3), rat(3)];
    let mut checked = 0;
    for family_kind in 0..4 {
        for i in 0..100 {
            let family = match family_kind {
                0 => pm_parallel_family(),
                1 => mu_pendant_family(mu_points[i % 4].clone()).unwrap(),
                2 => {
                    let (q, w) = stretch_points[i % 4].clone();
                    tutte_stretch_family(q, w).unwrap()
                }
                _ => tutte_stretch_family(rat(0), zero_points[i % 4].clone()).unwrap(),
            };
            let g = random_graph(&mut rng, 8, 10);
            let weighted = decorate_randomly(&family, &g, &mut rng);
            assert!(
                verify_simulation(&family, &weighted).unwrap(),
                "{} instance {i}: {weighted:?}",
                family.name()
            );
            checked += 1;
        }
    }
    format!("{checked} weighted instances verified (4 families incl. q = 0)")
}

fn random_bipartite(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let a = rng.gen_range(1..=5);
        let b = if rng.gen_bool(0.8) { a } else { rng.gen_range(1..=(10 - a).min(5)) };
        let edges: Vec<(usize, usize)> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        if edges.is_empty() {
            continue;
        }
        let mut g = Graph::new(a + b, edges).unwrap();
        let negatives = rng.gen_range(0..=3.min(g.m()));
        let mut ids: Vec<usize> = (0..g.m()).collect();
        ids.shuffle(rng);
        for &e in &ids[..negatives] {
            g.set_edge_weight(e, rat(-1)).unwrap();
        }
        return g;
    }
}

fn criterion_signed_permanent() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nonzero = 0;
    for i in 0..20 {
        let g = random_bipartite(&mut rng);
        let expected = polyval::perfmatch_eval(&g).unwrap();
        if !expected.is_zero() {
            nonzero += 1;
        }
        for d in [1, 2] {
            let r = recover_signed_permanent_with(&g, d, true, Execution::default()).unwrap();
            let negatives = polyval::negative_edges(&g).unwrap();
            let plan = make_block_plan(ElementKind::Edges, negatives, d).unwrap();
            assert_eq!(r.permanent, expected, "graph {i}, d = {d}");
            assert_eq!(r.report.queries, plan.grid_size());
            assert_eq!(r.report.non_bipartite_queries, 0);
            assert_eq!(r.report.weighted_queries, 0);
            assert_eq!(r.report.coefficients, polyval::signed_perm_poly(&g).unwrap());
        }
    }
    format!("20 bipartite graphs ({nonzero} with nonzero permanent), d in {{1,2}}")
}

fn criterion_matching() -> String {
    let graphs = [
        ("K3", Graph::complete(3)),
        ("C4", Graph::cycle(4)),
        ("P4", Graph::path(4)),
        ("K4", Graph::complete(4)),
    ];
    let mut runs = 0;
    for (name, g) in &graphs {
        let expected = polyval::matching_poly(g).unwrap();
        let perfect = polyval::perfmatch_eval(g).unwrap();
        for xi in [rat(1), rat(2), ratio(1, 2)] {
            for d in [1, 2, g.n()] {
                let r = recover_matching_poly(g, &xi, d).unwrap();
                assert_eq!(r.coefficients, expected, "{name}, xi = {xi}, d = {d}");
                assert_eq!(r.coefficients.coeff(0), perfect);
                assert_eq!(r.weighted_queries, 0);
                runs += 1;
            }
        }
    }
    format!("{runs} runs on K3, C4, P4, K4")
}

fn criterion_tutte() -> String {
    let points = [(rat(2), rat(1)), (rat(3), rat(1)), (rat(-1), rat(2)), (rat(0), rat(5))];
    let mut runs = 0;
    for m in 1usize..=6 {
        let bound = 3usize.pow(m.div_ceil(2) as u32);
        for g in graphs_with_edges(m) {
            for (q, w) in &points {
                let r = recover_z_poly(&g, q, w, 2).unwrap();
                let expected = if q.is_zero() {
                    polyval::z0_poly(&g, q).unwrap()
                } else {
                    polyval::z_poly(&g, q).unwrap()
                };
                assert_eq!(r.coefficients, expected, "{g:?} at q = {q}, w = {w}");
                assert!(r.queries <= bound);
                assert!(r.max_query_edges <= 3 * m);
                assert_eq!(r.weighted_queries, 0);
                runs += 1;
            }
        }
    }
    format!("{runs} graphs x points with m <= 6")
}

fn criterion_identities() -> String {
    let mut graphs: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    graphs.extend((1..=4).flat_map(graphs_with_edges).filter(|g| g.n() <= 5 && !g.is_connected()));
    graphs.push(Graph::empty(3));
    let tutte_points = [
        (rat(2), rat(2)),
        (rat(3), rat(5)),
        (rat(0), rat(2)),
        (rat(1), rat(3)),
        (rat(-1), ratio(1, 2)),
    ];
    let mut checks = 0;
    for g in &graphs {
        for (x, y) in &tutte_points {
            assert_eq!(
                tutte_point_via_z(g, x, y).unwrap(),
                polyval::tutte_eval(g, x, y).unwrap(),
                "T at ({x}, {y}) on {g:?}"
            );
            checks += 1;
        }
        for q in [rat(2), rat(3), rat(-1)] {
            let z = polyval::z_poly(g, &q).unwrap();
            let z0 = polyval::z0_poly(g, &q).unwrap();
            let scale = rpow(&q, g.components() as i64).unwrap();
            assert_eq!(z, z0.scale(&scale));
            checks += 1;
        }
        let mu = polyval::matching_poly(g).unwrap();
        for xi in [rat(1), rat(2), rat(3)] {
            assert_eq!(mu_via_indep_on_line_graph(g, &xi).unwrap(), mu.eval(&xi));
            checks += 1;
        }
    }
    for g in [Graph::cycle(4), Graph::complete(4), Graph::path(4)] {
        let (line, count) = pm_to_line_graph_mis(&g).unwrap();
        assert_eq!(line.n(), g.m());
        assert_eq!(count, polyval::perfmatch_eval(&g).unwrap());
        checks += 1;
    }
    format!("{checks} identity checks on {} graphs", graphs.len())
}

fn criterion_interpolation() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let t = rng.gen_range(0..=4);
        let bounds: Vec<usize> = (0..t).map(|_| rng.gen_range(0..=3)).collect();
        let len: usize = bounds.iter().map(|d| d + 1).product();
        let data: Vec<Rational> = (0..len).map(|_| rat(rng.gen_range(-9..=9))).collect();
        let mc = MultiCoeffs::from_dense(bounds.clone(), data).unwrap();
        let grid = Grid::integer(&bounds);
        let values: Vec<Rational> = (0..grid.size()).map(|i| mc.eval(&grid.point(i))).collect();
        assert_eq!(interpolate_grid(&grid, &values).unwrap(), mc);
    }
    let rows = query_curve(12, &[1, 4, 12]).unwrap();
    let got: Vec<(usize, u64)> = rows.iter().map(|r| (r.d, r.queries_u64().unwrap())).collect();
    assert_eq!(got, vec![(1, 4096), (4, 125), (12, 13)]);
    "200 round-trips; query curve (1,4096) (4,125) (12,13)".into()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> String); 7] = [
        ("block-interpolation correctness", criterion_block_interpolation),
        ("gadget identity", criterion_gadget_identity),
        ("end-to-end signed permanent", criterion_signed_permanent),
        ("end-to-end matching polynomial", criterion_matching),
        ("end-to-end Tutte / random-cluster", criterion_tutte),
        ("identity suite", criterion_identities),
        ("interpolation round-trip", criterion_interpolation),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(_) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
