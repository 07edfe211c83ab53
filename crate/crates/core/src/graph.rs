//! Simple undirected graphs with optional exact-rational weights.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// A finite simple graph on vertices `0..n`.
///
/// Edges keep their insertion order; an edge's index is its position in
/// that order. Absent weights mean weight 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    edge_weights: BTreeMap<usize, Rational>,
    vertex_weights: BTreeMap<usize, Rational>,
}

/// Edge gadget `(H, u, v)`: `u` and `v` are identified with the endpoints of
/// the replaced edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadget {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
}

/// Vertex gadget `(H, v)`: `v` is identified with the decorated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGadget {
    pub graph: Graph,
    pub v: usize,
}

impl EdgeGadget {
    pub fn new(graph: Graph, u: usize, v: usize) -> Result<Self> {
        if u == v || u >= graph.n() || v >= graph.n() {
            return Err(Error::invalid_graph(format!(
                "edge gadget attachments ({u}, {v}) invalid for {} vertices",
                graph.n()
            )));
        }
        Ok(EdgeGadget { graph, u, v })
    }

    /// `|V(H)| + |E(H)|`.
    pub fn size(&self) -> usize {
        self.graph.size()
    }
}

impl VertexGadget {
    pub fn new(graph: Graph, v: usize) -> Result<Self> {
        if v >= graph.n() {
            return Err(Error::invalid_graph(format!(
                "vertex gadget attachment {v} invalid for {} vertices",
                graph.n()
            )));
        }
        Ok(VertexGadget { graph, v })
    }

    pub fn size(&self) -> usize {
        self.graph.size()
    }
}

impl Graph {
    /// Builds an unweighted graph, rejecting loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid_graph(format!(
                    "edge {i} = ({u}, {v}) has an endpoint >= n = {n}"
                )));
            }
            if u == v {
                return Err(Error::invalid_graph(format!("edge {i} is a self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid_graph(format!(
                    "edge {i} = ({u}, {v}) duplicates an earlier edge"
                )));
            }
        }
        Ok(Graph {
            n,
            edges,
            edge_weights: BTreeMap::new(),
            vertex_weights: BTreeMap::new(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, Vec::new()).expect("edgeless graph")
    }

    /// Path with `n` vertices `0–1–…–(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path")
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, edges).expect("complete graph")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Graph::new(a + b, edges).expect("complete bipartite graph")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("star")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// `|V| + |E|`.
    pub fn size(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn edge_weights(&self) -> &BTreeMap<usize, Rational> {
        &self.edge_weights
    }

    pub fn vertex_weights(&self) -> &BTreeMap<usize, Rational> {
        &self.vertex_weights
    }

    /// Weight of edge `i`, 1 when absent.
    pub fn edge_weight(&self, i: usize) -> Rational {
        self.edge_weights.get(&i).cloned().unwrap_or_else(Rational::one)
    }

    /// Weight of vertex `v`, 1 when absent.
    pub fn vertex_weight(&self, v: usize) -> Rational {
        self.vertex_weights.get(&v).cloned().unwrap_or_else(Rational::one)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edge_weights.is_empty() && self.vertex_weights.is_empty()
    }

    pub fn set_edge_weight(&mut self, i: usize, w: Rational) -> Result<()> {
        if i >= self.m() {
            return Err(Error::invalid_graph(format!("no edge with index {i}")));
        }
        self.edge_weights.insert(i, w);
        Ok(())
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: Rational) -> Result<()> {
        if v >= self.n {
            return Err(Error::invalid_graph(format!("no vertex with index {v}")));
        }
        self.vertex_weights.insert(v, w);
        Ok(())
    }

    pub fn with_edge_weight(mut self, i: usize, w: Rational) -> Result<Self> {
        self.set_edge_weight(i, w)?;
        Ok(self)
    }

    pub fn with_vertex_weight(mut self, v: usize, w: Rational) -> Result<Self> {
        self.set_vertex_weight(v, w)?;
        Ok(self)
    }

    /// Same vertices and edges, all weights dropped.
    pub fn unweighted(&self) -> Self {
        Graph {
            n: self.n,
            edges: self.edges.clone(),
            edge_weights: BTreeMap::new(),
            vertex_weights: BTreeMap::new(),
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// For every vertex, the list of `(neighbor, edge index)`.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, i));
            inc[v].push((u, i));
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Number of connected components of `(V(G), A)`, isolated vertices
    /// included, so `component_count(&[]) == n`.
    pub fn component_count(&self, subset: &[usize]) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &i in subset {
            let (u, v) = self.edges[i];
            uf.union(u, v);
        }
        uf.components()
    }

    /// `k(G, E)`.
    pub fn components(&self) -> usize {
        let all: Vec<usize> = (0..self.m()).collect();
        self.component_count(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components() == 1
    }

    /// BFS 2-coloring; `Some(colors)` iff the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored when queued");
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("all colored")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// `L(G)`: one vertex per edge of `G` (same index), adjacent iff the
    /// edges share an endpoint. Weights are ignored.
    pub fn line_graph(&self) -> Graph {
        let inc = self.incidence();
        let mut edges = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            for &endpoint in &[u, v] {
                for &(_, j) in &inc[endpoint] {
                    if j > i {
                        edges.push((i, j));
                    }
                }
            }
        }
        // Two edges of a simple graph share at most one endpoint, so no
        // pair is produced twice.
        Graph::new(self.m(), edges).expect("line graph of a simple graph is simple")
    }

    /// `T(G)` for edge weights: every weighted edge `uv` with weight `w_i`
    /// (looked up in `weights`) is replaced by a fresh copy of
    /// `gadget_for(i)` whose attachments are identified with `u` and `v`.
    ///
    /// Original vertices keep their indices; gadget-interior vertices are
    /// appended in edge order. Unweighted edges are kept verbatim. Vertex
    /// weights are carried over.
    pub fn splice_edge_gadgets<F>(&self, weights: &[Rational], gadget_for: F) -> Result<Graph>
    where
        F: Fn(usize) -> Option<EdgeGadget>,
    {
        let mut cache: BTreeMap<usize, EdgeGadget> = BTreeMap::new();
        let mut n = self.n;
        let mut edges = Vec::with_capacity(self.m());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let Some(w) = self.edge_weights.get(&i) else {
                edges.push((u, v));
                continue;
            };
            let idx = weights
                .iter()
                .position(|x| x == w)
                .ok_or_else(|| Error::UnknownWeight {
                    edge: i,
                    weight: w.clone(),
                })?;
            if !cache.contains_key(&idx) {
                let gadget = gadget_for(idx).ok_or(Error::MissingGadget(idx))?;
                cache.insert(idx, gadget);
            }
            let gadget = &cache[&idx];
            let mut map = vec![usize::MAX; gadget.graph.n()];
            map[gadget.u] = u;
            map[gadget.v] = v;
            for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
                *slot = n;
                n += 1;
            }
            edges.extend(gadget.graph.edges().iter().map(|&(a, b)| (map[a], map[b])));
        }
        let mut out = Graph::new(n, edges)?;
        out.vertex_weights = self.vertex_weights.clone();
        Ok(out)
    }

    /// `T(G)` for vertex weights: every vertex with weight `w_i` gets a
    /// fresh copy of `gadget_for(i)` attached by identifying the gadget's
    /// attachment vertex with it. Unweighted vertices receive the index-0
    /// gadget. Edge weights are carried over.
    pub fn splice_vertex_gadgets<F>(&self, weights: &[Rational], gadget_for: F) -> Result<Graph>
    where
        F: Fn(usize) -> Option<VertexGadget>,
    {
        let mut cache: BTreeMap<usize, VertexGadget> = BTreeMap::new();
        let mut n = self.n;
        let mut edges = self.edges.clone();
        for vertex in 0..self.n {
            let idx = match self.vertex_weights.get(&vertex) {
                None => 0,
                Some(w) => weights.iter().position(|x| x == w).ok_or_else(|| {
                    Error::UnknownVertexWeight {
                        vertex,
                        weight: w.clone(),
                    }
                })?,
            };
            if !cache.contains_key(&idx) {
                let gadget = gadget_for(idx).ok_or(Error::MissingGadget(idx))?;
                cache.insert(idx, gadget);
            }
            let gadget = &cache[&idx];
            let mut map = vec![usize::MAX; gadget.graph.n()];
            map[gadget.v] = vertex;
            for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
                *slot = n;
                n += 1;
            }
            edges.extend(gadget.graph.edges().iter().map(|&(a, b)| (map[a], map[b])));
        }
        let mut out = Graph::new(n, edges)?;
        out.edge_weights = self.edge_weights.clone();
        Ok(out)
    }

    /// Graph induced by keeping only the edges whose bit is set in `mask`
    /// (edge `i` ↔ bit `i`), on the same vertex set.
    pub fn edge_subgraph(&self, mask: u64) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(self.n, edges).expect("subgraph of a simple graph")
    }
}

/// All connected graphs on exactly `n` vertices up to isomorphism, in a
/// deterministic order. Brute force over labelings; intended for `n ≤ 5`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 5, "isomorphism-free enumeration is brute force");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, edges).expect("simple");
        if g.is_connected() && seen.insert(canonical_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// All connected graphs with exactly `m ≥ 1` edges up to isomorphism,
/// grown one edge at a time. Intended for `m ≤ 6`.
pub fn connected_graphs_with_edges(m: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&m), "isomorphism-free enumeration is brute force");
    let mut level = vec![Graph::path(2)];
    for _ in 1..m {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut candidates = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let mut edges = g.edges().to_vec();
                    edges.push((u, v));
                    if let Ok(h) = Graph::new(n, edges) {
                        candidates.push(h);
                    }
                }
                let mut edges = g.edges().to_vec();
                edges.push((u, n));
                candidates.push(Graph::new(n + 1, edges).expect("pendant edge"));
            }
            for h in candidates {
                if seen.insert(canonical_key(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// All graphs with exactly `m` edges and no isolated vertices up to
/// isomorphism, as disjoint unions of connected components.
pub fn graphs_with_edges(m: usize) -> Vec<Graph> {
    if m == 0 {
        return vec![Graph::empty(0)];
    }
    let comps: Vec<Graph> = (1..=m).flat_map(connected_graphs_with_edges).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(comps: &[Graph], start: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<Graph>) {
        if left == 0 {
            let mut edges = Vec::new();
            let mut off = 0;
            for &c in chosen.iter() {
                edges.extend(comps[c].edges().iter().map(|&(u, v)| (u + off, v + off)));
                off += comps[c].n();
            }
            out.push(Graph::new(off, edges).expect("disjoint union is simple"));
            return;
        }
        for i in start..comps.len() {
            if comps[i].m() <= left {
                chosen.push(i);
                rec(comps, i, left - comps[i].m(), chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&comps, 0, m, &mut chosen, &mut out);
    out
}

/// Canonical isomorphism key: the smallest sorted edge list over all
/// relabelings that order vertices by degree. Exponential; small graphs only.
fn canonical_key(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let class_perms: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c.len())).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut assignment = vec![0usize; n];
    fn rec(
        g: &Graph,
        classes: &[Vec<usize>],
        class_perms: &[Vec<Vec<usize>>],
        ci: usize,
        next: usize,
        assignment: &mut [usize],
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if ci == classes.len() {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (assignment[u], assignment[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            if best.as_ref().map_or(true, |b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        for p in &class_perms[ci] {
            for (k, &v) in classes[ci].iter().enumerate() {
                assignment[v] = next + p[k];
            }
            rec(g, classes, class_perms, ci + 1, next + classes[ci].len(), assignment, best);
        }
    }
    rec(g, &classes, &class_perms, 0, 0, &mut assignment, &mut best);
    let mut key = best.expect("at least one labeling");
    key.push((n, usize::MAX));
    key
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

/// Union-find without path compression so unions can be undone in LIFO
/// order; used by the subset walkers.
#[derive(Debug, Clone)]
pub(crate) struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        RollbackUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        self.history.push(Some((ra, rb)));
    }

    pub(crate) fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}
