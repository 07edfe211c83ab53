//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! graph <n> <m>
//! e <u> <v> [<num>/<den>]     (exactly m lines)
//! v <i> <num>/<den>           (optional vertex weights)
//! ```
//!
//! Weights are exact rationals; an omitted denominator means an integer.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::Rational;

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("invalid rational `{s}`"))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_weights = Vec::new();
    let mut vertex_weights = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(lineno, format!("expected a non-negative integer, got `{s}`")))
        };
        match fields[0] {
            "graph" => {
                if header.is_some() {
                    return Err(err(lineno, "duplicate header".into()));
                }
                if fields.len() != 3 {
                    return Err(err(lineno, "header must be `graph <n> <m>`".into()));
                }
                header = Some((num(fields[1])?, num(fields[2])?));
            }
            "e" => {
                if header.is_none() {
                    return Err(err(lineno, "edge before header".into()));
                }
                if !vertex_weights.is_empty() {
                    return Err(err(lineno, "edge after vertex-weight lines".into()));
                }
                if !(3..=4).contains(&fields.len()) {
                    return Err(err(lineno, "edge must be `e <u> <v> [weight]`".into()));
                }
                let idx = edges.len();
                edges.push((num(fields[1])?, num(fields[2])?));
                if let Some(w) = fields.get(3) {
                    edge_weights.push((idx, parse_rational(w).map_err(|m| err(lineno, m))?));
                }
            }
            "v" => {
                if header.is_none() {
                    return Err(err(lineno, "vertex weight before header".into()));
                }
                if fields.len() != 3 {
                    return Err(err(lineno, "vertex weight must be `v <i> <weight>`".into()));
                }
                let w = parse_rational(fields[2]).map_err(|m| err(lineno, m))?;
                vertex_weights.push((lineno, num(fields[1])?, w));
            }
            other => return Err(err(lineno, format!("unknown record `{other}`"))),
        }
    }

    let (n, m) = header.ok_or_else(|| err(0, "missing `graph <n> <m>` header".into()))?;
    if edges.len() != m {
        return Err(err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let mut g = Graph::new(n, edges)?;
    for (i, w) in edge_weights {
        g.set_edge_weight(i, w)?;
    }
    for (lineno, v, w) in vertex_weights {
        g.set_vertex_weight(v, w).map_err(|e| err(lineno, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {}", g.n(), g.m()).expect("string write");
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match g.edge_weights().get(&i) {
            Some(w) => writeln!(out, "e {u} {v} {w}"),
            None => writeln!(out, "e {u} {v}"),
        }
        .expect("string write");
    }
    for (v, w) in g.vertex_weights() {
        writeln!(out, "v {v} {w}").expect("string write");
    }
    out
}
