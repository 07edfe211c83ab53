//! Exact-arithmetic toolkit for graph polynomials and block-interpolation
//! reductions.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] — simple graphs with optional rational weights, gadget
//!   splicing, line graphs and structural queries.
//! * [`format`] — the line-oriented graph text format.
//! * [`poly`] — exact rationals, dense univariate polynomials and
//!   multivariate coefficient tables.
//! * [`polyval`] — brute-force evaluators and coefficient extractors (the
//!   oracles of record), plus faster frontier kernels used for large query
//!   graphs.
//! * [`interp`] — univariate and tensor-grid interpolation.
//! * [`blockinterp`] — the block-interpolation driver with query accounting.
//! * [`gadgets`] — weight-simulation gadget families.
//! * [`pipeline`] — end-to-end coefficient recovery from a single-point
//!   unweighted evaluation oracle, plus the line-graph / 2-CNF chains.
//!
//! Data-parallel loops (subset sums, grid queries, interpolation fibers) go
//! through [`exec::Execution`], which uses rayon when the `parallel` feature
//! is enabled and falls back to plain iteration otherwise.

pub mod blockinterp;
pub mod error;
pub mod exec;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod interp;
pub mod pipeline;
pub mod poly;
pub mod polyval;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::Graph;
pub use poly::{MultiCoeffs, PolyId, Rational, UniPoly};
