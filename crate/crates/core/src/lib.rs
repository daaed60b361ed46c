//! Ordered-group invariants for graph presentations of one-dimensional
//! branched solenoids.
//!
//! A presentation is a finite directed graph (or a finite tower of graphs)
//! together with a wrapping rule sending each edge to a signed edge word and
//! each vertex to a vertex.  From this combinatorial data the crate computes:
//!
//! - graph cohomology with its positive cone (vertex coboundaries, cycle
//!   tests, a cotree basis, the pullback map and its matrix),
//! - stationary dimension-group data (adjacency and signed transfer
//!   matrices, primitivity, direct-limit element algebra with exact sign
//!   decisions through Sturm-isolated Perron roots, Riesz interpolation),
//! - combinatorial checks of the Williams axioms that are visible at the
//!   symbolic level (Markov, flattening, nonfolding),
//! - slow brute-force oracles used for cross-verification.
//!
//! All verdicts are exact: arithmetic is arbitrary-precision integer or
//! rational, and no floating point enters any decision path.

pub mod axioms;
pub mod cohomology;
pub mod dimension;
pub mod graph;
pub mod incidence;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod report;

pub use graph::{EdgeId, Graph, Letter, Sign, VertexId, Word};
pub use matrix::IntegerMatrix;
pub use poly::IntPoly;
pub use presentation::{Presentation, ValidationReport, WrappingRule};

/// Default cap on matrix-power iterations used by lifting loops
/// (interpolation and the iteration oracle).  Exceeding it is reported as an
/// explicit inconclusive error, never a silent answer.
pub const DEFAULT_ITERATION_BOUND: usize = 64;
