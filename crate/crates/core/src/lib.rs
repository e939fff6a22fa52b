//! Vertex cover machinery for dense k-partite k-uniform hypergraphs.
//!
//! The crate provides, in one place:
//!
//! - a data model for k-partite k-uniform hypergraphs with exact (rational)
//!   density computations and a canonical text format ([`hypergraph`],
//!   [`mod@format`]);
//! - the candidate-extraction procedure that pulls a large piece of some
//!   minimum cover out of any dense instance ([`extract`]);
//! - an exact branch-and-bound cover oracle and the natural LP relaxation
//!   solved in exact rationals ([`solvers`]);
//! - the composed approximation algorithm with guarantee
//!   `k / (2 + (k-2) eps)` on eps-dense instances ([`approx`]);
//! - instance generators (the tight family, seeded random dense and
//!   level-wise dense instances, density padding) ([`generators`]);
//! - hardness-factor calculators and the dominance table showing how close
//!   the guarantee sits to the conditional lower bounds ([`bounds`]).
//!
//! Everything that decides a comparison is computed in exact rational
//! arithmetic; floating point only appears in emitted reports. See the
//! `book/` guide for a narrative walk-through; its code blocks compile and
//! run as doc-tests of the [`guide`] module.

pub mod approx;
pub mod bounds;
pub mod error;
pub mod extract;
pub mod format;
pub mod generators;
pub mod guide;
pub mod hypergraph;
pub mod rational;
pub mod solvers;

pub use error::{Error, Result};
pub use hypergraph::{KPartiteHypergraph, VertexRef};
pub use rational::Rational;
