//! Exact computations for finite graph C*-algebras.
//!
//! Given a finite discrete graph (edges oriented so that the source map is the
//! local homeomorphism, see [`graph`]), this crate computes
//!
//! * the polytope of invariant measures, equivalently gauge-invariant tracial
//!   states ([`traces`]);
//! * the finite boundary levels and the measures induced on them
//!   ([`boundary`]);
//! * `K_0` and `K_1` with trace-induced states ([`ktheory`]);
//! * trace evaluation on the spanning elements `s_a s_b*` ([`star`]).
//!
//! All arithmetic is exact.

pub mod boundary;
pub mod cli;
pub mod error;
pub mod exec;
pub mod graph;
pub mod ktheory;
pub mod linalg;
pub mod rational;
pub mod star;
pub mod traces;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{EdgeId, Graph, Path, VertexId};
pub use rational::{GaussianRational, Rational};
