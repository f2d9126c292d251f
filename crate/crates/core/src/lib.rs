//! Potential theory on weighted graphs: Laplacians, Dirichlet problems,
//! Caccioppoli-type energy estimates and growth profiles of subharmonic
//! functions.
//!
//! Everything is generic over [`Scalar`]; exact work uses [`Rational`],
//! numerics use `f64`. The aliases below fix one or the other.

pub mod caccioppoli;
pub mod calculus;
pub mod dirichlet;
pub mod error;
pub mod examples;
pub mod family;
pub mod function;
pub mod graph;
pub mod io;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use function::{EdgeFunction, Orientation, VertexFunction};
pub use graph::{Domain, Edge, GraphBuilder, VertexSet, WeightedGraph};
pub use scalar::{Rational, Scalar, ScalarMode};

pub type RationalGraph = WeightedGraph<Rational>;
pub type FloatGraph = WeightedGraph<f64>;
pub type RationalFunction = VertexFunction<Rational>;
pub type FloatFunction = VertexFunction<f64>;
