//! Realization of Alexander and Conway polynomials by explicit link
//! diagrams, with a skein-relation evaluator, Conway-notation tangle
//! calculus and polynomial-preserving surgeries.

pub mod construct;
pub mod diagram;
mod net;
pub mod poly;
mod seifert_graph;
pub mod surgery;
pub mod tangle;

pub use diagram::{Crossing, Diagram, DiagramError, LinkingGraph, SeifertData};
pub use poly::{Coeff, Conway, Degrees, Laurent, PolyError};

/// Laurent polynomial in `u = t^(1/2)` with machine integer coefficients.
pub type IntLaurent = Laurent<i64>;
/// Conway polynomial in `z` with machine integer coefficients.
pub type ConwayPoly = Conway<i64>;
