//! Two-parameter sl(2) link cohomology over ℚ[a,h].
//!
//! The crate has two halves. The TQFT half turns a PD code into a cube of
//! resolutions, assembles the chain complex over ℚ[a,h] from the Frobenius
//! algebra `A = ℚ[a,h][X]/(X² − hX − a)` and computes homology at rational
//! specializations of `(a, h)`. The matrix-factorization half models graded
//! Koszul factorizations, their row moves and variable exclusion, and replays
//! the local isomorphisms that make the invariant well defined.

pub mod complex;
pub mod corpus;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod homology;
pub mod mfact;
pub mod poly;
pub mod skein;
pub mod verify;
pub mod web;
pub mod webalg;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, Monomial, MultiPoly, Rational, Var};
pub use diagram::{LinkDiagram, Resolution, ResolutionWord, Sign};
pub use frobenius::{AElem, CobordismMap, Piece};
pub use web::{Cycle, Junction, JunctionKind, Web};
