//! Petal diagrams of knots and links.
//!
//! A petal diagram is a projection with a single multi-crossing; the knot is
//! fixed by the heights of the strands through that point, a permutation of
//! odd length. This crate builds the diagrams, computes exact invariants,
//! implements the smoothing and swap calculus on permutations, converts
//! ordinary diagrams into petal form, and runs seeded Monte Carlo
//! experiments on uniformly random petal knots.

pub mod det;
pub mod invariants;
pub mod io;
pub mod jet;
pub mod moves;
pub mod petal;
pub mod petalize;
pub mod poly;
pub mod ring;
pub mod sampling;
pub mod util;
pub mod verify;

#[cfg(feature = "cli")]
pub mod cli;

pub use invariants::{InvariantError, InvariantReport, Strategy};
pub use jet::Jet;
pub use petal::{KnotDiagram, LinkPetalPermutation, PetalPermutation};
pub use poly::LaurentPolynomial;
