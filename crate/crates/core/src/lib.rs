//! Exact combinatorics of monochromatic triples {x, y, x+ay} under
//! r-colorings of [1, n]: integer counting, exact-rational block-pattern
//! densities, a greedy interval optimizer, exhaustive and heuristic
//! minimum search, and closed-form bound checks.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`); IO,
//! file formats, and thread drivers live in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod coloring;
pub mod counting;
pub mod density;
pub mod error;
pub mod greedy;
pub mod pwq;
pub mod rational;
pub mod search;

pub use coloring::Coloring;
pub use counting::{PairCategoryCounts, TripleCounts};
pub use density::{BlockPattern, DensityReport};
pub use error::Error;
pub use greedy::{GreedyStep, GreedyTrace, SelectionMode, Termination};
pub use pwq::{PiecewiseQuadratic, QuadraticPiece};
pub use rational::Rational;
pub use search::{SearchBudget, SearchResult};
