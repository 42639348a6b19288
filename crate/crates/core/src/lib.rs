//! Graph invariants around the Randic index and the matching number.
//!
//! The crate provides:
//!
//! * [`graph`] — an immutable simple-graph value type with the structural
//!   operators (induced subgraphs, subdivision, disjoint union, join) used by
//!   the constructions and reduction machinery;
//! * [`graph6`] — bit-exact graph6 encoding and decoding;
//! * [`invariants`] — Randic-type indices, excess, cores, degree statistics;
//! * [`matching`] — maximum matching (blossom) plus an independent
//!   brute-force oracle for cross-checking;
//! * [`constructions`] — generators for the extremal families (broken
//!   windmills, generalized windmills, coronas, sparse counterexamples, ...)
//!   together with their closed-form Randic values;
//! * [`reduction`] — the leaf-removal reduction that certifies per-step
//!   Randic losses against matching-number losses;
//! * [`bounds`] — one structured verdict per tracked lower bound, with
//!   counterexample certificates;
//! * [`search`] — exhaustive labeled enumeration of small graphs, sharded
//!   certification of every bound, and the minimum-Randic-per-matching table.

pub mod bounds;
pub mod constructions;
mod error;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod matching;
pub mod reduction;
pub mod search;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default numeric tolerance for inequality verdicts.
///
/// Every quantity we compare is a sum of at most a few hundred square-root
/// terms of magnitude <= 1, so f64 round-off stays many orders of magnitude
/// below this.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Approximate equality used for classifying bound verdicts as "equality":
/// `|x - y| <= tol * max(1, |x|, |y|)`.
pub fn approx_eq(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}
