//! Exact verification toolkit for equiangular line systems with common angle
//! `arccos(1/5)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`]: rational matrices, certified PSD decisions, kernels, inverses.
//! * [`seidel`]: graphs, Seidel matrices, switching, clique search, and the
//!   Golay / Steiner / McLaughlin construction of the 276-line two-graph.
//! * [`pillars`]: pillar decompositions with respect to a base clique, exact
//!   projected Gram matrices, the ADE extraction, the `(5,1)`-pillar bound and
//!   the final bound ledger.
//! * [`psdcert`]: block matrices `Q(Q11; a)` and exhaustive searches over
//!   matrix multisets.
//! * [`lattice`]: Gram-presented lattices: basis extraction, short vectors,
//!   duals, strong maximality, isometry.

#![allow(clippy::needless_range_loop)]

pub mod exactlin;
pub mod lattice;
pub mod pillars;
pub mod psdcert;
pub mod seidel;

pub use exactlin::{psd_check, PsdResult, Rational, RationalMatrix};
