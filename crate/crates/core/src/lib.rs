//! Exact combinatorics of sl(3) tensor invariants.
//!
//! The crate builds the non-elliptic web basis of an invariant space from its
//! boundary sign string, expands each basis web in the standard tensor basis
//! by an exact state sum over the ring `Z[v, v^-1]`, and tests the expansions
//! against the dual canonical property (leading coefficient 1, all other
//! coefficients with strictly negative exponents).
//!
//! Module map:
//!
//! * [`laurent`]: the coefficient ring.
//! * [`quantum`]: sign/state strings, weights, and the quantum-group action.
//! * [`web`]: planar diagrams as slice words, their combinatorial maps,
//!   faces, and state-sum evaluation.
//! * [`growth`]: the growth algorithm (sign string + state string -> web)
//!   and its inverse, minimal cut paths.
//! * [`reduction`]: loop/bigon/square rewriting to the non-elliptic basis and
//!   cyclic rotation of boundaries.
//! * [`canonical`]: basis enumeration, dual-canonical scans, the corrected
//!   basis, and the expansion cache.
//! * [`render`]: deterministic SVG pictures of webs and flow states.

pub mod canonical;
pub mod growth;
pub mod laurent;
pub mod quantum;
pub mod reduction;
pub mod render;
pub mod web;
