//! Exact Seiberg-Witten invariants of the knot-surgered elliptic surfaces
//! `E(1)_K` for fibered knots `K`, and the classification they imply.
//!
//! The pipeline is: knot presentation -> Alexander polynomial ([`knots`],
//! [`laurent`]) -> SW series on multiples of the fiber class ([`swseries`],
//! [`lattice`]) -> verdict ([`classify`]). [`cli`] wraps it for the
//! `swknot` binary.

pub mod classify;
pub mod cli;
pub mod knots;
pub mod laurent;
pub mod lattice;
pub mod swseries;

pub use classify::{classify, Outcome, Verdict};
pub use knots::{BraidWord, KnotInput, KnotSource, SeifertMatrix};
pub use laurent::LaurentPoly;
pub use lattice::{ClassVector, FourManifoldModel};
pub use swseries::{Chamber, SWSeries};
