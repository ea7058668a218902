//! Covering dimensions of linear codes over small finite fields.
//!
//! The covering dimension of an [n, k] code is the smallest dimension of a
//! subcode whose support is the whole coordinate set; it equals the critical
//! exponent of the matroid the code induces on its coordinates. This crate
//! computes it three ways (subcode search, subspace avoidance, and the
//! characteristic polynomial), provides every related closed form with
//! exact arithmetic, constructs the code families that sit exactly on the
//! known bounds, and exhaustively verifies the bound
//! `gamma <= k - d_perp + 2` (with its two exceptional families) over all
//! small codes with distinct projective-point columns.
//!
//! Enumeration-heavy paths run data-parallel under the `parallel` feature
//! (enabled by default) and fall back to sequential loops without it;
//! results are bit-identical either way.

pub mod algebra;
pub mod caps;
pub mod code;
pub mod construct;
pub mod error;
pub mod files;
pub mod formulas;
pub mod matroid;
pub mod search;
pub mod suite;
pub mod verify;

pub use caps::Caps;
pub use code::{Gamma, GammaResult, LinearCode, Strictness, SupportWeightTable};
pub use error::{Error, Result};
