//! Holomorphically invariant metrics on the 3×3 spectral unit ball.
//!
//! The crate computes certified upper bounds for the Lempert function
//! `l(A, M)` of the spectral unit ball Ω₃ at the nilpotent base point `A`,
//! by projecting to the symmetrized three-disc G₃ with the map
//! σ = (trace, sum of principal 2×2 minors, determinant), building analytic
//! discs there, and lifting them back to matrix-valued discs.
//!
//! Modules:
//! - [`calg`]: complex scalars, 3×3 complex matrices, cubic roots,
//!   cyclicity, similarity, matrix exponential and logarithm.
//! - [`domains`]: the Minkowski functional of G₃ and membership tests.
//! - [`discs`]: polynomial discs, lifts, upper bounds and the disc optimizer.
//! - [`experiments`]: reproduction pipelines producing row data.

pub mod calg;
pub mod discs;
pub mod domains;
pub mod error;
pub mod experiments;

pub use calg::{Cubic, Mat3, RootTriple, C64};
pub use error::{Error, Result};
