//! Exact algebra for regular simple representations of the type-(2,2) species
//! `Λ_n` over `k = ℂ((ε))`, realised through the `n`-crown quiver.
//!
//! Layers, bottom up:
//! - [`scalars`]: `ℚ(ζ_N)` and truncated Puiseux series `k_n`.
//! - [`tensor`]: `k_d ⊗ k_n` and `k_d ⊗ Λ_n` with the idempotent basis.
//! - [`crown`]: crown quiver combinatorics, strings and the band.
//! - [`reps`]: representations, twisting, hom spaces.
//! - [`descent`]: descent data, explicit families, normal forms, certification.
//! - [`report`] and [`cli`]: verification reports and the command line front end.

pub mod checks;
pub mod cli;
pub mod crown;
pub mod descent;
pub mod error;
pub mod report;
pub mod reps;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
