//! Finite combinatorics of Γ-sets, GΓ-sets and their classifying spaces.
//!
//! The crate models the category `Γ^op` of finite pointed sets, its
//! equivariant version `GΓ^op` for a finite group `G`, and presheaves on
//! truncations of both. Strict Segal and Bousfield conditions are decided
//! exactly, the algebra carried by a strict presheaf is extracted, and the
//! bar construction produces truncated simplicial sets whose integral
//! homology is computed through Smith normal form.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bar;
pub mod diagram;
pub mod error;
pub mod gamma;
pub mod ggamma;
pub mod group;
pub mod homology;
pub mod simplicial;
pub mod snf;

pub use error::{Error, Result};
