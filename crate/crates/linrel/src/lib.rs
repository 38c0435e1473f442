//! Exact linear algebra for linear relations over prime fields.
//!
//! A linear relation between `GF(p)^a` and `GF(p)^b` is a subspace of
//! `GF(p)^{a+b}`, read as a multivalued partial linear map. This crate
//! represents relations canonically (reduced row-echelon bases), composes
//! them exactly, computes the generalized kernel/image machinery that
//! turns an arbitrary endorelation into its canonical bijective
//! representative, and decides shift equivalence by comparing the
//! invariant factors of those representatives.
//!
//! The [`classify`] module enumerates every endorelation on a small space
//! and partitions them into shift-equivalence classes; [`exhaustive`]
//! holds brute-force set-semantics reference implementations used to
//! cross-check the subspace-level algebra.

pub mod canon;
pub mod classify;
pub mod exhaustive;
pub mod field;
pub mod leray;
pub mod matrix;
pub mod poly;
pub mod relation;
pub mod spider;
pub mod subspace;
pub mod szymczak;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
