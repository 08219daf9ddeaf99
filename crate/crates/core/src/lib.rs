//! Fourier and finite Zak transforms of multiplicative characters on Z/N.
//!
//! The crate builds characters exactly (as root-of-unity exponents),
//! evaluates their DFTs and Zak transforms both by direct summation and by
//! closed forms built from Gauss sums and the Chinese remainder theorem,
//! and generates the Jacobi, modified Jacobi and Golomb sequence families.
//! The [`analysis`] module cross-checks every closed form against the
//! direct oracles.

#![allow(clippy::manual_is_multiple_of)]

pub mod analysis;
pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod exec;
pub mod sequences;
pub mod signal;
pub mod transforms;

pub use error::{Error, Result};
pub use exec::Execution;
pub use signal::{ComplexSeq, ZakArray};
