//! Separability analysis for small bipartite quantum states.
//!
//! The crate works on dense complex matrices of desk scale (a few hundred
//! entries at most) and provides:
//!
//! * [`linalg`]: the numeric kernel (Kronecker products, LU determinants,
//!   Jacobi eigenvalues and SVD, trace norm),
//! * [`fock`]: two-particle density operators written as lists of
//!   creation/annihilation terms, with the term-level partial transpose,
//!   partial Hermitian conjugation and (anti)commutation rewrites,
//! * [`decomp`]: Schmidt, Takagi and Slater (Youla) decompositions,
//! * [`criteria`]: PPT, determinant, realignment and factorization tests and
//!   the boson, fermion and distinguishable-particle pipelines.
//!
//! Everything is `no_std` with `alloc`; file formats and the command-line
//! front end live in the `qsep` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod decomp;
mod error;
pub mod fock;
pub mod linalg;

pub use error::{Error, Result};
pub use linalg::{CMatrix, Complex};
