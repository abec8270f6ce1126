//! Combinatorial core for free independence and quantum distributional symmetries.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`partitions`]: set partitions, the non-crossing lattice `NC(m)`, kernels of
//!   index tuples and exact Möbius values;
//! * [`linalg`]: small dense matrices over complex floats or exact rationals,
//!   partial-trace conditional expectations and projection constructors;
//! * [`moments`]: nested moment functionals `E^(σ)`, operator-valued free cumulants
//!   and the joint moments of free i.i.d. sequences;
//! * [`qis`] and [`qperm`]: concrete representations of quantum increasing sequence
//!   spaces and quantum permutation groups, with relation residual checks;
//! * [`invariance`]: quantum exchangeability and quantum spreadability checks;
//! * [`weingarten`]: the Möbius-weighted state on `A_i(k, kn)` and the exact
//!   finite-`n` reconstruction identity.
//!
//! Every check returns a [`report::CheckReport`].
#![no_std]

extern crate alloc;

pub mod error;
pub mod invariance;
pub mod linalg;
pub mod moments;
pub mod partitions;
pub mod qis;
pub mod qperm;
pub mod report;
pub mod weingarten;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Scalar, C64};
pub use partitions::{MobiusCache, NcLattice, Partition};
pub use report::{CheckReport, Residual, Status};
