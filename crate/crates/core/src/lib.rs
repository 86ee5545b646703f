//! Deterministic simulator for photonic interference, entangled photon pairs,
//! detector entanglement, and the detection statistics they produce.
//!
//! The crate is `no_std` (with `alloc`). All Hilbert spaces involved have
//! dimension at most 16, so states and operators are dense complex arrays.
//!
//! Module map:
//!
//! - [`qcore`]: pure states, density operators, tensor products, unitary
//!   application, Born probabilities and partial traces.
//! - [`optics`]: beam splitters, phase shifters and circuits built from them.
//! - [`experiments`]: one procedure per experiment, analytic tables plus
//!   seeded trial sampling.
//! - [`analysis`]: correlation estimates, CHSH, no-signaling audit and run
//!   statistics.
//! - [`oracles`]: naive reference computations that share no code with the
//!   main path.
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod experiments;
pub mod optics;
pub mod oracles;
pub mod qcore;

pub use error::{Error, Result};

/// Tolerance for state norms and probability sums.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance for operator properties (unitarity, hermiticity, trace).
pub const OPERATOR_TOL: f64 = 1e-10;
