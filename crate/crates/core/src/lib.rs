//! Deterministic state-vector simulation of the 5-qubit IBM programming model.
//!
//! The crate is `no_std` (it needs `alloc`) and contains everything that does
//! not touch the outside world:
//!
//! - [`state`]: dense state vectors, exact gate kernels, Born-rule sampling and
//!   a small-register full-unitary oracle.
//! - [`circuit`]: the circuit IR shared by every other module, together with
//!   measurement-basis lowering.
//! - [`transpile`]: directed coupling maps, the textbook rewrite identities
//!   (cNOT reversal, zero-controlled cNOT, SWAP, CZ, Toffoli, controlled-Rz),
//!   greedy routing and peephole simplification.
//! - [`noise`]: stochastic Pauli trajectories with readout flips, and a grid
//!   fit against observed distributions.
//! - [`observables`]: parity expectations, Pauli strings and Mermin polynomials.
//! - [`experiments`]: dense coding, QFT verification, Bell and Mermin tests and
//!   the prime state, each producing an [`experiments::ExperimentReport`].
//!
//! Qubit 0 is the least significant bit of a basis-state index, and bitstrings
//! are printed most significant first, so `"011"` is the basis state 3.
//!
//! ```
//! use fiveq_core::circuit::{Circuit, Gate};
//! use fiveq_core::state::StateVector;
//!
//! let mut bell = Circuit::new(2);
//! bell.push(Gate::h(0)).unwrap();
//! bell.push(Gate::cx(0, 1)).unwrap();
//! let state = fiveq_core::state::run_circuit(&bell, StateVector::zero(2).unwrap()).unwrap();
//! assert!((state.probability(0b11) - 0.5).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;

pub mod circuit;
pub mod device;
pub mod error;
pub mod experiments;
pub mod noise;
pub mod observables;
pub mod rng;
pub mod state;
pub mod stats;
pub mod transpile;
pub mod unitary;

pub use device::Device;
pub use error::{Error, Result};
