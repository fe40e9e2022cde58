//! q-deformed harmonic oscillators on a truncated Fock space.
//!
//! The crate builds deformed ladder operators through their harmonic
//! oscillator realization, assembles Jordan-Schwinger qubits from pairs of
//! oscillators, applies NOT, Hadamard, phase-shift and CNOT to them, and
//! measures how well the deformed algebra and the gate realizability
//! conditions hold numerically.
//!
//! Everything here is pure computation on `alloc` collections, so the crate
//! is `no_std`. IO, sweeps and report formats live in the `qdeform` crate.

#![no_std]

extern crate alloc;

pub mod algebra_audit;
pub mod error;
pub mod fockspace;
pub mod gates;
pub mod inference;
pub mod jsqubit;
pub mod qnumber;

pub use error::{Error, Result};
pub use fockspace::{FunctionChoice, FunctionFamily, TruncatedFockSpace, TruncatedOperator};
pub use qnumber::DeformationParam;

pub use num_complex::Complex64;
