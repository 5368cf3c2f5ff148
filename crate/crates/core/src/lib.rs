//! Surface codes under Y-biased Pauli noise.
//!
//! Builds standard and rotated surface codes, the Y-type structure of the
//! standard layout, decoders (cycle-code, concatenated, exact pure-Y,
//! rotated-layout MPS, brute-force ML), and a Monte Carlo harness with
//! finite-size-scaling threshold fits.

pub mod cli;
pub mod codes;
pub mod decoders;
mod error;
pub mod gf2;
pub mod noise;
pub mod sim;
pub mod tensor;

pub use error::{Error, Result};
