// SPDX-License-Identifier: Apache-2.0

//! Classical simulation of extended Clifford circuits.
//!
//! The crate covers the sixteen task classes obtained from four binary
//! choices: adaptive vs. non-adaptive circuits, computational-basis vs.
//! product-state inputs, one vs. many output lines, and weak (sampling) vs.
//! strong (probability) simulation. The efficient cases are implemented:
//!
//! - [`strong::strong_out1_prod`]: single output line, product-state input,
//!   via Heisenberg-picture Pauli conjugation.
//! - [`strong::strong_bits_marginal`]: exact dyadic marginals on any set of
//!   output lines for basis inputs, via a GF(2) kernel computation.
//! - [`weak::sample_adaptive_bits`]: sampling of adaptive circuits on basis
//!   inputs by the chain rule over exact marginals.
//!
//! The hard classes are refused with an [`Error::Refused`] naming the result
//! that makes them hard. [`reductions`] contains the circuit constructions
//! behind those hardness results and [`oracle`] a dense state-vector
//! simulator used as ground truth.
//!
//! # Gate naming
//!
//! Gate names follow the convention where the Clifford phase gate is `T`:
//!
//! | here | matrix               | common name |
//! |------|----------------------|-------------|
//! | `T`  | `diag(1, i)`         | `S`, `P`    |
//! | `S`  | `diag(1, e^{iπ/4})`  | `T`         |
//!
//! `S` is the only non-Clifford gate; Clifford-only engines reject it.

pub mod bits;
pub mod circuit;
pub mod classify;
pub mod dyadic;
mod error;
pub mod generate;
pub mod gf2;
pub mod oracle;
pub mod pauli;
pub mod reductions;
pub mod state;
pub mod strong;
pub mod weak;

pub use bits::BitString;
pub use circuit::{
    AdaptiveController, AffineCondition, Block, CircuitProgram, Gate, Input, Operation, OutcomeId,
};
pub use dyadic::{DyadicProbability, DyadicRational};
pub use error::{Error, Refusal, Result};
pub use gf2::BitMatrix;
pub use pauli::{Direction, PauliOperator};
pub use state::SingleQubitState;
