// SPDX-License-Identifier: Apache-2.0

//! Circuit constructions behind the hardness results.
//!
//! - [`toffoli_block`]: a Toffoli gate on basis states from one measurement
//!   and one conditional `CX`.
//! - [`sat`]: CNF formulas, exhaustive model counting, and the encoding of
//!   `#f / 2^n` as the output probability of an adaptive Clifford circuit.
//! - [`gadget`]: replacement of each non-Clifford `S` by a `|π/4⟩` ancilla,
//!   a `CX` and a measurement, corrected adaptively or left for
//!   postselection.

pub mod gadget;
pub mod sat;

pub use gadget::{s_gadget_rewrite, GadgetMode, GadgetRewriteReport};
pub use sat::{count_sat_bruteforce, parse_dimacs, sharp_sat_circuit, CnfFormula};

use crate::circuit::{AffineCondition, Gate, Operation, OutcomeId};
use crate::error::{Error, Result};

/// `(a, b, t) → (a, b, t ⊕ ab)` on basis states: measure `a` into `outcome`,
/// then `CX b → t` when it was 1.
///
/// Only valid when the three lines carry basis states; on superpositions
/// the measurement of `a` disturbs the state.
pub fn toffoli_block(a: usize, b: usize, t: usize, outcome: OutcomeId) -> Result<Vec<Operation>> {
    if a == b || a == t || b == t {
        return Err(Error::RepeatedLine(format!(
            "Toffoli {} {} {}",
            a + 1,
            b + 1,
            t + 1
        )));
    }
    Ok(vec![
        Operation::Measure { line: a, outcome },
        Operation::Conditional {
            gate: Gate::CX(b, t),
            condition: AffineCondition::on(outcome),
        },
    ])
}
