// SPDX-License-Identifier: Apache-2.0

//! Replacing the non-Clifford `S` by a resource state and a measurement.
//!
//! With an ancilla `a` in `|π/4⟩ = (|0⟩ + e^{iπ/4}|1⟩)/√2`, applying
//! `CX i → a` and measuring `a` leaves `S_i|ψ⟩` on outcome 0 and
//! `e^{iπ/4} S_i^{-1}|ψ⟩` on outcome 1. Since `S² = T`, a conditional `T`
//! on outcome 1 completes `S` in both branches.

use crate::circuit::{AffineCondition, CircuitProgram, Gate, Input, Operation, OutcomeId};
use crate::error::{Error, Result};
use crate::state::SingleQubitState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetMode {
    /// Correct outcome 1 with a conditional `T`; the result is exactly
    /// equivalent to the input circuit.
    Adaptive,
    /// No correction; the ancillas become output lines, and conditioning
    /// them on all zeros reproduces the input circuit's distribution.
    Postselect,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetRewriteReport {
    pub rewritten: CircuitProgram,
    /// One ancilla per replaced `S`, in circuit order.
    pub ancilla_lines: Vec<usize>,
    pub mode: GadgetMode,
}

pub fn s_gadget_rewrite(c: &CircuitProgram, mode: GadgetMode) -> Result<GadgetRewriteReport> {
    let k = c
        .ops()
        .iter()
        .filter(|op| matches!(op, Operation::Gate(Gate::S(_))))
        .count();
    if c
        .ops()
        .iter()
        .any(|op| matches!(op, Operation::Conditional { gate: Gate::S(_), .. }))
    {
        return Err(Error::InvalidCircuit(
            "conditional S gates cannot be replaced by the gadget".into(),
        ));
    }
    if k == 0 {
        return Ok(GadgetRewriteReport {
            rewritten: c.clone(),
            ancilla_lines: Vec::new(),
            mode,
        });
    }
    let n = c.width();
    let mut states = c.input().to_product();
    states.extend(std::iter::repeat_n(SingleQubitState::pi_over_4(), k));
    let mut next_id = c.next_outcome_id();
    let mut ancillas = Vec::with_capacity(k);
    let mut ops = Vec::with_capacity(c.ops().len() + 2 * k);
    for op in c.ops() {
        let Operation::Gate(Gate::S(i)) = *op else {
            ops.push(op.clone());
            continue;
        };
        let a = n + ancillas.len();
        ancillas.push(a);
        let outcome = OutcomeId(next_id);
        next_id += 1;
        ops.push(Gate::CX(i, a).into());
        ops.push(Operation::Measure { line: a, outcome });
        if mode == GadgetMode::Adaptive {
            ops.push(Operation::Conditional {
                gate: Gate::T(i),
                condition: AffineCondition::on(outcome),
            });
        }
    }
    let mut outputs = c.output_lines().to_vec();
    if mode == GadgetMode::Postselect {
        outputs.extend(&ancillas);
    }
    let rewritten = CircuitProgram::new(n + k, ops, Input::Product(states), outputs)?;
    Ok(GadgetRewriteReport {
        rewritten,
        ancilla_lines: ancillas,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn no_s_gates_is_identity() {
        let c = parse_circuit("qubits 2\nH 1\nCX 1 2\nout 1 2").unwrap();
        let r = s_gadget_rewrite(&c, GadgetMode::Adaptive).unwrap();
        assert_eq!(r.rewritten, c);
        assert!(r.ancilla_lines.is_empty());
    }

    #[test]
    fn ancillas_follow_s_count() {
        let c = parse_circuit("qubits 2\nH 1\nS 1\nS 2\nout 1").unwrap();
        let r = s_gadget_rewrite(&c, GadgetMode::Postselect).unwrap();
        assert_eq!(r.ancilla_lines, vec![2, 3]);
        assert_eq!(r.rewritten.output_lines(), &[0, 2, 3]);
        assert!(r.rewritten.is_clifford_only());
        assert!(r.rewritten.is_nonadaptive());
        let r = s_gadget_rewrite(&c, GadgetMode::Adaptive).unwrap();
        assert_eq!(r.rewritten.output_lines(), &[0]);
        assert!(!r.rewritten.is_nonadaptive());
    }
}
