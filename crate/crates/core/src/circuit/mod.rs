// SPDX-License-Identifier: Apache-2.0

//! Circuit representation for unitary, non-adaptive and adaptive Clifford
//! circuits, with their inputs and output lines.
//!
//! Lines are 0-indexed here; the text format is 1-indexed.
//!
//! Measurements are non-destructive: the measured line keeps the
//! post-measurement basis state and may be used again.

mod controller;
mod rewrite;
mod text;

use std::collections::HashSet;
use std::fmt;

pub use controller::{AdaptiveController, Block, ProgramController};
pub use rewrite::{defer_measurements, standardize_for_marginal, unitarize};
pub use text::{parse_circuit, render_circuit};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::state::SingleQubitState;

/// Gate instances. `T = diag(1, i)` is Clifford, `S = diag(1, e^{iπ/4})` is
/// not (see the crate-level table).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    T(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// Symmetric; the order of lines is irrelevant.
    CZ(usize, usize),
    /// `CX(control, target)`.
    CX(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::T(_) => "T",
            Gate::S(_) => "S",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::CZ(..) => "CZ",
            Gate::CX(..) => "CX",
            Gate::Swap(..) => "SWAP",
        }
    }

    pub fn lines(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Gate::H(q) | Gate::T(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                (q, None)
            }
            Gate::CZ(p, q) | Gate::CX(p, q) | Gate::Swap(p, q) => (p, Some(q)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::S(_))
    }

    /// Same gate kind on relabelled lines.
    pub fn map_lines(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::T(q) => Gate::T(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Y(q) => Gate::Y(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::CZ(p, q) => Gate::CZ(f(p), f(q)),
            Gate::CX(p, q) => Gate::CX(f(p), f(q)),
            Gate::Swap(p, q) => Gate::Swap(f(p), f(q)),
        }
    }

    pub(crate) fn validate(&self, width: usize) -> Result<()> {
        for line in self.lines() {
            if line >= width {
                return Err(Error::LineOutOfRange { line, width });
            }
        }
        if let Gate::CZ(p, q) | Gate::CX(p, q) | Gate::Swap(p, q) = *self {
            if p == q {
                return Err(Error::RepeatedLine(self.to_string()));
            }
        }
        Ok(())
    }
}

/// Renders 1-indexed, as in the text format.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for q in self.lines() {
            write!(f, " {}", q + 1)?;
        }
        Ok(())
    }
}

/// Identifier binding a measurement outcome, written `m<k>` in text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeId(pub u32);

impl fmt::Display for OutcomeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// `constant ⊕ (⊕_{k ∈ outcomes} m_k)`; the gate fires when this is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineCondition {
    outcomes: Vec<OutcomeId>,
    constant: bool,
}

impl AffineCondition {
    /// Repeated outcomes cancel in pairs; the stored list is sorted.
    pub fn new(outcomes: impl IntoIterator<Item = OutcomeId>, constant: bool) -> Self {
        let mut v: Vec<OutcomeId> = outcomes.into_iter().collect();
        v.sort();
        let mut reduced: Vec<OutcomeId> = Vec::with_capacity(v.len());
        for id in v {
            if reduced.last() == Some(&id) {
                reduced.pop();
            } else {
                reduced.push(id);
            }
        }
        AffineCondition {
            outcomes: reduced,
            constant,
        }
    }

    pub fn on(id: OutcomeId) -> Self {
        Self::new([id], false)
    }

    pub fn outcomes(&self) -> &[OutcomeId] {
        &self.outcomes
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn eval(&self, value: impl Fn(OutcomeId) -> bool) -> bool {
        self.outcomes
            .iter()
            .fold(self.constant, |acc, &id| acc ^ value(id))
    }
}

impl fmt::Display for AffineCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.outcomes.iter().map(|o| o.to_string()).collect();
        if self.constant || terms.is_empty() {
            terms.push(if self.constant { "1" } else { "0" }.to_string());
        }
        f.write_str(&terms.join("^"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Operation {
    Gate(Gate),
    Measure { line: usize, outcome: OutcomeId },
    Conditional { gate: Gate, condition: AffineCondition },
}

impl Operation {
    pub fn lines(&self) -> Vec<usize> {
        match self {
            Operation::Gate(g) | Operation::Conditional { gate: g, .. } => g.lines().collect(),
            Operation::Measure { line, .. } => vec![*line],
        }
    }

    pub fn gate(&self) -> Option<&Gate> {
        match self {
            Operation::Gate(g) | Operation::Conditional { gate: g, .. } => Some(g),
            Operation::Measure { .. } => None,
        }
    }
}

impl From<Gate> for Operation {
    fn from(g: Gate) -> Self {
        Operation::Gate(g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Basis(BitString),
    Product(Vec<SingleQubitState>),
}

impl Input {
    pub fn width(&self) -> usize {
        match self {
            Input::Basis(b) => b.len(),
            Input::Product(v) => v.len(),
        }
    }

    pub fn is_basis(&self) -> bool {
        matches!(self, Input::Basis(_))
    }

    /// The input as single-qubit states; basis bits become `|0⟩`/`|1⟩`.
    pub fn to_product(&self) -> Vec<SingleQubitState> {
        match self {
            Input::Basis(b) => b.iter().map(SingleQubitState::basis).collect(),
            Input::Product(v) => v.clone(),
        }
    }

    /// Appends `k` lines in `|0⟩`.
    pub fn extended(&self, k: usize) -> Input {
        match self {
            Input::Basis(b) => {
                let mut b = b.clone();
                b.grow(b.len() + k);
                Input::Basis(b)
            }
            Input::Product(v) => {
                let mut v = v.clone();
                v.extend(std::iter::repeat_n(SingleQubitState::ZERO, k));
                Input::Product(v)
            }
        }
    }
}

/// A circuit together with its input state and final output lines.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitProgram {
    width: usize,
    ops: Vec<Operation>,
    input: Input,
    output_lines: Vec<usize>,
}

impl CircuitProgram {
    /// Validates lines, outcome bindings and the input width. Output lines
    /// are sorted; duplicates are rejected.
    pub fn new(
        width: usize,
        ops: Vec<Operation>,
        input: Input,
        mut output_lines: Vec<usize>,
    ) -> Result<Self> {
        if input.width() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: input.width(),
            });
        }
        if let Input::Product(states) = &input {
            for s in states {
                s.check_normalized()?;
            }
        }
        output_lines.sort_unstable();
        if output_lines.is_empty() {
            return Err(Error::InvalidCircuit("no output lines".into()));
        }
        if output_lines.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCircuit("repeated output line".into()));
        }
        if let Some(&line) = output_lines.iter().find(|&&l| l >= width) {
            return Err(Error::LineOutOfRange { line, width });
        }
        let mut bound = HashSet::new();
        for op in &ops {
            match op {
                Operation::Gate(g) => g.validate(width)?,
                Operation::Measure { line, outcome } => {
                    if *line >= width {
                        return Err(Error::LineOutOfRange { line: *line, width });
                    }
                    if !bound.insert(*outcome) {
                        return Err(Error::InvalidCircuit(format!(
                            "outcome {outcome} bound twice"
                        )));
                    }
                }
                Operation::Conditional { gate, condition } => {
                    gate.validate(width)?;
                    if let Some(id) = condition.outcomes().iter().find(|id| !bound.contains(id)) {
                        return Err(Error::InvalidCircuit(format!(
                            "condition references unknown outcome {id}"
                        )));
                    }
                }
            }
        }
        Ok(CircuitProgram {
            width,
            ops,
            input,
            output_lines,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn input(&self) -> &Input {
        &self.input
    }

    pub fn output_lines(&self) -> &[usize] {
        &self.output_lines
    }

    pub fn with_input(&self, input: Input) -> Result<Self> {
        Self::new(self.width, self.ops.clone(), input, self.output_lines.clone())
    }

    pub fn with_output_lines(&self, lines: Vec<usize>) -> Result<Self> {
        Self::new(self.width, self.ops.clone(), self.input.clone(), lines)
    }

    pub fn num_measurements(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, Operation::Measure { .. }))
            .count()
    }

    pub fn is_unitary(&self) -> bool {
        self.ops.iter().all(|op| matches!(op, Operation::Gate(_)))
    }

    pub fn is_nonadaptive(&self) -> bool {
        !self
            .ops
            .iter()
            .any(|op| matches!(op, Operation::Conditional { .. }))
    }

    pub fn is_clifford_only(&self) -> bool {
        self.ops
            .iter()
            .filter_map(Operation::gate)
            .all(Gate::is_clifford)
    }

    /// The gate list of a unitary circuit.
    pub fn gates(&self) -> Result<Vec<Gate>> {
        self.ops
            .iter()
            .map(|op| match op {
                Operation::Gate(g) => Ok(*g),
                _ => Err(Error::NotUnitary("measurement or conditional gate present")),
            })
            .collect()
    }

    /// Next unused outcome number.
    pub fn next_outcome_id(&self) -> u32 {
        self.ops
            .iter()
            .filter_map(|op| match op {
                Operation::Measure { outcome, .. } => Some(outcome.0 + 1),
                _ => None,
            })
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_circuit(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_condition_cancels_pairs() {
        let c = AffineCondition::new([OutcomeId(3), OutcomeId(1), OutcomeId(3)], true);
        assert_eq!(c.outcomes(), &[OutcomeId(1)]);
        assert_eq!(c.to_string(), "m1^1");
        assert!(!c.eval(|_| true));
    }

    #[test]
    fn rejects_bad_programs() {
        let input = Input::Basis(BitString::zeros(2));
        assert!(matches!(
            CircuitProgram::new(2, vec![Gate::CZ(1, 1).into()], input.clone(), vec![0]),
            Err(Error::RepeatedLine(_))
        ));
        let cond = Operation::Conditional {
            gate: Gate::X(0),
            condition: AffineCondition::on(OutcomeId(1)),
        };
        assert!(CircuitProgram::new(2, vec![cond], input.clone(), vec![0]).is_err());
        assert!(CircuitProgram::new(2, vec![], input.clone(), vec![]).is_err());
        assert!(CircuitProgram::new(2, vec![], input, vec![2]).is_err());
    }

    #[test]
    fn class_predicates() {
        let input = Input::Basis(BitString::zeros(2));
        let ops = vec![
            Gate::H(0).into(),
            Operation::Measure {
                line: 0,
                outcome: OutcomeId(1),
            },
        ];
        let c = CircuitProgram::new(2, ops, input, vec![1]).unwrap();
        assert!(!c.is_unitary());
        assert!(c.is_nonadaptive());
        assert!(c.is_clifford_only());
        assert_eq!(c.next_outcome_id(), 2);
    }
}
