// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use super::{CircuitProgram, Gate, Operation, OutcomeId};
use crate::error::{Error, Result};

/// One step of an adaptive circuit: a unitary block followed by an optional
/// measurement. A block without a measurement ends the circuit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Block {
    pub gates: Vec<Gate>,
    pub measure: Option<usize>,
}

/// Classical decision procedure of an adaptive circuit.
///
/// Given the outcomes of the measurements performed so far, returns the next
/// block. Implementations must be a pure function of `history`; engines call
/// them from several threads and replay histories freely.
pub trait AdaptiveController: Send + Sync {
    fn width(&self) -> usize;

    /// Upper bound on gates plus measurements over every outcome history.
    fn max_operations(&self) -> usize;

    fn next_block(&self, history: &[bool]) -> Result<Block>;

    /// True when no measured line is acted on again after its measurement.
    fn measured_lines_discarded(&self) -> bool {
        false
    }
}

/// Drives a [`CircuitProgram`] whose adaptivity is expressed through affine
/// conditions.
#[derive(Clone, Debug)]
pub struct ProgramController {
    width: usize,
    max_ops: usize,
    /// `segments[j]`: operations between measurement `j` and `j + 1`.
    segments: Vec<Vec<Operation>>,
    measured: Vec<usize>,
    position: HashMap<OutcomeId, usize>,
    discarded: bool,
}

impl ProgramController {
    pub fn new(program: &CircuitProgram) -> Self {
        let mut segments = vec![Vec::new()];
        let mut measured = Vec::new();
        let mut position = HashMap::new();
        for op in program.ops() {
            match op {
                Operation::Measure { line, outcome } => {
                    position.insert(*outcome, measured.len());
                    measured.push(*line);
                    segments.push(Vec::new());
                }
                _ => segments.last_mut().expect("nonempty").push(op.clone()),
            }
        }
        let ops = program.ops();
        let discarded = ops.iter().enumerate().all(|(i, op)| match op {
            Operation::Measure { line, .. } => ops[i + 1..]
                .iter()
                .all(|later| !later.lines().contains(line)),
            _ => true,
        });
        ProgramController {
            width: program.width(),
            max_ops: ops.len(),
            segments,
            measured,
            position,
            discarded,
        }
    }

    pub fn num_measurements(&self) -> usize {
        self.measured.len()
    }
}

impl AdaptiveController for ProgramController {
    fn width(&self) -> usize {
        self.width
    }

    fn max_operations(&self) -> usize {
        self.max_ops
    }

    fn next_block(&self, history: &[bool]) -> Result<Block> {
        let j = history.len();
        let segment = self.segments.get(j).ok_or_else(|| {
            Error::Internal(format!("history of length {j} past the last measurement"))
        })?;
        let mut gates = Vec::with_capacity(segment.len());
        for op in segment {
            match op {
                Operation::Gate(g) => gates.push(*g),
                Operation::Conditional { gate, condition } => {
                    if condition.eval(|id| history[self.position[&id]]) {
                        gates.push(*gate);
                    }
                }
                Operation::Measure { .. } => unreachable!("segments hold no measurements"),
            }
        }
        Ok(Block {
            gates,
            measure: self.measured.get(j).copied(),
        })
    }

    fn measured_lines_discarded(&self) -> bool {
        self.discarded
    }
}
