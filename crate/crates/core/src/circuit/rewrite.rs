// SPDX-License-Identifier: Apache-2.0

//! Distribution-preserving circuit rewrites.

use super::{CircuitProgram, Gate, Input, Operation};
use crate::bits::BitString;
use crate::error::{Error, Result};

fn measurement_ancillas(c: &CircuitProgram) -> impl Iterator<Item = (usize, &Operation)> + '_ {
    let n = c.width();
    let mut k = 0;
    c.ops().iter().map(move |op| {
        let anc = n + k;
        if matches!(op, Operation::Measure { .. }) {
            k += 1;
        }
        (anc, op)
    })
}

/// Replaces the `k`-th intermediate measurement, on line `i`, by `CX(i, n+k)`
/// onto a fresh `|0⟩` ancilla, giving a unitary circuit on `n + K` lines
/// with the same output distribution.
pub fn unitarize(c: &CircuitProgram) -> Result<CircuitProgram> {
    if !c.is_nonadaptive() {
        return Err(Error::Adaptive("unitarization needs a non-adaptive circuit"));
    }
    let k = c.num_measurements();
    if k == 0 {
        return Ok(c.clone());
    }
    let ops = measurement_ancillas(c)
        .map(|(anc, op)| match op {
            Operation::Measure { line, .. } => Gate::CX(*line, anc).into(),
            other => other.clone(),
        })
        .collect();
    CircuitProgram::new(
        c.width() + k,
        ops,
        c.input().extended(k),
        c.output_lines().to_vec(),
    )
}

/// Copies each measured line onto a fresh ancilla with `CX` and measures the
/// ancilla instead, binding the same outcome id.
///
/// In the result every measured line is fresh, measured once, and never
/// touched again; the measured lines do not depend on outcomes; output lines
/// are disjoint from them. Conditions are unchanged.
pub fn defer_measurements(c: &CircuitProgram) -> Result<CircuitProgram> {
    let k = c.num_measurements();
    if k == 0 {
        return Ok(c.clone());
    }
    let mut ops = Vec::with_capacity(c.ops().len() + k);
    for (anc, op) in measurement_ancillas(c) {
        match op {
            Operation::Measure { line, outcome } => {
                ops.push(Gate::CX(*line, anc).into());
                ops.push(Operation::Measure {
                    line: anc,
                    outcome: *outcome,
                });
            }
            other => ops.push(other.clone()),
        }
    }
    CircuitProgram::new(
        c.width() + k,
        ops,
        c.input().extended(k),
        c.output_lines().to_vec(),
    )
}

/// Reduces the marginal `p(y on out_lines | input x)` of a non-adaptive
/// circuit to the probability of all zeros on lines `0..m` of a unitary
/// circuit with all-zero input.
///
/// Prepends `X` where `x` is 1, appends `X` on output lines where `y` is 1,
/// then swaps the output lines into positions `0..m`, and unitarizes.
pub fn standardize_for_marginal(
    c: &CircuitProgram,
    x: &BitString,
    y: &BitString,
    out_lines: &[usize],
) -> Result<CircuitProgram> {
    if !c.is_nonadaptive() {
        return Err(Error::Adaptive("marginal standardization needs a non-adaptive circuit"));
    }
    if x.len() != c.width() {
        return Err(Error::DimensionMismatch {
            expected: c.width(),
            found: x.len(),
        });
    }
    if y.len() != out_lines.len() {
        return Err(Error::DimensionMismatch {
            expected: out_lines.len(),
            found: y.len(),
        });
    }
    for (i, &l) in out_lines.iter().enumerate() {
        if l >= c.width() {
            return Err(Error::LineOutOfRange {
                line: l,
                width: c.width(),
            });
        }
        if out_lines[..i].contains(&l) {
            return Err(Error::InvalidCircuit(format!("repeated query line {}", l + 1)));
        }
    }

    let u = unitarize(c)?;
    let width = u.width();
    let mut ops: Vec<Operation> = x.ones().map(|i| Gate::X(i).into()).collect();
    ops.extend(u.ops().iter().cloned());
    ops.extend(y.ones().map(|j| Gate::X(out_lines[j]).into()));

    // location[l]: where the content of original line l currently sits.
    let mut location: Vec<usize> = (0..width).collect();
    let mut occupant: Vec<usize> = (0..width).collect();
    for (j, &line) in out_lines.iter().enumerate() {
        let src = location[line];
        if src != j {
            ops.push(Gate::Swap(j, src).into());
            let displaced = occupant[j];
            occupant.swap(j, src);
            location[line] = j;
            location[displaced] = src;
        }
    }

    let outputs = if out_lines.is_empty() {
        c.output_lines().to_vec()
    } else {
        (0..out_lines.len()).collect()
    };
    CircuitProgram::new(width, ops, Input::Basis(BitString::zeros(width)), outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn unitarize_without_measurements_is_identity() {
        let c = parse_circuit("qubits 2\ninput 00\nH 1\nCX 1 2\nout 1 2\n").unwrap();
        assert_eq!(unitarize(&c).unwrap(), c);
        assert_eq!(defer_measurements(&c).unwrap(), c);
    }

    #[test]
    fn unitarize_two_measurements() {
        let c = parse_circuit("qubits 2\ninput 00\nH 1\nM 1 -> m1\nCX 1 2\nM 2 -> m2\nout 2\n")
            .unwrap();
        let u = unitarize(&c).unwrap();
        assert_eq!(u.width(), 4);
        assert!(u.is_unitary());
        let cx: Vec<_> = u
            .ops()
            .iter()
            .filter(|op| matches!(op, Operation::Gate(Gate::CX(_, t)) if *t >= 2))
            .collect();
        assert_eq!(cx.len(), 2);
    }

    #[test]
    fn defer_adds_fresh_measured_lines() {
        let c = parse_circuit(
            "qubits 3\ninput 110\nM 1 -> m1\nCOND m1 : CX 2 3\nM 3 -> m2\nout 3\n",
        )
        .unwrap();
        let d = defer_measurements(&c).unwrap();
        assert_eq!(d.width(), 5);
        let measured: Vec<usize> = d
            .ops()
            .iter()
            .filter_map(|op| match op {
                Operation::Measure { line, .. } => Some(*line),
                _ => None,
            })
            .collect();
        assert_eq!(measured, vec![3, 4]);
        assert_eq!(d.num_measurements(), 2);
        assert!(d.output_lines().iter().all(|l| !measured.contains(l)));
        assert!(unitarize(&c).is_err());
    }

    #[test]
    fn standardize_trivial_case_only_unitarizes() {
        let c = parse_circuit("qubits 2\ninput 00\nH 1\nM 2 -> m1\nout 1\n").unwrap();
        let s = standardize_for_marginal(&c, &BitString::zeros(2), &BitString::zeros(1), &[0])
            .unwrap();
        assert_eq!(s, unitarize(&c).unwrap());
    }

    #[test]
    fn standardize_forced_construction() {
        let c = parse_circuit("qubits 2\ninput 00\nout 2\n").unwrap();
        let s = standardize_for_marginal(&c, &"10".parse().unwrap(), &"1".parse().unwrap(), &[1])
            .unwrap();
        assert_eq!(
            s.ops(),
            &[
                Gate::X(0).into(),
                Gate::X(1).into(),
                Gate::Swap(0, 1).into()
            ]
        );
        assert_eq!(s.output_lines(), &[0]);
    }
}
