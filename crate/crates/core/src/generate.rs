// SPDX-License-Identifier: Apache-2.0

//! Random instances for tests and benchmarks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;

use crate::bits::BitString;
use crate::circuit::{AffineCondition, CircuitProgram, Gate, Input, Operation, OutcomeId};
use crate::error::Result;
use crate::reductions::CnfFormula;
use crate::state::SingleQubitState;

/// Uniform over the nine Clifford gate kinds on random distinct lines; only
/// single-line gates when `width == 1`.
pub fn random_clifford_gate<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Gate {
    let kinds = if width >= 2 { 9 } else { 6 };
    let q = rng.random_range(0..width);
    match rng.random_range(0..kinds) {
        0 => Gate::H(q),
        1 => Gate::T(q),
        2 => Gate::X(q),
        3 => Gate::Y(q),
        4 => Gate::Z(q),
        5 => Gate::H(q),
        k => {
            let mut p = rng.random_range(0..width - 1);
            if p >= q {
                p += 1;
            }
            match k {
                6 => Gate::CX(q, p),
                7 => Gate::CZ(q, p),
                _ => Gate::Swap(q, p),
            }
        }
    }
}

pub fn random_clifford_gates<R: Rng + ?Sized>(rng: &mut R, width: usize, count: usize) -> Vec<Gate> {
    (0..count).map(|_| random_clifford_gate(rng, width)).collect()
}

pub fn random_bits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BitString {
    BitString::from_bools(&(0..len).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>())
}

/// Uniform on the Bloch sphere, with a random global phase.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> SingleQubitState {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
    let phi = 2.0 * PI * rng.random::<f64>();
    let s = SingleQubitState::bloch(theta, phi);
    let g = Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>());
    SingleQubitState::new(s.amp0() * g, s.amp1() * g).expect("unit phase keeps the norm")
}

pub fn random_product_input<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Input {
    Input::Product((0..width).map(|_| random_state(rng)).collect())
}

/// A nonempty random subset of `0..width`, sorted.
pub fn random_lines<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Vec<usize> {
    let m = rng.random_range(1..=width);
    let mut lines = sample(rng, width, m).into_vec();
    lines.sort_unstable();
    lines
}

/// Clifford gates interleaved with `measurements` intermediate
/// measurements at random positions; random basis input and output lines.
pub fn random_nonadaptive_program<R: Rng + ?Sized>(
    rng: &mut R,
    width: usize,
    gates: usize,
    measurements: usize,
) -> Result<CircuitProgram> {
    random_program(rng, width, gates, measurements, 0.0)
}

/// Like [`random_nonadaptive_program`], with each gate after the first
/// measurement conditioned, with probability `p_conditional`, on a random
/// affine function of earlier outcomes.
pub fn random_program<R: Rng + ?Sized>(
    rng: &mut R,
    width: usize,
    gates: usize,
    measurements: usize,
    p_conditional: f64,
) -> Result<CircuitProgram> {
    let total = gates + measurements;
    let mut measure_at = sample(rng, total.max(1), measurements.min(total)).into_vec();
    measure_at.sort_unstable();
    let mut ops = Vec::with_capacity(total);
    let mut bound: Vec<OutcomeId> = Vec::new();
    for pos in 0..total {
        if measure_at.binary_search(&pos).is_ok() {
            let id = OutcomeId(bound.len() as u32 + 1);
            bound.push(id);
            ops.push(Operation::Measure {
                line: rng.random_range(0..width),
                outcome: id,
            });
            continue;
        }
        let gate = random_clifford_gate(rng, width);
        if !bound.is_empty() && rng.random_bool(p_conditional) {
            let ids: Vec<OutcomeId> = bound.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
            let ids = if ids.is_empty() {
                vec![bound[rng.random_range(0..bound.len())]]
            } else {
                ids
            };
            ops.push(Operation::Conditional {
                gate,
                condition: AffineCondition::new(ids, rng.random_bool(0.5)),
            });
        } else {
            ops.push(gate.into());
        }
    }
    let input = Input::Basis(random_bits(rng, width));
    let outputs = random_lines(rng, width);
    CircuitProgram::new(width, ops, input, outputs)
}

/// Up to `max_clauses` random clauses of 1 to 3 distinct variables each.
pub fn random_cnf<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, max_clauses: usize) -> CnfFormula {
    let count = rng.random_range(0..=max_clauses);
    let clauses = (0..count)
        .map(|_| {
            let len = rng.random_range(1..=num_vars.min(3));
            sample(rng, num_vars, len)
                .into_iter()
                .map(|v| {
                    let lit = v as i32 + 1;
                    if rng.random_bool(0.5) {
                        -lit
                    } else {
                        lit
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("literals in range")
}
