// SPDX-License-Identifier: Apache-2.0

//! Dense state-vector reference simulator.
//!
//! Handles every gate including the non-Clifford `S`, measurements,
//! adaptive circuits and postselection. Intermediate measurements fork the
//! state: the outcome tree is expanded exhaustively (branches with zero
//! probability are dropped), so distributions are exact up to floating
//! point. Widths are capped at [`MAX_WIDTH`] lines and live branches at
//! [`MAX_BRANCHES`].
//!
//! Amplitude index bit `q` holds line `q`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::bits::BitString;
use crate::circuit::{AdaptiveController, CircuitProgram, Gate, Input, ProgramController};
use crate::error::{Error, Result};
use crate::pauli::{phase_value, PauliOperator};
use crate::state::SingleQubitState;

pub const MAX_WIDTH: usize = 16;
pub const MAX_BRANCHES: usize = 1 << 12;

/// Conditional outcome probabilities below this are treated as zero.
const PRUNE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_WIDTH {
            return Err(Error::WidthCap {
                width: n,
                cap: MAX_WIDTH,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidCircuit("amplitude count is not a power of two".into()));
        }
        let n = amps.len().trailing_zeros() as usize;
        if n > MAX_WIDTH {
            return Err(Error::WidthCap {
                width: n,
                cap: MAX_WIDTH,
            });
        }
        let v = StateVector { n, amps };
        if (v.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(Error::Unnormalized(v.norm_sqr()));
        }
        Ok(v)
    }

    pub fn basis(bits: &BitString) -> Result<Self> {
        let mut v = Self::zero(bits.len())?;
        v.amps[0] = Complex64::new(0.0, 0.0);
        let index: usize = bits.ones().map(|q| 1 << q).sum();
        v.amps[index] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn product(states: &[SingleQubitState]) -> Result<Self> {
        let mut v = Self::zero(states.len())?;
        for (j, amp) in v.amps.iter_mut().enumerate() {
            *amp = states
                .iter()
                .enumerate()
                .map(|(q, s)| s.amplitudes()[j >> q & 1])
                .product();
        }
        Ok(v)
    }

    pub fn from_input(input: &Input) -> Result<Self> {
        match input {
            Input::Basis(b) => Self::basis(b),
            Input::Product(s) => Self::product(s),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    fn check_line(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::LineOutOfRange {
                line: q,
                width: self.n,
            });
        }
        Ok(())
    }

    /// Calls `f(i0, i1)` for each index pair differing only in bit `q`.
    fn pairs(&mut self, q: usize, mut f: impl FnMut(&mut [Complex64], usize, usize)) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                f(&mut self.amps, i, i | bit);
            }
        }
    }

    fn phase_on_ones(&mut self, mask: usize, phase: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.lines() {
            self.check_line(q)?;
        }
        gate.validate(self.n)?;
        let s = FRAC_1_SQRT_2;
        match *gate {
            Gate::H(q) => self.pairs(q, |a, i, j| {
                let (x, y) = (a[i], a[j]);
                a[i] = (x + y) * s;
                a[j] = (x - y) * s;
            }),
            Gate::T(q) => self.phase_on_ones(1 << q, Complex64::new(0.0, 1.0)),
            Gate::S(q) => self.phase_on_ones(1 << q, Complex64::from_polar(1.0, FRAC_PI_4)),
            Gate::X(q) => self.pairs(q, |a, i, j| a.swap(i, j)),
            Gate::Y(q) => self.pairs(q, |a, i, j| {
                let (x, y) = (a[i], a[j]);
                a[i] = Complex64::new(0.0, -1.0) * y;
                a[j] = Complex64::new(0.0, 1.0) * x;
            }),
            Gate::Z(q) => self.phase_on_ones(1 << q, Complex64::new(-1.0, 0.0)),
            Gate::CZ(p, q) => self.phase_on_ones(1 << p | 1 << q, Complex64::new(-1.0, 0.0)),
            Gate::CX(c, t) => {
                let cbit = 1 << c;
                self.pairs(t, |a, i, j| {
                    if i & cbit != 0 {
                        a.swap(i, j)
                    }
                })
            }
            Gate::Swap(p, q) => {
                let (pb, qb) = (1 << p, 1 << q);
                for i in 0..self.amps.len() {
                    if i & pb != 0 && i & qb == 0 {
                        self.amps.swap(i, i ^ pb ^ qb);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prob_one(&self, q: usize) -> Result<f64> {
        self.check_line(q)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i >> q & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects line `q` onto `bit` and renormalizes; returns the outcome's
    /// probability.
    pub fn project(&mut self, q: usize, bit: bool) -> Result<f64> {
        let p1 = self.prob_one(q)?;
        let p = if bit { p1 } else { 1.0 - p1 };
        if p <= 0.0 {
            return Err(Error::ZeroProbabilityEvent(p));
        }
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i >> q & 1 == 1) == bit {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(p)
    }

    /// Joint distribution of final measurements on `lines`.
    pub fn distribution(&self, lines: &[usize]) -> Result<Distribution> {
        for &q in lines {
            self.check_line(q)?;
        }
        let mut probs = vec![0.0; 1 << lines.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let key = lines
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &q)| acc | (i >> q & 1) << k);
            probs[key] += a.norm_sqr();
        }
        Ok(Distribution {
            lines: lines.to_vec(),
            probs,
        })
    }
}

/// `P|v⟩` built directly from the label.
pub fn apply_pauli_dense(p: &PauliOperator, v: &StateVector) -> Result<StateVector> {
    if p.num_qubits() != v.n {
        return Err(Error::DimensionMismatch {
            expected: v.n,
            found: p.num_qubits(),
        });
    }
    let to_mask = |b: &BitString| b.ones().fold(0usize, |m, q| m | 1 << q);
    let (xm, zm) = (to_mask(p.x_bits()), to_mask(p.z_bits()));
    let phase = phase_value(p.phase_exp());
    let mut out = vec![Complex64::new(0.0, 0.0); v.amps.len()];
    for (j, a) in v.amps.iter().enumerate() {
        let sign = if (j & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[j ^ xm] = phase * a * sign;
    }
    Ok(StateVector { n: v.n, amps: out })
}

/// Output distribution over a fixed list of lines; index bit `k` is the
/// outcome on `lines[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    lines: Vec<usize>,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of `y`, where `y[k]` is the value on `lines[k]`.
    pub fn prob(&self, y: &BitString) -> f64 {
        assert_eq!(y.len(), self.lines.len());
        self.probs[y.ones().fold(0, |m, k| m | 1 << k)]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Marginal on `subset`, a sublist of `lines`.
    pub fn marginal(&self, subset: &[usize]) -> Result<Distribution> {
        let pos: Vec<usize> = subset
            .iter()
            .map(|l| {
                self.lines.iter().position(|x| x == l).ok_or(Error::LineOutOfRange {
                    line: *l,
                    width: self.lines.len(),
                })
            })
            .collect::<Result<_>>()?;
        let mut probs = vec![0.0; 1 << subset.len()];
        for (i, p) in self.probs.iter().enumerate() {
            let key = pos
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &b)| acc | (i >> b & 1) << k);
            probs[key] += p;
        }
        Ok(Distribution {
            lines: subset.to_vec(),
            probs,
        })
    }

    /// `(outcome, probability)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (BitString, f64)> + '_ {
        let m = self.lines.len();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (BitString::from_u64(m, i as u64), p))
    }

    /// Largest absolute difference against another distribution on the same
    /// lines.
    pub fn max_deviation(&self, other: &Distribution) -> f64 {
        assert_eq!(self.lines, other.lines);
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn total_variation(&self, other: &Distribution) -> f64 {
        assert_eq!(self.lines, other.lines);
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    fn accumulate(&mut self, other: &Distribution, weight: f64) {
        for (a, b) in self.probs.iter_mut().zip(&other.probs) {
            *a += weight * b;
        }
    }
}

/// One leaf of the outcome tree.
#[derive(Clone, Debug)]
pub struct Branch {
    pub history: Vec<bool>,
    pub probability: f64,
    pub state: StateVector,
}

/// Runs every outcome history of `controller` on `input` to completion.
pub fn run_branches(controller: &dyn AdaptiveController, input: &Input) -> Result<Vec<Branch>> {
    let width = controller.width();
    if width > MAX_WIDTH {
        return Err(Error::WidthCap {
            width,
            cap: MAX_WIDTH,
        });
    }
    if input.width() != width {
        return Err(Error::DimensionMismatch {
            expected: width,
            found: input.width(),
        });
    }
    let budget = controller.max_operations();
    let mut frontier = vec![(
        Branch {
            history: Vec::new(),
            probability: 1.0,
            state: StateVector::from_input(input)?,
        },
        0usize,
    )];
    let mut leaves = Vec::new();
    while let Some((mut branch, mut used)) = frontier.pop() {
        let block = controller.next_block(&branch.history)?;
        used += block.gates.len() + block.measure.is_some() as usize;
        if used > budget {
            return Err(Error::ControllerBudget(budget));
        }
        for g in &block.gates {
            branch.state.apply_gate(g)?;
        }
        let Some(q) = block.measure else {
            leaves.push(branch);
            continue;
        };
        let p1 = branch.state.prob_one(q)?;
        for (bit, p) in [(false, 1.0 - p1), (true, p1)] {
            if p < PRUNE {
                continue;
            }
            let mut state = branch.state.clone();
            state.project(q, bit)?;
            let mut history = branch.history.clone();
            history.push(bit);
            frontier.push((
                Branch {
                    history,
                    probability: branch.probability * p,
                    state,
                },
                used,
            ));
        }
        if frontier.len() + leaves.len() > MAX_BRANCHES {
            return Err(Error::BranchCap { cap: MAX_BRANCHES });
        }
    }
    leaves.sort_by(|a, b| a.history.cmp(&b.history));
    Ok(leaves)
}

/// Joint distribution of final measurements on `lines` for a controller.
pub fn run_controller_distribution(
    controller: &dyn AdaptiveController,
    input: &Input,
    lines: &[usize],
) -> Result<Distribution> {
    let mut total = Distribution {
        lines: lines.to_vec(),
        probs: vec![0.0; 1 << lines.len()],
    };
    for b in run_branches(controller, input)? {
        total.accumulate(&b.state.distribution(lines)?, b.probability);
    }
    Ok(total)
}

/// Joint distribution on arbitrary `lines` of a program.
pub fn run_distribution_on(c: &CircuitProgram, lines: &[usize]) -> Result<Distribution> {
    run_controller_distribution(&ProgramController::new(c), c.input(), lines)
}

/// Joint distribution on the program's output lines.
pub fn run_distribution(c: &CircuitProgram) -> Result<Distribution> {
    run_distribution_on(c, c.output_lines())
}

/// `Prob(target | postselect)` as the quotient of two marginals.
pub fn run_postselected(
    c: &CircuitProgram,
    postselect: &[(usize, bool)],
    target: (usize, bool),
) -> Result<f64> {
    let mut lines: Vec<usize> = postselect.iter().map(|&(l, _)| l).collect();
    if lines.contains(&target.0) {
        return Err(Error::InvalidCircuit(format!(
            "target line {} is also postselected",
            target.0 + 1
        )));
    }
    lines.push(target.0);
    let dist = run_distribution_on(c, &lines)?;
    let mut joint = BitString::from_bools(&postselect.iter().map(|&(_, b)| b).collect::<Vec<_>>());
    joint.grow(lines.len());
    let mut with_target = joint.clone();
    with_target.set(lines.len() - 1, target.1);
    let mut flipped = joint;
    flipped.set(lines.len() - 1, !target.1);
    let numerator = dist.prob(&with_target);
    let denominator = numerator + dist.prob(&flipped);
    if denominator <= 1e-12 {
        return Err(Error::ZeroProbabilityEvent(denominator));
    }
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn hadamard_distribution() {
        let c = parse_circuit("qubits 1\ninput 0\nH 1\nout 1").unwrap();
        let d = run_distribution(&c).unwrap();
        assert!((d.probabilities()[0] - 0.5).abs() < 1e-15);
        assert!((d.probabilities()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ghz_distribution() {
        let c = parse_circuit("qubits 3\ninput 000\nH 1\nCX 1 2\nCX 2 3\nout 1 2 3").unwrap();
        let d = run_distribution(&c).unwrap();
        for (y, p) in d.iter() {
            let expect = if y.is_zero() || y.count_ones() == 3 { 0.5 } else { 0.0 };
            assert!((p - expect).abs() < 1e-12, "{y}: {p}");
        }
    }

    #[test]
    fn postselection_without_conditions_is_marginal() {
        let c = parse_circuit("qubits 2\ninput 00\nH 1\nCX 1 2\nT 2\nH 2\nout 1 2").unwrap();
        let plain = run_distribution(&c).unwrap().marginal(&[1]).unwrap();
        let post = run_postselected(&c, &[], (1, true)).unwrap();
        assert!((post - plain.probabilities()[1]).abs() < 1e-12);
    }

    #[test]
    fn postselecting_impossible_event_fails() {
        let c = parse_circuit("qubits 2\ninput 00\nH 1\nout 1 2").unwrap();
        assert!(matches!(
            run_postselected(&c, &[(1, true)], (0, true)),
            Err(Error::ZeroProbabilityEvent(_))
        ));
    }

    #[test]
    fn pauli_dense_examples() {
        let v = StateVector::basis(&"00".parse().unwrap()).unwrap();
        assert_eq!(apply_pauli_dense(&PauliOperator::identity(2), &v).unwrap(), v);
        let w = apply_pauli_dense(&"XI".parse().unwrap(), &v).unwrap();
        assert_eq!(w, StateVector::basis(&"10".parse().unwrap()).unwrap());
    }

    #[test]
    fn width_cap() {
        assert!(matches!(StateVector::zero(17), Err(Error::WidthCap { .. })));
    }
}
