// SPDX-License-Identifier: Apache-2.0

//! Weak simulation: exact sampling of adaptive Clifford circuits on basis
//! inputs.
//!
//! Each shot walks the circuit block by block. Before a measurement the
//! outcomes so far are fixed, so the prefix is an ordinary non-adaptive
//! circuit whose marginals on the recorded lines are exact dyadics; the next
//! outcome is drawn from the ratio of two of them. The same is done for the
//! output lines at the end.
//!
//! The prefix is tracked as a [`HeisenbergFrame`]: the images `U†X_qU` and
//! `U†Z_qU` of every line under the prefix unitary `U`. Appending a gate
//! updates at most four images, so a shot costs `O(N·n)` word operations
//! plus one kernel computation per measured bit.
//!
//! # Randomness
//!
//! Shot `s` under seed `σ` reads bits from ChaCha8 keyed by `σ` on stream
//! `s`, 64 bits per word in stream order. A draw from `k/2^j` consumes
//! exactly `j` bits. Samples are therefore reproducible and independent of
//! how shots are scheduled across threads.

use std::thread;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::circuit::{defer_measurements, AdaptiveController, CircuitProgram, Gate, Input, ProgramController};
use crate::classify::{SimMode, TaskClass};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::pauli::{Direction, PauliOperator};
use crate::strong::{basis_marginal, refusal, strong_out1_prod};

/// Fair bits for one shot.
pub struct BitSource {
    rng: ChaCha8Rng,
    word: u64,
    left: u32,
}

impl BitSource {
    pub fn new(seed: u64, shot: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot);
        BitSource {
            rng,
            word: 0,
            left: 0,
        }
    }

    pub fn bit(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        let b = self.word & 1 == 1;
        self.word >>= 1;
        self.left -= 1;
        b
    }

    /// `j ≤ 128` bits as an integer, first bit most significant.
    pub fn bits(&mut self, j: u32) -> u128 {
        debug_assert!(j <= 128);
        (0..j).fold(0u128, |acc, _| acc << 1 | self.bit() as u128)
    }

    /// Returns true with probability `numer / 2^exp`.
    fn below_dyadic(&mut self, numer: u128, exp: u32) -> bool {
        // With more than 128 bits the high ones must all be zero.
        let mut high_zero = true;
        for _ in 128..exp {
            high_zero &= !self.bit();
        }
        let r = self.bits(exp.min(128));
        high_zero && r < numer
    }

    /// Returns true with probability `a / b`, `a < b`, by lazily comparing a
    /// uniform binary fraction with the expansion of `a / b`.
    fn below_ratio(&mut self, a: u128, b: u128) -> Result<bool> {
        let mut rem = a;
        loop {
            let doubled = rem
                .checked_mul(2)
                .ok_or(Error::Overflow("conditional probability denominator"))?;
            let digit = doubled >= b;
            rem = if digit { doubled - b } else { doubled };
            let u = self.bit();
            if u != digit {
                return Ok(digit);
            }
        }
    }
}

/// Draws the next bit given exact `p(prefix)`, `p(prefix, 0)` and
/// `p(prefix, 1)`. Returns the bit and `p(prefix, bit)`.
pub fn draw_conditional(
    source: &mut BitSource,
    prefix: DyadicRational,
    p0: DyadicRational,
    p1: DyadicRational,
) -> Result<(bool, DyadicRational)> {
    if p0.checked_add(&p1)? != prefix {
        return Err(Error::InconsistentMarginal(format!(
            "p(prefix,0) + p(prefix,1) = {p0} + {p1}, p(prefix) = {prefix}"
        )));
    }
    if prefix.is_zero() {
        return Err(Error::InconsistentMarginal("sampled prefix has probability zero".into()));
    }
    if p0.is_zero() {
        return Ok((true, p1));
    }
    if p1.is_zero() {
        return Ok((false, p0));
    }
    let zero = if prefix.numer() == 1 {
        // p0/p = n0 / 2^{e0−e}
        source.below_dyadic(p0.numer(), p0.exp() - prefix.exp())
    } else {
        // p0/p = n0·2^{E−e0} / (n·2^{E−e})
        let e = p0.exp().max(prefix.exp());
        let lift = |r: DyadicRational| {
            let k = e - r.exp();
            r.numer()
                .checked_shl(k)
                .filter(|v| v >> k == r.numer())
                .ok_or(Error::Overflow("conditional probability denominator"))
        };
        source.below_ratio(lift(p0)?, lift(prefix)?)?
    };
    Ok(if zero { (false, p0) } else { (true, p1) })
}

/// Samples `num_vars` bits from the distribution whose prefix marginals are
/// given by `marginal`; `marginal(&[])` must be 1.
pub fn chain_rule_sample<F>(mut marginal: F, num_vars: usize, seed: u64) -> Result<BitString>
where
    F: FnMut(&[bool]) -> Result<DyadicRational>,
{
    let mut source = BitSource::new(seed, 0);
    let mut prefix = Vec::with_capacity(num_vars);
    let mut p = marginal(&prefix)?;
    if p != DyadicRational::ONE {
        return Err(Error::InconsistentMarginal(format!("empty-prefix marginal is {p}")));
    }
    for _ in 0..num_vars {
        prefix.push(false);
        let p0 = marginal(&prefix)?;
        *prefix.last_mut().expect("pushed") = true;
        let p1 = marginal(&prefix)?;
        let (bit, next) = draw_conditional(&mut source, p, p0, p1)?;
        *prefix.last_mut().expect("pushed") = bit;
        p = next;
    }
    Ok(BitString::from_bools(&prefix))
}

/// Images `U†X_qU`, `U†Z_qU` of every line under a growing unitary `U`.
#[derive(Clone, Debug)]
pub struct HeisenbergFrame {
    x_img: Vec<PauliOperator>,
    z_img: Vec<PauliOperator>,
}

impl HeisenbergFrame {
    pub fn new(width: usize) -> Self {
        HeisenbergFrame {
            x_img: (0..width).map(|q| PauliOperator::x_on(width, q)).collect(),
            z_img: (0..width).map(|q| PauliOperator::z_on(width, q)).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.x_img.len()
    }

    pub fn z_image(&self, q: usize) -> &PauliOperator {
        &self.z_img[q]
    }

    pub fn x_image(&self, q: usize) -> &PauliOperator {
        &self.x_img[q]
    }

    /// Adds a line on which `U` acts trivially; returns its index.
    pub fn add_line(&mut self) -> usize {
        let n = self.width() + 1;
        for p in self.x_img.iter_mut().chain(self.z_img.iter_mut()) {
            p.grow(n);
        }
        self.x_img.push(PauliOperator::x_on(n, n - 1));
        self.z_img.push(PauliOperator::z_on(n, n - 1));
        n - 1
    }

    /// `U ← g·U`.
    ///
    /// `(gU)†P(gU) = U†(g†Pg)U`; `g†Pg` is a Pauli on the gate's lines, and
    /// its image is the matching product of current images.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.width())?;
        let lines: Vec<usize> = gate.lines().collect();
        let k = lines.len();
        let local = gate.map_lines(|l| lines.iter().position(|&x| x == l).expect("gate line"));
        let mut updates = Vec::with_capacity(2 * k);
        for (pos, &q) in lines.iter().enumerate() {
            for is_x in [true, false] {
                let mut p = if is_x {
                    PauliOperator::x_on(k, pos)
                } else {
                    PauliOperator::z_on(k, pos)
                };
                p.conjugate_in_place(&local, Direction::Inverse)?;
                updates.push((q, is_x, self.image_of_local(&p, &lines)));
            }
        }
        for (q, is_x, img) in updates {
            if is_x {
                self.x_img[q] = img;
            } else {
                self.z_img[q] = img;
            }
        }
        Ok(())
    }

    fn image_of_local(&self, p: &PauliOperator, lines: &[usize]) -> PauliOperator {
        let n = self.width();
        let mut out = PauliOperator::new(p.phase_exp(), BitString::zeros(n), BitString::zeros(n))
            .expect("matching lengths");
        for i in p.x_bits().ones() {
            out.mul_assign_unchecked(&self.x_img[lines[i]]);
        }
        for i in p.z_bits().ones() {
            out.mul_assign_unchecked(&self.z_img[lines[i]]);
        }
        out
    }

    /// Exact probability of `y` on `lines` for input `|x⟩`.
    pub fn marginal(&self, x: &BitString, lines: &[usize], y: &BitString) -> Result<DyadicRational> {
        let images: Vec<PauliOperator> = lines.iter().map(|&q| self.z_img[q].clone()).collect();
        Ok(basis_marginal(&images, x, y)?.into())
    }
}

/// One shot: the output bits and, for inspection, the intermediate outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub output: BitString,
    pub intermediate: Vec<bool>,
}

struct Walk<'a> {
    frame: HeisenbergFrame,
    x: BitString,
    records: Vec<usize>,
    values: Vec<bool>,
    p: DyadicRational,
    source: &'a mut BitSource,
}

impl Walk<'_> {
    /// Draws the value of `line` given everything recorded so far.
    fn measure(&mut self, line: usize) -> Result<bool> {
        self.records.push(line);
        self.values.push(false);
        let p0 = self.query()?;
        *self.values.last_mut().expect("pushed") = true;
        let p1 = self.query()?;
        let (bit, p) = draw_conditional(self.source, self.p, p0, p1)?;
        *self.values.last_mut().expect("pushed") = bit;
        self.p = p;
        Ok(bit)
    }

    fn query(&self) -> Result<DyadicRational> {
        self.frame
            .marginal(&self.x, &self.records, &BitString::from_bools(&self.values))
    }
}

/// One shot of an adaptive controller on basis input `x`, reading
/// `output_lines` at the end.
///
/// When the controller reports that measured lines are discarded, outcomes
/// are read from the measured lines directly; otherwise each measured line
/// is first copied onto a fresh ancilla with `CX`.
pub fn sample_controller(
    controller: &dyn AdaptiveController,
    x: &BitString,
    output_lines: &[usize],
    seed: u64,
    shot: u64,
) -> Result<Sample> {
    let width = controller.width();
    if x.len() != width {
        return Err(Error::DimensionMismatch {
            expected: width,
            found: x.len(),
        });
    }
    if let Some(&l) = output_lines.iter().find(|&&l| l >= width) {
        return Err(Error::LineOutOfRange { line: l, width });
    }
    let copy_out = !controller.measured_lines_discarded();
    let budget = controller.max_operations();
    let mut source = BitSource::new(seed, shot);
    let mut walk = Walk {
        frame: HeisenbergFrame::new(width),
        x: x.clone(),
        records: Vec::new(),
        values: Vec::new(),
        p: DyadicRational::ONE,
        source: &mut source,
    };
    let mut history = Vec::new();
    let mut used = 0;
    loop {
        let block = controller.next_block(&history)?;
        used += block.gates.len() + block.measure.is_some() as usize;
        if used > budget {
            return Err(Error::ControllerBudget(budget));
        }
        for g in &block.gates {
            if g.lines().any(|l| l >= width) {
                return Err(Error::LineOutOfRange {
                    line: g.lines().max().unwrap_or(0),
                    width,
                });
            }
            walk.frame.apply(g)?;
        }
        let Some(q) = block.measure else { break };
        if q >= width {
            return Err(Error::LineOutOfRange { line: q, width });
        }
        let record = if copy_out {
            let a = walk.frame.add_line();
            walk.x.grow(a + 1);
            walk.frame.apply(&Gate::CX(q, a))?;
            a
        } else {
            q
        };
        history.push(walk.measure(record)?);
    }
    let output = output_lines
        .iter()
        .map(|&l| walk.measure(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sample {
        output: BitString::from_bools(&output),
        intermediate: history,
    })
}

/// Sampling plan for a program, prepared once and shared by all shots.
#[derive(Clone, Debug)]
pub struct Sampler {
    kind: SamplerKind,
}

#[derive(Clone, Debug)]
enum SamplerKind {
    /// Basis input: deferred program walked by the chain rule.
    ChainRule {
        deferred: CircuitProgram,
        controller: ProgramController,
        x: BitString,
    },
    /// Product input, non-adaptive, one output line.
    SingleLine { p1: f64 },
}

impl Sampler {
    /// Refuses classes without an efficient weak engine, naming the theorem.
    pub fn new(c: &CircuitProgram) -> Result<Self> {
        let class = TaskClass::of(c);
        if !class.cell(SimMode::Weak).complexity.is_efficient() {
            return Err(refusal(class, SimMode::Weak));
        }
        if let Some(g) = c.ops().iter().filter_map(|op| op.gate()).find(|g| !g.is_clifford()) {
            return Err(Error::NonClifford(g.to_string()));
        }
        let kind = match c.input() {
            Input::Basis(x) => {
                let deferred = defer_measurements(c)?;
                let mut x = x.clone();
                x.grow(deferred.width());
                SamplerKind::ChainRule {
                    controller: ProgramController::new(&deferred),
                    deferred,
                    x,
                }
            }
            Input::Product(_) => SamplerKind::SingleLine {
                p1: strong_out1_prod(c, c.output_lines()[0], true)?,
            },
        };
        Ok(Sampler { kind })
    }

    pub fn sample(&self, seed: u64, shot: u64) -> Result<Sample> {
        match &self.kind {
            SamplerKind::ChainRule {
                deferred,
                controller,
                x,
            } => sample_controller(controller, x, deferred.output_lines(), seed, shot),
            SamplerKind::SingleLine { p1 } => {
                let mut source = BitSource::new(seed, shot);
                let u = source.bits(53) as f64 * 2f64.powi(-53);
                Ok(Sample {
                    output: BitString::from_bools(&[u < *p1]),
                    intermediate: Vec::new(),
                })
            }
        }
    }

    /// Shots `0..shots`, spread over the available cores.
    pub fn sample_many(&self, seed: u64, shots: u64) -> Result<Vec<Sample>> {
        let threads = thread::available_parallelism().map_or(1, |n| n.get()) as u64;
        let chunk = shots.div_ceil(threads.max(1)).max(1);
        let results: Vec<Result<Vec<Sample>>> = thread::scope(|s| {
            let handles: Vec<_> = (0..shots)
                .step_by(chunk as usize)
                .map(|start| {
                    let end = (start + chunk).min(shots);
                    s.spawn(move || (start..end).map(|i| self.sample(seed, i)).collect())
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sampling thread panicked"))
                .collect()
        });
        let mut out = Vec::with_capacity(shots as usize);
        for r in results {
            out.extend(r?);
        }
        Ok(out)
    }
}

/// One sample of the program's output lines, with input `x` replacing the
/// declared input.
pub fn sample_adaptive_bits(c: &CircuitProgram, x: &BitString, seed: u64) -> Result<BitString> {
    let c = c.with_input(Input::Basis(x.clone()))?;
    Ok(Sampler::new(&c)?.sample(seed, 0)?.output)
}
