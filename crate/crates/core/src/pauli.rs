// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic on n-qubit Pauli operators through their labels.
//!
//! Every Pauli operator has a unique decomposition `i^r · X(a) · Z(b)` with
//! `r ∈ {0,1,2,3}` and `a, b ∈ {0,1}^n`, where `X(a) = X^{a_1} ⊗ … ⊗ X^{a_n}`
//! and likewise for `Z`. [`PauliOperator`] stores that triple. The phase is
//! kept as an exponent of `i` mod 4; this is one concrete encoding of the
//! four-element phase set `{±1, ±i}`, chosen because it makes products and
//! conjugation updates integer additions.
//!
//! Conjugation by a Clifford gate touches only the phase and the entries on
//! the gate's lines.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bits::BitString;
use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::state::SingleQubitState;

/// Which side of the operator the circuit `C` lands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `C · P · C†`
    Forward,
    /// `C† · P · C`
    Inverse,
}

/// The label `(r, a, b)` of the operator `i^r · X(a) · Z(b)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    phase: u8,
    x: BitString,
    z: BitString,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            phase: 0,
            x: BitString::zeros(n),
            z: BitString::zeros(n),
        }
    }

    pub fn new(phase_exp: u8, x: BitString, z: BitString) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliOperator {
            phase: phase_exp & 3,
            x,
            z,
        })
    }

    pub fn x_on(n: usize, line: usize) -> Self {
        let mut p = Self::identity(n);
        p.x.set(line, true);
        p
    }

    pub fn z_on(n: usize, line: usize) -> Self {
        let mut p = Self::identity(n);
        p.z.set(line, true);
        p
    }

    /// `Y = i·X·Z` on one line.
    pub fn y_on(n: usize, line: usize) -> Self {
        let mut p = Self::identity(n);
        p.phase = 1;
        p.x.set(line, true);
        p.z.set(line, true);
        p
    }

    /// `Z(t)` extended by identity: `t` marks lines `lines[i]` where `t_i = 1`.
    pub fn z_product(n: usize, lines: &[usize], t: &BitString) -> Self {
        let mut p = Self::identity(n);
        for i in t.ones() {
            p.z.flip(lines[i]);
        }
        p
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &BitString {
        &self.x
    }

    pub fn z_bits(&self) -> &BitString {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x.is_zero() && self.z.is_zero()
    }

    /// Whether `P² = I`, i.e. the operator is Hermitian.
    ///
    /// `P² = i^{2r} (-1)^{a·b} I`.
    pub fn squares_to_identity(&self) -> bool {
        (2 * self.phase as u32 + 2 * self.x.dot_words(&self.z) as u32) % 4 == 0
    }

    /// Extends with identity on new lines up to `n`.
    pub fn grow(&mut self, n: usize) {
        self.x.grow(n);
        self.z.grow(n);
    }

    fn check_n(&self, other: usize) -> Result<()> {
        if self.num_qubits() != other {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: other,
            });
        }
        Ok(())
    }

    /// The label of `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.mul_assign(other)?;
        Ok(out)
    }

    /// `self ← self · other`.
    ///
    /// `X(a)Z(b) · X(a')Z(b') = (-1)^{b·a'} X(a+a') Z(b+b')`.
    pub fn mul_assign(&mut self, other: &Self) -> Result<()> {
        self.check_n(other.num_qubits())?;
        self.mul_assign_unchecked(other);
        Ok(())
    }

    #[inline]
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        let sign = self.z.dot_words(&other.x) as u8;
        self.phase = (self.phase + other.phase + 2 * sign) & 3;
        self.x.xor_words(&other.x);
        self.z.xor_words(&other.z);
    }

    /// The inverse operator, equal to the adjoint.
    pub fn inverse(&self) -> Self {
        // (i^r X(a)Z(b))^{-1} = i^{-r} Z(b)X(a) = i^{-r} (-1)^{a·b} X(a)Z(b)
        let sign = self.x.dot_words(&self.z) as u8;
        PauliOperator {
            phase: (4 - self.phase + 2 * sign) & 3,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    /// Action on a basis state: `P|x⟩ = i^r (-1)^{b·x} |x + a⟩`.
    ///
    /// Returns `(r, b·x, x + a)`.
    pub fn apply_basis(&self, x: &BitString) -> Result<(u8, bool, BitString)> {
        self.check_n(x.len())?;
        let sign = self.z.dot_words(x);
        let mut y = x.clone();
        y.xor_words(&self.x);
        Ok((self.phase, sign, y))
    }

    /// `self ← g·self·g†` (forward) or `g†·self·g` (inverse).
    pub fn conjugate_in_place(&mut self, gate: &Gate, direction: Direction) -> Result<()> {
        let n = self.num_qubits();
        for line in gate.lines() {
            if line >= n {
                return Err(Error::LineOutOfRange { line, width: n });
            }
        }
        let x = &mut self.x;
        let z = &mut self.z;
        let mut phase = self.phase;
        match *gate {
            Gate::H(q) => {
                let (a, b) = (x.get(q), z.get(q));
                x.set(q, b);
                z.set(q, a);
                if a && b {
                    phase += 2;
                }
            }
            Gate::T(q) => {
                // diag(1,i) X diag(1,-i) = iXZ; the adjoint gives -iXZ.
                if x.get(q) {
                    z.flip(q);
                    phase += match direction {
                        Direction::Forward => 1,
                        Direction::Inverse => 3,
                    };
                }
            }
            Gate::X(q) => {
                if z.get(q) {
                    phase += 2;
                }
            }
            Gate::Y(q) => {
                if x.get(q) != z.get(q) {
                    phase += 2;
                }
            }
            Gate::Z(q) => {
                if x.get(q) {
                    phase += 2;
                }
            }
            Gate::CZ(c, t) => {
                let (ac, at) = (x.get(c), x.get(t));
                if ac {
                    z.flip(t);
                }
                if at {
                    z.flip(c);
                }
                if ac && at {
                    phase += 2;
                }
            }
            Gate::CX(c, t) => {
                if x.get(c) {
                    x.flip(t);
                }
                if z.get(t) {
                    z.flip(c);
                }
            }
            Gate::Swap(p, q) => {
                let (ap, aq) = (x.get(p), x.get(q));
                x.set(p, aq);
                x.set(q, ap);
                let (bp, bq) = (z.get(p), z.get(q));
                z.set(p, bq);
                z.set(q, bp);
            }
            Gate::S(_) => return Err(Error::NonClifford(gate.to_string())),
        }
        self.phase = phase & 3;
        Ok(())
    }

    /// The label of `g·P·g†`.
    pub fn conjugate_by_gate(&self, gate: &Gate) -> Result<Self> {
        let mut out = self.clone();
        out.conjugate_in_place(gate, Direction::Forward)?;
        Ok(out)
    }

    /// Expectation `⟨α|P|α⟩` for the product state `|α_1⟩…|α_n⟩`.
    pub fn expectation_product_state(&self, states: &[SingleQubitState]) -> Result<Complex64> {
        self.check_n(states.len())?;
        let mut acc = phase_value(self.phase);
        for (q, s) in states.iter().enumerate() {
            let (a, b) = (self.x.get(q), self.z.get(q));
            if !a && !b {
                continue;
            }
            s.check_normalized()?;
            let [s0, s1] = s.amplitudes();
            let z1 = if b { -s1 } else { s1 };
            let (w0, w1) = if a { (z1, s0) } else { (s0, z1) };
            acc *= s0.conj() * w0 + s1.conj() * w1;
        }
        Ok(acc)
    }
}

/// `C·P·C†` or `C†·P·C` for a unitary Clifford gate list `C = g_N ⋯ g_1`.
///
/// Inverse direction walks the gates last to first, conjugating by each
/// adjoint.
pub fn conjugate_through_circuit(
    gates: &[Gate],
    p: &PauliOperator,
    direction: Direction,
) -> Result<PauliOperator> {
    let mut out = p.clone();
    match direction {
        Direction::Forward => {
            for g in gates {
                out.conjugate_in_place(g, Direction::Forward)?;
            }
        }
        Direction::Inverse => {
            for g in gates.iter().rev() {
                out.conjugate_in_place(g, Direction::Inverse)?;
            }
        }
    }
    Ok(out)
}

/// Conjugates many operators through the same gate list at once.
///
/// Operators are processed 64 at a time in a transposed layout: one word per
/// line holds that line's `X` (or `Z`) bit for every operator in the batch,
/// and the phase exponent is split into two bit planes. Each gate is then a
/// handful of word operations regardless of the batch size.
pub fn conjugate_batch(
    gates: &[Gate],
    ops: &[PauliOperator],
    direction: Direction,
) -> Result<Vec<PauliOperator>> {
    let Some(first) = ops.first() else {
        return Ok(Vec::new());
    };
    let n = first.num_qubits();
    for p in ops {
        p.check_n(n)?;
    }
    for g in gates {
        if let Gate::S(_) = g {
            return Err(Error::NonClifford(g.to_string()));
        }
        for line in g.lines() {
            if line >= n {
                return Err(Error::LineOutOfRange { line, width: n });
            }
        }
    }
    let mut out = Vec::with_capacity(ops.len());
    for chunk in ops.chunks(64) {
        let mut slab = Slab::load(chunk, n);
        match direction {
            Direction::Forward => gates.iter().for_each(|g| slab.apply(g, false)),
            Direction::Inverse => gates.iter().rev().for_each(|g| slab.apply(g, true)),
        }
        slab.store(chunk.len(), &mut out);
    }
    Ok(out)
}

struct Slab {
    x: Vec<u64>,
    z: Vec<u64>,
    r0: u64,
    r1: u64,
}

impl Slab {
    fn load(chunk: &[PauliOperator], n: usize) -> Self {
        let mut slab = Slab {
            x: vec![0; n],
            z: vec![0; n],
            r0: 0,
            r1: 0,
        };
        for (j, p) in chunk.iter().enumerate() {
            for q in p.x.ones() {
                slab.x[q] |= 1 << j;
            }
            for q in p.z.ones() {
                slab.z[q] |= 1 << j;
            }
            slab.r0 |= ((p.phase & 1) as u64) << j;
            slab.r1 |= ((p.phase >> 1 & 1) as u64) << j;
        }
        slab
    }

    fn store(&self, count: usize, out: &mut Vec<PauliOperator>) {
        let n = self.x.len();
        for j in 0..count {
            let mut p = PauliOperator::identity(n);
            for q in 0..n {
                if self.x[q] >> j & 1 == 1 {
                    p.x.set(q, true);
                }
                if self.z[q] >> j & 1 == 1 {
                    p.z.set(q, true);
                }
            }
            p.phase = ((self.r0 >> j & 1) | (self.r1 >> j & 1) << 1) as u8;
            out.push(p);
        }
    }

    /// Adds 1 (or 3 when `minus`) to the phase of operators in `mask`.
    #[inline]
    fn add_quarter(&mut self, mask: u64, minus: bool) {
        let carry = if minus { !self.r0 & mask } else { self.r0 & mask };
        self.r0 ^= mask;
        self.r1 ^= carry;
    }

    #[inline]
    fn apply(&mut self, gate: &Gate, inverse: bool) {
        match *gate {
            Gate::H(q) => {
                self.r1 ^= self.x[q] & self.z[q];
                std::mem::swap(&mut self.x[q], &mut self.z[q]);
            }
            Gate::T(q) => {
                let a = self.x[q];
                self.z[q] ^= a;
                self.add_quarter(a, inverse);
            }
            Gate::X(q) => self.r1 ^= self.z[q],
            Gate::Y(q) => self.r1 ^= self.x[q] ^ self.z[q],
            Gate::Z(q) => self.r1 ^= self.x[q],
            Gate::CZ(c, t) => {
                let (ac, at) = (self.x[c], self.x[t]);
                self.z[t] ^= ac;
                self.z[c] ^= at;
                self.r1 ^= ac & at;
            }
            Gate::CX(c, t) => {
                self.x[t] ^= self.x[c];
                self.z[c] ^= self.z[t];
            }
            Gate::Swap(p, q) => {
                self.x.swap(p, q);
                self.z.swap(p, q);
            }
            Gate::S(_) => unreachable!("rejected before the sweep"),
        }
    }
}

/// `i^r` as a complex number.
pub fn phase_value(r: u8) -> Complex64 {
    match r & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Tensor-letter form, e.g. `-iXYZI`; the phase prefix is one of
/// `+`, `-`, `+i`, `-i`.
impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // i^r Π X^a Z^b with XZ = -iY  ⇒  letter phase is r - #Y.
        let ys = (0..self.num_qubits())
            .filter(|&q| self.x.get(q) && self.z.get(q))
            .count();
        let r = (self.phase as usize + 4 - ys % 4) % 4;
        f.write_str(["+", "+i", "-", "-i"][r])?;
        for q in 0..self.num_qubits() {
            let c = match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, letters) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let n = letters.chars().count();
        let mut p = PauliOperator::identity(n);
        let mut ys = 0;
        for (q, c) in letters.chars().enumerate() {
            match c {
                'I' => {}
                'X' => p.x.set(q, true),
                'Z' => p.z.set(q, true),
                'Y' => {
                    p.x.set(q, true);
                    p.z.set(q, true);
                    ys += 1;
                }
                _ => return Err(Error::parse(0, format!("invalid Pauli letter '{c}'"))),
            }
        }
        p.phase = ((r + ys) % 4) as u8;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_x_strings() {
        let prod = p("XIXI").multiply(&p("IXXI")).unwrap();
        assert_eq!(prod, p("XXII"));
        assert_eq!(prod.phase_exp(), 0);
    }

    #[test]
    fn xz_squared_is_minus_identity() {
        let xz = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(xz.phase_exp(), 0);
        assert!(xz.x_bits().get(0) && xz.z_bits().get(0));
        let sq = xz.multiply(&xz).unwrap();
        assert_eq!(sq.phase_exp(), 2);
        assert!(sq.x_bits().is_zero() && sq.z_bits().is_zero());
        assert!(!xz.squares_to_identity());
    }

    #[test]
    fn apply_basis_examples() {
        let (r, sign, y) = p("ZZ").apply_basis(&"11".parse().unwrap()).unwrap();
        assert_eq!((r, sign), (0, false));
        assert_eq!(y.to_string(), "11");
        let (r, sign, y) = p("XI").apply_basis(&"00".parse().unwrap()).unwrap();
        assert_eq!((r, sign), (0, false));
        assert_eq!(y.to_string(), "10");
    }

    #[test]
    fn single_gate_conjugations() {
        assert_eq!(p("X").conjugate_by_gate(&Gate::H(0)).unwrap(), p("Z"));
        let y = p("X").conjugate_by_gate(&Gate::T(0)).unwrap();
        assert_eq!(y, p("Y"));
        assert_eq!(y.phase_exp(), 1);
        assert_eq!(p("XI").conjugate_by_gate(&Gate::CZ(0, 1)).unwrap(), p("XZ"));
    }

    #[test]
    fn non_clifford_and_range_errors() {
        assert!(matches!(
            p("X").conjugate_by_gate(&Gate::S(0)),
            Err(Error::NonClifford(_))
        ));
        assert!(matches!(
            p("X").conjugate_by_gate(&Gate::H(3)),
            Err(Error::LineOutOfRange { line: 3, width: 1 })
        ));
    }

    #[test]
    fn circuit_conjugation_examples() {
        let z = p("Z");
        assert_eq!(conjugate_through_circuit(&[], &z, Direction::Inverse).unwrap(), z);
        assert_eq!(
            conjugate_through_circuit(&[Gate::H(0)], &z, Direction::Inverse).unwrap(),
            p("X")
        );
    }

    #[test]
    fn expectation_examples() {
        let zero = [SingleQubitState::ZERO];
        assert_eq!(p("Z").expectation_product_state(&zero).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(p("Y").expectation_product_state(&zero).unwrap(), Complex64::new(0.0, 0.0));
        assert!(matches!(
            p("ZZ").expectation_product_state(&zero),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn display_round_trip() {
        for s in ["+XYZI", "-iYY", "+iZ", "-X"] {
            assert_eq!(p(s).to_string(), s);
        }
    }
}
