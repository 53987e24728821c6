// SPDX-License-Identifier: Apache-2.0

//! Model counting as a Clifford output probability.

use std::fmt;

use super::toffoli_block;
use crate::bits::BitString;
use crate::circuit::{CircuitProgram, Gate, Input, Operation, OutcomeId};
use crate::error::{Error, Result};

/// Largest formula accepted by [`count_sat_bruteforce`].
pub const MAX_BRUTEFORCE_VARS: usize = 24;

/// A CNF formula with at most three literals per clause. Literal `v` is
/// variable `v` (1-indexed), `-v` its negation. No clauses means true; an
/// empty clause is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            if clause.len() > 3 {
                return Err(Error::Formula(format!(
                    "clause {clause:?} has more than 3 literals"
                )));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::Formula(format!(
                        "literal {lit} outside 1..={num_vars}"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Value under `assignment`, bit `v - 1` holding variable `v`.
    pub fn eval(&self, assignment: &BitString) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment.get(lit.unsigned_abs() as usize - 1) == (lit > 0))
        })
    }
}

/// DIMACS form.
impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(f, "{lit} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, clauses terminated by `0` (possibly spanning lines).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate `p` line"));
            }
            let words: Vec<&str> = rest.split_whitespace().collect();
            let ["cnf", v, c] = words[..] else {
                return Err(Error::parse(lineno, "expected `p cnf <vars> <clauses>`"));
            };
            let parse = |w: &str| {
                w.parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("invalid count `{w}`")))
            };
            header = Some((parse(v)?, parse(c)?));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(lineno, "clause before `p cnf` header"));
        }
        for w in line.split_whitespace() {
            let lit: i32 = w
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid literal `{w}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::parse(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(Error::parse(
            0,
            format!("header declares {num_clauses} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(num_vars, clauses)
}

/// `#f` by evaluating every assignment in counting order.
pub fn count_sat_bruteforce(f: &CnfFormula) -> Result<u64> {
    if f.num_vars > MAX_BRUTEFORCE_VARS {
        return Err(Error::Formula(format!(
            "{} variables exceeds the enumeration limit {MAX_BRUTEFORCE_VARS}",
            f.num_vars
        )));
    }
    Ok((0..1u64 << f.num_vars)
        .filter(|&v| f.eval(&BitString::from_u64(f.num_vars, v)))
        .count() as u64)
}

struct Builder {
    width: usize,
    ops: Vec<Operation>,
    next_id: u32,
}

impl Builder {
    fn fresh_line(&mut self) -> usize {
        self.width += 1;
        self.width - 1
    }

    fn gate(&mut self, g: Gate) {
        self.ops.push(g.into());
    }

    fn toffoli(&mut self, a: usize, b: usize, t: usize) -> Result<()> {
        let id = OutcomeId(self.next_id);
        self.next_id += 1;
        self.ops.extend(toffoli_block(a, b, t, id)?);
        Ok(())
    }

    /// Line holding the OR of `clause`.
    fn clause(&mut self, clause: &[i32]) -> Result<usize> {
        let mut lits: Vec<i32> = clause.to_vec();
        lits.sort_unstable();
        lits.dedup();
        let out = self.fresh_line();
        if lits.iter().any(|l| lits.contains(&-l)) {
            self.gate(Gate::X(out));
            return Ok(out);
        }
        let var = |l: i32| l.unsigned_abs() as usize - 1;
        match lits[..] {
            [] => {}
            [l] => {
                self.gate(Gate::CX(var(l), out));
                if l < 0 {
                    self.gate(Gate::X(out));
                }
            }
            _ => {
                // ¬(¬l₁ ∧ ¬l₂ ∧ ¬l₃): flip positive literals so each line
                // holds ¬lᵢ, AND them, negate, flip back.
                let flips: Vec<usize> = lits.iter().filter(|&&l| l > 0).map(|&l| var(l)).collect();
                for &v in &flips {
                    self.gate(Gate::X(v));
                }
                if let [a, b, c] = lits[..] {
                    let tmp = self.fresh_line();
                    self.toffoli(var(a), var(b), tmp)?;
                    self.toffoli(tmp, var(c), out)?;
                } else {
                    self.toffoli(var(lits[0]), var(lits[1]), out)?;
                }
                self.gate(Gate::X(out));
                for &v in &flips {
                    self.gate(Gate::X(v));
                }
            }
        }
        Ok(out)
    }
}

/// An adaptive Clifford circuit whose single output line reads 1 with
/// probability `#f / 2^n`.
///
/// Variables are lines `0..n`, each put in `|+⟩` and measured. Every clause
/// is computed into its own line, and the clause lines are combined by a
/// balanced tree of Toffoli blocks. Work lines are left dirty.
pub fn sharp_sat_circuit(f: &CnfFormula) -> Result<CircuitProgram> {
    let n = f.num_vars;
    let mut b = Builder {
        width: n,
        ops: Vec::new(),
        next_id: 1,
    };
    for v in 0..n {
        b.gate(Gate::H(v));
        b.ops.push(Operation::Measure {
            line: v,
            outcome: OutcomeId(b.next_id),
        });
        b.next_id += 1;
    }
    let mut level = f
        .clauses
        .iter()
        .map(|c| b.clause(c))
        .collect::<Result<Vec<_>>>()?;
    if level.is_empty() {
        let out = b.fresh_line();
        b.gate(Gate::X(out));
        level.push(out);
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            match *pair {
                [l, r] => {
                    let t = b.fresh_line();
                    b.toffoli(l, r, t)?;
                    next.push(t);
                }
                [l] => next.push(l),
                _ => unreachable!("chunks of two"),
            }
        }
        level = next;
    }
    CircuitProgram::new(
        b.width,
        b.ops,
        Input::Basis(BitString::zeros(b.width)),
        vec![level[0]],
    )
}
