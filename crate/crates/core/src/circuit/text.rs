// SPDX-License-Identifier: Apache-2.0

//! Line-oriented text format.
//!
//! ```text
//! # comment
//! qubits 3
//! input 110                  # or: input prod |0> |pi/4> 0.6,0;0.8,0
//! H 1
//! M 1 -> m1
//! COND m1^1 : CX 2 3         # fires when m1 ⊕ 1 = 1
//! out 3
//! ```
//!
//! Lines are 1-indexed. Named states are `|0>`, `|1>`, `|+>`, `|->` and
//! `|pi/4>`; any other state is written `re,im;re,im`. A missing `input`
//! line means all zeros. The format only expresses affine conditions and a
//! fixed number of measurements; general controllers are library-only.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use super::{AffineCondition, CircuitProgram, Gate, Input, Operation, OutcomeId};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::state::SingleQubitState;

struct Parser {
    width: Option<usize>,
    input: Option<Input>,
    ops: Vec<Operation>,
    outputs: Option<Vec<usize>>,
    bound: HashSet<OutcomeId>,
}

pub fn parse_circuit(text: &str) -> Result<CircuitProgram> {
    let mut p = Parser {
        width: None,
        input: None,
        ops: Vec::new(),
        outputs: None,
        bound: HashSet::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        p.statement(lineno, line)?;
    }
    let width = p.width.ok_or_else(|| Error::parse(0, "missing `qubits` line"))?;
    let input = p
        .input
        .unwrap_or_else(|| Input::Basis(BitString::zeros(width)));
    let outputs = p.outputs.ok_or_else(|| Error::parse(0, "missing `out` line"))?;
    CircuitProgram::new(width, p.ops, input, outputs)
}

impl Parser {
    fn width(&self, lineno: usize) -> Result<usize> {
        self.width
            .ok_or_else(|| Error::parse(lineno, "`qubits` must come first"))
    }

    fn statement(&mut self, lineno: usize, line: &str) -> Result<()> {
        let mut words = line.split_whitespace();
        let head = words.next().expect("nonempty line");
        match head {
            "qubits" => {
                if self.width.is_some() {
                    return Err(Error::parse(lineno, "duplicate `qubits` line"));
                }
                let n = parse_count(lineno, words.next())?;
                if n == 0 || words.next().is_some() {
                    return Err(Error::parse(lineno, "expected `qubits <n>` with n ≥ 1"));
                }
                self.width = Some(n);
            }
            "input" => {
                let n = self.width(lineno)?;
                if self.input.is_some() {
                    return Err(Error::parse(lineno, "duplicate `input` line"));
                }
                let input = parse_input(lineno, words.collect())?;
                if input.width() != n {
                    return Err(Error::parse(
                        lineno,
                        format!("input has {} lines, circuit has {n}", input.width()),
                    ));
                }
                self.input = Some(input);
            }
            "out" => {
                let n = self.width(lineno)?;
                if self.outputs.is_some() {
                    return Err(Error::parse(lineno, "duplicate `out` line"));
                }
                let mut lines = Vec::new();
                for w in words {
                    let l = parse_line(lineno, w, n)?;
                    if lines.contains(&l) {
                        return Err(Error::parse(lineno, format!("output line {w} repeated")));
                    }
                    lines.push(l);
                }
                if lines.is_empty() {
                    return Err(Error::parse(lineno, "`out` needs at least one line"));
                }
                self.outputs = Some(lines);
            }
            "M" => {
                let n = self.width(lineno)?;
                let rest: Vec<&str> = words.collect();
                let [l, "->", id] = rest[..] else {
                    return Err(Error::parse(lineno, "expected `M <line> -> m<k>`"));
                };
                let line = parse_line(lineno, l, n)?;
                let outcome = parse_outcome(lineno, id)?;
                if !self.bound.insert(outcome) {
                    return Err(Error::parse(lineno, format!("outcome {id} bound twice")));
                }
                self.ops.push(Operation::Measure { line, outcome });
            }
            "COND" => {
                let n = self.width(lineno)?;
                let body = line["COND".len()..].trim();
                let (expr, gate) = body
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, "expected `COND <expr> : <gate>`"))?;
                let condition = self.parse_condition(lineno, expr.trim())?;
                let gate = parse_gate(lineno, gate.trim(), n)?;
                self.ops.push(Operation::Conditional { gate, condition });
            }
            _ => {
                let n = self.width(lineno)?;
                self.ops.push(parse_gate(lineno, line, n)?.into());
            }
        }
        Ok(())
    }

    fn parse_condition(&self, lineno: usize, expr: &str) -> Result<AffineCondition> {
        let mut constant = false;
        let mut ids = Vec::new();
        for term in expr.split('^').map(str::trim) {
            match term {
                "0" => {}
                "1" => constant = !constant,
                _ => {
                    let id = parse_outcome(lineno, term)?;
                    if !self.bound.contains(&id) {
                        return Err(Error::parse(
                            lineno,
                            format!("condition references unknown outcome {term}"),
                        ));
                    }
                    ids.push(id);
                }
            }
        }
        Ok(AffineCondition::new(ids, constant))
    }
}

fn parse_count(lineno: usize, w: Option<&str>) -> Result<usize> {
    w.and_then(|w| w.parse().ok())
        .ok_or_else(|| Error::parse(lineno, "expected a nonnegative integer"))
}

fn parse_line(lineno: usize, w: &str, width: usize) -> Result<usize> {
    let l: usize = w
        .parse()
        .map_err(|_| Error::parse(lineno, format!("invalid line index `{w}`")))?;
    if l == 0 || l > width {
        return Err(Error::parse(
            lineno,
            format!("line {l} outside 1..={width}"),
        ));
    }
    Ok(l - 1)
}

fn parse_outcome(lineno: usize, w: &str) -> Result<OutcomeId> {
    w.strip_prefix('m')
        .and_then(|k| k.parse().ok())
        .map(OutcomeId)
        .ok_or_else(|| Error::parse(lineno, format!("invalid outcome id `{w}`")))
}

fn parse_gate(lineno: usize, text: &str, width: usize) -> Result<Gate> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let line = |i: usize| -> Result<usize> {
        let w = words
            .get(i)
            .ok_or_else(|| Error::parse(lineno, format!("`{text}`: missing line index")))?;
        parse_line(lineno, w, width)
    };
    let arity = match words.first().copied() {
        Some("H" | "T" | "S" | "X" | "Y" | "Z") => 1,
        Some("CZ" | "CX" | "SWAP") => 2,
        _ => return Err(Error::parse(lineno, format!("unknown statement `{text}`"))),
    };
    if words.len() != arity + 1 {
        return Err(Error::parse(
            lineno,
            format!("`{}` takes {arity} line(s)", words[0]),
        ));
    }
    let gate = match words[0] {
        "H" => Gate::H(line(1)?),
        "T" => Gate::T(line(1)?),
        "S" => Gate::S(line(1)?),
        "X" => Gate::X(line(1)?),
        "Y" => Gate::Y(line(1)?),
        "Z" => Gate::Z(line(1)?),
        "CZ" => Gate::CZ(line(1)?, line(2)?),
        "CX" => Gate::CX(line(1)?, line(2)?),
        _ => Gate::Swap(line(1)?, line(2)?),
    };
    gate.validate(width)
        .map_err(|e| Error::parse(lineno, e.to_string()))?;
    Ok(gate)
}

fn parse_input(lineno: usize, words: Vec<&str>) -> Result<Input> {
    match words[..] {
        ["prod", ref states @ ..] => {
            if states.is_empty() {
                return Err(Error::parse(lineno, "`input prod` needs one state per line"));
            }
            states
                .iter()
                .map(|s| parse_state(lineno, s))
                .collect::<Result<Vec<_>>>()
                .map(Input::Product)
        }
        [bits] => bits
            .parse::<BitString>()
            .map(Input::Basis)
            .map_err(|_| Error::parse(lineno, format!("invalid bitstring `{bits}`"))),
        _ => Err(Error::parse(lineno, "expected `input <bits>` or `input prod ...`")),
    }
}

fn parse_state(lineno: usize, s: &str) -> Result<SingleQubitState> {
    if let Some(st) = SingleQubitState::from_name(s) {
        return Ok(st);
    }
    let bad = || Error::parse(lineno, format!("invalid state `{s}`"));
    let (a, b) = s.split_once(';').ok_or_else(bad)?;
    let complex = |t: &str| -> Result<Complex64> {
        let (re, im) = t.split_once(',').ok_or_else(bad)?;
        Ok(Complex64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ))
    };
    SingleQubitState::new(complex(a)?, complex(b)?)
        .map_err(|e| Error::parse(lineno, format!("state `{s}`: {e}")))
}

pub fn render_circuit(c: &CircuitProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", c.width());
    match c.input() {
        Input::Basis(b) => {
            let _ = writeln!(out, "input {b}");
        }
        Input::Product(states) => {
            out.push_str("input prod");
            for s in states {
                let _ = write!(out, " {s}");
            }
            out.push('\n');
        }
    }
    for op in c.ops() {
        let _ = match op {
            Operation::Gate(g) => writeln!(out, "{g}"),
            Operation::Measure { line, outcome } => writeln!(out, "M {} -> {outcome}", line + 1),
            Operation::Conditional { gate, condition } => {
                writeln!(out, "COND {condition} : {gate}")
            }
        };
    }
    out.push_str("out");
    for l in c.output_lines() {
        let _ = write!(out, " {}", l + 1);
    }
    out.push('\n');
    out
}
