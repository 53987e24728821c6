// SPDX-License-Identifier: Apache-2.0

//! Classical simulation complexity of the sixteen task classes.
//!
//! A task class is fixed by adaptivity, input kind and output count; asking
//! for weak or strong simulation selects one of sixteen cells. Seven cells
//! carry their own result; the other nine follow by monotonicity (subsets
//! of efficient classes are efficient, supersets of hard classes are hard,
//! efficient strong simulation gives efficient weak simulation). Each cell
//! records the number of the theorem it rests on, which is what refusals
//! report to users.

use std::fmt;

use crate::circuit::{CircuitProgram, Input};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adaptivity {
    NonAdaptive,
    Adaptive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputKind {
    Bits,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutputKind {
    One,
    Many,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimMode {
    Weak,
    Strong,
}

impl fmt::Display for SimMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimMode::Weak => "weak",
            SimMode::Strong => "strong",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TaskClass {
    pub adaptivity: Adaptivity,
    pub input: InputKind,
    pub output: OutputKind,
}

impl TaskClass {
    pub const ALL: [TaskClass; 8] = {
        use Adaptivity::*;
        use InputKind::*;
        use OutputKind::*;
        const fn c(adaptivity: Adaptivity, input: InputKind, output: OutputKind) -> TaskClass {
            TaskClass {
                adaptivity,
                input,
                output,
            }
        }
        [
            c(NonAdaptive, Bits, One),
            c(NonAdaptive, Bits, Many),
            c(NonAdaptive, Product, One),
            c(NonAdaptive, Product, Many),
            c(Adaptive, Bits, One),
            c(Adaptive, Bits, Many),
            c(Adaptive, Product, One),
            c(Adaptive, Product, Many),
        ]
    };

    /// Class of a program from its declared form: any conditional gate makes
    /// it adaptive; basis vs. product follows the `input` declaration.
    pub fn of(c: &CircuitProgram) -> Self {
        TaskClass {
            adaptivity: if c.is_nonadaptive() {
                Adaptivity::NonAdaptive
            } else {
                Adaptivity::Adaptive
            },
            input: match c.input() {
                Input::Basis(_) => InputKind::Bits,
                Input::Product(_) => InputKind::Product,
            },
            output: if c.output_lines().len() == 1 {
                OutputKind::One
            } else {
                OutputKind::Many
            },
        }
    }

    pub fn cell(&self, mode: SimMode) -> Cell {
        cell(*self, mode)
    }
}

impl fmt::Display for TaskClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.adaptivity {
            Adaptivity::NonAdaptive => "NONADAPT",
            Adaptivity::Adaptive => "ADAPT",
        };
        let i = match self.input {
            InputKind::Bits => "IN(BITS)",
            InputKind::Product => "IN(PROD)",
        };
        let o = match self.output {
            OutputKind::One => "OUT(1)",
            OutputKind::Many => "OUT(MANY)",
        };
        write!(f, "{a}, {i}, {o}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complexity {
    /// Efficient classical simulation exists.
    ClassicalPoly,
    /// Efficient simulation would solve #SAT.
    SharpPHard,
    /// Efficient simulation would simulate universal quantum computation.
    QcHard,
    /// Efficient simulation would collapse the polynomial hierarchy.
    PhCollapse,
}

impl Complexity {
    pub fn is_efficient(&self) -> bool {
        matches!(self, Complexity::ClassicalPoly)
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::ClassicalPoly => "Cl-P",
            Complexity::SharpPHard => "#P-hard",
            Complexity::QcHard => "QC-hard",
            Complexity::PhCollapse => "not Cl-P unless PH collapses",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub complexity: Complexity,
    /// Theorem establishing this cell, directly or by monotonicity.
    pub theorem: u8,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (Theorem {})", self.complexity, self.theorem)
    }
}

pub fn cell(class: TaskClass, mode: SimMode) -> Cell {
    use Adaptivity::*;
    use Complexity::*;
    use InputKind::*;
    use OutputKind::*;
    let (complexity, theorem) = match (class.adaptivity, class.input, class.output, mode) {
        (NonAdaptive, Bits, _, _) => (ClassicalPoly, 4),
        (NonAdaptive, Product, One, _) => (ClassicalPoly, 1),
        (NonAdaptive, Product, Many, SimMode::Strong) => (SharpPHard, 6),
        (NonAdaptive, Product, Many, SimMode::Weak) => (PhCollapse, 7),
        (Adaptive, _, _, SimMode::Strong) => (SharpPHard, 2),
        (Adaptive, Bits, _, SimMode::Weak) => (ClassicalPoly, 5),
        (Adaptive, Product, _, SimMode::Weak) => (QcHard, 3),
    };
    Cell {
        complexity,
        theorem,
    }
}

/// Engines able to run a task of this class under the given mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Single output line via Pauli conjugation and product expectation.
    StrongSingleLine,
    /// Exact dyadic marginals via the GF(2) kernel.
    StrongBasisMarginal,
    /// Chain-rule sampling over exact marginals.
    WeakChainRule,
    /// Sampling from the single-line probability.
    WeakSingleLine,
    /// Dense state vector; any class at small width.
    DenseOracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::StrongSingleLine => "strong-single-line",
            Engine::StrongBasisMarginal => "strong-basis-marginal",
            Engine::WeakChainRule => "weak-chain-rule",
            Engine::WeakSingleLine => "weak-single-line",
            Engine::DenseOracle => "oracle",
        })
    }
}

/// Efficient engines for `class` (Clifford gates assumed) plus the oracle.
pub fn engines(class: TaskClass, mode: SimMode) -> Vec<Engine> {
    use Adaptivity::*;
    let mut out = Vec::new();
    match (mode, class.adaptivity, class.input, class.output) {
        (SimMode::Strong, NonAdaptive, InputKind::Bits, o) => {
            out.push(Engine::StrongBasisMarginal);
            if o == OutputKind::One {
                out.push(Engine::StrongSingleLine);
            }
        }
        (SimMode::Strong, NonAdaptive, InputKind::Product, OutputKind::One) => {
            out.push(Engine::StrongSingleLine)
        }
        (SimMode::Weak, _, InputKind::Bits, _) => out.push(Engine::WeakChainRule),
        (SimMode::Weak, NonAdaptive, InputKind::Product, OutputKind::One) => {
            out.push(Engine::WeakSingleLine)
        }
        _ => {}
    }
    out.push(Engine::DenseOracle);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_theorems_each_own_a_cell() {
        let mut seen = std::collections::BTreeSet::new();
        for class in TaskClass::ALL {
            for mode in [SimMode::Weak, SimMode::Strong] {
                seen.insert(class.cell(mode).theorem);
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn efficient_strong_implies_efficient_weak() {
        for class in TaskClass::ALL {
            if class.cell(SimMode::Strong).complexity.is_efficient() {
                assert!(class.cell(SimMode::Weak).complexity.is_efficient(), "{class}");
            }
        }
    }

    #[test]
    fn efficient_cells_have_an_engine() {
        for class in TaskClass::ALL {
            for mode in [SimMode::Weak, SimMode::Strong] {
                let efficient = class.cell(mode).complexity.is_efficient();
                let fast = engines(class, mode).len() > 1;
                assert_eq!(efficient, fast, "{class} {mode}");
            }
        }
    }
}
