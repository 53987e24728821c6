// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use thiserror::Error;

use crate::classify::{Cell, SimMode, TaskClass};
use crate::oracle::MAX_WIDTH;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A request for an engine on a task class that has no efficient classical
/// simulation. Carries the class cell so callers can report the theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub class: TaskClass,
    pub mode: SimMode,
    pub cell: Cell,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} simulation of {} is {}; no efficient engine exists. \
             Use the dense oracle (--force-oracle) for circuits of width at most {}",
            self.mode, self.class, self.cell, MAX_WIDTH
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line} out of range for width {width}")]
    LineOutOfRange { line: usize, width: usize },

    #[error("gate {0} acts twice on the same line")]
    RepeatedLine(String),

    #[error("gate {0} is not a Clifford gate")]
    NonClifford(String),

    #[error("state is not normalized (norm² = {0})")]
    Unnormalized(f64),

    #[error("{0}")]
    Refused(Refusal),

    #[error("circuit is not unitary: {0}")]
    NotUnitary(&'static str),

    #[error("circuit is adaptive: {0}")]
    Adaptive(&'static str),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("width {width} exceeds the dense simulator cap of {cap}")]
    WidthCap { width: usize, cap: usize },

    #[error("outcome tree exceeds {cap} live branches")]
    BranchCap { cap: usize },

    #[error("postselected event has probability {0:e}")]
    ZeroProbabilityEvent(f64),

    #[error("inconsistent marginals: {0}")]
    InconsistentMarginal(String),

    #[error("controller emitted more than its declared {0} operations")]
    ControllerBudget(usize),

    #[error("exact arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("invalid formula: {0}")]
    Formula(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refused(_))
    }
}

impl From<Refusal> for Error {
    fn from(r: Refusal) -> Self {
        Error::Refused(r)
    }
}
