// SPDX-License-Identifier: Apache-2.0

//! Dense bit-packed matrices over GF(2).
//!
//! Rows are stored as word-packed [`BitString`]s. Elimination XORs whole
//! rows word by word and pivots on the first nonzero column, scanning rows
//! top to bottom, so results are deterministic.

use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitString>,
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    rows: Vec<BitString>,
    pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitString::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitString::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitString>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(num_rows: usize, columns: &[BitString]) -> Result<Self> {
        let mut m = Self::zeros(num_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != num_rows {
                return Err(Error::DimensionMismatch {
                    expected: num_rows,
                    found: col.len(),
                });
            }
            for i in col.ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitString {
        &self.rows[r]
    }

    /// `A·t` over GF(2).
    pub fn matvec(&self, t: &BitString) -> Result<BitString> {
        if t.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: t.len(),
            });
        }
        let mut out = BitString::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot_words(t) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let (head, rest) = rows.split_at_mut(next);
            let (pivot_row, tail) = rest.split_first_mut().expect("pivot row");
            for r in head.iter_mut().chain(tail.iter_mut()) {
                if r.get(col) {
                    r.xor_words(pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{t : A·t = 0}`, one vector per free column in increasing
    /// column order.
    pub fn kernel_basis(&self) -> Vec<BitString> {
        let Echelon { rows, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = BitString::unit(self.cols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
