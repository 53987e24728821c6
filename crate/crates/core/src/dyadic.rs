// SPDX-License-Identifier: Apache-2.0

//! Exact dyadic probabilities.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Exactly `0` or `2^{-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicProbability {
    neg_log2: Option<u32>,
}

impl DyadicProbability {
    pub const ZERO: Self = DyadicProbability { neg_log2: None };
    pub const ONE: Self = DyadicProbability { neg_log2: Some(0) };

    /// `2^{-k}`.
    pub fn pow2(k: u32) -> Self {
        DyadicProbability { neg_log2: Some(k) }
    }

    pub fn is_zero(&self) -> bool {
        self.neg_log2.is_none()
    }

    /// `k` for a value `2^{-k}`; `None` for zero.
    pub fn neg_log2(&self) -> Option<u32> {
        self.neg_log2
    }

    pub fn to_f64(&self) -> f64 {
        match self.neg_log2 {
            None => 0.0,
            Some(k) => 2f64.powi(-(k.min(i32::MAX as u32) as i32)),
        }
    }

    /// Exact decimal expansion for `k ≤ 64`, `2^-k` beyond.
    pub fn to_decimal_string(&self) -> String {
        match self.neg_log2 {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(k) if k <= 64 => {
                // 2^{-k} = 5^k / 10^k: k fractional digits of 5^k.
                let mut digits: Vec<u8> = vec![1];
                for _ in 0..k {
                    let mut carry = 0;
                    for d in digits.iter_mut() {
                        let v = *d * 5 + carry;
                        *d = v % 10;
                        carry = v / 10;
                    }
                    if carry > 0 {
                        digits.push(carry);
                    }
                }
                let mut s = String::from("0.");
                s.extend(std::iter::repeat_n('0', k as usize - digits.len()));
                s.extend(digits.iter().rev().map(|d| char::from(b'0' + d)));
                s
            }
            Some(k) => format!("2^-{k}"),
        }
    }
}

/// `0`, `1`, or `2^-k`.
impl fmt::Display for DyadicProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.neg_log2 {
            None => f.write_str("0"),
            Some(0) => f.write_str("1"),
            Some(k) => write!(f, "2^-{k}"),
        }
    }
}

/// Exact sum of dyadic probabilities, kept as binary-carried counts of
/// powers of two.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DyadicSum {
    counts: BTreeMap<u32, u64>,
}

impl DyadicSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: DyadicProbability) {
        let Some(mut k) = p.neg_log2() else { return };
        loop {
            let c = self.counts.entry(k).or_insert(0);
            *c += 1;
            if *c < 2 || k == 0 {
                break;
            }
            *c -= 2;
            if *c == 0 {
                self.counts.remove(&k);
            }
            k -= 1;
        }
    }

    pub fn is_one(&self) -> bool {
        self.counts.len() == 1 && self.counts.get(&0) == Some(&1)
    }

    pub fn to_f64(&self) -> f64 {
        self.counts
            .iter()
            .map(|(&k, &c)| c as f64 * DyadicProbability::pow2(k).to_f64())
            .sum()
    }
}

impl FromIterator<DyadicProbability> for DyadicSum {
    fn from_iter<I: IntoIterator<Item = DyadicProbability>>(iter: I) -> Self {
        let mut s = DyadicSum::new();
        for p in iter {
            s.add(p);
        }
        s
    }
}

/// `numer / 2^exp` with `numer` odd, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numer: u128,
    exp: u32,
}

impl DyadicRational {
    pub const ZERO: Self = DyadicRational { numer: 0, exp: 0 };
    pub const ONE: Self = DyadicRational { numer: 1, exp: 0 };

    pub fn new(numer: u128, exp: u32) -> Self {
        if numer == 0 {
            return Self::ZERO;
        }
        let tz = numer.trailing_zeros().min(exp);
        DyadicRational {
            numer: numer >> tz,
            exp: exp - tz,
        }
    }

    pub fn numer(&self) -> u128 {
        self.numer
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer as f64 * 2f64.powi(-(self.exp as i32))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        let exp = self.exp.max(other.exp);
        let lift = |r: &Self| -> Result<u128> {
            let shift = exp - r.exp;
            if shift >= 128 || r.numer.leading_zeros() < shift {
                return Err(Error::Overflow("dyadic sum exceeds 128-bit numerator"));
            }
            Ok(r.numer << shift)
        };
        let sum = lift(self)?
            .checked_add(lift(other)?)
            .ok_or(Error::Overflow("dyadic sum exceeds 128-bit numerator"))?;
        Ok(Self::new(sum, exp))
    }
}

impl From<DyadicProbability> for DyadicRational {
    fn from(p: DyadicProbability) -> Self {
        match p.neg_log2() {
            None => Self::ZERO,
            Some(k) => DyadicRational { numer: 1, exp: k },
        }
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numer, self.exp) {
            (0, _) => f.write_str("0"),
            (n, 0) => write!(f, "{n}"),
            (n, e) => write!(f, "{n}/2^{e}"),
        }
    }
}
