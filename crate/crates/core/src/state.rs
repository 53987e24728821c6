// SPDX-License-Identifier: Apache-2.0

//! Single-qubit input states for product-state inputs.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized single-qubit state `amp0|0⟩ + amp1|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitState {
    amp0: Complex64,
    amp1: Complex64,
}

impl SingleQubitState {
    pub const ZERO: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const PLUS: Self = Self::raw(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0);
    pub const MINUS: Self = Self::raw(FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0);

    const fn raw(re0: f64, im0: f64, re1: f64, im1: f64) -> Self {
        SingleQubitState {
            amp0: Complex64::new(re0, im0),
            amp1: Complex64::new(re1, im1),
        }
    }

    /// `(|0⟩ + e^{iπ/4}|1⟩)/√2`, the resource state of the S-gate gadget.
    pub fn pi_over_4() -> Self {
        Self {
            amp0: Complex64::new(FRAC_1_SQRT_2, 0.0),
            amp1: Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4),
        }
    }

    /// Rejects states whose squared norm is off by more than 1e-12.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm = amp0.norm_sqr() + amp1.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Unnormalized(norm));
        }
        Ok(Self { amp0, amp1 })
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.amp0.norm_sqr() + self.amp1.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Unnormalized(norm));
        }
        Ok(())
    }

    pub fn basis(bit: bool) -> Self {
        if bit {
            Self::ONE
        } else {
            Self::ZERO
        }
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        Self {
            amp0: Complex64::new((theta / 2.0).cos(), 0.0),
            amp1: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp0, self.amp1]
    }

    /// Short name if this is exactly one of the named constants.
    pub fn name(&self) -> Option<&'static str> {
        [
            (Self::ZERO, "|0>"),
            (Self::ONE, "|1>"),
            (Self::PLUS, "|+>"),
            (Self::MINUS, "|->"),
            (Self::pi_over_4(), "|pi/4>"),
        ]
        .into_iter()
        .find(|(s, _)| s == self)
        .map(|(_, n)| n)
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "|0>" => Self::ZERO,
            "|1>" => Self::ONE,
            "|+>" => Self::PLUS,
            "|->" => Self::MINUS,
            "|pi/4>" => Self::pi_over_4(),
            _ => return None,
        })
    }
}

/// Named states print by name; others as `re,im;re,im` with round-trip
/// precision.
impl fmt::Display for SingleQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(
                f,
                "{:?},{:?};{:?},{:?}",
                self.amp0.re, self.amp0.im, self.amp1.re, self.amp1.im
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constants_are_normalized() {
        for s in [
            SingleQubitState::ZERO,
            SingleQubitState::ONE,
            SingleQubitState::PLUS,
            SingleQubitState::MINUS,
            SingleQubitState::pi_over_4(),
        ] {
            assert!(SingleQubitState::new(s.amp0, s.amp1).is_ok());
            assert_eq!(SingleQubitState::from_name(s.name().unwrap()), Some(s));
        }
    }

    #[test]
    fn rejects_unnormalized() {
        let r = SingleQubitState::new(Complex64::new(1.0, 0.0), Complex64::new(1e-3, 0.0));
        assert!(matches!(r, Err(Error::Unnormalized(_))));
    }
}
