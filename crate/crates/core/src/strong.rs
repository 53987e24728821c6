// SPDX-License-Identifier: Apache-2.0

//! Strong simulation: output probabilities and marginals.
//!
//! Two engines, one per efficient strong cell:
//!
//! - [`strong_out1_prod`] handles any product-state input but one output
//!   line. The Heisenberg-picture image `C†·Z_j·C` is a single Pauli
//!   operator, and its product-state expectation is `p₀ − p₁`.
//! - [`strong_bits_marginal`] handles any set of output lines for a basis
//!   input and returns the exact dyadic marginal. Writing
//!   `|0⟩⟨0|^{⊗m} = 2^{-m} Σ_t Z(t)`, only the `t` whose image has no `X`
//!   part contribute. Those `t` form the kernel of the GF(2) matrix whose
//!   columns are the `X` parts of the images of `Z_1, …, Z_m`, and on that
//!   kernel the sign of the image is a linear function. The marginal is
//!   therefore `2^{l-m}` if the sign is `+1` on a kernel basis (`l` vectors)
//!   and `0` otherwise.
//!
//! The marginal engine conjugates its `m` generators through the gate list
//! in bit-sliced batches of 64, so a sweep costs `O(N·⌈m/64⌉)` word
//! operations plus `O(n·m)` to unpack the images.

use crate::bits::BitString;
use crate::circuit::{standardize_for_marginal, unitarize, CircuitProgram, Gate, Input};
use crate::classify::{Adaptivity, InputKind, OutputKind, SimMode, TaskClass};
use crate::dyadic::DyadicProbability;
use crate::error::{Error, Refusal, Result};
use crate::gf2::BitMatrix;
use crate::pauli::{conjugate_batch, conjugate_through_circuit, Direction, PauliOperator};

/// Slack allowed before clamping a floating-point probability into `[0, 1]`.
pub const CLAMP_SLACK: f64 = 1e-12;

pub(crate) fn refusal(class: TaskClass, mode: SimMode) -> Error {
    Error::Refused(Refusal {
        class,
        mode,
        cell: class.cell(mode),
    })
}

fn require_clifford(c: &CircuitProgram) -> Result<()> {
    match c.ops().iter().filter_map(|op| op.gate()).find(|g| !g.is_clifford()) {
        Some(g) => Err(Error::NonClifford(g.to_string())),
        None => Ok(()),
    }
}

fn output_kind(m: usize) -> OutputKind {
    if m == 1 {
        OutputKind::One
    } else {
        OutputKind::Many
    }
}

/// `Prob(output_line = y)` for a non-adaptive Clifford circuit on a basis or
/// product input.
pub fn strong_out1_prod(c: &CircuitProgram, output_line: usize, y: bool) -> Result<f64> {
    if !c.is_nonadaptive() {
        let mut class = TaskClass::of(c);
        class.output = OutputKind::One;
        return Err(refusal(class, SimMode::Strong));
    }
    require_clifford(c)?;
    if output_line >= c.width() {
        return Err(Error::LineOutOfRange {
            line: output_line,
            width: c.width(),
        });
    }
    let u = unitarize(c)?;
    let gates = u.gates()?;
    let observable = PauliOperator::z_on(u.width(), output_line);
    let image = conjugate_through_circuit(&gates, &observable, Direction::Inverse)?;
    let states = u.input().to_product();
    let bias = image.expectation_product_state(&states)?;
    if bias.im.abs() > CLAMP_SLACK {
        return Err(Error::Internal(format!(
            "expectation of a Hermitian observable has imaginary part {:e}",
            bias.im
        )));
    }
    let p = if y {
        (1.0 - bias.re) / 2.0
    } else {
        (1.0 + bias.re) / 2.0
    };
    clamp_probability(p)
}

pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&p) {
        return Err(Error::Internal(format!("probability {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Exact marginal `p(y on out_lines)` for a non-adaptive Clifford circuit on
/// the basis input `x`.
///
/// The circuit is first standardized (all-zero input, all-zero query on
/// lines `0..m`, measurements turned into ancilla copies), then each
/// `Z_i`, `i < m`, is conjugated through the inverse circuit.
pub fn strong_bits_marginal(
    c: &CircuitProgram,
    x: &BitString,
    out_lines: &[usize],
    y: &BitString,
) -> Result<DyadicProbability> {
    let class = TaskClass {
        adaptivity: if c.is_nonadaptive() {
            Adaptivity::NonAdaptive
        } else {
            Adaptivity::Adaptive
        },
        input: InputKind::Bits,
        output: output_kind(out_lines.len()),
    };
    if class.adaptivity == Adaptivity::Adaptive {
        return Err(refusal(class, SimMode::Strong));
    }
    if let Input::Product(_) = c.input() {
        if out_lines.len() == 1 {
            return Err(Error::InvalidCircuit(
                "product-state input: use the single-line engine".into(),
            ));
        }
        let class = TaskClass {
            input: InputKind::Product,
            ..class
        };
        return Err(refusal(class, SimMode::Strong));
    }
    require_clifford(c)?;
    if out_lines.is_empty() {
        return Ok(DyadicProbability::ONE);
    }
    let std = standardize_for_marginal(c, x, y, out_lines)?;
    let gates = std.gates()?;
    let images = generator_images(&gates, std.width(), out_lines.len())?;
    let width = std.width();
    basis_marginal(
        &images,
        &BitString::zeros(width),
        &BitString::zeros(out_lines.len()),
    )
}

/// [`strong_bits_marginal`] with the circuit's own basis input.
pub fn marginal(c: &CircuitProgram, out_lines: &[usize], y: &BitString) -> Result<DyadicProbability> {
    match c.input() {
        Input::Basis(x) => strong_bits_marginal(c, x, out_lines, y),
        Input::Product(_) => strong_bits_marginal(c, &BitString::zeros(c.width()), out_lines, y),
    }
}

/// `C†·Z_i·C` for `i in 0..m`.
fn generator_images(gates: &[Gate], width: usize, m: usize) -> Result<Vec<PauliOperator>> {
    let generators: Vec<PauliOperator> = (0..m).map(|i| PauliOperator::z_on(width, i)).collect();
    conjugate_batch(gates, &generators, Direction::Inverse)
}

/// Probability of `y` when measuring the observables `Z_{j_1}, …, Z_{j_m}`
/// on `C|x⟩`, given their Heisenberg images `Γ_i = C†·Z_{j_i}·C`.
///
/// `p = 2^{-m} Σ_t (-1)^{y·t} ⟨x|Γ(t)|x⟩` with `Γ(t) = Π Γ_i^{t_i}`. Terms
/// vanish unless `Γ(t)` has no `X` part; on that kernel the term is
/// `(-1)^{u(t)}` with `u` linear, so the sum is `2^l` or `0`.
pub fn basis_marginal(
    images: &[PauliOperator],
    x: &BitString,
    y: &BitString,
) -> Result<DyadicProbability> {
    let m = images.len();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: y.len(),
        });
    }
    let width = x.len();
    let columns: Vec<BitString> = images
        .iter()
        .map(|g| {
            if g.num_qubits() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    found: g.num_qubits(),
                });
            }
            Ok(g.x_bits().clone())
        })
        .collect::<Result<_>>()?;
    let kernel = BitMatrix::from_columns(width, &columns)?.kernel_basis();
    for t in &kernel {
        if sign_bit(images, t, x)? ^ y.dot_words(t) {
            return Ok(DyadicProbability::ZERO);
        }
    }
    Ok(DyadicProbability::pow2((m - kernel.len()) as u32))
}

/// `u(t)` for a kernel vector: `⟨x|Γ(t)|x⟩ = (-1)^{u(t)}`.
pub(crate) fn sign_bit(images: &[PauliOperator], t: &BitString, x: &BitString) -> Result<bool> {
    let mut product = PauliOperator::identity(x.len());
    for i in t.ones() {
        product.mul_assign_unchecked(&images[i]);
    }
    if !product.x_bits().is_zero() {
        return Err(Error::Internal("kernel vector with nonzero X part".into()));
    }
    let r = product.phase_exp();
    if r % 2 == 1 {
        return Err(Error::Internal(format!(
            "Hermitian image with phase i^{r}, expected ±1"
        )));
    }
    Ok((r == 2) ^ product.z_bits().dot_words(x))
}
