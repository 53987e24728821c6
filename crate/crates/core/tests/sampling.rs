// SPDX-License-Identifier: Apache-2.0

use cliffsim::circuit::{parse_circuit, AdaptiveController, Block};
use cliffsim::generate::random_program;
use cliffsim::oracle::{run_controller_distribution, run_distribution, Distribution};
use cliffsim::weak::{chain_rule_sample, sample_adaptive_bits, sample_controller, Sampler};
use cliffsim::{BitString, CircuitProgram, DyadicRational, Gate, Input, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn empirical(outputs: impl Iterator<Item = BitString>, m: usize) -> Vec<f64> {
    let mut counts = vec![0u64; 1 << m];
    let mut total = 0;
    for y in outputs {
        counts[y.ones().fold(0, |acc, k| acc | 1 << k)] += 1;
        total += 1;
    }
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

fn tv(a: &[f64], b: &Distribution) -> f64 {
    0.5 * a
        .iter()
        .zip(b.probabilities())
        .map(|(x, y)| (x - y).abs())
        .sum::<f64>()
}

#[test]
fn uniform_two_bits_passes_chi_square() {
    let draws = 100_000;
    let mut counts = [0f64; 4];
    for seed in 0..draws {
        let y = chain_rule_sample(|p| Ok(DyadicRational::new(1, p.len() as u32)), 2, seed).unwrap();
        counts[y.ones().fold(0, |a, k| a | 1 << k)] += 1.0;
    }
    let expected = draws as f64 / 4.0;
    let stat: f64 = counts.iter().map(|c| (c - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new(3.0).unwrap().inverse_cdf(0.999);
    assert!(stat < critical, "chi-square {stat} ≥ {critical}");
}

#[test]
fn product_distribution_marginals() {
    // p(0) = 3/4 on each of two independent bits.
    let p = |bits: &[bool]| -> Result<DyadicRational> {
        Ok(bits.iter().fold(DyadicRational::ONE, |acc, &b| {
            let f = if b { 1 } else { 3 };
            DyadicRational::new(acc.numer() * f, acc.exp() + 2)
        }))
    };
    let draws = 100_000;
    let mut ones = [0u32; 2];
    for seed in 0..draws {
        let y = chain_rule_sample(p, 2, seed).unwrap();
        for (k, count) in ones.iter_mut().enumerate() {
            *count += y.get(k) as u32;
        }
    }
    for count in ones {
        let freq = count as f64 / draws as f64;
        assert!((freq - 0.25).abs() < 0.01, "{freq}");
    }
}

#[test]
fn non_dyadic_conditionals_are_supported() {
    // p(1) = 1/3 given a prefix with probability 3/4.
    let p = |bits: &[bool]| -> Result<DyadicRational> {
        Ok(match bits {
            [] => DyadicRational::ONE,
            [false] => DyadicRational::new(3, 2),
            [true] => DyadicRational::new(1, 2),
            [false, false] => DyadicRational::new(1, 1),
            [false, true] => DyadicRational::new(1, 2),
            [true, b] => DyadicRational::new(if *b { 1 } else { 0 }, 2),
            _ => unreachable!(),
        })
    };
    let draws = 60_000;
    let mut hits = 0;
    let mut firsts = 0;
    for seed in 0..draws {
        let y = chain_rule_sample(p, 2, seed).unwrap();
        if !y.get(0) {
            firsts += 1;
            hits += y.get(1) as u32;
        }
    }
    let cond = hits as f64 / firsts as f64;
    assert!((cond - 1.0 / 3.0).abs() < 0.01, "{cond}");
}

#[test]
fn uniform_bit_circuit() {
    let c = parse_circuit("qubits 1\ninput 0\nH 1\nM 1 -> m1\nout 1").unwrap();
    let sampler = Sampler::new(&c).unwrap();
    let shots = sampler.sample_many(9, 100_000).unwrap();
    let ones = shots.iter().filter(|s| s.output.get(0)).count() as f64 / 1e5;
    assert!((ones - 0.5).abs() < 0.01, "{ones}");
}

#[test]
fn sampling_is_reproducible() {
    let c = parse_circuit("qubits 3\nH 1\nH 2\nM 1 -> m1\nCOND m1 : CX 2 3\nout 2 3").unwrap();
    let s = Sampler::new(&c).unwrap();
    let a = s.sample_many(42, 500).unwrap();
    let b = s.sample_many(42, 500).unwrap();
    assert_eq!(a, b);
    let single: Vec<_> = (0..500).map(|i| s.sample(42, i).unwrap()).collect();
    assert_eq!(a, single);
    assert_ne!(a, s.sample_many(43, 500).unwrap());
    assert_eq!(
        sample_adaptive_bits(&c, &BitString::zeros(3), 42).unwrap(),
        a[0].output
    );
}

#[test]
fn toffoli_gadget_is_deterministic_on_basis_inputs() {
    for v in 0..8u64 {
        let x = BitString::from_u64(3, v);
        let c = parse_circuit(&format!("qubits 3\ninput {x}\nM 1 -> m1\nCOND m1 : CX 2 3\nout 1 2 3"))
            .unwrap();
        let (a, b, t) = (x.get(0), x.get(1), x.get(2));
        for seed in 0..20 {
            let y = sample_adaptive_bits(&c, &x, seed).unwrap();
            assert_eq!(y.to_bools(), vec![a, b, t ^ (a & b)]);
        }
    }
}

#[test]
fn random_adaptive_programs_match_oracle() {
    let mut rng = StdRng::seed_from_u64(31);
    for case in 0..6 {
        let n = rng.random_range(2..=5);
        let k = rng.random_range(1..=3);
        let c = random_program(&mut rng, n, 25, k, 0.5).unwrap();
        let exact = run_distribution(&c).unwrap();
        let shots = Sampler::new(&c).unwrap().sample_many(case, 20_000).unwrap();
        let freq = empirical(shots.into_iter().map(|s| s.output), c.output_lines().len());
        assert!(tv(&freq, &exact) < 0.03, "{c}");
    }
}

#[test]
fn intermediate_outcomes_are_reported() {
    let c = parse_circuit("qubits 2\ninput 10\nM 1 -> m1\nX 2\nM 2 -> m2\nout 1").unwrap();
    let s = Sampler::new(&c).unwrap().sample(0, 0).unwrap();
    assert_eq!(s.intermediate, vec![true, true]);
    assert_eq!(s.output.to_bools(), vec![true]);
}

/// Measures line 0 after `H`, then applies `X` to line 1 and re-uses line 0
/// as a control, so measured lines are not discarded.
struct Reuse;

impl AdaptiveController for Reuse {
    fn width(&self) -> usize {
        2
    }

    fn max_operations(&self) -> usize {
        6
    }

    fn next_block(&self, history: &[bool]) -> Result<Block> {
        Ok(match history {
            [] => Block {
                gates: vec![Gate::H(0)],
                measure: Some(0),
            },
            [m] => Block {
                gates: if *m {
                    vec![Gate::H(0), Gate::CX(0, 1)]
                } else {
                    vec![Gate::X(1)]
                },
                measure: None,
            },
            _ => unreachable!(),
        })
    }
}

#[test]
fn controllers_with_reused_lines_match_oracle() {
    let exact =
        run_controller_distribution(&Reuse, &Input::Basis(BitString::zeros(2)), &[0, 1]).unwrap();
    let outputs = (0..40_000).map(|i| {
        sample_controller(&Reuse, &BitString::zeros(2), &[0, 1], 5, i)
            .unwrap()
            .output
    });
    let freq = empirical(outputs, 2);
    assert!(tv(&freq, &exact) < 0.01, "{freq:?} vs {exact:?}");
}

#[test]
fn product_input_weak_single_line() {
    let c = parse_circuit("qubits 2\ninput prod |pi/4> |+>\nH 1\nCX 2 1\nout 1").unwrap();
    let exact = run_distribution(&c).unwrap();
    let shots = Sampler::new(&c).unwrap().sample_many(3, 100_000).unwrap();
    let freq = empirical(shots.into_iter().map(|s| s.output), 1);
    assert!(tv(&freq, &exact) < 0.01);
}

#[test]
fn programs_are_checked_before_sampling() {
    let c: CircuitProgram = parse_circuit("qubits 1\nS 1\nout 1").unwrap();
    assert!(Sampler::new(&c).is_err());
}
