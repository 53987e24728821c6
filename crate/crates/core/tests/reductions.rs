// SPDX-License-Identifier: Apache-2.0

use cliffsim::circuit::parse_circuit;
use cliffsim::generate::{random_clifford_gate, random_cnf, random_product_input, random_state};
use cliffsim::oracle::{run_branches, run_distribution, run_postselected, StateVector};
use cliffsim::reductions::{
    count_sat_bruteforce, s_gadget_rewrite, sharp_sat_circuit, toffoli_block, CnfFormula, GadgetMode,
};
use cliffsim::circuit::ProgramController;
use cliffsim::{BitString, CircuitProgram, Gate, Input, Operation, OutcomeId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn toffoli_truth_table() {
    for v in 0..8u64 {
        let x = BitString::from_u64(3, v);
        let ops = toffoli_block(0, 1, 2, OutcomeId(1)).unwrap();
        let c = CircuitProgram::new(3, ops, Input::Basis(x.clone()), vec![0, 1, 2]).unwrap();
        let d = run_distribution(&c).unwrap();
        let mut y = x.clone();
        y.set(2, x.get(2) ^ (x.get(0) & x.get(1)));
        assert_eq!(d.prob(&y), 1.0, "input {x}");
    }
    assert!(toffoli_block(0, 0, 1, OutcomeId(1)).is_err());
}

/// Second count: walk assignments in Gray-code order, flipping one variable
/// at a time.
fn count_gray(f: &CnfFormula) -> u64 {
    let n = f.num_vars();
    let mut x = BitString::zeros(n);
    let mut count = f.eval(&x) as u64;
    for i in 1..1u64 << n {
        x.flip(i.trailing_zeros() as usize);
        count += f.eval(&x) as u64;
    }
    count
}

#[test]
fn counts_agree_across_enumeration_orders() {
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..20 {
        let f = random_cnf(&mut rng, 10, 30);
        assert_eq!(count_sat_bruteforce(&f).unwrap(), count_gray(&f));
    }
}

fn prob_one(f: &CnfFormula) -> f64 {
    let c = sharp_sat_circuit(f).unwrap();
    assert!(c.is_clifford_only());
    run_distribution(&c).unwrap().probabilities()[1]
}

#[test]
fn sharp_sat_examples() {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    assert!((prob_one(&f) - 0.5).abs() < 1e-12);
    let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
    assert!(prob_one(&f).abs() < 1e-12);
    let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
    assert_eq!(count_sat_bruteforce(&f).unwrap(), 7);
    assert!((prob_one(&f) - 7.0 / 8.0).abs() < 1e-12);
    let f = CnfFormula::new(2, vec![]).unwrap();
    assert!((prob_one(&f) - 1.0).abs() < 1e-12);
}

#[test]
fn sharp_sat_random_formulas() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..40 {
        let n = rng.random_range(1..=4);
        let f = random_cnf(&mut rng, n, 4);
        let expect = count_sat_bruteforce(&f).unwrap() as f64 / (1u64 << n) as f64;
        assert!((prob_one(&f) - expect).abs() < 1e-12, "{f}");
    }
}

#[test]
fn s_gadget_branches_give_s_or_its_inverse() {
    // CX(data → ancilla) then measuring the ancilla leaves S|ψ⟩ on 0 and
    // S⁻¹|ψ⟩ (up to phase) on 1; the adaptive rewrite ends in S|ψ⟩ on both.
    let mut rng = StdRng::seed_from_u64(43);
    let c = parse_circuit("qubits 1\nS 1\nout 1").unwrap();
    for _ in 0..50 {
        let psi = random_state(&mut rng);
        let mut target = StateVector::product(&[psi]).unwrap();
        target.apply_gate(&Gate::S(0)).unwrap();
        let mut inverse = StateVector::product(&[psi]).unwrap();
        for _ in 0..7 {
            inverse.apply_gate(&Gate::S(0)).unwrap();
        }
        for mode in [GadgetMode::Postselect, GadgetMode::Adaptive] {
            let r = s_gadget_rewrite(&c.with_input(Input::Product(vec![psi])).unwrap(), mode).unwrap();
            let prog = &r.rewritten;
            let branches = run_branches(&ProgramController::new(prog), prog.input()).unwrap();
            assert_eq!(branches.len(), 2);
            for b in branches {
                let data = reduce_to_line0(&b.state, b.history[0]);
                let expect = if mode == GadgetMode::Postselect && b.history[0] {
                    &inverse
                } else {
                    &target
                };
                assert!(
                    (data.fidelity(expect) - 1.0).abs() < 1e-9,
                    "{mode:?} branch {:?}",
                    b.history
                );
            }
        }
    }
}

/// The data line of a two-line state whose ancilla (line 1) is in `|a⟩`.
fn reduce_to_line0(v: &StateVector, a: bool) -> StateVector {
    let amps = v.amplitudes();
    let base = if a { 2 } else { 0 };
    StateVector::from_amplitudes(vec![amps[base], amps[base + 1]]).unwrap()
}

fn random_s_circuit(rng: &mut StdRng, n: usize, k: usize) -> CircuitProgram {
    let mut ops: Vec<Operation> = (0..12)
        .map(|_| random_clifford_gate(rng, n).into())
        .collect();
    for _ in 0..k {
        let at = rng.random_range(0..=ops.len());
        ops.insert(at, Gate::S(rng.random_range(0..n)).into());
    }
    let outputs = cliffsim::generate::random_lines(rng, n);
    CircuitProgram::new(n, ops, random_product_input(rng, n), outputs).unwrap()
}

#[test]
fn adaptive_gadget_preserves_distributions() {
    let mut rng = StdRng::seed_from_u64(44);
    for _ in 0..100 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(0..=3);
        let c = random_s_circuit(&mut rng, n, k);
        let r = s_gadget_rewrite(&c, GadgetMode::Adaptive).unwrap();
        assert_eq!(r.ancilla_lines.len(), k);
        assert!(r.rewritten.is_clifford_only());
        let a = run_distribution(&c).unwrap();
        let b = run_distribution(&r.rewritten).unwrap();
        assert!(a.max_deviation(&b) < 1e-9, "{c}");
    }
}

#[test]
fn postselection_identity() {
    let mut rng = StdRng::seed_from_u64(45);
    for _ in 0..60 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=3);
        let c = random_s_circuit(&mut rng, n, k);
        let r = s_gadget_rewrite(&c, GadgetMode::Postselect).unwrap();
        let d = run_distribution(&c).unwrap();
        let line = c.output_lines()[0];
        let post: Vec<(usize, bool)> = r.ancilla_lines.iter().map(|&a| (a, false)).collect();
        let q = run_postselected(&r.rewritten, &post, (line, true)).unwrap();
        let p = d.marginal(&[line]).unwrap().probabilities()[1];
        assert!((p - q).abs() < 1e-9, "{c}");
    }
}
