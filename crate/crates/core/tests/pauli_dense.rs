// SPDX-License-Identifier: Apache-2.0

use cliffsim::generate::{random_clifford_gate, random_state};
use cliffsim::oracle::{apply_pauli_dense, StateVector};
use cliffsim::pauli::{conjugate_batch, conjugate_through_circuit};
use cliffsim::{BitString, Direction, Gate, PauliOperator};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-12;

fn random_pauli(rng: &mut StdRng, n: usize) -> PauliOperator {
    let bits = |rng: &mut StdRng| {
        BitString::from_bools(&(0..n).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>())
    };
    let (x, z) = (bits(rng), bits(rng));
    PauliOperator::new(rng.random_range(0..4), x, z).unwrap()
}

fn random_vector(rng: &mut StdRng, n: usize) -> StateVector {
    let states: Vec<_> = (0..n).map(|_| random_state(rng)).collect();
    let mut v = StateVector::product(&states).unwrap();
    // Entangle so that product structure cannot hide errors.
    for _ in 0..3 * n {
        v.apply_gate(&random_clifford_gate(rng, n)).unwrap();
    }
    v
}

fn adjoint(g: &Gate) -> Vec<Gate> {
    match *g {
        Gate::T(q) => vec![Gate::T(q); 3],
        Gate::S(q) => vec![Gate::S(q); 7],
        _ => vec![*g],
    }
}

fn apply_all(v: &mut StateVector, gates: &[Gate]) {
    for g in gates {
        v.apply_gate(g).unwrap();
    }
}

fn assert_close(a: &StateVector, b: &StateVector) {
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() < TOL, "{x} vs {y}");
    }
}

#[test]
fn conjugation_matches_dense_action() {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..400 {
        let n = rng.random_range(1..=4);
        let g = random_clifford_gate(&mut rng, n);
        let p = random_pauli(&mut rng, n);
        let v = random_vector(&mut rng, n);

        // g P g† v
        let mut lhs = v.clone();
        apply_all(&mut lhs, &adjoint(&g));
        let mut lhs = apply_pauli_dense(&p, &lhs).unwrap();
        lhs.apply_gate(&g).unwrap();
        let fwd = p.conjugate_by_gate(&g).unwrap();
        assert_close(&lhs, &apply_pauli_dense(&fwd, &v).unwrap());

        // g† P g v
        let mut rhs = v.clone();
        rhs.apply_gate(&g).unwrap();
        let mut rhs = apply_pauli_dense(&p, &rhs).unwrap();
        apply_all(&mut rhs, &adjoint(&g));
        let mut inv = p.clone();
        inv.conjugate_in_place(&g, Direction::Inverse).unwrap();
        assert_close(&rhs, &apply_pauli_dense(&inv, &v).unwrap());
    }
}

#[test]
fn multiplication_and_inverse_match_dense() {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..300 {
        let n = rng.random_range(1..=4);
        let (p, q) = (random_pauli(&mut rng, n), random_pauli(&mut rng, n));
        let v = random_vector(&mut rng, n);
        let pq = p.multiply(&q).unwrap();
        let seq = apply_pauli_dense(&p, &apply_pauli_dense(&q, &v).unwrap()).unwrap();
        assert_close(&apply_pauli_dense(&pq, &v).unwrap(), &seq);
        let back = apply_pauli_dense(&p.inverse(), &apply_pauli_dense(&p, &v).unwrap()).unwrap();
        assert_close(&back, &v);
        let twice = apply_pauli_dense(&p, &apply_pauli_dense(&p, &v).unwrap()).unwrap();
        let is_identity = twice
            .amplitudes()
            .iter()
            .zip(v.amplitudes())
            .all(|(a, b)| (a - b).norm() < TOL);
        assert_eq!(p.squares_to_identity(), is_identity, "{p}");
    }
}

#[test]
fn product_state_expectations_match_dense() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..300 {
        let n = rng.random_range(1..=5);
        let p = random_pauli(&mut rng, n);
        let states: Vec<_> = (0..n).map(|_| random_state(&mut rng)).collect();
        let v = StateVector::product(&states).unwrap();
        let dense: Complex64 = v.inner(&apply_pauli_dense(&p, &v).unwrap());
        let fast = p.expectation_product_state(&states).unwrap();
        assert!((dense - fast).norm() < TOL, "{p}: {dense} vs {fast}");
    }
}

#[test]
fn conjugation_is_a_group_action() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let gates: Vec<Gate> = (0..20).map(|_| random_clifford_gate(&mut rng, n)).collect();
        let p = random_pauli(&mut rng, n);
        let there = conjugate_through_circuit(&gates, &p, Direction::Forward).unwrap();
        let back = conjugate_through_circuit(&gates, &there, Direction::Inverse).unwrap();
        assert_eq!(back, p);
        let (a, b) = gates.split_at(7);
        let stepwise = conjugate_through_circuit(
            b,
            &conjugate_through_circuit(a, &p, Direction::Forward).unwrap(),
            Direction::Forward,
        )
        .unwrap();
        assert_eq!(stepwise, there);
        // Conjugation preserves products.
        let q = random_pauli(&mut rng, n);
        let pq = conjugate_through_circuit(&gates, &p.multiply(&q).unwrap(), Direction::Forward)
            .unwrap();
        let qc = conjugate_through_circuit(&gates, &q, Direction::Forward).unwrap();
        assert_eq!(pq, there.multiply(&qc).unwrap());
    }
}

#[test]
fn derived_gates_match_their_decompositions() {
    // Each Clifford gate expressed over {H, T, CZ}; conjugation ignores global
    // phase, so the images must agree exactly.
    let decompositions: Vec<(Gate, Vec<Gate>)> = vec![
        (Gate::Z(0), vec![Gate::T(0), Gate::T(0)]),
        (Gate::X(0), vec![Gate::H(0), Gate::T(0), Gate::T(0), Gate::H(0)]),
        (
            Gate::Y(0),
            vec![Gate::T(0), Gate::T(0), Gate::H(0), Gate::T(0), Gate::T(0), Gate::H(0)],
        ),
        (Gate::CX(0, 1), vec![Gate::H(1), Gate::CZ(0, 1), Gate::H(1)]),
        (
            Gate::Swap(0, 1),
            vec![
                Gate::H(1),
                Gate::CZ(0, 1),
                Gate::H(1),
                Gate::H(0),
                Gate::CZ(1, 0),
                Gate::H(0),
                Gate::H(1),
                Gate::CZ(0, 1),
                Gate::H(1),
            ],
        ),
    ];
    for (gate, parts) in &decompositions {
        for label in ["XI", "ZI", "YI", "IX", "IZ", "XZ", "-iYY"] {
            let p: PauliOperator = label.parse().unwrap();
            let direct = p.conjugate_by_gate(gate).unwrap();
            let composed = conjugate_through_circuit(parts, &p, Direction::Forward).unwrap();
            assert_eq!(direct, composed, "{gate} on {label}");
        }
    }
    // Same check against the dense matrices, for the unitary itself up to a
    // global phase.
    let mut rng = StdRng::seed_from_u64(5);
    for (gate, parts) in &decompositions {
        let v = random_vector(&mut rng, 2);
        let mut a = v.clone();
        a.apply_gate(gate).unwrap();
        let mut b = v.clone();
        apply_all(&mut b, parts);
        assert!((a.fidelity(&b) - 1.0).abs() < TOL, "{gate}");
    }
}

#[test]
fn s_is_rejected_by_conjugation() {
    let p: PauliOperator = "X".parse().unwrap();
    assert!(p.conjugate_by_gate(&Gate::S(0)).is_err());
}

#[test]
fn batch_conjugation_matches_one_at_a_time() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..40 {
        let n = rng.random_range(1..=9);
        let count = rng.random_range(1..=150);
        let gates: Vec<Gate> = (0..60).map(|_| random_clifford_gate(&mut rng, n)).collect();
        let ops: Vec<PauliOperator> = (0..count).map(|_| random_pauli(&mut rng, n)).collect();
        for direction in [Direction::Forward, Direction::Inverse] {
            let batch = conjugate_batch(&gates, &ops, direction).unwrap();
            for (p, b) in ops.iter().zip(&batch) {
                assert_eq!(&conjugate_through_circuit(&gates, p, direction).unwrap(), b);
            }
        }
    }
    assert!(conjugate_batch(&[Gate::S(0)], &["X".parse().unwrap()], Direction::Forward).is_err());
}
