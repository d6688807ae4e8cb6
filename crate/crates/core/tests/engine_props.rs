mod common;

use common::{random_qubit_gate, Gen};
use duosim::circuit::GateSpec;
use duosim::measurement::{expectations, probabilities, Observable};
use duosim::numeric::{StateVector, C64};
use duosim::qubit::{controlled_unitary, embed_gate, standard_gate, QubitGate, QubitRegister};
use duosim::qumode::{
    beamsplitter, prepare_squeezed_vacuum, rotation, squeezer, QumodeRegister,
};
use proptest::prelude::*;

fn random_state(g: &mut Gen, dim: usize) -> StateVector {
    let amps = (0..dim).map(|_| C64::new(g.range(-1.0, 1.0), g.range(-1.0, 1.0))).collect();
    StateVector::new(amps).normalized().unwrap()
}

proptest! {
    #[test]
    fn parameterized_gates_are_unitary(theta in -50.0..50.0f64) {
        for name in ["RX", "P"] {
            let g = standard_gate(name, &[theta]).unwrap();
            prop_assert!(g.matrix().unitarity_defect() < 1e-10);
            let c = controlled_unitary(g.matrix()).unwrap();
            prop_assert!(c.unitarity_defect() < 1e-10);
        }
    }

    #[test]
    fn rotations_compose(a in -10.0..10.0f64, b in -10.0..10.0f64, d in 2usize..24) {
        let ab = rotation(a, d).unwrap().matrix().matmul(&rotation(b, d).unwrap().matrix()).unwrap();
        prop_assert!(ab.max_abs_diff(&rotation(a + b, d).unwrap().matrix()) < 1e-12);
    }

    /// Inputs with total photon number ≤ d − 2 never reach the truncation
    /// edge, so the generator conserves total number there.
    #[test]
    fn beamsplitter_conserves_photons(seed in any::<u64>(), theta in -4.0..4.0f64, phi in -4.0..4.0f64, d in 3usize..9) {
        let mut g = Gen::new(seed);
        let mut amps = vec![C64::new(0.0, 0.0); d * d];
        for a in 0..d {
            for b in 0..d {
                if a + b <= d - 2 {
                    amps[a * d + b] = C64::new(g.range(-1.0, 1.0), g.range(-1.0, 1.0));
                }
            }
        }
        let reg = QumodeRegister::from_state(2, d, StateVector::new(amps).normalized().unwrap()).unwrap();
        let n = Observable::number(d).unwrap();
        let before: f64 = expectations(reg.state(), &n).unwrap().iter().sum();
        let out = reg.apply(&beamsplitter(theta, phi, d).unwrap(), &[0, 1]).unwrap();
        let after: f64 = expectations(out.state(), &n).unwrap().iter().sum();
        prop_assert!((before - after).abs() < 1e-10, "{before} vs {after}");
    }
}

#[test]
fn cnot_named_and_controlled_x_are_bit_identical() {
    let via_controlled = controlled_unitary(QubitGate::pauli_x().matrix()).unwrap();
    assert_eq!(QubitGate::cnot().matrix(), &via_controlled);
}

#[test]
fn apply_preserves_norm_over_long_sequences() {
    let mut g = Gen::new(1000);
    for wires in [1, 3, 6, 10] {
        let mut reg = QubitRegister::new(wires).unwrap();
        for _ in 0..1000 {
            let ins = random_qubit_gate(&mut g, wires, |g| g.range(-7.0, 7.0));
            let u = ins.gate.qubit_matrix().unwrap().unwrap();
            reg = reg.apply_matrix(&u, &ins.targets).unwrap();
        }
        assert!((reg.state().norm() - 1.0).abs() < 1e-12, "{wires} qubits: {}", reg.state().norm());
    }
}

#[test]
fn apply_matches_dense_embedding() {
    let mut g = Gen::new(77);
    for _ in 0..60 {
        let wires = 1 + g.below(6);
        let mut reg = QubitRegister::from_state(wires, random_state(&mut g, 1 << wires)).unwrap();
        for _ in 0..15 {
            let ins = random_qubit_gate(&mut g, wires, |g| g.range(-7.0, 7.0));
            let gate = match ins.gate {
                GateSpec::Cp(theta) => QubitGate::controlled(QubitGate::phase(theta).matrix()).unwrap(),
                ref g => standard_gate(g.mnemonic(), &g.params()).unwrap(),
            };
            let dense = embed_gate(&gate, &ins.targets, wires).unwrap();
            let oracle = dense.matvec(reg.state().amplitudes()).unwrap();
            reg = reg.apply(&gate, &ins.targets).unwrap();
            let err = reg
                .state()
                .amplitudes()
                .iter()
                .zip(&oracle)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "err {err}");
        }
    }
}

#[test]
fn global_phase_leaves_probabilities_unchanged() {
    let mut g = Gen::new(5);
    for dim in [2, 4, 8, 27, 64] {
        let psi = random_state(&mut g, dim);
        let p = probabilities(&psi).unwrap();
        for gamma in [0.1, 1.0, 2.5, -3.0, 100.0] {
            let q = probabilities(&psi.scaled(C64::from_polar(1.0, gamma))).unwrap();
            let err = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-14, "dim {dim}, gamma {gamma}: {err}");
        }
    }
}

#[test]
fn squeezer_error_shrinks_with_cutoff() {
    for z in [0.25, 0.5, 1.0] {
        let errors: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&d| {
                let gate_state = QumodeRegister::vacuum(1, d)
                    .unwrap()
                    .apply(&squeezer(C64::new(z, 0.0), d).unwrap(), &[0])
                    .unwrap()
                    .into_state();
                let series = prepare_squeezed_vacuum(z, d).unwrap();
                gate_state
                    .amplitudes()
                    .iter()
                    .zip(series.amplitudes())
                    .map(|(a, b)| (a.norm() - b.norm()).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(errors[0] > errors[1] && errors[1] > errors[2], "z={z}: {errors:?}");
    }
}
