//! Discrete-variable statevector simulation.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use crate::error::{Result, SimError};
use crate::kernel;
use crate::numeric::{ComplexMatrix, StateVector, C64, UNITARY_TOL};

pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitGateKind {
    H,
    X,
    Y,
    Z,
    T,
    Rx,
    P,
    Cnot,
    /// Controlled version of an arbitrary single-qubit unitary.
    Cu,
}

impl QubitGateKind {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::H => "H",
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::T => "T",
            Self::Rx => "RX",
            Self::P => "P",
            Self::Cnot => "CNOT",
            Self::Cu => "CU",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "H" => Self::H,
            "X" => Self::X,
            "Y" => Self::Y,
            "Z" => Self::Z,
            "T" => Self::T,
            "RX" => Self::Rx,
            "P" => Self::P,
            "CNOT" => Self::Cnot,
            "CU" => Self::Cu,
            _ => return None,
        })
    }
}

impl fmt::Display for QubitGateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitGate {
    kind: QubitGateKind,
    params: Vec<f64>,
    matrix: ComplexMatrix,
}

impl QubitGate {
    pub fn kind(&self) -> QubitGateKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Number of wires the gate acts on.
    pub fn width(&self) -> usize {
        if self.matrix.rows() == 4 {
            2
        } else {
            1
        }
    }

    pub fn hadamard() -> Self {
        let s = re(FRAC_1_SQRT_2);
        Self::fixed(QubitGateKind::H, ComplexMatrix::from_rows(&[[s, s], [s, -s]]))
    }

    pub fn pauli_x() -> Self {
        Self::fixed(QubitGateKind::X, pauli_x_matrix())
    }

    pub fn pauli_y() -> Self {
        let i = C64::new(0.0, 1.0);
        Self::fixed(QubitGateKind::Y, ComplexMatrix::from_rows(&[[re(0.0), -i], [i, re(0.0)]]))
    }

    pub fn pauli_z() -> Self {
        Self::fixed(
            QubitGateKind::Z,
            ComplexMatrix::from_rows(&[[re(1.0), re(0.0)], [re(0.0), re(-1.0)]]),
        )
    }

    /// `T = P(π/4)`.
    pub fn t() -> Self {
        Self { kind: QubitGateKind::T, params: vec![], matrix: phase_matrix(FRAC_PI_4) }
    }

    /// `RX(θ) = [[cos θ/2, −i sin θ/2], [−i sin θ/2, cos θ/2]]`.
    pub fn rx(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        let off = C64::new(0.0, -s);
        Self {
            kind: QubitGateKind::Rx,
            params: vec![theta],
            matrix: ComplexMatrix::from_rows(&[[re(c), off], [off, re(c)]]),
        }
    }

    /// `P(θ) = diag(1, e^{iθ})`.
    pub fn phase(theta: f64) -> Self {
        Self { kind: QubitGateKind::P, params: vec![theta], matrix: phase_matrix(theta) }
    }

    pub fn cnot() -> Self {
        Self::fixed(QubitGateKind::Cnot, controlled_matrix(&pauli_x_matrix()))
    }

    /// Controlled-`u`; fails if `u` is not a unitary 2×2 matrix.
    pub fn controlled(u: &ComplexMatrix) -> Result<Self> {
        Ok(Self { kind: QubitGateKind::Cu, params: vec![], matrix: controlled_unitary(u)? })
    }

    fn fixed(kind: QubitGateKind, matrix: ComplexMatrix) -> Self {
        Self { kind, params: vec![], matrix }
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn pauli_x_matrix() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[re(0.0), re(1.0)], [re(1.0), re(0.0)]])
}

fn phase_matrix(theta: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[re(1.0), C64::from_polar(1.0, theta)])
}

/// Looks up a named gate: `H X Y Z T CNOT` take no parameters, `RX P` one.
pub fn standard_gate(name: &str, params: &[f64]) -> Result<QubitGate> {
    let kind = QubitGateKind::from_symbol(name)
        .filter(|k| *k != QubitGateKind::Cu)
        .ok_or_else(|| SimError::UnknownGate(name.to_string()))?;
    let expected = match kind {
        QubitGateKind::Rx | QubitGateKind::P => 1,
        _ => 0,
    };
    if params.len() != expected {
        return Err(SimError::Arity { gate: name.to_string(), expected, found: params.len() });
    }
    Ok(match kind {
        QubitGateKind::H => QubitGate::hadamard(),
        QubitGateKind::X => QubitGate::pauli_x(),
        QubitGateKind::Y => QubitGate::pauli_y(),
        QubitGateKind::Z => QubitGate::pauli_z(),
        QubitGateKind::T => QubitGate::t(),
        QubitGateKind::Rx => QubitGate::rx(params[0]),
        QubitGateKind::P => QubitGate::phase(params[0]),
        QubitGateKind::Cnot => QubitGate::cnot(),
        QubitGateKind::Cu => unreachable!(),
    })
}

fn controlled_matrix(u: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, 2 + j)] = u[(i, j)];
        }
    }
    m
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`, control on wire 0.
pub fn controlled_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if (u.rows(), u.cols()) != (2, 2) {
        return Err(SimError::DimensionMismatch { expected: 2, found: u.rows().max(u.cols()) });
    }
    let defect = u.unitarity_defect();
    if !(defect < UNITARY_TOL) {
        return Err(SimError::NotUnitary { defect });
    }
    Ok(controlled_matrix(u))
}

fn check_width(gate: &QubitGate, targets: &[usize]) -> Result<()> {
    if targets.len() != gate.width() {
        return Err(SimError::Arity {
            gate: format!("{} (wires)", gate.kind),
            expected: gate.width(),
            found: targets.len(),
        });
    }
    Ok(())
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(SimError::Capacity(format!(
            "{n_qubits} qubits requested, supported range is 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Dense `2^n × 2^n` operator for `gate` on `targets`.
pub fn embed_gate(gate: &QubitGate, targets: &[usize], n_qubits: usize) -> Result<ComplexMatrix> {
    check_qubit_count(n_qubits)?;
    check_width(gate, targets)?;
    kernel::embed(&gate.matrix, 2, n_qubits, targets)
}

/// An `n`-qubit register holding a `2^n` statevector.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    n_qubits: usize,
    state: StateVector,
}

impl QubitRegister {
    /// `|0…0⟩` on `n_qubits` wires.
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        Ok(Self { n_qubits, state: StateVector::basis(1 << n_qubits, 0) })
    }

    pub fn from_state(n_qubits: usize, state: StateVector) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if state.basis_dim() != 1 << n_qubits {
            return Err(SimError::DimensionMismatch {
                expected: 1 << n_qubits,
                found: state.basis_dim(),
            });
        }
        if !state.is_normalized() {
            return Err(SimError::InvalidArgument(format!(
                "state has squared norm {}",
                state.norm_sqr()
            )));
        }
        Ok(Self { n_qubits, state })
    }

    /// Computational basis state from a big-endian bit string such as `"010"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let n = bits.len();
        check_qubit_count(n)?;
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| SimError::InvalidArgument(format!("not a bit string: {bits:?}")))?;
        Ok(Self { n_qubits: n, state: StateVector::basis(1 << n, index) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn into_state(self) -> StateVector {
        self.state
    }

    pub fn apply(&self, gate: &QubitGate, targets: &[usize]) -> Result<Self> {
        check_width(gate, targets)?;
        self.apply_matrix(gate.matrix(), targets)
    }

    /// Applies an arbitrary `2^k × 2^k` operator to `k` target wires.
    pub fn apply_matrix(&self, u: &ComplexMatrix, targets: &[usize]) -> Result<Self> {
        let amps = kernel::apply_local(self.state.amplitudes(), 2, self.n_qubits, targets, u)?;
        Ok(Self { n_qubits: self.n_qubits, state: StateVector::new(amps) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{equal_up_to_global_phase, expm, kron};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn hadamard_makes_uniform_superposition() {
        let reg = QubitRegister::new(1).unwrap().apply(&QubitGate::hadamard(), &[0]).unwrap();
        let expected = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!(crate::numeric::distance(reg.state(), &expected).unwrap() < 1e-15);
    }

    #[test]
    fn zero_phase_is_identity() {
        assert_eq!(*standard_gate("P", &[0.0]).unwrap().matrix(), ComplexMatrix::identity(2));
    }

    #[test]
    fn rx_pi_against_expm_oracle() {
        let gen = pauli_x_matrix().scale(C64::new(0.0, -FRAC_PI_2));
        let oracle = expm(&gen).unwrap();
        let rx = QubitGate::rx(PI);
        assert!(rx.matrix().max_abs_diff(&oracle) < 1e-12);
        let out = QubitRegister::new(1).unwrap().apply(&rx, &[0]).unwrap();
        assert!((out.state()[1] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(out.state()[0].norm() < 1e-12);
    }

    #[test]
    fn standard_gate_errors() {
        assert_eq!(standard_gate("Q", &[]), Err(SimError::UnknownGate("Q".into())));
        assert_eq!(standard_gate("CU", &[]), Err(SimError::UnknownGate("CU".into())));
        assert!(matches!(standard_gate("RX", &[]), Err(SimError::Arity { expected: 1, .. })));
        assert!(matches!(standard_gate("H", &[1.0]), Err(SimError::Arity { expected: 0, .. })));
    }

    #[test]
    fn controlled_x_is_cnot() {
        let cx = controlled_unitary(&pauli_x_matrix()).unwrap();
        let one = re(1.0);
        let zero = re(0.0);
        let expected = ComplexMatrix::from_rows(&[
            [one, zero, zero, zero],
            [zero, one, zero, zero],
            [zero, zero, zero, one],
            [zero, zero, one, zero],
        ]);
        assert_eq!(cx, expected);
        assert_eq!(*QubitGate::cnot().matrix(), cx);
    }

    #[test]
    fn controlled_scalar_phase_is_diagonal() {
        let alpha = 0.77;
        let e = C64::from_polar(1.0, alpha);
        let u = ComplexMatrix::diagonal(&[e, e]);
        let cu = controlled_unitary(&u).unwrap();
        assert_eq!(cu, ComplexMatrix::diagonal(&[re(1.0), re(1.0), e, e]));
    }

    #[test]
    fn controlled_rejects_non_unitary() {
        let bad = ComplexMatrix::from_rows(&[[re(1.0), re(1.0)], [re(0.0), re(1.0)]]);
        match controlled_unitary(&bad) {
            Err(SimError::NotUnitary { defect }) => assert!(defect > 0.5),
            other => panic!("expected NotUnitary, got {other:?}"),
        }
        assert!(controlled_unitary(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn kickback_on_phase_eigenstate() {
        // H on control, controlled-P(π/2) with target |1⟩.
        let reg = QubitRegister::from_bits("01").unwrap();
        let reg = reg.apply(&QubitGate::hadamard(), &[0]).unwrap();
        let cu = QubitGate::controlled(QubitGate::phase(FRAC_PI_2).matrix()).unwrap();
        let reg = reg.apply(&cu, &[0, 1]).unwrap();
        let control = StateVector::new(vec![re(FRAC_1_SQRT_2), C64::new(0.0, FRAC_1_SQRT_2)]);
        let expected = control.kron(&StateVector::basis(2, 1));
        assert!(equal_up_to_global_phase(reg.state(), &expected, 1e-12));
    }

    #[test]
    fn embedding_examples() {
        let h = QubitGate::hadamard();
        let t = QubitGate::t();
        assert_eq!(
            embed_gate(&h, &[0], 2).unwrap(),
            kron(h.matrix(), &ComplexMatrix::identity(2))
        );
        let composed = &embed_gate(&t, &[1], 2).unwrap() * &embed_gate(&h, &[0], 2).unwrap();
        assert!(composed.max_abs_diff(&kron(h.matrix(), t.matrix())) < 1e-15);

        let reg = QubitRegister::new(3).unwrap().apply(&QubitGate::pauli_x(), &[1]).unwrap();
        assert_eq!(reg.state(), QubitRegister::from_bits("010").unwrap().state());
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let reg = QubitRegister::from_bits("10").unwrap().apply(&QubitGate::cnot(), &[0, 1]);
        assert_eq!(reg.unwrap().state(), QubitRegister::from_bits("11").unwrap().state());
    }

    #[test]
    fn register_bounds_and_target_errors() {
        assert!(matches!(QubitRegister::new(21), Err(SimError::Capacity(_))));
        assert!(matches!(QubitRegister::new(0), Err(SimError::Capacity(_))));
        let reg = QubitRegister::new(2).unwrap();
        assert!(matches!(
            reg.apply(&QubitGate::pauli_x(), &[2]),
            Err(SimError::WireOutOfRange { .. })
        ));
        assert!(matches!(reg.apply(&QubitGate::cnot(), &[1, 1]), Err(SimError::DuplicateWire(1))));
        assert!(matches!(reg.apply(&QubitGate::cnot(), &[0]), Err(SimError::Arity { .. })));
    }
}
