use super::{Circuit, CircuitError, Diagnostics, GateSpec, Method, Register};
use crate::error::{Result, SimError};
use crate::measurement::{
    expectations, probabilities, sample, variances, MeasurementKind, MeasurementResult,
    MeasurementValues, Observable,
};
use crate::numeric::{ComplexMatrix, StateVector, C64};
use crate::qubit::{controlled_unitary, standard_gate, QubitRegister};
use crate::qumode::{
    beamsplitter, displacement, interferometer_gates, prepare_squeezed_vacuum, rotation, squeezer,
    QumodeRegister,
};

impl GateSpec {
    /// The 2×2 or 4×4 matrix of a qubit gate; `None` for qumode gates.
    pub fn qubit_matrix(&self) -> Option<Result<ComplexMatrix>> {
        let named = |name: &str, params: &[f64]| standard_gate(name, params).map(|g| g.matrix().clone());
        Some(match self {
            Self::H | Self::X | Self::Y | Self::Z | Self::T | Self::Cnot => named(self.mnemonic(), &[]),
            Self::Rx(t) | Self::P(t) => named(self.mnemonic(), &[*t]),
            Self::Cp(t) => named("P", &[*t]).and_then(|p| controlled_unitary(&p)),
            _ => return None,
        })
    }
}

fn run_qubits(circuit: &Circuit, wires: usize) -> Result<StateVector> {
    let mut reg = QubitRegister::new(wires)?;
    for ins in &circuit.instructions {
        let u = ins.gate.qubit_matrix().ok_or_else(|| {
            SimError::InvalidArgument(format!("{} is not a qubit gate", ins.gate.mnemonic()))
        })??;
        reg = reg.apply_matrix(&u, &ins.targets)?;
    }
    Ok(reg.into_state())
}

fn run_qumodes(circuit: &Circuit, wires: usize, cutoff: usize) -> Result<StateVector> {
    let mut modes = vec![StateVector::basis(cutoff, 0); wires];
    for p in &circuit.preparation {
        let slot = modes.get_mut(p.wire).ok_or(SimError::WireOutOfRange { wire: p.wire, wires })?;
        *slot = prepare_squeezed_vacuum(p.z, cutoff)?;
    }
    let mut reg = QumodeRegister::product(&modes)?;
    for ins in &circuit.instructions {
        let t = &ins.targets;
        reg = match &ins.gate {
            GateSpec::S { re, im } => reg.apply(&squeezer(C64::new(*re, *im), cutoff)?, t)?,
            GateSpec::R(phi) => reg.apply(&rotation(*phi, cutoff)?, t)?,
            GateSpec::D { re, im } => reg.apply(&displacement(C64::new(*re, *im), cutoff)?, t)?,
            GateSpec::Bs { theta, phi } => reg.apply(&beamsplitter(*theta, *phi, cutoff)?, t)?,
            GateSpec::Interf { bs, rot } => {
                // The sequence is built over local positions 0..k; map them to
                // the listed wires.
                let seq = interferometer_gates(bs, rot, t.len(), cutoff)?;
                let mut r = reg;
                for (gate, local) in seq {
                    let wires: Vec<usize> = local.iter().map(|&j| t[j]).collect();
                    r = r.apply(&gate, &wires)?;
                }
                r
            }
            other => {
                return Err(SimError::InvalidArgument(format!(
                    "{} is not a qumode gate",
                    other.mnemonic()
                )))
            }
        };
    }
    Ok(reg.into_state())
}

/// Final state of `circuit` before measurement.
pub fn final_state(circuit: &Circuit) -> std::result::Result<StateVector, CircuitError> {
    let diagnostics = super::validate(circuit);
    if !diagnostics.is_empty() {
        return Err(CircuitError::Invalid(Diagnostics(diagnostics)));
    }
    Ok(match circuit.register {
        Register::Qubit { wires } => run_qubits(circuit, wires)?,
        Register::Qumode { wires, cutoff } => run_qumodes(circuit, wires, cutoff)?,
    })
}

/// Validates, runs and measures `circuit`. `seed` only matters for
/// `measure sample`; equal inputs give bit-identical results.
pub fn execute(circuit: &Circuit, seed: u64) -> std::result::Result<MeasurementResult, CircuitError> {
    let state = final_state(circuit)?;
    let reg = circuit.register;
    let labeling = reg.labeling();
    let wire_labels = || (0..reg.wires()).map(|w| w.to_string()).collect::<Vec<_>>();

    let per_wire = |kind, values: Vec<f64>, product: bool| {
        let (labels, values) = if product {
            (vec!["product".to_string()], vec![values.iter().product()])
        } else {
            (wire_labels(), values)
        };
        MeasurementResult { kind, labels, values: MeasurementValues::Real(values), shots: None, seed }
    };

    Ok(match circuit.measure.method {
        Method::Probabilities => MeasurementResult {
            kind: MeasurementKind::Probabilities,
            labels: (0..state.basis_dim()).map(|k| labeling.label(k)).collect(),
            values: MeasurementValues::Real(probabilities(&state)?),
            shots: None,
            seed,
        },
        Method::Sample { shots } => {
            let counts = sample(&state, shots, seed, labeling)?;
            MeasurementResult {
                kind: MeasurementKind::Counts,
                labels: counts.entries.iter().map(|e| e.label.clone()).collect(),
                values: MeasurementValues::Counts(counts.entries.iter().map(|e| e.count).collect()),
                shots: Some(shots),
                seed,
            }
        }
        Method::Expectation { observable, product } => {
            let obs = Observable::of_kind(observable, reg.local_dim())?;
            per_wire(MeasurementKind::Expectation, expectations(&state, &obs)?, product)
        }
        Method::Variance { observable, product } => {
            let obs = Observable::of_kind(observable, reg.local_dim())?;
            per_wire(MeasurementKind::Variance, variances(&state, &obs)?, product)
        }
    })
}
