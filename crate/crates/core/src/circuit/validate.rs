use super::{Circuit, Diagnostic, GateSpec, Method, Paradigm, Register};
use crate::measurement::ObservableKind;
use crate::qubit::MAX_QUBITS;
use crate::qumode::register_dim;

/// Every problem that would stop `circuit` from executing. An empty list
/// means the circuit is valid.
pub fn validate(circuit: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let reg = circuit.register;
    let wires = reg.wires();
    match reg {
        Register::Qubit { wires } => {
            if !(1..=MAX_QUBITS).contains(&wires) {
                out.push(Diagnostic::at(
                    0,
                    format!("capacity: {wires} qubits requested, supported range is 1..={MAX_QUBITS}"),
                ));
            }
        }
        Register::Qumode { wires, cutoff } => {
            if let Err(e) = register_dim(wires, cutoff) {
                out.push(Diagnostic::at(0, format!("capacity: {e}")));
            }
        }
    }

    let check_targets = |out: &mut Vec<Diagnostic>, line: usize, targets: &[usize]| {
        for (i, &w) in targets.iter().enumerate() {
            if w >= wires {
                out.push(Diagnostic::at(line, format!("wire {w} out of range for {wires} wires")));
            }
            if targets[..i].contains(&w) {
                out.push(Diagnostic::at(line, format!("wire {w} listed twice")));
            }
        }
    };

    for (i, p) in circuit.preparation.iter().enumerate() {
        if reg.paradigm() != Paradigm::Qumode {
            out.push(Diagnostic::at(p.line, "paradigm mismatch: prepare squeeze needs a qumode register"));
        }
        check_targets(&mut out, p.line, &[p.wire]);
        if circuit.preparation[..i].iter().any(|q| q.wire == p.wire) {
            out.push(Diagnostic::at(p.line, format!("wire {} prepared twice", p.wire)));
        }
        if !p.z.is_finite() {
            out.push(Diagnostic::at(p.line, "squeezing parameter is not finite"));
        }
    }

    for ins in &circuit.instructions {
        let gate = &ins.gate;
        if gate.paradigm() != reg.paradigm() {
            out.push(Diagnostic::at(
                ins.line,
                format!(
                    "paradigm mismatch: {} is a {} gate but the register holds {}s",
                    gate.mnemonic(),
                    gate.paradigm(),
                    reg.paradigm()
                ),
            ));
        }
        if let GateSpec::Interf { bs, rot } = gate {
            if rot.is_empty() || bs.len() + 1 != rot.len() {
                out.push(Diagnostic::at(
                    ins.line,
                    format!(
                        "INTERF needs k-1 beamsplitters for k rotations, found {} and {}",
                        bs.len(),
                        rot.len()
                    ),
                ));
            }
        }
        if ins.targets.len() != gate.width() {
            out.push(Diagnostic::at(
                ins.line,
                format!(
                    "{} acts on {} wires, {} given",
                    gate.mnemonic(),
                    gate.width(),
                    ins.targets.len()
                ),
            ));
        }
        check_targets(&mut out, ins.line, &ins.targets);
        if gate.params().iter().any(|v| !v.is_finite()) {
            out.push(Diagnostic::at(ins.line, format!("{} has a non-finite parameter", gate.mnemonic())));
        }
    }

    let m = circuit.measure;
    match m.method {
        Method::Sample { shots: 0 } => {
            out.push(Diagnostic::at(m.line, "sample needs at least one shot"));
        }
        Method::Expectation { observable, .. } | Method::Variance { observable, .. } => {
            let fits = match reg.paradigm() {
                Paradigm::Qubit => observable != ObservableKind::Number,
                Paradigm::Qumode => observable == ObservableKind::Number,
            };
            if !fits {
                out.push(Diagnostic::at(
                    m.line,
                    format!("paradigm mismatch: observable {observable} on a {} register", reg.paradigm()),
                ));
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{parse, Instruction, Measure};

    fn diagnostics(text: &str) -> Vec<String> {
        validate(&parse(text).unwrap()).into_iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn valid_circuit_is_ok() {
        assert!(diagnostics("register qubit 1\nH 0\nmeasure probabilities").is_empty());
    }

    #[test]
    fn qumode_gate_in_qubit_register() {
        let d = diagnostics("register qubit 1\nS 0 0.1 0\nmeasure probabilities");
        assert_eq!(d.len(), 1);
        assert!(d[0].starts_with("line 2: paradigm mismatch"), "{}", d[0]);
        let d = diagnostics("register qumode 1 cutoff 4\nH 0\nmeasure probabilities");
        assert!(d[0].contains("paradigm mismatch"));
    }

    #[test]
    fn capacity_errors() {
        let d = diagnostics("register qubit 25\nmeasure probabilities");
        assert!(d[0].starts_with("capacity"), "{}", d[0]);
        assert!(diagnostics("register qumode 2 cutoff 65\nmeasure probabilities")[0].contains("cutoff"));
        assert!(!diagnostics("register qumode 4 cutoff 33\nmeasure probabilities").is_empty());
        assert!(!diagnostics("register qumode 5 cutoff 2\nmeasure probabilities").is_empty());
        assert!(!diagnostics("register qubit 0\nmeasure probabilities").is_empty());
    }

    #[test]
    fn observable_and_preparation_checks() {
        assert!(!diagnostics("register qubit 1\nmeasure expectation number").is_empty());
        assert!(!diagnostics("register qumode 1 cutoff 3\nmeasure variance pauliz").is_empty());
        assert!(!diagnostics("register qubit 1\nprepare squeeze 0 0.1\nmeasure probabilities").is_empty());
        assert!(!diagnostics(
            "register qumode 1 cutoff 3\nprepare squeeze 0 0.1\nprepare squeeze 0 0.2\nmeasure probabilities"
        )
        .is_empty());
        assert!(!diagnostics("register qubit 1\nmeasure sample 0").is_empty());
    }

    #[test]
    fn hand_built_circuits_are_checked() {
        let c = Circuit {
            register: Register::Qumode { wires: 2, cutoff: 3 },
            preparation: vec![],
            instructions: vec![
                Instruction { gate: GateSpec::Bs { theta: 0.1, phi: 0.0 }, targets: vec![0], line: 0 },
                Instruction { gate: GateSpec::R(f64::NAN), targets: vec![3], line: 0 },
                Instruction {
                    gate: GateSpec::Interf { bs: vec![], rot: vec![0.1, 0.2] },
                    targets: vec![0, 1],
                    line: 0,
                },
            ],
            measure: Measure { method: Method::Probabilities, line: 0 },
        };
        let d = validate(&c);
        assert_eq!(d.len(), 4, "{d:?}");
        assert!(d.iter().all(|x| x.line.is_none()));
    }
}
