use std::fmt::Write;

use super::{Circuit, Method, Register};

/// 17 significant digits, enough for any `f64` to reparse bit-identically.
fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Canonical text: one directive per line, single spaces, no comments.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    match circuit.register {
        Register::Qubit { wires } => writeln!(out, "register qubit {wires}"),
        Register::Qumode { wires, cutoff } => {
            writeln!(out, "register qumode {wires} cutoff {cutoff}")
        }
    }
    .unwrap();
    for p in &circuit.preparation {
        writeln!(out, "prepare squeeze {} {}", p.wire, float(p.z)).unwrap();
    }
    for ins in &circuit.instructions {
        out.push_str(ins.gate.mnemonic());
        for t in &ins.targets {
            write!(out, " {t}").unwrap();
        }
        for v in ins.gate.params() {
            write!(out, " {}", float(v)).unwrap();
        }
        out.push('\n');
    }
    let measure = match circuit.measure.method {
        Method::Probabilities => "probabilities".to_string(),
        Method::Sample { shots } => format!("sample {shots}"),
        Method::Expectation { observable, product } | Method::Variance { observable, product } => {
            let suffix = if product { " product" } else { "" };
            format!("{} {observable}{suffix}", circuit.measure.method.name())
        }
    };
    writeln!(out, "measure {measure}").unwrap();
    out
}
