//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function so the logic can be
//! tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use duosim::circuit::{self, Circuit};
use duosim::measurement::{probabilities, MeasurementValues};
use duosim::qumode::{beamsplitter, prepare_squeezed_vacuum, wigner_grid, QumodeRegister};

fn load(text: &str) -> Result<Circuit, String> {
    let circuit = circuit::parse(text).map_err(|d| d.to_string())?;
    let problems = circuit::validate(&circuit);
    if !problems.is_empty() {
        let lines: Vec<String> = problems.iter().map(ToString::to_string).collect();
        return Err(lines.join("\n"));
    }
    Ok(circuit)
}

/// Runs circuit text and returns `{labels, values}` as JSON.
pub fn run_json(text: &str, seed: u64) -> Result<String, String> {
    let circuit = load(text)?;
    let result = circuit::execute(&circuit, seed).map_err(|e| e.to_string())?;
    let values: Value = match &result.values {
        MeasurementValues::Real(v) => json!(v),
        MeasurementValues::Counts(v) => json!(v),
    };
    let out = json!({
        "method": circuit.measure.method.name(),
        "labels": result.labels,
        "values": values,
    });
    Ok(out.to_string())
}

/// Single-mode state from `fock` or `squeeze`.
pub fn single_mode(kind: &str, param: f64, cutoff: usize) -> Result<QumodeRegister, String> {
    match kind {
        "fock" => {
            if param < 0.0 || param.fract() != 0.0 {
                return Err(format!("photon number must be a whole number, got {param}"));
            }
            QumodeRegister::fock(&[param as usize], cutoff).map_err(|e| e.to_string())
        }
        "squeeze" => {
            let state = prepare_squeezed_vacuum(param, cutoff).map_err(|e| e.to_string())?;
            QumodeRegister::from_state(1, cutoff, state).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown state kind '{other}'")),
    }
}

/// Row-major `res × res` Wigner grid over `[lo, hi]²`, x along rows.
pub fn wigner_values(
    kind: &str,
    param: f64,
    cutoff: usize,
    lo: f64,
    hi: f64,
    res: usize,
) -> Result<Vec<f64>, String> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || res < 2 {
        return Err("need lo < hi and at least 2 points per axis".into());
    }
    let reg = single_mode(kind, param, cutoff)?;
    let axis: Vec<f64> = (0..res).map(|i| lo + (hi - lo) * i as f64 / (res - 1) as f64).collect();
    wigner_grid(&reg, &axis, &axis).map_err(|e| e.to_string())
}

/// Output photon-number distribution, `d × d` row-major, after a
/// beamsplitter on `|n1, n2⟩`.
pub fn beamsplitter_table(
    theta: f64,
    phi: f64,
    n1: usize,
    n2: usize,
    cutoff: usize,
) -> Result<Vec<f64>, String> {
    let reg = QumodeRegister::fock(&[n1, n2], cutoff).map_err(|e| e.to_string())?;
    let gate = beamsplitter(theta, phi, cutoff).map_err(|e| e.to_string())?;
    let out = reg.apply(&gate, &[0, 1]).map_err(|e| e.to_string())?;
    probabilities(out.state()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn run(text: &str, seed: u32) -> Result<String, JsError> {
    run_json(text, u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn wigner(
    kind: &str,
    param: f64,
    cutoff: usize,
    lo: f64,
    hi: f64,
    res: usize,
) -> Result<Vec<f64>, JsError> {
    wigner_values(kind, param, cutoff, lo, hi, res).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn split(theta: f64, phi: f64, n1: usize, n2: usize, cutoff: usize) -> Result<Vec<f64>, JsError> {
    beamsplitter_table(theta, phi, n1, n2, cutoff).map_err(|e| JsError::new(&e))
}
