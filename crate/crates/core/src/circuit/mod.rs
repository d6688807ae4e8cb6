//! Paradigm-tagged circuits and the line-oriented text format.
//!
//! ```text
//! # two-mode example
//! register qumode 2 cutoff 6
//! prepare squeeze 0 0.5
//! BS 0 1 0.7853981633974483 0
//! measure expectation number
//! ```
//!
//! A file is a `register` line, optional `prepare squeeze` lines (qumodes
//! only), gate lines, and exactly one trailing `measure` line. Comments run
//! from `#` to the end of the line.

mod execute;
mod parse;
mod serialize;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::error::SimError;
use crate::measurement::{Labeling, ObservableKind};

pub use execute::{execute, final_state};
pub use parse::{parse, parse_bytes};
pub use serialize::serialize;
pub use validate::validate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Paradigm {
    Qubit,
    Qumode,
}

impl Paradigm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Qubit => "qubit",
            Self::Qumode => "qumode",
        }
    }
}

impl fmt::Display for Paradigm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Register {
    Qubit { wires: usize },
    Qumode { wires: usize, cutoff: usize },
}

impl Register {
    pub fn paradigm(&self) -> Paradigm {
        match self {
            Self::Qubit { .. } => Paradigm::Qubit,
            Self::Qumode { .. } => Paradigm::Qumode,
        }
    }

    pub fn wires(&self) -> usize {
        match *self {
            Self::Qubit { wires } | Self::Qumode { wires, .. } => wires,
        }
    }

    pub fn cutoff(&self) -> Option<usize> {
        match *self {
            Self::Qubit { .. } => None,
            Self::Qumode { cutoff, .. } => Some(cutoff),
        }
    }

    /// Dimension of one wire: 2 for qubits, the cutoff for qumodes.
    pub fn local_dim(&self) -> usize {
        self.cutoff().unwrap_or(2)
    }

    pub fn labeling(&self) -> Labeling {
        match *self {
            Self::Qubit { wires } => Labeling::Bits { n_qubits: wires },
            Self::Qumode { wires, cutoff } => Labeling::Occupations { m_modes: wires, cutoff },
        }
    }
}

/// A gate with its numeric parameters; wires live on the [`Instruction`].
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    H,
    X,
    Y,
    Z,
    T,
    Rx(f64),
    P(f64),
    Cnot,
    /// Controlled phase `C-P(θ)`, control first.
    Cp(f64),
    S { re: f64, im: f64 },
    R(f64),
    D { re: f64, im: f64 },
    Bs { theta: f64, phi: f64 },
    /// Beamsplitters on consecutive listed wires, then one rotation per wire.
    Interf { bs: Vec<(f64, f64)>, rot: Vec<f64> },
}

impl GateSpec {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            Self::H => "H",
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::T => "T",
            Self::Rx(_) => "RX",
            Self::P(_) => "P",
            Self::Cnot => "CNOT",
            Self::Cp(_) => "CP",
            Self::S { .. } => "S",
            Self::R(_) => "R",
            Self::D { .. } => "D",
            Self::Bs { .. } => "BS",
            Self::Interf { .. } => "INTERF",
        }
    }

    pub fn paradigm(&self) -> Paradigm {
        match self {
            Self::H | Self::X | Self::Y | Self::Z | Self::T | Self::Rx(_) | Self::P(_) => {
                Paradigm::Qubit
            }
            Self::Cnot | Self::Cp(_) => Paradigm::Qubit,
            _ => Paradigm::Qumode,
        }
    }

    /// Number of wires the gate acts on.
    pub fn width(&self) -> usize {
        match self {
            Self::Cnot | Self::Cp(_) | Self::Bs { .. } => 2,
            Self::Interf { rot, .. } => rot.len(),
            _ => 1,
        }
    }

    /// Parameters in text order.
    pub fn params(&self) -> Vec<f64> {
        match self {
            Self::H | Self::X | Self::Y | Self::Z | Self::T | Self::Cnot => vec![],
            Self::Rx(t) | Self::P(t) | Self::Cp(t) | Self::R(t) => vec![*t],
            Self::S { re, im } | Self::D { re, im } => vec![*re, *im],
            Self::Bs { theta, phi } => vec![*theta, *phi],
            Self::Interf { bs, rot } => {
                bs.iter().flat_map(|&(t, p)| [t, p]).chain(rot.iter().copied()).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instruction {
    pub gate: GateSpec,
    pub targets: Vec<usize>,
    /// 1-based source line, 0 when built in code.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preparation {
    pub wire: usize,
    /// Real squeezing parameter of the squeezed vacuum on `wire`.
    pub z: f64,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Probabilities,
    Sample { shots: u64 },
    /// Per-wire values, or their product when `product` is set.
    Expectation { observable: ObservableKind, product: bool },
    Variance { observable: ObservableKind, product: bool },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Probabilities => "probabilities",
            Self::Sample { .. } => "sample",
            Self::Expectation { .. } => "expectation",
            Self::Variance { .. } => "variance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measure {
    pub method: Method,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub register: Register,
    pub preparation: Vec<Preparation>,
    pub instructions: Vec<Instruction>,
    pub measure: Measure,
}

impl Circuit {
    /// Structural equality: everything except source line numbers, with
    /// floats compared bitwise.
    pub fn same_structure(&self, other: &Self) -> bool {
        let bits = |v: Vec<f64>| v.into_iter().map(f64::to_bits).collect::<Vec<_>>();
        self.register == other.register
            && self.measure.method == other.measure.method
            && self.preparation.len() == other.preparation.len()
            && self
                .preparation
                .iter()
                .zip(&other.preparation)
                .all(|(a, b)| a.wire == b.wire && a.z.to_bits() == b.z.to_bits())
            && self.instructions.len() == other.instructions.len()
            && self.instructions.iter().zip(&other.instructions).all(|(a, b)| {
                a.gate.mnemonic() == b.gate.mnemonic()
                    && a.targets == b.targets
                    && bits(a.gate.params()) == bits(b.gate.params())
            })
    }
}

/// A problem found while parsing or validating, with its source line when
/// known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: (line > 0).then_some(line), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// One or more diagnostics, in source order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("invalid circuit:\n{0}")]
    Invalid(Diagnostics),
    #[error(transparent)]
    Sim(#[from] SimError),
}
