#![allow(dead_code)]

use duosim::circuit::{Circuit, GateSpec, Instruction, Measure, Method, Preparation, Register};
use duosim::measurement::ObservableKind;
use duosim::numeric::{ComplexMatrix, Rng, StateVector, C64};

/// Small helpers over the seeded stream.
pub struct Gen(pub Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(Rng::new(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.0.next_f64()
    }

    /// Mostly ordinary angles, sometimes awkward finite doubles.
    pub fn param(&mut self) -> f64 {
        match self.below(8) {
            0 => loop {
                let v = f64::from_bits(self.0.next_u64());
                if v.is_finite() {
                    break v;
                }
            },
            1 => 0.0,
            2 => -0.0,
            _ => self.range(-7.0, 7.0),
        }
    }

    pub fn distinct(&mut self, k: usize, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let w = self.below(n);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }
}

pub fn random_qubit_gate(g: &mut Gen, wires: usize, params: impl Fn(&mut Gen) -> f64) -> Instruction {
    let two = wires >= 2;
    let choice = g.below(if two { 9 } else { 7 });
    let gate = match choice {
        0 => GateSpec::H,
        1 => GateSpec::X,
        2 => GateSpec::Y,
        3 => GateSpec::Z,
        4 => GateSpec::T,
        5 => GateSpec::Rx(params(g)),
        6 => GateSpec::P(params(g)),
        7 => GateSpec::Cnot,
        _ => GateSpec::Cp(params(g)),
    };
    let targets = g.distinct(gate.width(), wires);
    Instruction { gate, targets, line: 0 }
}

fn random_qumode_gate(g: &mut Gen, wires: usize) -> Instruction {
    let choice = g.below(if wires >= 2 { 6 } else { 3 });
    let gate = match choice {
        0 => GateSpec::S { re: g.param(), im: g.param() },
        1 => GateSpec::R(g.param()),
        2 => GateSpec::D { re: g.param(), im: g.param() },
        3 | 4 => GateSpec::Bs { theta: g.param(), phi: g.param() },
        _ => {
            let k = 1 + g.below(wires);
            GateSpec::Interf {
                bs: (0..k - 1).map(|_| (g.param(), g.param())).collect(),
                rot: (0..k).map(|_| g.param()).collect(),
            }
        }
    };
    let targets = g.distinct(gate.width(), wires);
    Instruction { gate, targets, line: 0 }
}

fn random_measure(g: &mut Gen, register: Register) -> Method {
    let observable = match register {
        Register::Qubit { .. } => {
            [ObservableKind::PauliX, ObservableKind::PauliY, ObservableKind::PauliZ][g.below(3)]
        }
        Register::Qumode { .. } => ObservableKind::Number,
    };
    let product = g.below(2) == 0;
    match g.below(4) {
        0 => Method::Probabilities,
        1 => Method::Sample { shots: 1 + g.0.next_u64() % 100_000 },
        2 => Method::Expectation { observable, product },
        _ => Method::Variance { observable, product },
    }
}

/// A structurally valid circuit of either paradigm; parameters are not
/// meant to be executed.
pub fn random_circuit(g: &mut Gen) -> Circuit {
    let register = if g.below(2) == 0 {
        Register::Qubit { wires: 1 + g.below(20) }
    } else {
        Register::Qumode { wires: 1 + g.below(4), cutoff: 2 + g.below(8) }
    };
    let wires = register.wires();
    let mut preparation = Vec::new();
    if let Register::Qumode { .. } = register {
        for wire in 0..wires {
            if g.below(2) == 0 {
                preparation.push(Preparation { wire, z: g.param(), line: 0 });
            }
        }
    }
    let n = g.below(12);
    let instructions = (0..n)
        .map(|_| match register {
            Register::Qubit { .. } => random_qubit_gate(g, wires, Gen::param),
            Register::Qumode { .. } => random_qumode_gate(g, wires),
        })
        .collect();
    let method = random_measure(g, register);
    Circuit { register, preparation, instructions, measure: Measure { method, line: 0 } }
}

/// Executable qubit circuit: `wires ≤ max_wires`, `1..=max_gates` gates.
pub fn random_qubit_circuit(g: &mut Gen, max_wires: usize, max_gates: usize) -> Circuit {
    let wires = 1 + g.below(max_wires);
    let n = 1 + g.below(max_gates);
    let instructions =
        (0..n).map(|_| random_qubit_gate(g, wires, |g| g.range(-7.0, 7.0))).collect();
    Circuit {
        register: Register::Qubit { wires },
        preparation: vec![],
        instructions,
        measure: Measure { method: Method::Probabilities, line: 0 },
    }
}

/// Bit `w` of basis index `i` in an `n`-qubit register, wire 0 most
/// significant.
fn bit(i: usize, w: usize, n: usize) -> usize {
    (i >> (n - 1 - w)) & 1
}

/// Full `2ⁿ × 2ⁿ` matrix of `u` on `targets`, written entry by entry:
/// `M[r][c] = u[r_T][c_T]` when `r` and `c` agree off the targets, else 0.
pub fn naive_embed(u: &ComplexMatrix, targets: &[usize], n: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let local = |i: usize| targets.iter().fold(0, |acc, &t| 2 * acc + bit(i, t, n));
    let mask: usize = targets.iter().map(|&t| 1 << (n - 1 - t)).sum();
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r & !mask == c & !mask {
            u[(local(r), local(c))]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Multiplies out every embedded gate into one matrix, then applies it to
/// `|0…0⟩`.
pub fn naive_final_state(circuit: &Circuit) -> StateVector {
    let n = circuit.register.wires();
    let mut total = ComplexMatrix::identity(1 << n);
    for ins in &circuit.instructions {
        let u = ins.gate.qubit_matrix().expect("qubit gate").expect("valid gate");
        total = &naive_embed(&u, &ins.targets, n) * &total;
    }
    let mut zero = vec![C64::new(0.0, 0.0); 1 << n];
    zero[0] = C64::new(1.0, 0.0);
    StateVector::new(total.matvec(&zero).unwrap())
}

/// Laguerre polynomial `L_n(x)` by the three-term recurrence.
pub fn laguerre(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed-form Wigner function of Fock state `|n⟩` with ħ = 1.
pub fn fock_wigner(n: usize, x: f64, p: f64) -> f64 {
    let r2 = x * x + p * p;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / std::f64::consts::PI * (-r2).exp() * laguerre(n, 2.0 * r2)
}

/// `k!` as a float, exact for the small `k` used here.
pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
