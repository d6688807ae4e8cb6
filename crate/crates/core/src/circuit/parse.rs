use super::{
    Circuit, Diagnostic, Diagnostics, GateSpec, Instruction, Measure, Method, Preparation,
    Register,
};
use crate::measurement::ObservableKind;

/// Parses UTF-8 bytes; invalid encoding is reported on the line where it
/// starts.
pub fn parse_bytes(bytes: &[u8]) -> Result<Circuit, Diagnostics> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let line = 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
            Err(Diagnostics(vec![Diagnostic::at(line, "invalid UTF-8")]))
        }
    }
}

/// Parses circuit text, collecting every diagnostic rather than stopping at
/// the first.
///
/// Checks here are the ones that need the source text: syntax, mnemonic
/// arity, directive order, and wire indices against the declared register.
/// Register capacity and paradigm agreement are left to [`super::validate`].
pub fn parse(text: &str) -> Result<Circuit, Diagnostics> {
    let mut p = Parser::default();
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let content = raw.strip_suffix('\r').unwrap_or(raw);
        let content = content.split_once('#').map_or(content, |(code, _)| code);
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !tokens.is_empty() {
            last_line = line;
            p.line(line, &tokens);
        }
    }
    p.finish(last_line.max(1))
}

#[derive(Default)]
struct Parser {
    register: Option<Register>,
    preparation: Vec<Preparation>,
    instructions: Vec<Instruction>,
    measure: Option<Measure>,
    errors: Vec<Diagnostic>,
    register_failed: bool,
    measure_failed: bool,
}

impl Parser {
    fn error(&mut self, line: usize, message: impl Into<String>) {
        self.errors.push(Diagnostic::at(line, message));
    }

    fn line(&mut self, line: usize, tokens: &[&str]) {
        let head = tokens[0];
        let args = &tokens[1..];

        if head == "register" {
            if self.register.is_some() || self.register_failed {
                self.error(line, "duplicate register declaration");
                return;
            }
            if !self.preparation.is_empty() || !self.instructions.is_empty() || self.measure.is_some()
            {
                self.error(line, "register declaration must come first");
            }
            match register(args) {
                Ok(r) => self.register = Some(r),
                Err(msg) => {
                    self.register_failed = true;
                    self.error(line, msg);
                }
            }
            return;
        }
        if self.register.is_none() && !self.register_failed {
            self.error(line, "missing register declaration");
            // Report it once; later lines are still checked for syntax.
            self.register_failed = true;
        }
        if let Some(m) = self.measure {
            let what = if head == "measure" { "duplicate measure directive" } else { "statement after measure directive" };
            self.error(line, format!("{what} (measure is on line {})", m.line));
            return;
        }
        match head {
            "prepare" => {
                if !self.instructions.is_empty() {
                    self.error(line, "prepare must come before the first gate");
                }
                match preparation(args) {
                    Ok((wire, z)) => {
                        self.check_wires(line, &[wire]);
                        self.preparation.push(Preparation { wire, z, line });
                    }
                    Err(msg) => self.error(line, msg),
                }
            }
            "measure" => match measure(args, self.register) {
                Ok(method) => self.measure = Some(Measure { method, line }),
                Err(msg) => {
                    self.measure_failed = true;
                    self.error(line, msg);
                }
            },
            _ => match gate(head, args) {
                Ok((gate, targets)) => {
                    self.check_wires(line, &targets);
                    self.instructions.push(Instruction { gate, targets, line });
                }
                Err(msg) => self.error(line, msg),
            },
        }
    }

    fn check_wires(&mut self, line: usize, targets: &[usize]) {
        if let Some(reg) = self.register {
            for &w in targets {
                if w >= reg.wires() {
                    self.error(line, format!("wire {w} out of range for {} wires", reg.wires()));
                }
            }
        }
        for (i, w) in targets.iter().enumerate() {
            if targets[..i].contains(w) {
                self.error(line, format!("wire {w} listed twice"));
            }
        }
    }

    fn finish(mut self, last_line: usize) -> Result<Circuit, Diagnostics> {
        if self.register.is_none() && !self.register_failed {
            self.error(1, "missing register declaration");
        }
        if self.measure.is_none() && !self.measure_failed {
            self.error(last_line, "missing measure directive");
        }
        match (self.register, self.measure) {
            (Some(register), Some(measure)) if self.errors.is_empty() => Ok(Circuit {
                register,
                preparation: self.preparation,
                instructions: self.instructions,
                measure,
            }),
            _ => Err(Diagnostics(self.errors)),
        }
    }
}

fn count(token: &str, what: &str) -> Result<usize, String> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected {what} (non-negative integer), found '{token}'"));
    }
    token.parse().map_err(|_| format!("{what} '{token}' is too large"))
}

fn float(token: &str) -> Result<f64, String> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format!("parameter '{token}' is not finite")),
        Err(_) => Err(format!("expected a number, found '{token}'")),
    }
}

fn register(args: &[&str]) -> Result<Register, String> {
    match args {
        ["qubit", n] => Ok(Register::Qubit { wires: count(n, "qubit count")? }),
        ["qumode", m, "cutoff", d] => Ok(Register::Qumode {
            wires: count(m, "mode count")?,
            cutoff: count(d, "cutoff")?,
        }),
        _ => Err("expected 'register qubit N' or 'register qumode M cutoff D'".into()),
    }
}

fn preparation(args: &[&str]) -> Result<(usize, f64), String> {
    match args {
        ["squeeze", w, z] => Ok((count(w, "wire")?, float(z)?)),
        _ => Err("expected 'prepare squeeze WIRE Z'".into()),
    }
}

/// An omitted observable defaults to `number` on qumodes and `pauliz` on
/// qubits.
fn measure(args: &[&str], register: Option<Register>) -> Result<Method, String> {
    let observable = |name: &str| {
        ObservableKind::from_name(name).ok_or_else(|| {
            format!("unknown observable '{name}' (expected number, paulix, pauliy or pauliz)")
        })
    };
    match args {
        ["probabilities"] => Ok(Method::Probabilities),
        ["sample", n] => {
            let shots = n
                .parse::<u64>()
                .ok()
                .filter(|_| n.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| format!("expected shot count, found '{n}'"))?;
            Ok(Method::Sample { shots })
        }
        [kind @ ("expectation" | "variance"), rest @ ..] => {
            let (observable, product) = match rest {
                [] | ["product"] => {
                    let default = match register {
                        Some(Register::Qumode { .. }) => ObservableKind::Number,
                        _ => ObservableKind::PauliZ,
                    };
                    (default, !rest.is_empty())
                }
                [obs] => (observable(obs)?, false),
                [obs, "product"] => (observable(obs)?, true),
                _ => return Err(format!("unexpected tokens after '{kind}'")),
            };
            Ok(if *kind == "expectation" {
                Method::Expectation { observable, product }
            } else {
                Method::Variance { observable, product }
            })
        }
        _ => Err("measure expects probabilities, sample N, expectation OBS or variance OBS"
            .into()),
    }
}

/// Wire count and parameter count for fixed-shape mnemonics.
fn shape(mnemonic: &str) -> Option<(usize, usize)> {
    Some(match mnemonic {
        "H" | "X" | "Y" | "Z" | "T" => (1, 0),
        "RX" | "P" | "R" => (1, 1),
        "CNOT" => (2, 0),
        "CP" => (2, 1),
        "S" | "D" => (1, 2),
        "BS" => (2, 2),
        _ => return None,
    })
}

fn gate(mnemonic: &str, args: &[&str]) -> Result<(GateSpec, Vec<usize>), String> {
    if mnemonic == "INTERF" {
        return interferometer(args);
    }
    let (wires, params) = shape(mnemonic).ok_or_else(|| format!("unknown gate '{mnemonic}'"))?;
    if args.len() != wires + params {
        return Err(format!(
            "{mnemonic} takes {wires} wire{} and {params} parameter{}, found {} argument{}",
            plural(wires),
            plural(params),
            args.len(),
            plural(args.len()),
        ));
    }
    let targets = args[..wires].iter().map(|t| count(t, "wire")).collect::<Result<Vec<_>, _>>()?;
    let v = args[wires..].iter().map(|t| float(t)).collect::<Result<Vec<_>, _>>()?;
    let spec = match mnemonic {
        "H" => GateSpec::H,
        "X" => GateSpec::X,
        "Y" => GateSpec::Y,
        "Z" => GateSpec::Z,
        "T" => GateSpec::T,
        "RX" => GateSpec::Rx(v[0]),
        "P" => GateSpec::P(v[0]),
        "CNOT" => GateSpec::Cnot,
        "CP" => GateSpec::Cp(v[0]),
        "S" => GateSpec::S { re: v[0], im: v[1] },
        "R" => GateSpec::R(v[0]),
        "D" => GateSpec::D { re: v[0], im: v[1] },
        "BS" => GateSpec::Bs { theta: v[0], phi: v[1] },
        _ => unreachable!("shape() covers every fixed mnemonic"),
    };
    Ok((spec, targets))
}

/// `INTERF w₀ … w_{k−1} θ₀ φ₀ … θ_{k−2} φ_{k−2} r₀ … r_{k−1}`: `4k − 2`
/// arguments for `k` wires.
fn interferometer(args: &[&str]) -> Result<(GateSpec, Vec<usize>), String> {
    let n = args.len();
    if n < 2 || !(n + 2).is_multiple_of(4) {
        return Err(format!(
            "INTERF takes k wires, 2(k-1) beamsplitter angles and k rotations (4k-2 arguments), \
             found {n} argument{}",
            plural(n)
        ));
    }
    let k = (n + 2) / 4;
    let targets = args[..k].iter().map(|t| count(t, "wire")).collect::<Result<Vec<_>, _>>()?;
    let v = args[k..].iter().map(|t| float(t)).collect::<Result<Vec<_>, _>>()?;
    let (bs_flat, rot) = v.split_at(2 * (k - 1));
    let bs = bs_flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok((GateSpec::Interf { bs, rot: rot.to_vec() }, targets))
}

fn plural(n: usize) -> &'static str {
    if n == 1 { "" } else { "s" }
}
