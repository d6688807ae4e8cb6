use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use duosim::circuit::{self, Circuit, Method};
use duosim::measurement::{MeasurementResult, MeasurementValues};
use duosim::qumode::{prepare_squeezed_vacuum, QumodeRegister};
use duosim::StateVector;

#[derive(Parser)]
#[command(name = "duosim", version, about = "Qubit and qumode circuit simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate and execute a circuit file.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sample this many shots instead of the file's measure directive.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Wigner function of a single-mode state as x,p,w rows.
    ///
    /// STATE is `fock <n> <cutoff>` or `squeeze <z> <cutoff>`.
    Wigner {
        #[arg(num_args = 3, value_names = ["KIND", "PARAM", "CUTOFF"], allow_negative_numbers = true)]
        state: Vec<String>,
        /// xmin,xmax,pmin,pmax,resolution
        #[arg(long, allow_hyphen_values = true, default_value = "-3,3,-3,3,61")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a circuit file without running it.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Input(Vec<String>),
    Io(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { file, seed, shots, format, out } => {
            cmd_run(&file, seed, shots, format, out.as_deref())
        }
        Command::Wigner { state, grid, out } => cmd_wigner(&state, &grid, out.as_deref()),
        Command::Check { file } => cmd_check(&file),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(lines)) => {
            for line in lines {
                eprintln!("error: {line}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Parse plus validate, with every diagnostic rendered as one line.
fn load(path: &Path) -> Result<Circuit, Failure> {
    let bytes = read(path)?;
    let circuit = circuit::parse_bytes(&bytes)
        .map_err(|d| Failure::Input(d.0.iter().map(ToString::to_string).collect()))?;
    let problems = circuit::validate(&circuit);
    if !problems.is_empty() {
        return Err(Failure::Input(problems.iter().map(ToString::to_string).collect()));
    }
    Ok(circuit)
}

fn cmd_check(path: &Path) -> Result<(), Failure> {
    load(path)?;
    emit("ok\n", None)
}

fn cmd_run(
    path: &Path,
    seed: u64,
    shots: Option<u64>,
    format: Format,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let mut circuit = load(path)?;
    if let Some(shots) = shots {
        if shots == 0 {
            return Err(Failure::Input(vec!["--shots must be at least 1".into()]));
        }
        circuit.measure.method = Method::Sample { shots };
    }
    let result =
        circuit::execute(&circuit, seed).map_err(|e| Failure::Input(vec![e.to_string()]))?;
    let text = match format {
        Format::Json => to_json(&circuit, &result),
        Format::Csv => to_csv(&result),
    };
    emit(&text, out)
}

fn to_json(circuit: &Circuit, result: &MeasurementResult) -> String {
    let reg = circuit.register;
    let mut obj = Map::new();
    obj.insert("paradigm".into(), json!(reg.paradigm().name()));
    obj.insert("wires".into(), json!(reg.wires()));
    if let Some(cutoff) = reg.cutoff() {
        obj.insert("cutoff".into(), json!(cutoff));
    }
    obj.insert("method".into(), json!(circuit.measure.method.name()));
    if let Some(shots) = result.shots {
        obj.insert("shots".into(), json!(shots));
    }
    obj.insert("seed".into(), json!(result.seed));
    obj.insert("labels".into(), json!(result.labels));
    let values = match &result.values {
        MeasurementValues::Real(v) => json!(v),
        MeasurementValues::Counts(v) => json!(v),
    };
    obj.insert("values".into(), values);
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("plain JSON values");
    text.push('\n');
    text
}

/// Occupation labels like `(1,0)` contain commas and need quoting.
fn csv_field(label: &str) -> String {
    if label.contains([',', '"']) {
        format!("\"{}\"", label.replace('"', "\"\""))
    } else {
        label.to_string()
    }
}

fn to_csv(result: &MeasurementResult) -> String {
    let mut text = String::new();
    match &result.values {
        MeasurementValues::Real(v) => {
            text.push_str("label,value\n");
            for (label, value) in result.labels.iter().zip(v) {
                text.push_str(&format!("{},{value}\n", csv_field(label)));
            }
        }
        MeasurementValues::Counts(v) => {
            text.push_str("label,count\n");
            for (label, count) in result.labels.iter().zip(v) {
                text.push_str(&format!("{},{count}\n", csv_field(label)));
            }
        }
    }
    text
}

fn wigner_state(args: &[String]) -> Result<QumodeRegister, Failure> {
    let bad = |msg: String| Failure::Input(vec![msg]);
    let [kind, param, cutoff] = args else {
        return Err(bad("state must be 'fock <n> <cutoff>' or 'squeeze <z> <cutoff>'".into()));
    };
    let cutoff: usize =
        cutoff.parse().map_err(|_| bad(format!("cutoff '{cutoff}' is not a count")))?;
    let state: StateVector = match kind.as_str() {
        "fock" => {
            let n: usize = param.parse().map_err(|_| bad(format!("'{param}' is not a count")))?;
            return QumodeRegister::fock(&[n], cutoff).map_err(|e| bad(e.to_string()));
        }
        "squeeze" => {
            let z: f64 = param
                .parse()
                .ok()
                .filter(|z: &f64| z.is_finite())
                .ok_or_else(|| bad(format!("'{param}' is not a finite number")))?;
            prepare_squeezed_vacuum(z, cutoff).map_err(|e| bad(e.to_string()))?
        }
        other => {
            return Err(bad(format!(
                "unknown state kind '{other}', expected a single-mode 'fock' or 'squeeze'"
            )))
        }
    };
    QumodeRegister::from_state(1, cutoff, state).map_err(|e| bad(e.to_string()))
}

/// Axis points: `res` evenly spaced values, or the midpoint when `res == 1`.
fn axis(lo: f64, hi: f64, res: usize) -> Vec<f64> {
    if res == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let step = (hi - lo) / (res - 1) as f64;
    (0..res).map(|i| if i + 1 == res { hi } else { lo + i as f64 * step }).collect()
}

fn parse_grid(grid: &str) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let bad = || {
        Failure::Input(vec![format!(
            "bad grid '{grid}': expected xmin,xmax,pmin,pmax,resolution with finite \
             bounds, min <= max and resolution >= 1"
        )])
    };
    let parts: Vec<&str> = grid.split(',').map(str::trim).collect();
    let [xmin, xmax, pmin, pmax, res] = parts[..] else { return Err(bad()) };
    let bounds: Vec<f64> = [xmin, xmax, pmin, pmax]
        .iter()
        .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let res: usize = res.parse().map_err(|_| bad())?;
    if res == 0 || res > 10_000 || bounds[0] > bounds[1] || bounds[2] > bounds[3] {
        return Err(bad());
    }
    Ok((axis(bounds[0], bounds[1], res), axis(bounds[2], bounds[3], res)))
}

fn cmd_wigner(args: &[String], grid: &str, out: Option<&Path>) -> Result<(), Failure> {
    let reg = wigner_state(args)?;
    let (xs, ps) = parse_grid(grid)?;
    let w = duosim::qumode::wigner_grid(&reg, &xs, &ps)
        .map_err(|e| Failure::Input(vec![e.to_string()]))?;
    let mut text = String::from("x,p,w\n");
    let points = xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p)));
    for ((x, p), w) in points.zip(w) {
        text.push_str(&format!("{x},{p},{w}\n"));
    }
    emit(&text, out)
}
