//! Command-line front end: load machine/protocol/distribution files, run
//! the library operations, and emit JSON or TSV results.
//!
//! Exit codes: 0 on success (for `accept`, the machine was accepted),
//! 1 on a domain failure (invalid machine, rejected language,
//! inapplicable operation), 2 on an input error (unreadable file,
//! malformed JSON, bad flags, enumeration cap exceeded).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use proclang_core::json::{
    distribution_to_value, distributions_from_json, machine_to_value, parse_machine,
    protocol_from_json, to_canonical_json,
};
use proclang_core::language::{
    accepts_with_threshold, irreducible_forbidden_words, plot_data, DEFAULT_MAX_WORDS,
};
use proclang_core::linalg::DEFAULT_TOL;
use proclang_core::machines;
use proclang_core::protocol::MeasurementProtocol;
use proclang_core::{Error, Machine};

/// Finite-state stochastic and quantum machines for process languages.
#[derive(Parser)]
#[command(name = "proclang", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine file against its class invariants and the
    /// structural propositions.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Tolerance for the numeric predicates.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Enumerate the word distribution at one length.
    Words {
        #[command(flatten)]
        input: InputArgs,
        /// Word length (defaults to the protocol's repeat count worth of
        /// measurements when --protocol is given).
        #[arg(long, short = 'L')]
        length: Option<usize>,
        /// Measurement protocol: "I", "II", or a protocol JSON path.
        #[arg(long)]
        protocol: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convert a deterministic quantum generator to its equivalent
    /// classical generator.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reverse a quantum machine (transpose every unitary).
    Reverse {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stationary distribution (stochastic) or stationary mixed state
    /// (quantum).
    Stationary {
        #[command(flatten)]
        input: InputArgs,
        /// Tolerance for the stationary fixed point.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Irreducible forbidden words up to a horizon.
    Forbidden {
        #[command(flatten)]
        input: InputArgs,
        /// Horizon: report forbidden words of length ≤ this.
        #[arg(long, short = 'L')]
        length: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Test whether the machine reproduces a reference language within a
    /// threshold. Exit 0 = accept, 1 = reject.
    Accept {
        #[command(flatten)]
        input: InputArgs,
        /// Reference distribution file (one object or an array).
        #[arg(long)]
        r#ref: PathBuf,
        /// Word-probability threshold δ.
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plot data for a binary-alphabet distribution: x = the word as a
    /// binary fraction, y = log2 probability density.
    Plotdata {
        #[command(flatten)]
        input: InputArgs,
        /// Word length.
        #[arg(long, short = 'L')]
        length: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Machine JSON file.
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Name of a shipped example machine.
    #[arg(long)]
    example: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "tsv"])]
    format: String,
}

enum CliError {
    /// Unreadable/malformed input or a request outside the configured
    /// limits; exit code 2.
    Input(String),
    /// A well-formed request the domain rejects; exit code 1.
    Domain(String),
}

impl CliError {
    fn from_core(err: Error) -> Self {
        match err {
            Error::EnumerationCap { .. } => CliError::Input(err.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Validate { input, tol } => cmd_validate(&input, tol),
        Command::Words {
            input,
            length,
            protocol,
            output,
        } => cmd_words(&input, length, protocol.as_deref(), &output),
        Command::Convert { input, output } => cmd_convert(&input, &output),
        Command::Reverse { input, output } => cmd_reverse(&input, &output),
        Command::Stationary { input, tol, output } => cmd_stationary(&input, tol, &output),
        Command::Forbidden {
            input,
            length,
            output,
        } => cmd_forbidden(&input, length, &output),
        Command::Accept {
            input,
            r#ref,
            delta,
            output,
        } => cmd_accept(&input, &r#ref, delta, &output),
        Command::Plotdata {
            input,
            length,
            output,
        } => cmd_plotdata(&input, length, &output),
    }
}

/// Cap on |alphabet|^L per enumeration, overridable via the environment.
fn max_words() -> CliResult<usize> {
    match std::env::var("PROCLANG_MAX_WORDS") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| CliError::Input(format!("PROCLANG_MAX_WORDS=`{raw}` is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_WORDS),
    }
}

fn load_machine(input: &InputArgs) -> CliResult<Machine> {
    match (&input.machine, &input.example) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "pass exactly one of --machine and --example".into(),
        )),
        (None, None) => Err(CliError::Input(
            "a machine is required: --machine FILE or --example NAME".into(),
        )),
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let raw = parse_machine(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            raw.build().map_err(CliError::from_core)
        }
        (None, Some(name)) => machines::by_name(name)
            .map(|e| e.machine)
            .ok_or_else(|| {
                let known: Vec<&str> = machines::all_examples().iter().map(|e| e.name).collect();
                CliError::Input(format!("unknown example `{name}`; known: {known:?}"))
            }),
    }
}

fn resolve_protocol(machine: &Machine, selector: &str) -> CliResult<MeasurementProtocol> {
    let inputs = match machine {
        Machine::Quantum(m) => m.inputs(),
        Machine::Stochastic(m) => m.inputs(),
    };
    match selector {
        "I" => Ok(MeasurementProtocol::measure_every_step(inputs)),
        "II" => Ok(MeasurementProtocol::measure_period_end(inputs)),
        path => {
            let text =
                fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            protocol_from_json(&text).map_err(CliError::from_core)
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_value(output: &OutputArgs, value: &Value) -> CliResult<()> {
    emit(output, &to_canonical_json(value))
}

fn cmd_validate(input: &InputArgs, tol: f64) -> CliResult<()> {
    let machine = load_machine(input)?;
    println!(
        "ok: {} machine with {} states",
        machine.kind_code(),
        machine.states().len()
    );
    match &machine {
        Machine::Stochastic(m) => {
            for ((x, y), matrix) in m.matrices() {
                let substochastic = proclang_core::linalg::is_substochastic(matrix, tol)
                    .map_err(CliError::from_core)?;
                if !substochastic {
                    return Err(CliError::Domain(format!(
                        "matrix for `{}`/`{}` is not substochastic at tol {tol:e}",
                        m.inputs()[*x],
                        m.outputs()[*y]
                    )));
                }
            }
            let stochastic =
                proclang_core::linalg::is_stochastic(&m.state_to_state_matrix(), tol)
                    .map_err(CliError::from_core)?;
            if !stochastic {
                return Err(CliError::Domain(format!(
                    "state-to-state matrix is not stochastic at tol {tol:e}"
                )));
            }
            println!(
                "ok: transition matrices substochastic, state-to-state sum stochastic (tol {tol:e})"
            );
            println!("ok: deterministic: {}", m.is_deterministic());
        }
        Machine::Quantum(m) => {
            for (key, u) in m.unitaries() {
                let unitary =
                    proclang_core::linalg::is_unitary(u, tol).map_err(CliError::from_core)?;
                if !unitary {
                    return Err(CliError::Domain(format!(
                        "matrix for input `{key}` is not unitary at tol {tol:e}"
                    )));
                }
                println!("ok: U({key}) unitary (tol {tol:e})");
            }
            let report = m.structural_checks();
            if !report.is_ok() {
                for violation in report.violations() {
                    println!("FAIL: {violation}");
                }
                return Err(CliError::Domain(
                    "structural checks failed on a validated machine (library bug?)".into(),
                ));
            }
            println!("ok: structural checks (strong connectivity, incoming labels, alphabet bound)");
            println!(
                "ok: deterministic: {}, complete: {}",
                m.is_deterministic(),
                m.is_complete()
            );
        }
    }
    Ok(())
}

fn cmd_words(
    input: &InputArgs,
    length: Option<usize>,
    protocol: Option<&str>,
    output: &OutputArgs,
) -> CliResult<()> {
    let machine = load_machine(input)?;
    let protocol = protocol
        .map(|selector| resolve_protocol(&machine, selector))
        .transpose()?;
    let length = match (length, &protocol) {
        (Some(l), _) => l,
        (None, Some(p)) => p.default_observed_length(),
        (None, None) => return Err(CliError::Input("--length is required".into())),
    };
    let d = machine
        .distribution(length, protocol.as_ref(), max_words()?)
        .map_err(CliError::from_core)?;
    match output.format.as_str() {
        "json" => emit_value(output, &distribution_to_value(&d)),
        _ => {
            let mut text = String::new();
            for (word, p) in d.iter() {
                text.push_str(&format!("{}\t{}\n", d.render(word), p));
            }
            emit(output, &text)
        }
    }
}

fn cmd_convert(input: &InputArgs, output: &OutputArgs) -> CliResult<()> {
    let machine = load_machine(input)?;
    let Machine::Quantum(q) = &machine else {
        return Err(CliError::Domain(
            "convert expects a deterministic quantum generator".into(),
        ));
    };
    let sdg = q.equivalent_sdg().map_err(CliError::from_core)?;
    emit_value(output, &machine_to_value(&Machine::Stochastic(sdg)))
}

fn cmd_reverse(input: &InputArgs, output: &OutputArgs) -> CliResult<()> {
    let machine = load_machine(input)?;
    let Machine::Quantum(q) = &machine else {
        return Err(CliError::Domain("reverse expects a quantum machine".into()));
    };
    let reversed = q.reverse().map_err(CliError::from_core)?;
    emit_value(output, &machine_to_value(&Machine::Quantum(reversed)))
}

fn cmd_stationary(input: &InputArgs, tol: f64, output: &OutputArgs) -> CliResult<()> {
    let machine = load_machine(input)?;
    let value = match &machine {
        Machine::Stochastic(m) => {
            let pi =
                proclang_core::linalg::stationary_left_eigenvector(&m.state_to_state_matrix(), tol)
                    .map_err(CliError::from_core)?;
            json!({
                "type": "state-distribution",
                "states": m.states(),
                "probabilities": pi.entries().iter().map(|e| e.re).collect::<Vec<_>>(),
            })
        }
        Machine::Quantum(m) => {
            let rho = m.stationary_state().map_err(CliError::from_core)?;
            let rows: Vec<Vec<[f64; 2]>> = (0..m.n())
                .map(|i| rho.matrix().row(i).iter().map(|e| [e.re, e.im]).collect())
                .collect();
            json!({
                "type": "density-matrix",
                "states": m.states(),
                "matrix": rows,
            })
        }
    };
    emit_value(output, &value)
}

fn cmd_forbidden(input: &InputArgs, horizon: usize, output: &OutputArgs) -> CliResult<()> {
    let machine = load_machine(input)?;
    let report = irreducible_forbidden_words(&machine, horizon, max_words()?)
        .map_err(CliError::from_core)?;
    emit_value(
        output,
        &json!({
            "horizon": report.horizon,
            "irreducible": report.irreducible,
        }),
    )
}

fn cmd_accept(
    input: &InputArgs,
    ref_path: &PathBuf,
    delta: f64,
    output: &OutputArgs,
) -> CliResult<()> {
    let machine = load_machine(input)?;
    let text = fs::read_to_string(ref_path)
        .map_err(|e| CliError::Input(format!("{}: {e}", ref_path.display())))?;
    let reference = distributions_from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let verdict = accepts_with_threshold(&machine, &reference, delta, max_words()?)
        .map_err(CliError::from_core)?;
    emit_value(
        output,
        &json!({
            "accepted": verdict.accepted,
            "delta": delta,
            "worst_word": verdict.worst_word,
            "worst_deviation": verdict.worst_deviation,
        }),
    )?;
    if verdict.accepted {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "language rejected at delta = {delta}"
        )))
    }
}

fn cmd_plotdata(input: &InputArgs, length: usize, output: &OutputArgs) -> CliResult<()> {
    let machine = load_machine(input)?;
    let d = machine
        .distribution(length, None, max_words()?)
        .map_err(CliError::from_core)?;
    let points = plot_data(&d).map_err(CliError::from_core)?;
    match output.format.as_str() {
        "json" => emit_value(
            output,
            &Value::Array(points.iter().map(|p| json!({"x": p.x, "y": p.y})).collect()),
        ),
        _ => {
            let mut text = String::new();
            for p in &points {
                text.push_str(&format!("{}\t{}\n", p.x, p.y));
            }
            emit(output, &text)
        }
    }
}
