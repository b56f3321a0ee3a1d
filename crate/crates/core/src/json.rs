//! Wire formats: machines, word distributions, and protocols as JSON.
//!
//! Parsing and validation are separate stages so callers can distinguish
//! malformed input from a well-formed description of an invalid machine.
//! Complex values are written as `[re, im]` pairs; bare reals are
//! accepted on input as `im = 0`. Emission is canonical — object keys
//! sorted, every float written with 17 significant digits — so emitted
//! files re-parse and re-emit byte-identically.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::language::WordDistribution;
use crate::linalg::{Complex, ComplexMatrix, ComplexVector};
use crate::protocol::{MeasurementProtocol, ProtocolStep};
use crate::quantum::{QuantumKind, QuantumMachine};
use crate::stochastic::{StochasticKind, StochasticMachine};
use crate::Machine;

/// A complex entry on input: bare real or `[re, im]`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum RawNumber {
    Real(f64),
    Pair([f64; 2]),
}

impl RawNumber {
    fn to_complex(self) -> Complex {
        match self {
            RawNumber::Real(re) => Complex::new(re, 0.0),
            RawNumber::Pair([re, im]) => Complex::new(re, im),
        }
    }
}

fn raw_matrix(rows: Vec<Vec<RawNumber>>) -> Result<ComplexMatrix> {
    ComplexMatrix::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(RawNumber::to_complex).collect())
            .collect(),
    )
}

fn raw_vector(entries: Vec<RawNumber>) -> ComplexVector {
    ComplexVector::new(entries.into_iter().map(RawNumber::to_complex).collect())
}

#[derive(Debug, Deserialize)]
struct KindProbe {
    kind: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStochasticMachine {
    pub kind: String,
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<RawNumber>>>,
    pub initial: Vec<RawNumber>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuantumMachine {
    pub kind: String,
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub unitaries: BTreeMap<String, Vec<Vec<RawNumber>>>,
    pub projectors: BTreeMap<String, Vec<usize>>,
    pub start: Vec<RawNumber>,
}

/// A machine file after parsing but before validation.
#[derive(Debug)]
pub enum RawMachine {
    Stochastic(RawStochasticMachine),
    Quantum(RawQuantumMachine),
}

/// Parses a machine file. Errors here mean malformed input; an invalid
/// machine surfaces later, from [`RawMachine::build`].
pub fn parse_machine(text: &str) -> std::result::Result<RawMachine, serde_json::Error> {
    let probe: KindProbe = serde_json::from_str(text)?;
    match probe.kind.as_str() {
        "QT" | "QR" | "QG" => Ok(RawMachine::Quantum(serde_json::from_str(text)?)),
        _ => Ok(RawMachine::Stochastic(serde_json::from_str(text)?)),
    }
}

impl RawMachine {
    /// Validates the parsed description into a machine.
    pub fn build(self) -> Result<Machine> {
        match self {
            RawMachine::Stochastic(raw) => raw.build().map(Machine::Stochastic),
            RawMachine::Quantum(raw) => raw.build().map(Machine::Quantum),
        }
    }
}

impl RawStochasticMachine {
    pub fn build(self) -> Result<StochasticMachine> {
        let kind = StochasticKind::from_code(&self.kind).ok_or_else(|| {
            Error::InvalidMachine(format!("unknown stochastic machine kind `{}`", self.kind))
        })?;
        let mut matrices = BTreeMap::new();
        for (key, rows) in self.matrices {
            let (x, y) = parse_matrix_key(kind, &key, &self.inputs, &self.outputs)?;
            matrices.insert((x, y), raw_matrix(rows)?);
        }
        StochasticMachine::new(
            kind,
            self.states,
            self.inputs,
            self.outputs,
            matrices,
            raw_vector(self.initial),
        )
    }
}

fn parse_matrix_key(
    kind: StochasticKind,
    key: &str,
    inputs: &[String],
    outputs: &[String],
) -> Result<(usize, usize)> {
    let position = |alphabet: &[String], symbol: &str| {
        alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: symbol.to_string(),
                alphabet: alphabet.to_vec(),
            })
    };
    match kind {
        StochasticKind::Generator => Ok((0, position(outputs, key)?)),
        StochasticKind::Recognizer => Ok((position(inputs, key)?, 0)),
        StochasticKind::Transducer => {
            let (y, x) = key.split_once('|').ok_or_else(|| {
                Error::InvalidMachine(format!(
                    "transducer matrix key `{key}` must have the form `y|x`"
                ))
            })?;
            Ok((position(inputs, x)?, position(outputs, y)?))
        }
    }
}

impl RawQuantumMachine {
    pub fn build(self) -> Result<QuantumMachine> {
        let kind = QuantumKind::from_code(&self.kind).ok_or_else(|| {
            Error::InvalidMachine(format!("unknown quantum machine kind `{}`", self.kind))
        })?;
        let unitaries = self
            .unitaries
            .into_iter()
            .map(|(key, rows)| Ok((key, raw_matrix(rows)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        QuantumMachine::new(
            kind,
            self.states,
            self.inputs,
            self.outputs,
            unitaries,
            self.projectors,
            raw_vector(self.start),
        )
    }
}

/// Loads and validates a machine in one step.
pub fn machine_from_json(text: &str) -> Result<Machine> {
    parse_machine(text)
        .map_err(|e| Error::InvalidMachine(format!("parse error: {e}")))?
        .build()
}

fn complex_value(c: Complex) -> Value {
    json!([c.re, c.im])
}

fn matrix_value(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&e| complex_value(e)).collect()))
            .collect(),
    )
}

fn vector_value(v: &ComplexVector) -> Value {
    Value::Array(v.entries().iter().map(|&e| complex_value(e)).collect())
}

/// Machine as a JSON value in the wire schema.
pub fn machine_to_value(machine: &Machine) -> Value {
    match machine {
        Machine::Stochastic(m) => {
            let mut matrices = Map::new();
            for (&(x, y), matrix) in m.matrices() {
                let key = match m.kind() {
                    StochasticKind::Generator => m.outputs()[y].clone(),
                    StochasticKind::Recognizer => m.inputs()[x].clone(),
                    StochasticKind::Transducer => {
                        format!("{}|{}", m.outputs()[y], m.inputs()[x])
                    }
                };
                matrices.insert(key, matrix_value(matrix));
            }
            json!({
                "kind": m.kind().code(),
                "states": m.states(),
                "inputs": m.inputs(),
                "outputs": m.outputs(),
                "matrices": Value::Object(matrices),
                "initial": vector_value(m.initial()),
            })
        }
        Machine::Quantum(m) => {
            let unitaries: Map<String, Value> = m
                .unitaries()
                .iter()
                .map(|(k, u)| (k.clone(), matrix_value(u)))
                .collect();
            json!({
                "kind": m.kind().code(),
                "states": m.states(),
                "inputs": m.inputs(),
                "outputs": m.outputs(),
                "unitaries": Value::Object(unitaries),
                "projectors": m.projectors(),
                "start": vector_value(m.start()),
            })
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDistribution {
    pub alphabet: Vec<String>,
    #[serde(rename = "L")]
    pub length: usize,
    pub probs: BTreeMap<String, f64>,
}

impl RawDistribution {
    pub fn build(self) -> Result<WordDistribution> {
        let mut probs = BTreeMap::new();
        for (word, p) in self.probs {
            let indices = crate::language::parse_word(&self.alphabet, &word)?;
            if indices.len() != self.length {
                return Err(Error::LengthMismatch(format!(
                    "word `{word}` has length {}, distribution declares L = {}",
                    indices.len(),
                    self.length
                )));
            }
            probs.insert(indices, p);
        }
        Ok(WordDistribution::new(self.alphabet, self.length, probs))
    }
}

/// Loads one distribution.
pub fn distribution_from_json(text: &str) -> Result<WordDistribution> {
    let raw: RawDistribution = serde_json::from_str(text)
        .map_err(|e| Error::InvalidMachine(format!("parse error: {e}")))?;
    raw.build()
}

/// Loads a reference language: either a single distribution object or an
/// array of them.
pub fn distributions_from_json(text: &str) -> Result<Vec<WordDistribution>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        Many(Vec<RawDistribution>),
        One(RawDistribution),
    }
    let raw: OneOrMany = serde_json::from_str(text)
        .map_err(|e| Error::InvalidMachine(format!("parse error: {e}")))?;
    match raw {
        OneOrMany::One(d) => Ok(vec![d.build()?]),
        OneOrMany::Many(ds) => ds.into_iter().map(RawDistribution::build).collect(),
    }
}

/// Distribution as a JSON value.
pub fn distribution_to_value(d: &WordDistribution) -> Value {
    let probs: Map<String, Value> = d
        .iter()
        .map(|(word, p)| (d.render(word), Value::from(p)))
        .collect();
    json!({
        "alphabet": d.alphabet(),
        "L": d.length(),
        "probs": Value::Object(probs),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProtocolStep {
    x: String,
    measure: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProtocol {
    period: Vec<RawProtocolStep>,
    repeat: usize,
}

/// Loads and validates a protocol.
pub fn protocol_from_json(text: &str) -> Result<MeasurementProtocol> {
    let raw: RawProtocol = serde_json::from_str(text)
        .map_err(|e| Error::InvalidProtocol(format!("parse error: {e}")))?;
    MeasurementProtocol::new(
        raw.period
            .into_iter()
            .map(|s| ProtocolStep {
                input: s.x,
                measure: s.measure,
            })
            .collect(),
        raw.repeat,
    )
}

/// Protocol as a JSON value.
pub fn protocol_to_value(p: &MeasurementProtocol) -> Value {
    json!({
        "period": p.period().iter().map(|s| json!({
            "x": s.input,
            "measure": s.measure,
        })).collect::<Vec<_>>(),
        "repeat": p.repeat(),
    })
}

struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        // 17 significant digits: every f64 round-trips bit-exactly.
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a JSON value canonically: sorted object keys (guaranteed by
/// `serde_json`'s `BTreeMap`-backed values), floats at 17 significant
/// digits, one trailing newline.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing a finite JSON value cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
