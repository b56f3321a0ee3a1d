//! Measurement protocols: periodic schedules deciding, per time step,
//! which input drives the machine and whether the projective measurement
//! fires. Unmeasured steps contribute bare unitary evolution (λ slots)
//! and never appear in observed words.
//!
//! Stationary protocol distributions average over the phase of the
//! period: an observer of the long-running system starts reading at a
//! uniformly random step. Without the phase average the word set of a
//! multi-pulse schedule is in general not subword closed (a suffix can
//! begin mid-period) and so fails the process-language axioms. Runs from
//! an explicit state vector ([`run_protocol_from`]) are anchored at the
//! period start instead.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language::WordDistribution;
use crate::linalg::{is_unitary, ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::machines;
use crate::quantum::QuantumMachine;
use crate::stochastic::StochasticMachine;

/// One step of a protocol period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolStep {
    pub input: String,
    pub measure: bool,
}

/// A periodic measurement schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementProtocol {
    period: Vec<ProtocolStep>,
    repeat: usize,
}

impl MeasurementProtocol {
    pub fn new(period: Vec<ProtocolStep>, repeat: usize) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidProtocol("empty period".into()));
        }
        if !period.iter().any(|s| s.measure) {
            return Err(Error::InvalidProtocol(
                "a period must measure at least once, or nothing is ever observed".into(),
            ));
        }
        if repeat == 0 {
            return Err(Error::InvalidProtocol("repeat count must be positive".into()));
        }
        Ok(Self { period, repeat })
    }

    /// Protocol I: cycle the inputs, measuring after every step.
    pub fn measure_every_step(inputs: &[String]) -> Self {
        Self {
            period: inputs
                .iter()
                .map(|x| ProtocolStep {
                    input: x.clone(),
                    measure: true,
                })
                .collect(),
            repeat: 1,
        }
    }

    /// Protocol II: cycle the inputs, measuring only at the end of the
    /// cycle. Single-input machines get a two-step period so that one
    /// unmeasured step precedes each measurement.
    pub fn measure_period_end(inputs: &[String]) -> Self {
        let cycle: Vec<&String> = if inputs.len() == 1 {
            vec![&inputs[0], &inputs[0]]
        } else {
            inputs.iter().collect()
        };
        let last = cycle.len() - 1;
        Self {
            period: cycle
                .into_iter()
                .enumerate()
                .map(|(i, x)| ProtocolStep {
                    input: x.clone(),
                    measure: i == last,
                })
                .collect(),
            repeat: 1,
        }
    }

    pub fn period(&self) -> &[ProtocolStep] {
        &self.period
    }

    pub fn repeat(&self) -> usize {
        self.repeat
    }

    pub fn measures_per_period(&self) -> usize {
        self.period.iter().filter(|s| s.measure).count()
    }

    /// Observed word length of `repeat` full periods; the CLI default.
    pub fn default_observed_length(&self) -> usize {
        self.repeat * self.measures_per_period()
    }

    /// The step sequence up to (and including) the n-th measurement,
    /// starting from the given phase within the period.
    fn schedule_from(&self, phase: usize, observed: usize) -> Vec<&ProtocolStep> {
        let mut steps = Vec::new();
        let mut measured = 0;
        let mut position = phase % self.period.len();
        while measured < observed {
            let step = &self.period[position];
            steps.push(step);
            if step.measure {
                measured += 1;
            }
            position = (position + 1) % self.period.len();
        }
        steps
    }

    /// The step sequence anchored at the period start.
    fn schedule(&self, observed: usize) -> Vec<&ProtocolStep> {
        self.schedule_from(0, observed)
    }

    fn check_inputs(&self, alphabet: &[String]) -> Result<()> {
        for step in &self.period {
            if !alphabet.contains(&step.input) {
                return Err(Error::InvalidProtocol(format!(
                    "protocol names input `{}`, machine has {:?}",
                    step.input, alphabet
                )));
            }
        }
        Ok(())
    }
}

fn check_cap(alphabet_len: usize, length: usize, cap: usize) -> Result<()> {
    match (alphabet_len as u128).checked_pow(length as u32) {
        Some(words) if words <= cap as u128 => Ok(()),
        Some(words) => Err(Error::EnumerationCap {
            words,
            length,
            cap,
        }),
        None => Err(Error::EnumerationCap {
            words: u128::MAX,
            length,
            cap,
        }),
    }
}

/// Distribution over observed words of length `observed` when the
/// protocol drives the machine from its stationary state, averaged over
/// the phase of the period. λ steps apply U(x) alone; only measured
/// steps contribute observed symbols.
pub fn run_protocol(
    m: &QuantumMachine,
    protocol: &MeasurementProtocol,
    observed: usize,
    cap: usize,
) -> Result<WordDistribution> {
    let alphabet = m.measured_alphabet().to_vec();
    if m.unitaries().len() != m.inputs().len() {
        return Err(Error::Unsupported(
            "protocols drive machines whose unitaries are keyed by input".into(),
        ));
    }
    protocol.check_inputs(m.inputs())?;
    check_cap(alphabet.len(), observed, cap)?;

    let phases = protocol.period().len();
    let weight = 1.0 / phases as f64;
    let mut probs = BTreeMap::new();
    for phase in 0..phases {
        let schedule = protocol.schedule_from(phase, observed);
        let mut prefix = Vec::with_capacity(observed);
        walk_schedule(
            m,
            &schedule,
            ComplexMatrix::identity(m.n()),
            &alphabet,
            weight,
            &mut prefix,
            &mut probs,
        )?;
    }
    Ok(WordDistribution::new(alphabet, observed, probs))
}

fn walk_schedule(
    m: &QuantumMachine,
    schedule: &[&ProtocolStep],
    t: ComplexMatrix,
    alphabet: &[String],
    weight: f64,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) -> Result<()> {
    let Some((step, rest)) = schedule.split_first() else {
        *probs.entry(prefix.clone()).or_insert(0.0) +=
            weight * m.stationary_operator_probability(&t);
        return Ok(());
    };
    if !step.measure {
        let next = t.mul(&m.transition_operator(&step.input, None)?);
        return walk_schedule(m, rest, next, alphabet, weight, prefix, probs);
    }
    for (idx, y) in alphabet.iter().enumerate() {
        prefix.push(idx as u8);
        let next = t.mul(&m.transition_operator(&step.input, Some(y))?);
        if next.is_zero() {
            record_schedule_zeros(rest, alphabet.len(), prefix, probs);
        } else {
            walk_schedule(m, rest, next, alphabet, weight, prefix, probs)?;
        }
        prefix.pop();
    }
    Ok(())
}

fn record_schedule_zeros(
    schedule: &[&ProtocolStep],
    alphabet_len: usize,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    let remaining = schedule.iter().filter(|s| s.measure).count();
    record_zeros_depth(remaining, alphabet_len, prefix, probs);
}

fn record_zeros_depth(
    remaining: usize,
    alphabet_len: usize,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    if remaining == 0 {
        probs.entry(prefix.clone()).or_insert(0.0);
        return;
    }
    for idx in 0..alphabet_len {
        prefix.push(idx as u8);
        record_zeros_depth(remaining - 1, alphabet_len, prefix, probs);
        prefix.pop();
    }
}

/// Same schedule evaluated from a pure state rather than the stationary
/// mixture: each observed word gets ‖ψ·T‖².
pub fn run_protocol_from(
    m: &QuantumMachine,
    protocol: &MeasurementProtocol,
    observed: usize,
    from: &ComplexVector,
    cap: usize,
) -> Result<WordDistribution> {
    let alphabet = m.measured_alphabet().to_vec();
    protocol.check_inputs(m.inputs())?;
    check_cap(alphabet.len(), observed, cap)?;
    crate::quantum::check_state_vector(from, m.n())?;

    let schedule = protocol.schedule(observed);
    let mut probs = BTreeMap::new();
    let mut prefix = Vec::with_capacity(observed);
    walk_from(m, &schedule, from.clone(), &alphabet, &mut prefix, &mut probs)?;
    Ok(WordDistribution::new(alphabet, observed, probs))
}

fn walk_from(
    m: &QuantumMachine,
    schedule: &[&ProtocolStep],
    phi: ComplexVector,
    alphabet: &[String],
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) -> Result<()> {
    let Some((step, rest)) = schedule.split_first() else {
        probs.insert(prefix.clone(), phi.norm_sqr());
        return Ok(());
    };
    if !step.measure {
        let next = phi.mul_matrix(&m.transition_operator(&step.input, None)?);
        return walk_from(m, rest, next, alphabet, prefix, probs);
    }
    for (idx, y) in alphabet.iter().enumerate() {
        prefix.push(idx as u8);
        let next = phi.mul_matrix(&m.transition_operator(&step.input, Some(y))?);
        if next.is_zero() {
            record_schedule_zeros(rest, alphabet.len(), prefix, probs);
        } else {
            walk_from(m, rest, next, alphabet, prefix, probs)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Classical marginal of a stochastic generator under a protocol,
/// phase-averaged like [`run_protocol`]: unmeasured steps advance by the
/// state-to-state matrix (the emitted symbol is ignored), measured steps
/// by the per-symbol matrix.
pub fn run_protocol_stochastic(
    m: &StochasticMachine,
    protocol: &MeasurementProtocol,
    observed: usize,
    cap: usize,
) -> Result<WordDistribution> {
    let alphabet = m.driving_alphabet()?.to_vec();
    protocol.check_inputs(m.inputs())?;
    check_cap(alphabet.len(), observed, cap)?;

    let state_to_state = m.state_to_state_matrix();
    let matrices: Vec<Option<&ComplexMatrix>> = (0..alphabet.len())
        .map(|i| m.driving_matrix(i))
        .collect::<Result<_>>()?;

    let phases = protocol.period().len();
    let weight = 1.0 / phases as f64;
    let mut probs = BTreeMap::new();
    for phase in 0..phases {
        let schedule = protocol.schedule_from(phase, observed);
        let mut prefix = Vec::with_capacity(observed);
        walk_stochastic_schedule(
            &schedule,
            m.initial().clone(),
            &state_to_state,
            &matrices,
            weight,
            &mut prefix,
            &mut probs,
        );
    }
    Ok(WordDistribution::new(alphabet, observed, probs))
}

fn walk_stochastic_schedule(
    schedule: &[&ProtocolStep],
    v: ComplexVector,
    state_to_state: &ComplexMatrix,
    matrices: &[Option<&ComplexMatrix>],
    weight: f64,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    let Some((step, rest)) = schedule.split_first() else {
        *probs.entry(prefix.clone()).or_insert(0.0) += weight * v.sum().re;
        return;
    };
    if !step.measure {
        let next = v.mul_matrix(state_to_state);
        return walk_stochastic_schedule(
            rest,
            next,
            state_to_state,
            matrices,
            weight,
            prefix,
            probs,
        );
    }
    for (idx, matrix) in matrices.iter().enumerate() {
        prefix.push(idx as u8);
        let next = matrix.map(|t| v.mul_matrix(t));
        match next {
            Some(next) if !next.is_zero() => {
                walk_stochastic_schedule(
                    rest,
                    next,
                    state_to_state,
                    matrices,
                    weight,
                    prefix,
                    probs,
                );
            }
            _ => record_schedule_zeros(rest, matrices.len(), prefix, probs),
        }
        prefix.pop();
    }
}

/// Result of one run of the two-qubit oracle-classification circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeutschOutcome {
    /// Probability of measuring ion 1 in state 0.
    pub prob_zero: f64,
    /// Probability of measuring ion 1 in state 1.
    pub prob_one: f64,
}

impl DeutschOutcome {
    /// The measured symbol when one projector captures essentially all
    /// amplitude (probability ≥ 1 − tol).
    pub fn deterministic_outcome(&self, tol: f64) -> Option<&'static str> {
        if self.prob_zero >= 1.0 - tol {
            Some("0")
        } else if self.prob_one >= 1.0 - tol {
            Some("1")
        } else {
            None
        }
    }
}

/// Conventional statement labels for the two outcomes. The mapping is
/// surfaced as metadata; correctness claims live on the raw outcome
/// probabilities.
pub fn deutsch_statement_label(outcome: &str) -> Option<&'static str> {
    match outcome {
        "0" => Some("A: f is not constant"),
        "1" => Some("B: f is not balanced"),
        _ => None,
    }
}

/// Runs the two-qubit Deutsch circuit: prepare ⟨0100|, apply H⊗H, the
/// oracle, H⊗I, and measure ion 1.
pub fn deutsch_run(oracle: &ComplexMatrix) -> Result<DeutschOutcome> {
    if oracle.rows() != 4 || oracle.cols() != 4 {
        return Err(Error::Dimension(format!(
            "oracle must be 4x4, got {}x{}",
            oracle.rows(),
            oracle.cols()
        )));
    }
    if !is_unitary(oracle, DEFAULT_TOL)? {
        return Err(Error::InvalidMachine("oracle is not unitary".into()));
    }
    let mut psi = ComplexVector::basis(4, 1);
    for u in [&machines::ion_u_a(), oracle, &machines::ion_u_c()] {
        psi = psi.mul_matrix(u);
    }
    let prob_zero = psi.entry(0).norm_sqr() + psi.entry(1).norm_sqr();
    let prob_one = psi.entry(2).norm_sqr() + psi.entry(3).norm_sqr();
    Ok(DeutschOutcome {
        prob_zero,
        prob_one,
    })
}
