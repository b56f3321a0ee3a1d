//! Finite-state stochastic and quantum transducers, recognizers, and
//! generators for process languages.
//!
//! A *process language* is a subword-closed stochastic language whose
//! word probabilities are normalized at each length and consistent under
//! extension. This crate provides:
//!
//! - [`stochastic`]: classical machines (ST/SR/SG and their deterministic
//!   variants) with matrix-product word probabilities, state
//!   classification, and recurrent restriction;
//! - [`quantum`]: quantum machines (QT/QR/QG) built from per-input
//!   unitaries and a projector partition of the basis, with pure-state
//!   and stationary (trace-formula) word probabilities, the equivalent
//!   classical generator of a deterministic quantum generator, reversal,
//!   and structural checks;
//! - [`language`]: word-distribution enumeration, the process-language
//!   axioms, irreducible forbidden words, δ-threshold acceptance, and
//!   plot data;
//! - [`protocol`]: periodic measurement protocols (when to measure, what
//!   to drive with) plus the two-qubit oracle-classification circuit;
//! - [`machines`]: the canonical examples (golden mean, even process,
//!   a simple nondeterministic source, the iterated beam splitter, a
//!   trapped-ion transducer);
//! - [`json`]: the machine/distribution/protocol wire formats with a
//!   canonical float encoding, so emitted files round-trip byte for byte.

pub mod error;
pub mod graph;
pub mod json;
pub mod language;
pub mod linalg;
pub mod machines;
pub mod protocol;
pub mod quantum;
pub mod stochastic;

pub use error::{Error, Result};
pub use language::{ForbiddenWordReport, WordDistribution};
pub use linalg::{Complex, ComplexMatrix, ComplexVector};
pub use machines::ExampleMachine;
pub use protocol::MeasurementProtocol;
pub use quantum::{DensityMatrix, QuantumMachine};
pub use stochastic::StochasticMachine;

/// Probabilities at or below this cutoff count as structural zeros,
/// separating genuinely forbidden words from floating-point dust.
pub const STRUCTURAL_ZERO: f64 = 1e-12;

/// Either machine class, as loaded from a machine file.
#[derive(Debug, Clone, PartialEq)]
pub enum Machine {
    Stochastic(StochasticMachine),
    Quantum(QuantumMachine),
}

impl Machine {
    pub fn kind_code(&self) -> &'static str {
        match self {
            Machine::Stochastic(m) => m.kind().code(),
            Machine::Quantum(m) => m.kind().code(),
        }
    }

    pub fn states(&self) -> &[String] {
        match self {
            Machine::Stochastic(m) => m.states(),
            Machine::Quantum(m) => m.states(),
        }
    }

    pub fn as_stochastic(&self) -> Option<&StochasticMachine> {
        match self {
            Machine::Stochastic(m) => Some(m),
            Machine::Quantum(_) => None,
        }
    }

    pub fn as_quantum(&self) -> Option<&QuantumMachine> {
        match self {
            Machine::Quantum(m) => Some(m),
            Machine::Stochastic(_) => None,
        }
    }

    /// Unwraps the stochastic variant; panics on a quantum machine.
    pub fn into_stochastic(self) -> StochasticMachine {
        match self {
            Machine::Stochastic(m) => m,
            Machine::Quantum(_) => panic!("expected a stochastic machine"),
        }
    }

    /// Unwraps the quantum variant; panics on a stochastic machine.
    pub fn into_quantum(self) -> QuantumMachine {
        match self {
            Machine::Quantum(m) => m,
            Machine::Stochastic(_) => panic!("expected a quantum machine"),
        }
    }
}
