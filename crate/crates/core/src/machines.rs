//! The canonical example machines: golden mean, even process, the simple
//! nondeterministic source, the iterated beam splitter, and the
//! trapped-ion transducer.
//!
//! Each constructor returns a fully validated machine; the matrices are
//! written out literally so they can be eyeballed against their textbook
//! forms.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::quantum::{QuantumKind, QuantumMachine};
use crate::stochastic::StochasticMachine;
use crate::Machine;

/// A named, validated machine with a one-line description.
#[derive(Debug, Clone)]
pub struct ExampleMachine {
    pub name: &'static str,
    pub machine: Machine,
    pub note: &'static str,
}

/// All shipped examples, in a stable order.
pub fn all_examples() -> Vec<ExampleMachine> {
    vec![
        golden_mean_sdr(),
        even_sdg(),
        sns_sg(),
        golden_mean_qdg(),
        even_qdg(),
        beam_splitter_qdg(),
        trapped_ion_qt(),
    ]
}

/// Looks an example up by its CLI name.
pub fn by_name(name: &str) -> Option<ExampleMachine> {
    all_examples().into_iter().find(|e| e.name == name)
}

/// Three-state deterministic recognizer for the Golden Mean process:
/// words with no `00`, fair coin after every `1`.
pub fn golden_mean_sdr() -> ExampleMachine {
    let t0 = ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 1.0 / 3.0],
        &[0.0, 0.0, 0.5],
        &[0.0, 0.0, 0.0],
    ]);
    let t1 = ComplexMatrix::from_real_rows(&[
        &[0.0, 2.0 / 3.0, 0.0],
        &[0.0, 0.5, 0.0],
        &[0.0, 1.0, 0.0],
    ]);
    let machine = StochasticMachine::recognizer(
        &["S", "A", "B"],
        &["0", "1"],
        vec![t0, t1],
        ComplexVector::from_reals(&[1.0, 0.0, 0.0]),
    )
    .expect("golden mean recognizer is valid");
    ExampleMachine {
        name: "golden-mean-sdr",
        machine: Machine::Stochastic(machine),
        note: "deterministic recognizer of the golden mean process (forbids 00); \
               start state S, recurrent states A (after 1) and B (after 0)",
    }
}

/// Two-state deterministic generator of the Even process, restricted to
/// its recurrent states and started from the stationary distribution.
pub fn even_sdg() -> ExampleMachine {
    let t0 = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.0]]);
    let t1 = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[1.0, 0.0]]);
    let machine = StochasticMachine::generator(
        &["A", "B"],
        &["0", "1"],
        vec![t0, t1],
        ComplexVector::from_reals(&[2.0 / 3.0, 1.0 / 3.0]),
    )
    .expect("even generator is valid");
    ExampleMachine {
        name: "even-sdg",
        machine: Machine::Stochastic(machine),
        note: "deterministic generator of the even process: 1-blocks between 0s \
               have even length; stationary start (2/3, 1/3)",
    }
}

/// Two-state nondeterministic generator (simple nondeterministic source).
///
/// The defining structure: every 0-edge enters A and A never emits 0,
/// leaving the next-0 probability ambiguous between 0 and 1/2 depending
/// on the hidden state. These matrices realize that structure; the
/// conditional probabilities Prob(0|01^k) then take a fresh value for
/// every k, which is why no finite-state deterministic recognizer
/// exists.
pub fn sns_sg() -> ExampleMachine {
    let t0 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.5, 0.0]]);
    let t1 = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.0, 0.5]]);
    let machine = StochasticMachine::generator(
        &["A", "B"],
        &["0", "1"],
        vec![t0, t1],
        ComplexVector::from_reals(&[0.5, 0.5]),
    )
    .expect("sns generator is valid");
    ExampleMachine {
        name: "sns-sg",
        machine: Machine::Stochastic(machine),
        note: "nondeterministic source over the golden mean support whose \
               process language no finite deterministic recognizer accepts",
    }
}

/// The spin-1 unitary shared by the quantum Golden Mean and Even
/// generators: a rotation by π/4 around the y-axis followed by π/2
/// around the x-axis.
fn spin_one_unitary() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
        &[0.0, 0.0, -1.0],
        &[-FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
    ])
}

/// Three-state quantum deterministic generator of the Golden Mean
/// process, measuring the squared y spin component.
pub fn golden_mean_qdg() -> ExampleMachine {
    let machine = QuantumMachine::generator(
        &["A", "B", "C"],
        &["0", "1"],
        spin_one_unitary(),
        vec![("0", vec![1]), ("1", vec![0, 2])],
        ComplexVector::from_reals(&[1.0, 0.0, 0.0]),
    )
    .expect("quantum golden mean generator is valid");
    ExampleMachine {
        name: "golden-mean-qdg",
        machine: Machine::Quantum(machine),
        note: "spin-1 generator of the golden mean process; the transition \
               operators U·P(0) and U·P(1) are deterministic",
    }
}

/// Three-state quantum deterministic generator of the Even process: the
/// same unitary observed through the squared x spin component.
pub fn even_qdg() -> ExampleMachine {
    let machine = QuantumMachine::generator(
        &["A", "B", "C"],
        &["0", "1"],
        spin_one_unitary(),
        vec![("0", vec![0]), ("1", vec![1, 2])],
        ComplexVector::from_reals(&[1.0, 0.0, 0.0]),
    )
    .expect("quantum even generator is valid");
    ExampleMachine {
        name: "even-qdg",
        machine: Machine::Quantum(machine),
        note: "spin-1 generator of the even process; same unitary as \
               golden-mean-qdg with a different measurement partition",
    }
}

/// The 2×2 Hadamard matrix.
pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
}

/// Two-state quantum generator for the iterated beam splitter: a photon
/// bouncing through Hadamard beam splitters with a detector on each path.
pub fn beam_splitter_qdg() -> ExampleMachine {
    let machine = QuantumMachine::generator(
        &["A", "B"],
        &["0", "1"],
        hadamard(),
        vec![("0", vec![0]), ("1", vec![1])],
        ComplexVector::from_reals(&[1.0, 0.0]),
    )
    .expect("beam splitter generator is valid");
    ExampleMachine {
        name: "beam-splitter-qdg",
        machine: Machine::Quantum(machine),
        note: "iterated beam splitter: Hadamard evolution with a \
               non-degenerate detector on each path (0 above, 1 below)",
    }
}

pub(crate) fn ion_u_a() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.5, 0.5, 0.5, 0.5],
        &[0.5, -0.5, 0.5, -0.5],
        &[0.5, 0.5, -0.5, -0.5],
        &[0.5, -0.5, -0.5, 0.5],
    ])
}

pub(crate) fn ion_u_b() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, -1.0, 0.0],
        &[0.0, 0.0, 0.0, -1.0],
    ])
}

pub(crate) fn ion_u_c() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0],
        &[0.0, FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2],
        &[FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0],
        &[0.0, FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2],
    ])
}

/// Four-state quantum transducer for two vibrationally coupled trapped
/// ions. Inputs select laser pulses: `a` is a Hadamard on both ions,
/// `b` a phase flip, `c` a Hadamard on ion 1; the measurement reads out
/// the electronic state of ion 1 only.
pub fn trapped_ion_qt() -> ExampleMachine {
    let machine = QuantumMachine::new(
        QuantumKind::Transducer,
        vec!["A".into(), "B".into(), "C".into(), "D".into()],
        vec!["a".into(), "b".into(), "c".into()],
        vec!["0".into(), "1".into()],
        BTreeMap::from([
            ("a".to_string(), ion_u_a()),
            ("b".to_string(), ion_u_b()),
            ("c".to_string(), ion_u_c()),
        ]),
        BTreeMap::from([
            ("0".to_string(), vec![0, 1]),
            ("1".to_string(), vec![2, 3]),
        ]),
        ComplexVector::from_reals(&[0.0, 1.0, 0.0, 0.0]),
    )
    .expect("trapped ion transducer is valid");
    ExampleMachine {
        name: "trapped-ion-qt",
        machine: Machine::Quantum(machine),
        note: "two trapped ions under pulses a (H⊗H), b (phase), c (H⊗I), \
               measuring ion 1; runs the two-qubit oracle experiment under \
               protocol II",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;

    #[test]
    fn every_example_is_listed_and_found() {
        let names: Vec<&str> = all_examples().iter().map(|e| e.name).collect();
        assert_eq!(names.len(), 7);
        for name in names {
            assert!(by_name(name).is_some());
        }
        assert!(by_name("no-such-machine").is_none());
    }

    #[test]
    fn trapped_ion_shape() {
        let m = trapped_ion_qt().machine.into_quantum();
        assert_eq!(m.states(), &["A", "B", "C", "D"]);
        assert_eq!(m.inputs(), &["a", "b", "c"]);
        assert_eq!(m.outputs(), &["0", "1"]);
    }

    #[test]
    fn ion_pulses_are_unitary() {
        for u in [ion_u_a(), ion_u_b(), ion_u_c(), hadamard()] {
            assert!(is_unitary(&u, 1e-12).unwrap());
        }
    }

    #[test]
    fn quantum_examples_pass_structural_checks() {
        for example in all_examples() {
            if let Machine::Quantum(m) = &example.machine {
                assert!(m.structural_checks().is_ok(), "{}", example.name);
            }
        }
    }
}
