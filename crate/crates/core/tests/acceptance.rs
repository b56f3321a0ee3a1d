//! Acceptance suite: every numeric claim the library is contracted to
//! reproduce, one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeMap;
use std::panic::UnwindSafe;
use std::time::Instant;

use proclang_core::language::{
    accepts_with_threshold, check_process_language, irreducible_forbidden_words,
    stochastic_distribution, WordDistribution, DEFAULT_MAX_WORDS,
};
use proclang_core::linalg::{
    is_stochastic, stationary_left_eigenvector, ComplexMatrix, ComplexVector,
};
use proclang_core::machines;
use proclang_core::protocol::{
    deutsch_run, run_protocol, run_protocol_from, run_protocol_stochastic, MeasurementProtocol,
    ProtocolStep,
};
use proclang_core::quantum::{QuantumKind, QuantumMachine};
use proclang_core::Machine;

const CAP: usize = DEFAULT_MAX_WORDS;

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("criterion {name}: PASS"),
        Err(cause) => {
            println!("criterion {name}: FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: expected {expected}, got {actual} (tol {tol})"
    );
}

#[test]
fn criterion_01_golden_mean_numbers() {
    criterion("1 (golden mean word and conditional probabilities)", || {
        let m = machines::golden_mean_sdr().machine.into_stochastic();
        let from = m.initial().clone();
        let started = Instant::now();
        let p0 = m.word_probability(&["0"], &from).unwrap();
        let p1 = m.word_probability(&["1"], &from).unwrap();
        let p011 = m.word_probability(&["0", "1", "1"], &from).unwrap();
        let p101 = m.word_probability(&["1", "0", "1"], &from).unwrap();
        let p000 = m.word_probability(&["0", "0", "0"], &from).unwrap();
        let p001 = m.word_probability(&["0", "0", "1"], &from).unwrap();
        let p100 = m.word_probability(&["1", "0", "0"], &from).unwrap();
        let c10 = m.conditional_probability(&["0"], "1", &from).unwrap();
        let c00 = m.conditional_probability(&["0"], "0", &from).unwrap();
        let elapsed = started.elapsed();

        assert_close(p0, 1.0 / 3.0, 1e-12, "Prob(0)");
        assert_close(p1, 2.0 / 3.0, 1e-12, "Prob(1)");
        assert_close(p011, 1.0 / 6.0, 1e-12, "Prob(011)");
        assert_close(p101, 1.0 / 3.0, 1e-12, "Prob(101)");
        assert_close(p000, 0.0, 1e-12, "Prob(000)");
        assert_close(p001, 0.0, 1e-12, "Prob(001)");
        assert_close(p100, 0.0, 1e-12, "Prob(100)");
        assert_close(c10, 1.0, 1e-12, "Prob(1|0)");
        assert_close(c00, 0.0, 1e-12, "Prob(0|0)");
        assert!(
            elapsed.as_micros() < 1000,
            "nine probabilities took {elapsed:?}, budget 1 ms"
        );
    });
}

#[test]
fn criterion_02_stationary_distribution() {
    criterion("2 (stationary distribution of the recurrent chain)", || {
        let t = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[1.0, 0.0]]);
        let pi = stationary_left_eigenvector(&t, 1e-9).unwrap();
        assert_close(pi.entry(0).re, 2.0 / 3.0, 1e-9, "pi_0");
        assert_close(pi.entry(1).re, 1.0 / 3.0, 1e-9, "pi_1");

        // The same matrix underlies both canonical processes.
        let even = machines::even_sdg().machine.into_stochastic();
        let gm = machines::golden_mean_sdr()
            .machine
            .into_stochastic()
            .restrict_to_recurrent()
            .unwrap();
        for m in [even, gm] {
            let s = m.stationary_distribution().unwrap();
            assert_close(s.entry(0).re, 2.0 / 3.0, 1e-9, "stationary 0");
            assert_close(s.entry(1).re, 1.0 / 3.0, 1e-9, "stationary 1");
        }
    });
}

#[test]
fn criterion_03_forbidden_words() {
    criterion("3 (irreducible forbidden words)", || {
        let gm = machines::golden_mean_sdr().machine;
        let report = irreducible_forbidden_words(&gm, 6, CAP).unwrap();
        assert_eq!(report.irreducible, vec!["00".to_string()]);

        let even = machines::even_sdg().machine;
        let report = irreducible_forbidden_words(&even, 6, CAP).unwrap();
        assert_eq!(
            report.irreducible,
            vec!["010".to_string(), "01110".to_string()]
        );
    });
}

#[test]
fn criterion_04_quantum_golden_mean() {
    criterion("4 (quantum golden mean trace-formula probabilities)", || {
        let m = machines::golden_mean_qdg().machine.into_quantum();
        assert_close(
            m.stationary_word_probability(&[Some("0")], &["t"]).unwrap(),
            1.0 / 3.0,
            1e-12,
            "Prob(0)",
        );
        assert_close(
            m.stationary_word_probability(&[Some("1")], &["t"]).unwrap(),
            2.0 / 3.0,
            1e-12,
            "Prob(1)",
        );
        assert_close(
            m.stationary_word_probability(&[Some("0"), Some("1"), Some("1")], &["t"; 3])
                .unwrap(),
            1.0 / 6.0,
            1e-12,
            "Prob(011)",
        );
    });
}

#[test]
fn criterion_05_beam_splitter_protocols() {
    criterion("5 (beam splitter under protocols I and II)", || {
        let m = machines::beam_splitter_qdg().machine.into_quantum();
        let p1 = MeasurementProtocol::measure_every_step(m.inputs());
        for length in 1..=6usize {
            let d = run_protocol(&m, &p1, length, CAP).unwrap();
            let uniform = 0.5f64.powi(length as i32);
            for (w, p) in d.iter() {
                assert_close(p, uniform, 1e-12, &format!("protocol I word {w:?}"));
            }
        }

        let p2 = MeasurementProtocol::measure_period_end(m.inputs());
        let d = run_protocol(&m, &p2, 2, CAP).unwrap();
        assert_close(d.prob("00").unwrap(), 0.5, 1e-12, "protocol II 00");
        assert_close(d.prob("11").unwrap(), 0.5, 1e-12, "protocol II 11");
        assert!(d.prob("01").unwrap() <= 1e-12);
        assert!(d.prob("10").unwrap() <= 1e-12);

        // The classical equivalent stays uniform under protocol II and so
        // diverges from the quantum language by at least 1/4 at L = 2.
        let sdg = m.equivalent_sdg().unwrap();
        let classical = run_protocol_stochastic(&sdg, &p2, 2, CAP).unwrap();
        for (w, p) in classical.iter() {
            assert_close(p, 0.25, 1e-12, &format!("classical protocol II {w:?}"));
        }
        let gap = d
            .iter()
            .map(|(w, p)| (p - classical.prob_indices(w)).abs())
            .fold(0.0, f64::max);
        assert!(gap >= 0.25 - 1e-12, "largest gap {gap}");
    });
}

#[test]
fn criterion_06_equivalence_theorem() {
    criterion("6 (deterministic quantum generators match their classical equivalents)", || {
        let started = Instant::now();
        let qdgs = [
            machines::beam_splitter_qdg(),
            machines::golden_mean_qdg(),
            machines::even_qdg(),
        ];
        for example in &qdgs {
            let q = example.machine.clone().into_quantum();
            assert!(q.is_deterministic(), "{} is a QDG", example.name);
            let sdg = q.equivalent_sdg().unwrap();
            for length in 1..=8usize {
                let quantum = example.machine.distribution(length, None, CAP).unwrap();
                let classical = stochastic_distribution(&sdg, length, CAP).unwrap();
                let max_dev = quantum
                    .iter()
                    .map(|(w, p)| (p - classical.prob_indices(w)).abs())
                    .fold(0.0, f64::max);
                assert!(
                    max_dev <= 1e-12,
                    "{} at L={length}: deviation {max_dev}",
                    example.name
                );
            }
        }
        let elapsed = started.elapsed();
        assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    });
}

#[test]
fn criterion_07_stationary_state_fixed_point() {
    criterion("7 (stationary state is a fixed point on every machine)", || {
        for example in machines::all_examples() {
            let Machine::Quantum(m) = &example.machine else {
                continue;
            };
            let rho = m.stationary_state().unwrap();
            let n = m.n();
            for u in m.unitaries().values() {
                let mut evolved = ComplexMatrix::zeros(n, n);
                for indices in m.projectors().values() {
                    let p = ComplexMatrix::projector(n, indices);
                    let term = p.mul(&u.dagger()).mul(rho.matrix()).mul(u).mul(&p);
                    evolved = evolved.add(&term);
                }
                let residual = evolved.sub(rho.matrix()).max_abs();
                assert!(
                    residual <= 1e-12,
                    "{}: residual {residual}",
                    example.name
                );
            }
        }
    });
}

/// Independent oracle for protocol runs: evolve an explicit state vector
/// from every basis state (the stationary mixture) and every period
/// phase, branching at each measurement, and sum branch weights per
/// observed word. No operator products, no trace formula.
fn brute_force_protocol(
    m: &QuantumMachine,
    period: &[(String, bool)],
    observed: usize,
) -> BTreeMap<Vec<u8>, f64> {
    let n = m.n();
    let mut totals: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    for phase in 0..period.len() {
        // The steps seen when observation starts at this phase.
        let mut schedule = Vec::new();
        let mut measured = 0;
        let mut at = phase;
        while measured < observed {
            let step = &period[at % period.len()];
            schedule.push(step);
            if step.1 {
                measured += 1;
            }
            at += 1;
        }

        for basis in 0..n {
            let psi = ComplexVector::basis(n, basis);
            let mut branches: Vec<(ComplexVector, Vec<u8>)> = vec![(psi, Vec::new())];
            for (input, measure) in &schedule {
                let u = m.unitary_for(input).unwrap();
                let mut next = Vec::with_capacity(branches.len());
                for (psi, word) in branches {
                    let evolved = psi.mul_matrix(u);
                    if !measure {
                        next.push((evolved, word));
                        continue;
                    }
                    for (y_idx, y) in m.measured_alphabet().iter().enumerate() {
                        let keep = &m.projectors()[y];
                        let projected = ComplexVector::new(
                            (0..n)
                                .map(|i| {
                                    if keep.contains(&i) {
                                        evolved.entry(i)
                                    } else {
                                        proclang_core::Complex::new(0.0, 0.0)
                                    }
                                })
                                .collect(),
                        );
                        let mut word = word.clone();
                        word.push(y_idx as u8);
                        next.push((projected, word));
                    }
                }
                branches = next;
            }
            for (psi, word) in branches {
                *totals.entry(word).or_insert(0.0) +=
                    psi.norm_sqr() / (n as f64 * period.len() as f64);
            }
        }
    }
    totals
}

#[test]
fn criterion_08_trapped_ion_protocols() {
    criterion("8 (trapped ion: alternation under II, oracle match under I)", || {
        let m = machines::trapped_ion_qt().machine.into_quantum();

        let p2 = MeasurementProtocol::measure_period_end(m.inputs());
        let d2 = run_protocol(&m, &p2, 4, CAP).unwrap();
        assert_eq!(
            d2.support_words(),
            vec!["0101".to_string(), "1010".to_string()]
        );

        let p1 = MeasurementProtocol::measure_every_step(m.inputs());
        let d1 = run_protocol(&m, &p1, 4, CAP).unwrap();
        assert!(d1.prob("0101").unwrap() <= 1e-12);
        assert!(d1.prob("1010").unwrap() <= 1e-12);

        // Cross-check protocol I against the branch-summing oracle.
        let period: Vec<(String, bool)> = ["a", "b", "c"]
            .iter()
            .map(|x| (x.to_string(), true))
            .collect();
        let oracle = brute_force_protocol(&m, &period, 4);
        let mut max_dev: f64 = 0.0;
        for (word, p) in d1.iter() {
            let q = oracle.get(word).copied().unwrap_or(0.0);
            max_dev = max_dev.max((p - q).abs());
        }
        assert!(max_dev <= 1e-12, "max deviation from oracle {max_dev}");
    });
}

#[test]
fn criterion_09_deutsch() {
    criterion("9 (two-qubit oracle classification)", || {
        let balanced = deutsch_run(&ion_u_b()).unwrap();
        assert!(balanced.prob_one >= 1.0 - 1e-12);
        assert_eq!(balanced.deterministic_outcome(1e-12), Some("1"));

        let constant = deutsch_run(&ComplexMatrix::identity(4)).unwrap();
        assert!(constant.prob_zero >= 1.0 - 1e-12);
        assert_eq!(constant.deterministic_outcome(1e-12), Some("0"));

        // The circuit is one period of (a, λ)(b, λ)(c, measure) on the
        // trapped-ion machine from its start vector.
        let m = machines::trapped_ion_qt().machine.into_quantum();
        let period = MeasurementProtocol::new(
            vec![
                ProtocolStep {
                    input: "a".into(),
                    measure: false,
                },
                ProtocolStep {
                    input: "b".into(),
                    measure: false,
                },
                ProtocolStep {
                    input: "c".into(),
                    measure: true,
                },
            ],
            1,
        )
        .unwrap();
        let d = run_protocol_from(&m, &period, 1, m.start(), CAP).unwrap();
        assert_close(d.prob("0").unwrap(), balanced.prob_zero, 1e-12, "Prob(0)");
        assert_close(d.prob("1").unwrap(), balanced.prob_one, 1e-12, "Prob(1)");

        // Swapping the oracle for the identity turns the answer around.
        let mut unitaries = m.unitaries().clone();
        unitaries.insert("b".into(), ComplexMatrix::identity(4));
        let constant_machine = QuantumMachine::new(
            QuantumKind::Transducer,
            m.states().to_vec(),
            m.inputs().to_vec(),
            m.outputs().to_vec(),
            unitaries,
            m.projectors().clone(),
            m.start().clone(),
        )
        .unwrap();
        let d = run_protocol_from(&constant_machine, &period, 1, constant_machine.start(), CAP)
            .unwrap();
        assert_close(d.prob("0").unwrap(), constant.prob_zero, 1e-12, "Prob(0)");
    });
}

fn ion_u_b() -> ComplexMatrix {
    let m = machines::trapped_ion_qt().machine.into_quantum();
    m.unitary_for("b").unwrap().clone()
}

/// Every shipped machine's distributions at one length, including the
/// protocol-driven reading of the transducer.
fn shipped_distributions(length: usize) -> Vec<(String, WordDistribution)> {
    let mut out = Vec::new();
    for example in machines::all_examples() {
        match &example.machine {
            Machine::Quantum(q) if q.inputs().len() > 1 => {
                let p1 = MeasurementProtocol::measure_every_step(q.inputs());
                out.push((
                    format!("{} (protocol I)", example.name),
                    run_protocol(q, &p1, length, CAP).unwrap(),
                ));
                let p2 = MeasurementProtocol::measure_period_end(q.inputs());
                out.push((
                    format!("{} (protocol II)", example.name),
                    run_protocol(q, &p2, length, CAP).unwrap(),
                ));
            }
            machine => {
                out.push((
                    example.name.to_string(),
                    machine.distribution(length, None, CAP).unwrap(),
                ));
            }
        }
    }
    out
}

#[test]
fn criterion_10_property_suites() {
    criterion("10 (normalization, axioms, SNS conditionals, unistochasticity, determinism)", || {
        // Per-length normalization through L = 10.
        for length in 1..=10usize {
            for (name, d) in shipped_distributions(length) {
                let total = d.total();
                assert!(
                    (total - 1.0).abs() <= 1e-9,
                    "{name} at L={length}: sum {total}"
                );
            }
        }

        // Process-language axioms through L = 8.
        let mut sequences: BTreeMap<String, Vec<WordDistribution>> = BTreeMap::new();
        for length in 1..=8usize {
            for (name, d) in shipped_distributions(length) {
                sequences.entry(name).or_default().push(d);
            }
        }
        for (name, ds) in &sequences {
            let report = check_process_language(ds).unwrap();
            assert!(
                report.is_process_language(),
                "{name}: {report:?}"
            );
        }

        // SNS conditionals P(0|01^k) pairwise distinct for k = 1..12.
        let sns = machines::sns_sg().machine.into_stochastic();
        let mut conditionals = Vec::new();
        for k in 1..=12usize {
            let mut word = vec!["0"];
            word.extend(std::iter::repeat_n("1", k));
            conditionals.push(
                sns.conditional_probability(&word, "0", sns.initial())
                    .unwrap(),
            );
        }
        for i in 0..conditionals.len() {
            for j in 0..i {
                assert!(
                    (conditionals[i] - conditionals[j]).abs() >= 1e-6,
                    "P(0|01^{}) too close to P(0|01^{})",
                    i + 1,
                    j + 1
                );
            }
        }

        // Unistochasticity of every shipped unitary.
        for example in machines::all_examples() {
            let Machine::Quantum(q) = &example.machine else {
                continue;
            };
            for u in q.unitaries().values() {
                let m = u.entrywise_norm_sqr();
                assert!(is_stochastic(&m, 1e-9).unwrap(), "{} rows", example.name);
                assert!(
                    is_stochastic(&m.transpose(), 1e-9).unwrap(),
                    "{} columns",
                    example.name
                );
            }
        }

        // Deterministic path formula agrees with the matrix formula.
        for example in [machines::golden_mean_sdr(), machines::even_sdg()] {
            let m = example.machine.into_stochastic();
            assert!(m.is_deterministic());
            let alphabet: Vec<String> = m.driving_alphabet().unwrap().to_vec();
            for (i, state) in m.states().iter().enumerate() {
                let indicator = ComplexVector::basis(m.states().len(), i);
                for length in 0..=8usize {
                    for code in 0..(alphabet.len() as u64).pow(length as u32) {
                        let word: Vec<&str> = (0..length)
                            .map(|t| {
                                alphabet[(code / (alphabet.len() as u64).pow(t as u32)
                                    % alphabet.len() as u64)
                                    as usize]
                                    .as_str()
                            })
                            .collect();
                        let path = m.word_probability_deterministic(&word, state).unwrap();
                        let matrix = m.word_probability(&word, &indicator).unwrap();
                        assert!(
                            (path - matrix).abs() <= 1e-12,
                            "{} word {word:?} from {state}",
                            example.name
                        );
                    }
                }
            }
        }

        // A machine accepts its own language exactly.
        let gm = machines::golden_mean_sdr().machine;
        let reference: Vec<WordDistribution> = (1..=6)
            .map(|l| gm.distribution(l, None, CAP).unwrap())
            .collect();
        let verdict = accepts_with_threshold(&gm, &reference, 0.0, CAP).unwrap();
        assert!(verdict.accepted);
    });
}
