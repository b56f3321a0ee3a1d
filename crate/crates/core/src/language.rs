//! Word-distribution enumeration and the process-language axioms:
//! normalization at each length, subword closure of the support, and the
//! consistency condition Prob(w) ≥ Prob(wσ).
//!
//! Distributions are enumerated by a depth-first walk over word prefixes
//! that reuses the prefix product and abandons a branch once its operator
//! or state vector is exactly zero; every word of the requested length is
//! still recorded, structural zeros included.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::protocol::MeasurementProtocol;
use crate::quantum::QuantumMachine;
use crate::stochastic::StochasticMachine;
use crate::{Machine, STRUCTURAL_ZERO};

/// Normalization slack for Σ_w Prob(w) = 1 checks.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Default cap on the number of words a single enumeration may visit.
pub const DEFAULT_MAX_WORDS: usize = 1 << 20;

/// A probability distribution over all words of one length.
///
/// Words are stored as sequences of alphabet indices; the string form
/// concatenates the symbols, matching the wire format.
#[derive(Debug, Clone, PartialEq)]
pub struct WordDistribution {
    alphabet: Vec<String>,
    length: usize,
    probs: BTreeMap<Vec<u8>, f64>,
}

impl WordDistribution {
    pub fn new(alphabet: Vec<String>, length: usize, probs: BTreeMap<Vec<u8>, f64>) -> Self {
        Self {
            alphabet,
            length,
            probs,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.probs.iter().map(|(w, &p)| (w.as_slice(), p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Probability of a word given as indices; absent words count as 0.
    pub fn prob_indices(&self, word: &[u8]) -> f64 {
        self.probs.get(word).copied().unwrap_or(0.0)
    }

    /// Probability of a word in string form.
    pub fn prob(&self, word: &str) -> Result<f64> {
        Ok(self.prob_indices(&self.parse_word(word)?))
    }

    /// Renders an index word with the distribution's alphabet.
    pub fn render(&self, word: &[u8]) -> String {
        word.iter()
            .map(|&i| self.alphabet[i as usize].as_str())
            .collect()
    }

    /// Splits a concatenated word back into symbol indices. Single-char
    /// alphabets split per character; otherwise symbols are matched
    /// greedily, longest first.
    pub fn parse_word(&self, word: &str) -> Result<Vec<u8>> {
        parse_word(&self.alphabet, word)
    }

    /// Words with probability above the structural-zero cutoff.
    pub fn support(&self) -> Vec<&[u8]> {
        self.probs
            .iter()
            .filter(|(_, &p)| p > STRUCTURAL_ZERO)
            .map(|(w, _)| w.as_slice())
            .collect()
    }

    /// String forms of the support words.
    pub fn support_words(&self) -> Vec<String> {
        self.support().into_iter().map(|w| self.render(w)).collect()
    }
}

pub(crate) fn parse_word(alphabet: &[String], word: &str) -> Result<Vec<u8>> {
    if alphabet.iter().all(|s| s.chars().count() == 1) {
        let table: BTreeMap<char, u8> = alphabet
            .iter()
            .enumerate()
            .map(|(i, s)| (s.chars().next().expect("single char"), i as u8))
            .collect();
        return word
            .chars()
            .map(|ch| {
                table.get(&ch).copied().ok_or_else(|| Error::UnknownSymbol {
                    symbol: ch.to_string(),
                    alphabet: alphabet.to_vec(),
                })
            })
            .collect();
    }
    let mut by_length: Vec<(usize, &String)> = alphabet.iter().enumerate().collect();
    by_length.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));
    let mut rest = word;
    let mut out = Vec::new();
    'outer: while !rest.is_empty() {
        for &(i, sym) in &by_length {
            if let Some(tail) = rest.strip_prefix(sym.as_str()) {
                out.push(i as u8);
                rest = tail;
                continue 'outer;
            }
        }
        return Err(Error::UnknownSymbol {
            symbol: rest.to_string(),
            alphabet: alphabet.to_vec(),
        });
    }
    Ok(out)
}

fn check_cap(alphabet_len: usize, length: usize, cap: usize) -> Result<()> {
    let words = (alphabet_len as u128).checked_pow(length as u32);
    match words {
        Some(w) if w <= cap as u128 => Ok(()),
        Some(w) => Err(Error::EnumerationCap {
            words: w,
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

/// Distribution over driving words of a recognizer or generator, starting
/// from the machine's initial distribution.
pub fn stochastic_distribution(
    m: &StochasticMachine,
    length: usize,
    cap: usize,
) -> Result<WordDistribution> {
    let alphabet = m.driving_alphabet()?.to_vec();
    check_cap(alphabet.len(), length, cap)?;
    let matrices: Vec<Option<&ComplexMatrix>> = (0..alphabet.len())
        .map(|i| m.driving_matrix(i))
        .collect::<Result<_>>()?;
    let mut probs = BTreeMap::new();
    let mut prefix = Vec::with_capacity(length);
    walk_vector(
        m.initial().clone(),
        &matrices,
        length,
        &mut prefix,
        &mut probs,
    );
    Ok(WordDistribution::new(alphabet, length, probs))
}

fn walk_vector(
    v: ComplexVector,
    matrices: &[Option<&ComplexMatrix>],
    remaining: usize,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    if remaining == 0 {
        probs.insert(prefix.clone(), v.sum().re);
        return;
    }
    for (idx, matrix) in matrices.iter().enumerate() {
        prefix.push(idx as u8);
        let next = matrix.map(|m| v.mul_matrix(m));
        match next {
            Some(next) if !next.is_zero() => {
                walk_vector(next, matrices, remaining - 1, prefix, probs);
            }
            _ => record_zeros(matrices.len(), remaining - 1, prefix, probs),
        }
        prefix.pop();
    }
}

fn record_zeros(
    alphabet_len: usize,
    remaining: usize,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    if remaining == 0 {
        probs.insert(prefix.clone(), 0.0);
        return;
    }
    for idx in 0..alphabet_len {
        prefix.push(idx as u8);
        record_zeros(alphabet_len, remaining - 1, prefix, probs);
        prefix.pop();
    }
}

/// Stationary distribution over observed words of a single-unitary
/// quantum machine, measuring at every step.
pub fn quantum_observed_distribution(
    m: &QuantumMachine,
    length: usize,
    cap: usize,
) -> Result<WordDistribution> {
    let alphabet = m.measured_alphabet().to_vec();
    check_cap(alphabet.len(), length, cap)?;
    let steps: Vec<ComplexMatrix> = alphabet
        .iter()
        .map(|y| m.observed_step_operator(y))
        .collect::<Result<_>>()?;
    let mut probs = BTreeMap::new();
    let mut prefix = Vec::with_capacity(length);
    walk_operator(
        ComplexMatrix::identity(m.n()),
        &steps,
        m,
        length,
        &mut prefix,
        &mut probs,
    );
    Ok(WordDistribution::new(alphabet, length, probs))
}

fn walk_operator(
    t: ComplexMatrix,
    steps: &[ComplexMatrix],
    m: &QuantumMachine,
    remaining: usize,
    prefix: &mut Vec<u8>,
    probs: &mut BTreeMap<Vec<u8>, f64>,
) {
    if remaining == 0 {
        probs.insert(prefix.clone(), m.stationary_operator_probability(&t));
        return;
    }
    for (idx, step) in steps.iter().enumerate() {
        prefix.push(idx as u8);
        let next = t.mul(step);
        if next.is_zero() {
            record_zeros(steps.len(), remaining - 1, prefix, probs);
        } else {
            walk_operator(next, steps, m, remaining - 1, prefix, probs);
        }
        prefix.pop();
    }
}

impl Machine {
    /// Word distribution of the machine at one length. Quantum machines
    /// accept an optional measurement protocol; without one they are
    /// measured at every step.
    pub fn distribution(
        &self,
        length: usize,
        protocol: Option<&MeasurementProtocol>,
        cap: usize,
    ) -> Result<WordDistribution> {
        match (self, protocol) {
            (Machine::Stochastic(m), None) => stochastic_distribution(m, length, cap),
            (Machine::Stochastic(_), Some(_)) => Err(Error::Unsupported(
                "measurement protocols drive quantum machines; for the classical \
                 marginal see `protocol::run_protocol_stochastic`"
                    .into(),
            )),
            (Machine::Quantum(m), None) => quantum_observed_distribution(m, length, cap),
            (Machine::Quantum(m), Some(p)) => crate::protocol::run_protocol(m, p, length, cap),
        }
    }
}

/// Outcome of checking the process-language axioms over a sequence of
/// distributions.
#[derive(Debug, Clone, Default)]
pub struct ProcessLanguageReport {
    /// Lengths whose probabilities do not sum to 1, with the actual sum.
    pub normalization_failures: Vec<(usize, f64)>,
    /// Supported words with an unsupported proper subword.
    pub subword_violations: Vec<(String, String)>,
    /// Extensions whose probability exceeds their prefix word's.
    pub consistency_violations: Vec<(String, String)>,
}

impl ProcessLanguageReport {
    pub fn is_process_language(&self) -> bool {
        self.normalization_failures.is_empty()
            && self.subword_violations.is_empty()
            && self.consistency_violations.is_empty()
    }
}

/// Verifies normalization, subword closure, and consistency over a set
/// of same-alphabet distributions (one per length).
pub fn check_process_language(distributions: &[WordDistribution]) -> Result<ProcessLanguageReport> {
    let mut by_length: BTreeMap<usize, &WordDistribution> = BTreeMap::new();
    for d in distributions {
        if d.alphabet() != distributions[0].alphabet() {
            return Err(Error::Unsupported(
                "process-language checks need a single alphabet".into(),
            ));
        }
        if by_length.insert(d.length(), d).is_some() {
            return Err(Error::Unsupported(format!(
                "duplicate distribution for length {}",
                d.length()
            )));
        }
    }

    let mut report = ProcessLanguageReport::default();
    for (&length, d) in &by_length {
        let total = d.total();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            report.normalization_failures.push((length, total));
        }

        for word in d.support() {
            for sub_len in 1..length {
                for start in 0..=(length - sub_len) {
                    let sub = &word[start..start + sub_len];
                    if let Some(shorter) = by_length.get(&sub_len) {
                        if shorter.prob_indices(sub) <= STRUCTURAL_ZERO {
                            report
                                .subword_violations
                                .push((d.render(word), d.render(sub)));
                        }
                    }
                }
            }
        }

        if let Some(longer) = by_length.get(&(length + 1)) {
            for (word, p) in d.iter() {
                for s in 0..d.alphabet().len() as u8 {
                    let mut ext = word.to_vec();
                    ext.push(s);
                    if longer.prob_indices(&ext) > p + NORMALIZATION_TOL {
                        report
                            .consistency_violations
                            .push((d.render(word), longer.render(&ext)));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The shortest disallowed words of a machine's language up to a horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWordReport {
    pub horizon: usize,
    /// Zero-probability words all of whose proper subwords have positive
    /// probability; sorted by length, then lexicographically.
    pub irreducible: Vec<String>,
}

/// Finds all irreducible forbidden words of length ≤ `horizon`.
pub fn irreducible_forbidden_words(
    machine: &Machine,
    horizon: usize,
    cap: usize,
) -> Result<ForbiddenWordReport> {
    let mut distributions = Vec::with_capacity(horizon);
    for length in 1..=horizon {
        distributions.push(machine.distribution(length, None, cap)?);
    }
    let mut irreducible = Vec::new();
    for d in &distributions {
        let length = d.length();
        'words: for (word, p) in d.iter() {
            if p > STRUCTURAL_ZERO {
                continue;
            }
            for sub_len in 1..length {
                let shorter = &distributions[sub_len - 1];
                for start in 0..=(length - sub_len) {
                    if shorter.prob_indices(&word[start..start + sub_len]) <= STRUCTURAL_ZERO {
                        continue 'words;
                    }
                }
            }
            irreducible.push(d.render(word));
        }
    }
    irreducible.sort_by_key(|w| (w.len(), w.clone()));
    Ok(ForbiddenWordReport {
        horizon,
        irreducible,
    })
}

/// Verdict from comparing a machine against a reference language.
#[derive(Debug, Clone)]
pub struct AcceptanceVerdict {
    pub accepted: bool,
    /// Word with the largest deviation (or out-of-support probability).
    pub worst_word: Option<String>,
    pub worst_deviation: f64,
}

/// Tests whether the machine reproduces every reference distribution
/// within `delta` on the support and assigns (structural) zero outside
/// it.
pub fn accepts_with_threshold(
    machine: &Machine,
    reference: &[WordDistribution],
    delta: f64,
    cap: usize,
) -> Result<AcceptanceVerdict> {
    let mut accepted = true;
    let mut worst_word = None;
    let mut worst_deviation: f64 = 0.0;
    for d_ref in reference {
        let d_machine = machine.distribution(d_ref.length(), None, cap)?;
        if d_machine.alphabet() != d_ref.alphabet() {
            return Err(Error::Unsupported(format!(
                "reference alphabet {:?} does not match the machine's {:?}",
                d_ref.alphabet(),
                d_machine.alphabet()
            )));
        }
        for (word, p_machine) in d_machine.iter() {
            let p_ref = d_ref.prob_indices(word);
            let in_support = p_ref > STRUCTURAL_ZERO;
            let deviation = if in_support {
                (p_ref - p_machine).abs()
            } else {
                // Outside the reference support the machine must assign 0.
                p_machine.abs()
            };
            if deviation > worst_deviation {
                worst_deviation = deviation;
                worst_word = Some(d_ref.render(word));
            }
            let ok = if in_support {
                deviation <= delta
            } else {
                deviation <= STRUCTURAL_ZERO
            };
            if !ok {
                accepted = false;
            }
        }
    }
    Ok(AcceptanceVerdict {
        accepted,
        worst_word,
        worst_deviation,
    })
}

/// One point of the word-distribution plot: the word read as a binary
/// fraction against the log₂ probability density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub x: f64,
    pub y: f64,
}

/// Plot data for a binary-alphabet distribution: x = Σ σ_t 2^{-t-1} and
/// y = log₂(p·2^L), with zero-probability words omitted.
pub fn plot_data(d: &WordDistribution) -> Result<Vec<PlotPoint>> {
    if d.alphabet().len() != 2 {
        return Err(Error::Unsupported(
            "plot data is defined for binary alphabets".into(),
        ));
    }
    let scale = (2.0f64).powi(d.length() as i32);
    Ok(d.iter()
        .filter(|(_, p)| *p > STRUCTURAL_ZERO)
        .map(|(word, p)| {
            let x = word
                .iter()
                .enumerate()
                .map(|(t, &bit)| bit as f64 / (2.0f64).powi(t as i32 + 1))
                .sum();
            PlotPoint {
                x,
                y: (p * scale).log2(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines;

    const CAP: usize = DEFAULT_MAX_WORDS;

    fn fair_coin() -> Machine {
        let t0 = ComplexMatrix::from_real_rows(&[&[0.5]]);
        let t1 = ComplexMatrix::from_real_rows(&[&[0.5]]);
        Machine::Stochastic(
            StochasticMachine::generator(
                &["A"],
                &["0", "1"],
                vec![t0, t1],
                ComplexVector::from_reals(&[1.0]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn golden_mean_small_lengths() {
        let m = machines::golden_mean_sdr().machine;
        let d1 = m.distribution(1, None, CAP).unwrap();
        assert!((d1.prob("0").unwrap() - 1.0 / 3.0).abs() <= 1e-12);
        assert!((d1.prob("1").unwrap() - 2.0 / 3.0).abs() <= 1e-12);
        let d2 = m.distribution(2, None, CAP).unwrap();
        assert_eq!(d2.prob("00").unwrap(), 0.0);
        for w in ["01", "10", "11"] {
            assert!((d2.prob(w).unwrap() - 1.0 / 3.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn beam_splitter_unmeasured_is_uniform() {
        let m = machines::beam_splitter_qdg().machine;
        let d = m.distribution(3, None, CAP).unwrap();
        assert_eq!(d.len(), 8);
        for (_, p) in d.iter() {
            assert!((p - 0.125).abs() <= 1e-12);
        }
    }

    #[test]
    fn zero_length_distribution_is_the_empty_word() {
        let m = machines::golden_mean_sdr().machine;
        let d = m.distribution(0, None, CAP).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.prob("").unwrap(), 1.0);
    }

    #[test]
    fn cap_is_enforced() {
        let m = machines::golden_mean_sdr().machine;
        assert!(matches!(
            m.distribution(11, None, 1024),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn pruned_enumeration_equals_brute_force_exactly() {
        for example in machines::all_examples() {
            let machine = &example.machine;
            if matches!(machine, Machine::Quantum(q) if q.inputs().len() > 1) {
                continue; // transducers need an input schedule
            }
            for length in 1..=6usize {
                let pruned = machine.distribution(length, None, CAP).unwrap();
                for (word, p) in pruned.iter() {
                    let direct = brute_force_word_probability(machine, word);
                    assert_eq!(p, direct, "{} word {:?}", example.name, word);
                }
            }
        }
    }

    /// Recomputes one word's probability from scratch, with no pruning
    /// and no shared prefixes.
    fn brute_force_word_probability(machine: &Machine, word: &[u8]) -> f64 {
        match machine {
            Machine::Stochastic(m) => {
                let mut v = m.initial().clone();
                for &idx in word {
                    match m.driving_matrix(idx as usize).unwrap() {
                        Some(t) => v = v.mul_matrix(t),
                        None => return 0.0,
                    }
                    if v.is_zero() {
                        return 0.0;
                    }
                }
                v.sum().re
            }
            Machine::Quantum(m) => {
                let alphabet = m.measured_alphabet();
                let mut t = ComplexMatrix::identity(m.n());
                for &idx in word {
                    let step = m
                        .observed_step_operator(alphabet[idx as usize].as_str())
                        .unwrap();
                    t = t.mul(&step);
                    if t.is_zero() {
                        return 0.0;
                    }
                }
                m.stationary_operator_probability(&t)
            }
        }
    }

    #[test]
    fn supports_are_prefix_closed() {
        for example in machines::all_examples() {
            let machine = &example.machine;
            if matches!(machine, Machine::Quantum(q) if q.inputs().len() > 1) {
                continue;
            }
            for length in 1..=5usize {
                let shorter = machine.distribution(length, None, CAP).unwrap();
                let longer = machine.distribution(length + 1, None, CAP).unwrap();
                for word in longer.support() {
                    assert!(
                        shorter.prob_indices(&word[..length]) > STRUCTURAL_ZERO,
                        "{}: unsupported prefix of {:?}",
                        example.name,
                        word
                    );
                }
            }
        }
    }

    #[test]
    fn golden_mean_is_a_process_language() {
        let m = machines::golden_mean_sdr().machine;
        let ds: Vec<WordDistribution> = (1..=6)
            .map(|l| m.distribution(l, None, CAP).unwrap())
            .collect();
        let report = check_process_language(&ds).unwrap();
        assert!(report.is_process_language(), "{report:?}");
    }

    #[test]
    fn subword_closure_violation_is_detected() {
        // Hand-built: 0 impossible at length 1 but 01 "possible" at 2.
        let alphabet = vec!["0".to_string(), "1".to_string()];
        let d1 = WordDistribution::new(
            alphabet.clone(),
            1,
            BTreeMap::from([(vec![0], 0.0), (vec![1], 1.0)]),
        );
        let d2 = WordDistribution::new(
            alphabet,
            2,
            BTreeMap::from([
                (vec![0, 0], 0.0),
                (vec![0, 1], 0.5),
                (vec![1, 0], 0.0),
                (vec![1, 1], 0.5),
            ]),
        );
        let report = check_process_language(&[d1, d2]).unwrap();
        assert!(!report.is_process_language());
        assert!(report
            .subword_violations
            .iter()
            .any(|(w, sub)| w == "01" && sub == "0"));
    }

    #[test]
    fn quantum_generator_languages_pass_the_axioms() {
        for example in [machines::golden_mean_qdg(), machines::beam_splitter_qdg()] {
            let ds: Vec<WordDistribution> = (1..=6)
                .map(|l| example.machine.distribution(l, None, CAP).unwrap())
                .collect();
            let report = check_process_language(&ds).unwrap();
            assert!(report.is_process_language(), "{}", example.name);
        }
    }

    #[test]
    fn forbidden_words_of_the_canonical_processes() {
        let gm = machines::golden_mean_sdr().machine;
        let report = irreducible_forbidden_words(&gm, 6, CAP).unwrap();
        assert_eq!(report.irreducible, vec!["00".to_string()]);

        let even = machines::even_sdg().machine;
        let report = irreducible_forbidden_words(&even, 6, CAP).unwrap();
        assert_eq!(
            report.irreducible,
            vec!["010".to_string(), "01110".to_string()]
        );

        let report = irreducible_forbidden_words(&fair_coin(), 6, CAP).unwrap();
        assert!(report.irreducible.is_empty());
    }

    #[test]
    fn acceptance_against_own_language() {
        let m = machines::golden_mean_sdr().machine;
        let reference: Vec<WordDistribution> = (1..=5)
            .map(|l| m.distribution(l, None, CAP).unwrap())
            .collect();
        let verdict = accepts_with_threshold(&m, &reference, 0.0, CAP).unwrap();
        assert!(verdict.accepted);
        assert_eq!(verdict.worst_deviation, 0.0);
    }

    #[test]
    fn acceptance_rejects_support_mismatch() {
        // The golden mean machine gives 010 positive probability, but the
        // even process forbids it.
        let gm = machines::golden_mean_sdr().machine;
        let even = machines::even_sdg().machine;
        let reference: Vec<WordDistribution> = (1..=3)
            .map(|l| even.distribution(l, None, CAP).unwrap())
            .collect();
        assert_eq!(reference[2].prob("010").unwrap(), 0.0);
        assert!((gm.distribution(3, None, CAP).unwrap().prob("010").unwrap() - 1.0 / 6.0).abs() <= 1e-12);

        let verdict = accepts_with_threshold(&gm, &reference, 0.01, CAP).unwrap();
        assert!(!verdict.accepted);
        // Largest deviation: Prob_gm(101) = 1/3 vs Prob_even(101) = 1/12.
        assert_eq!(verdict.worst_word.as_deref(), Some("101"));
        assert!((verdict.worst_deviation - 0.25).abs() <= 1e-12);

        // Even with a threshold generous enough for every in-support
        // deviation, the support mismatch at 010 alone rejects.
        let verdict = accepts_with_threshold(&gm, &reference, 0.5, CAP).unwrap();
        assert!(!verdict.accepted);
    }

    #[test]
    fn qdg_accepts_its_equivalent_sdg_language() {
        let qdg = machines::beam_splitter_qdg().machine.into_quantum();
        let sdg = Machine::Stochastic(qdg.equivalent_sdg().unwrap());
        let reference: Vec<WordDistribution> = (1..=5)
            .map(|l| sdg.distribution(l, None, CAP).unwrap())
            .collect();
        let verdict =
            accepts_with_threshold(&Machine::Quantum(qdg), &reference, 1e-9, CAP).unwrap();
        assert!(verdict.accepted);
    }

    #[test]
    fn plot_data_formula() {
        let m = machines::golden_mean_sdr().machine;
        let d1 = m.distribution(1, None, CAP).unwrap();
        let points = plot_data(&d1).unwrap();
        // Word "1" maps to x = 0.5 with density log2(4/3).
        let p1 = points.iter().find(|p| p.x == 0.5).unwrap();
        assert!((p1.y - (4.0f64 / 3.0).log2()).abs() <= 1e-12);
        // Word "0" maps to x = 0.
        assert!(points.iter().any(|p| p.x == 0.0));

        let coin = fair_coin();
        for length in 1..=4 {
            let d = coin.distribution(length, None, CAP).unwrap();
            for point in plot_data(&d).unwrap() {
                assert!(point.y.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn plot_x_values_are_injective_on_the_support() {
        let m = machines::golden_mean_sdr().machine;
        for length in 1..=6 {
            let d = m.distribution(length, None, CAP).unwrap();
            let mut xs: Vec<f64> = plot_data(&d).unwrap().iter().map(|p| p.x).collect();
            xs.sort_by(f64::total_cmp);
            let before = xs.len();
            xs.dedup();
            assert_eq!(before, xs.len());
        }
    }

    #[test]
    fn plot_data_requires_binary_alphabet() {
        let d = WordDistribution::new(
            vec!["a".into(), "b".into(), "c".into()],
            1,
            BTreeMap::new(),
        );
        assert!(matches!(plot_data(&d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn multichar_symbols_parse_greedily() {
        let alphabet = vec!["a".to_string(), "ab".to_string()];
        assert_eq!(parse_word(&alphabet, "aba").unwrap(), vec![1, 0]);
        assert!(parse_word(&alphabet, "ba").is_err());
    }
}
