//! Classical machine classes: stochastic transducers (ST) and their
//! recognizer (SR/SDR) and generator (SG/SDG) specializations.
//!
//! A machine holds one substochastic matrix per output|input pair. Word
//! probabilities follow the matrix-product form ⟨π| T(w₀)…T(w_{L-1}) |η⟩,
//! which is linear in word length; the deterministic path product is
//! available separately for machines with at most one nonzero entry per
//! row.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{
    is_stochastic, is_substochastic, stationary_left_eigenvector, ComplexMatrix, ComplexVector,
    DEFAULT_TOL,
};
use crate::STRUCTURAL_ZERO;

/// Machine class: general transducer, recognizer (|Y| = 1), or
/// generator (|X| = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StochasticKind {
    Transducer,
    Recognizer,
    Generator,
}

impl StochasticKind {
    pub fn code(self) -> &'static str {
        match self {
            StochasticKind::Transducer => "ST",
            StochasticKind::Recognizer => "SR",
            StochasticKind::Generator => "SG",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "ST" => Some(StochasticKind::Transducer),
            "SR" => Some(StochasticKind::Recognizer),
            "SG" => Some(StochasticKind::Generator),
            _ => None,
        }
    }
}

/// Graph-theoretic state classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    /// Has a consequent that never leads back.
    Transient,
    /// Recurrent and not transient; the machine can never leave these.
    AsymptoticallyRecurrent,
    /// Both transient and recurrent: sits on a cycle it can escape.
    TransientRecurrent,
}

/// A finite-state stochastic machine.
///
/// Immutable once validated: every per-pair matrix is substochastic, the
/// state-to-state sums are stochastic (per input for transducers and
/// generators, across inputs for recognizers), and the initial
/// distribution is a probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMachine {
    kind: StochasticKind,
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    /// Keyed by (input index, output index); absent keys mean the zero
    /// matrix.
    matrices: BTreeMap<(usize, usize), ComplexMatrix>,
    initial: ComplexVector,
}

impl StochasticMachine {
    pub fn new(
        kind: StochasticKind,
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        matrices: BTreeMap<(usize, usize), ComplexMatrix>,
        initial: ComplexVector,
    ) -> Result<Self> {
        let machine = Self {
            kind,
            states,
            inputs,
            outputs,
            matrices,
            initial,
        };
        machine.validate()?;
        Ok(machine)
    }

    /// Builds a generator (single clock input) from per-output matrices.
    pub fn generator(
        states: &[&str],
        outputs: &[&str],
        matrices: Vec<ComplexMatrix>,
        initial: ComplexVector,
    ) -> Result<Self> {
        let map = matrices
            .into_iter()
            .enumerate()
            .map(|(y, m)| ((0, y), m))
            .collect();
        Self::new(
            StochasticKind::Generator,
            states.iter().map(ToString::to_string).collect(),
            vec!["t".into()],
            outputs.iter().map(ToString::to_string).collect(),
            map,
            initial,
        )
    }

    /// Builds a recognizer (single `accept` output) from per-input matrices.
    pub fn recognizer(
        states: &[&str],
        inputs: &[&str],
        matrices: Vec<ComplexMatrix>,
        initial: ComplexVector,
    ) -> Result<Self> {
        let map = matrices
            .into_iter()
            .enumerate()
            .map(|(x, m)| ((x, 0), m))
            .collect();
        Self::new(
            StochasticKind::Recognizer,
            states.iter().map(ToString::to_string).collect(),
            inputs.iter().map(ToString::to_string).collect(),
            vec!["accept".into()],
            map,
            initial,
        )
    }

    fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if n == 0 {
            return Err(Error::InvalidMachine("no states".into()));
        }
        for (name, list) in [
            ("state", &self.states),
            ("input", &self.inputs),
            ("output", &self.outputs),
        ] {
            if list.is_empty() {
                return Err(Error::InvalidMachine(format!("empty {name} alphabet")));
            }
            let mut seen = list.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != list.len() {
                return Err(Error::InvalidMachine(format!("duplicate {name} names")));
            }
        }
        match self.kind {
            StochasticKind::Recognizer if self.outputs.len() != 1 => {
                return Err(Error::InvalidMachine(
                    "a recognizer must have exactly one output symbol".into(),
                ));
            }
            StochasticKind::Generator if self.inputs.len() != 1 => {
                return Err(Error::InvalidMachine(
                    "a generator must have exactly one input symbol".into(),
                ));
            }
            _ => {}
        }
        for (&(x, y), m) in &self.matrices {
            if x >= self.inputs.len() || y >= self.outputs.len() {
                return Err(Error::InvalidMachine(format!(
                    "transition key ({x},{y}) outside the alphabets"
                )));
            }
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidMachine(format!(
                    "matrix for {} is {}x{}, expected {n}x{n}",
                    self.pair_label(x, y),
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.all_finite() {
                return Err(Error::InvalidMachine(format!(
                    "matrix for {} has non-finite entries",
                    self.pair_label(x, y)
                )));
            }
            if !is_substochastic(m, DEFAULT_TOL)? {
                return Err(Error::InvalidMachine(format!(
                    "matrix for {} is not substochastic",
                    self.pair_label(x, y)
                )));
            }
        }
        // A recognizer's matrices sum to a stochastic matrix across
        // inputs; otherwise the per-input sums over outputs must each be
        // stochastic.
        if self.kind == StochasticKind::Recognizer {
            let mut total = ComplexMatrix::zeros(n, n);
            for x in 0..self.inputs.len() {
                total = total.add(&self.input_total_matrix(x));
            }
            if !is_stochastic(&total, DEFAULT_TOL)? {
                return Err(Error::InvalidMachine(
                    "recognizer matrices do not sum to a stochastic matrix".into(),
                ));
            }
        } else {
            for x in 0..self.inputs.len() {
                let total = self.input_total_matrix(x);
                if !is_stochastic(&total, DEFAULT_TOL)? {
                    return Err(Error::InvalidMachine(format!(
                        "matrices for input `{}` do not sum to a stochastic matrix",
                        self.inputs[x]
                    )));
                }
            }
        }
        if self.initial.dim() != n {
            return Err(Error::InvalidMachine(format!(
                "initial distribution has dimension {}, expected {n}",
                self.initial.dim()
            )));
        }
        if !self.initial.is_probability_vector(DEFAULT_TOL) {
            return Err(Error::InvalidMachine(
                "initial distribution is not a probability vector".into(),
            ));
        }
        Ok(())
    }

    fn pair_label(&self, x: usize, y: usize) -> String {
        match self.kind {
            StochasticKind::Generator => format!("output `{}`", self.outputs[y]),
            StochasticKind::Recognizer => format!("input `{}`", self.inputs[x]),
            StochasticKind::Transducer => {
                format!("pair `{}|{}`", self.outputs[y], self.inputs[x])
            }
        }
    }

    fn input_total_matrix(&self, x: usize) -> ComplexMatrix {
        let n = self.states.len();
        let mut total = ComplexMatrix::zeros(n, n);
        for y in 0..self.outputs.len() {
            if let Some(m) = self.matrices.get(&(x, y)) {
                total = total.add(m);
            }
        }
        total
    }

    pub fn kind(&self) -> StochasticKind {
        self.kind
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn initial(&self) -> &ComplexVector {
        &self.initial
    }

    pub fn matrices(&self) -> &BTreeMap<(usize, usize), ComplexMatrix> {
        &self.matrices
    }

    pub fn matrix(&self, input: &str, output: &str) -> Result<Option<&ComplexMatrix>> {
        let x = symbol_index(&self.inputs, input)?;
        let y = symbol_index(&self.outputs, output)?;
        Ok(self.matrices.get(&(x, y)))
    }

    /// The alphabet that drives word probabilities: inputs for a
    /// recognizer, outputs for a generator. General transducers are
    /// driven by input/output pairs and have no single driving alphabet.
    pub fn driving_alphabet(&self) -> Result<&[String]> {
        match self.kind {
            StochasticKind::Recognizer => Ok(&self.inputs),
            StochasticKind::Generator => Ok(&self.outputs),
            StochasticKind::Transducer => Err(Error::Unsupported(
                "word probabilities of a general transducer are conditioned on \
                 an input word; use a recognizer or generator"
                    .into(),
            )),
        }
    }

    /// Transition matrix for the driving symbol with the given index;
    /// `None` stands for the zero matrix.
    pub fn driving_matrix(&self, index: usize) -> Result<Option<&ComplexMatrix>> {
        match self.kind {
            StochasticKind::Recognizer => Ok(self.matrices.get(&(index, 0))),
            StochasticKind::Generator => Ok(self.matrices.get(&(0, index))),
            StochasticKind::Transducer => Err(Error::Unsupported(
                "general transducers have no driving alphabet".into(),
            )),
        }
    }

    /// State-to-state transition matrix: the sum of the per-symbol
    /// matrices. For a general transducer the sum over all pairs is
    /// averaged over inputs so the result stays stochastic.
    pub fn state_to_state_matrix(&self) -> ComplexMatrix {
        let n = self.states.len();
        let mut total = ComplexMatrix::zeros(n, n);
        for m in self.matrices.values() {
            total = total.add(m);
        }
        if self.kind == StochasticKind::Transducer && self.inputs.len() > 1 {
            total = total.scale(1.0 / self.inputs.len() as f64);
        }
        total
    }

    /// Word probability ⟨from| T(w₀)…T(w_{L-1}) |η⟩.
    pub fn word_probability(&self, word: &[&str], from: &ComplexVector) -> Result<f64> {
        let alphabet = self.driving_alphabet()?;
        if from.dim() != self.states.len() {
            return Err(Error::Dimension(format!(
                "distribution dimension {} does not match {} states",
                from.dim(),
                self.states.len()
            )));
        }
        if !from.is_probability_vector(DEFAULT_TOL) {
            return Err(Error::NotStochastic(
                "`from` is not a probability vector".into(),
            ));
        }
        let mut v = from.clone();
        for sym in word {
            let idx = symbol_index(alphabet, sym)?;
            match self.driving_matrix(idx)? {
                Some(m) => v = v.mul_matrix(m),
                None => return Ok(0.0),
            }
            if v.is_zero() {
                // Remaining factors cannot revive a dead path.
                return Ok(0.0);
            }
        }
        Ok(v.sum().re)
    }

    /// Word probability along the unique deterministic path from a single
    /// start state; returns 0 when the path dies.
    pub fn word_probability_deterministic(&self, word: &[&str], start_state: &str) -> Result<f64> {
        if !self.is_deterministic() {
            return Err(Error::Nondeterministic(
                "the path formula applies to deterministic machines only".into(),
            ));
        }
        let alphabet = self.driving_alphabet()?;
        let mut state = self
            .states
            .iter()
            .position(|s| s == start_state)
            .ok_or_else(|| Error::UnknownState(start_state.into()))?;
        let mut p = 1.0;
        for sym in word {
            let idx = symbol_index(alphabet, sym)?;
            let Some(m) = self.driving_matrix(idx)? else {
                return Ok(0.0);
            };
            let row = m.row(state);
            match row.iter().enumerate().find(|(_, e)| e.norm() > 0.0) {
                Some((next, e)) => {
                    p *= e.re;
                    state = next;
                }
                None => return Ok(0.0),
            }
        }
        Ok(p)
    }

    /// Conditional next-symbol probability Prob(s|w) = Prob(ws)/Prob(w),
    /// with the convention Prob(s|w) = 0 when Prob(w) vanishes.
    pub fn conditional_probability(
        &self,
        word: &[&str],
        next: &str,
        from: &ComplexVector,
    ) -> Result<f64> {
        let p_w = self.word_probability(word, from)?;
        if p_w <= STRUCTURAL_ZERO {
            return Ok(0.0);
        }
        let mut extended: Vec<&str> = word.to_vec();
        extended.push(next);
        Ok(self.word_probability(&extended, from)? / p_w)
    }

    /// True iff every transition matrix has at most one nonzero entry per
    /// row, so each driving word selects a unique state path.
    pub fn is_deterministic(&self) -> bool {
        matrices_deterministic(self.matrices.values())
    }

    /// Classifies every state from the reachability structure of the
    /// positive-entry graph.
    pub fn classify_states(&self) -> BTreeMap<String, StateClass> {
        let graph = Digraph::from_union(self.matrices.values(), STRUCTURAL_ZERO);
        let reach = graph.consequents();
        let mut out = BTreeMap::new();
        for (i, row) in reach.iter().enumerate() {
            let transient = row
                .iter()
                .enumerate()
                .any(|(j, &forward)| forward && !reach[j][i]);
            let recurrent = row[i];
            let class = match (transient, recurrent) {
                (true, true) => StateClass::TransientRecurrent,
                (false, true) => StateClass::AsymptoticallyRecurrent,
                // A validated machine has stochastic row sums, so every
                // state has a consequent; a cycle-free state is transient.
                (_, false) => StateClass::Transient,
            };
            out.insert(self.states[i].clone(), class);
        }
        out
    }

    /// Restricts the machine to its single asymptotically recurrent
    /// class, replacing the initial distribution by the stationary one.
    pub fn restrict_to_recurrent(&self) -> Result<StochasticMachine> {
        let graph = Digraph::from_union(self.matrices.values(), STRUCTURAL_ZERO);
        let classes = graph.absorbing_classes();
        if classes.len() != 1 {
            return Err(Error::MultipleRecurrentClasses {
                classes: classes
                    .iter()
                    .map(|class| class.iter().map(|&i| self.states[i].clone()).collect())
                    .collect(),
            });
        }
        let keep = &classes[0];
        let matrices: BTreeMap<(usize, usize), ComplexMatrix> = self
            .matrices
            .iter()
            .map(|(&key, m)| (key, m.submatrix(keep)))
            .collect();
        let states: Vec<String> = keep.iter().map(|&i| self.states[i].clone()).collect();

        let n = keep.len();
        let mut total = ComplexMatrix::zeros(n, n);
        for m in matrices.values() {
            total = total.add(m);
        }
        if self.kind == StochasticKind::Transducer && self.inputs.len() > 1 {
            total = total.scale(1.0 / self.inputs.len() as f64);
        }
        let stationary = stationary_left_eigenvector(&total, DEFAULT_TOL)?;

        StochasticMachine::new(
            self.kind,
            states,
            self.inputs.clone(),
            self.outputs.clone(),
            matrices,
            stationary,
        )
    }

    /// Stationary distribution of the state-to-state matrix.
    pub fn stationary_distribution(&self) -> Result<ComplexVector> {
        stationary_left_eigenvector(&self.state_to_state_matrix(), DEFAULT_TOL)
    }
}

/// True iff every matrix has at most one nonzero entry per row.
pub fn matrices_deterministic<'a>(ms: impl IntoIterator<Item = &'a ComplexMatrix>) -> bool {
    ms.into_iter().all(|m| {
        (0..m.rows()).all(|i| m.row(i).iter().filter(|e| e.norm() > 0.0).count() <= 1)
    })
}

pub(crate) fn symbol_index(alphabet: &[String], symbol: &str) -> Result<usize> {
    alphabet
        .iter()
        .position(|s| s == symbol)
        .ok_or_else(|| Error::UnknownSymbol {
            symbol: symbol.into(),
            alphabet: alphabet.to_vec(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines;

    fn golden_mean() -> StochasticMachine {
        machines::golden_mean_sdr().machine.into_stochastic()
    }

    fn even() -> StochasticMachine {
        machines::even_sdg().machine.into_stochastic()
    }

    fn sns() -> StochasticMachine {
        machines::sns_sg().machine.into_stochastic()
    }

    #[test]
    fn golden_mean_word_probabilities() {
        let m = golden_mean();
        let from = m.initial().clone();
        assert!((m.word_probability(&["0"], &from).unwrap() - 1.0 / 3.0).abs() <= 1e-12);
        assert!((m.word_probability(&["1"], &from).unwrap() - 2.0 / 3.0).abs() <= 1e-12);
        assert!((m.word_probability(&["0", "1", "1"], &from).unwrap() - 1.0 / 6.0).abs() <= 1e-12);
        assert!((m.word_probability(&["1", "0", "1"], &from).unwrap() - 1.0 / 3.0).abs() <= 1e-12);
        for w in [["0", "0", "0"], ["0", "0", "1"], ["1", "0", "0"]] {
            assert_eq!(m.word_probability(&w, &from).unwrap(), 0.0);
        }
    }

    #[test]
    fn even_from_stationary() {
        let m = even();
        let from = ComplexVector::from_reals(&[2.0 / 3.0, 1.0 / 3.0]);
        assert!((m.word_probability(&["0"], &from).unwrap() - 1.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let m = golden_mean();
        let err = m.word_probability(&["2"], m.initial()).unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol { .. }));
    }

    #[test]
    fn deterministic_path_formula() {
        let m = golden_mean();
        let p = m.word_probability_deterministic(&["0", "1", "1"], "S").unwrap();
        assert!((p - 1.0 / 6.0).abs() <= 1e-12);
        assert_eq!(m.word_probability_deterministic(&[], "S").unwrap(), 1.0);
        assert_eq!(
            m.word_probability_deterministic(&["0", "0"], "S").unwrap(),
            0.0
        );
    }

    #[test]
    fn path_formula_rejects_nondeterministic_machines() {
        let err = sns().word_probability_deterministic(&["0"], "A").unwrap_err();
        assert!(matches!(err, Error::Nondeterministic(_)));
    }

    #[test]
    fn path_formula_matches_matrix_formula() {
        for m in [golden_mean(), even()] {
            let alphabet: Vec<String> = m.driving_alphabet().unwrap().to_vec();
            for (i, state) in m.states().iter().enumerate() {
                let indicator = ComplexVector::basis(m.states().len(), i);
                for len in 0..=8usize {
                    for code in 0..(alphabet.len() as u64).pow(len as u32) {
                        let word = decode_word(&alphabet, code, len);
                        let refs: Vec<&str> = word.iter().map(String::as_str).collect();
                        let via_path =
                            m.word_probability_deterministic(&refs, state).unwrap();
                        let via_matrix = m.word_probability(&refs, &indicator).unwrap();
                        assert!(
                            (via_path - via_matrix).abs() <= 1e-12,
                            "word {word:?} from {state}"
                        );
                    }
                }
            }
        }
    }

    fn decode_word(alphabet: &[String], mut code: u64, len: usize) -> Vec<String> {
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            word.push(alphabet[(code % alphabet.len() as u64) as usize].clone());
            code /= alphabet.len() as u64;
        }
        word
    }

    #[test]
    fn golden_mean_conditionals() {
        let m = golden_mean();
        let from = m.initial().clone();
        assert!((m.conditional_probability(&["0"], "1", &from).unwrap() - 1.0).abs() <= 1e-12);
        assert_eq!(m.conditional_probability(&["0"], "0", &from).unwrap(), 0.0);
        // Conditioning on an impossible word yields 0 by convention.
        assert_eq!(
            m.conditional_probability(&["0", "0"], "1", &from).unwrap(),
            0.0
        );
    }

    #[test]
    fn sns_conditional_after_01() {
        let m = sns();
        let p = m
            .conditional_probability(&["0", "1"], "0", m.initial())
            .unwrap();
        assert!((p - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn sns_predictive_states_are_unbounded() {
        // Prob(0 | 0 1^k) works out to k / (2(k+1)); all values distinct.
        let m = sns();
        let mut previous = Vec::new();
        for k in 1..=12usize {
            let mut word = vec!["0"];
            word.extend(std::iter::repeat_n("1", k));
            let p = m.conditional_probability(&word, "0", m.initial()).unwrap();
            let expected = k as f64 / (2.0 * (k as f64 + 1.0));
            assert!((p - expected).abs() <= 1e-12, "k={k}");
            for &q in &previous {
                assert!((p - q) as f64 > 1e-6, "conditionals must be distinct");
            }
            previous.push(p);
        }
    }

    #[test]
    fn determinism_checks() {
        assert!(golden_mean().is_deterministic());
        assert!(even().is_deterministic());
        assert!(!sns().is_deterministic());
        let zeros = [ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2)];
        assert!(matrices_deterministic(zeros.iter()));
    }

    #[test]
    fn state_to_state_matrices() {
        let even = even();
        let gm_recurrent = golden_mean().restrict_to_recurrent().unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[1.0, 0.0]]);
        assert!(even.state_to_state_matrix().sub(&expected).max_abs() <= 1e-12);
        assert!(gm_recurrent.state_to_state_matrix().sub(&expected).max_abs() <= 1e-12);
    }

    #[test]
    fn single_matrix_machine_state_to_state_is_that_matrix() {
        let t = ComplexMatrix::from_real_rows(&[&[0.25, 0.75], &[0.5, 0.5]]);
        let m = StochasticMachine::generator(
            &["a", "b"],
            &["0"],
            vec![t.clone()],
            ComplexVector::from_reals(&[1.0, 0.0]),
        )
        .unwrap();
        assert_eq!(m.state_to_state_matrix(), t);
    }

    #[test]
    fn classify_golden_mean_states() {
        let classes = golden_mean().classify_states();
        assert_eq!(classes["S"], StateClass::Transient);
        assert_eq!(classes["A"], StateClass::AsymptoticallyRecurrent);
        assert_eq!(classes["B"], StateClass::AsymptoticallyRecurrent);
    }

    #[test]
    fn strongly_connected_machine_is_all_recurrent() {
        for (_, class) in even().classify_states() {
            assert_eq!(class, StateClass::AsymptoticallyRecurrent);
        }
    }

    fn two_cycle_machine() -> StochasticMachine {
        // Start state feeds two disjoint cycles.
        let t0 = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.5, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0],
        ]);
        let t1 = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, 0.5, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 0.0, 1.0, 0.0],
        ]);
        StochasticMachine::generator(
            &["s", "a1", "a2", "b1", "b2"],
            &["0", "1"],
            vec![t0, t1],
            ComplexVector::from_reals(&[1.0, 0.0, 0.0, 0.0, 0.0]),
        )
        .unwrap()
    }

    #[test]
    fn two_cycles_classify_and_fail_restriction() {
        let m = two_cycle_machine();
        let classes = m.classify_states();
        assert_eq!(classes["s"], StateClass::Transient);
        for state in ["a1", "a2", "b1", "b2"] {
            assert_eq!(classes[state], StateClass::AsymptoticallyRecurrent);
        }
        match m.restrict_to_recurrent() {
            Err(Error::MultipleRecurrentClasses { classes }) => {
                assert_eq!(classes.len(), 2);
                assert!(classes.contains(&vec!["a1".to_string(), "a2".to_string()]));
            }
            other => panic!("expected a multiple-class error, got {other:?}"),
        }
    }

    #[test]
    fn transient_recurrent_state() {
        // State 0 loops on itself but can escape to the absorbing state 1.
        let t0 = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.0]]);
        let t1 = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.0, 1.0]]);
        let m = StochasticMachine::generator(
            &["loop", "sink"],
            &["0", "1"],
            vec![t0, t1],
            ComplexVector::from_reals(&[1.0, 0.0]),
        )
        .unwrap();
        let classes = m.classify_states();
        assert_eq!(classes["loop"], StateClass::TransientRecurrent);
        assert_eq!(classes["sink"], StateClass::AsymptoticallyRecurrent);
    }

    #[test]
    fn golden_mean_restriction_matches_recurrent_matrices() {
        let restricted = golden_mean().restrict_to_recurrent().unwrap();
        assert_eq!(restricted.states(), &["A".to_string(), "B".to_string()]);
        let t0 = restricted.matrix("0", "accept").unwrap().unwrap();
        let t1 = restricted.matrix("1", "accept").unwrap().unwrap();
        let want_t0 = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.0, 0.0]]);
        let want_t1 = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[1.0, 0.0]]);
        assert!(t0.sub(&want_t0).max_abs() <= 1e-12);
        assert!(t1.sub(&want_t1).max_abs() <= 1e-12);
        let init = restricted.initial();
        assert!((init.entry(0).re - 2.0 / 3.0).abs() <= 1e-9);
        assert!((init.entry(1).re - 1.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn restriction_of_recurrent_machine_keeps_matrices() {
        let m = even();
        let restricted = m.restrict_to_recurrent().unwrap();
        assert_eq!(restricted.states(), m.states());
        for (key, matrix) in m.matrices() {
            assert!(restricted.matrices()[key].sub(matrix).max_abs() <= 1e-12);
        }
        assert!((restricted.initial().entry(0).re - 2.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn restriction_start_agrees_with_full_machine() {
        // Word probabilities from the 3-state start equal those from the
        // stationary vector on the recurrent restriction.
        let full = golden_mean();
        let restricted = full.restrict_to_recurrent().unwrap();
        let alphabet: Vec<String> = full.driving_alphabet().unwrap().to_vec();
        for len in 1..=8usize {
            for code in 0..(alphabet.len() as u64).pow(len as u32) {
                let word = decode_word(&alphabet, code, len);
                let refs: Vec<&str> = word.iter().map(String::as_str).collect();
                let a = full.word_probability(&refs, full.initial()).unwrap();
                let b = restricted
                    .word_probability(&refs, restricted.initial())
                    .unwrap();
                assert!((a - b).abs() <= 1e-12, "word {word:?}");
            }
        }
    }

    #[test]
    fn per_length_normalization() {
        for m in [golden_mean(), even(), sns()] {
            let alphabet: Vec<String> = m.driving_alphabet().unwrap().to_vec();
            for len in 1..=10usize {
                let mut total = 0.0;
                for code in 0..(alphabet.len() as u64).pow(len as u32) {
                    let word = decode_word(&alphabet, code, len);
                    let refs: Vec<&str> = word.iter().map(String::as_str).collect();
                    total += m.word_probability(&refs, m.initial()).unwrap();
                }
                assert!((total - 1.0).abs() <= 1e-9, "length {len}");
            }
        }
    }

    #[test]
    fn invalid_machines_are_rejected() {
        // Matrices that do not sum to a stochastic matrix.
        let t0 = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.0]]);
        let err = StochasticMachine::generator(
            &["a", "b"],
            &["0"],
            vec![t0],
            ComplexVector::from_reals(&[1.0, 0.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMachine(_)));

        // Initial distribution not normalized.
        let t = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[1.0, 0.0]]);
        let err = StochasticMachine::generator(
            &["a", "b"],
            &["0"],
            vec![t],
            ComplexVector::from_reals(&[0.7, 0.7]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMachine(_)));
    }
}
