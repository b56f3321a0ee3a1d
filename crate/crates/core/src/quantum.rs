//! Quantum machine classes: quantum transducers (QT) and their
//! recognizer (QR/QDR) and generator (QG/QDG/QCG) specializations.
//!
//! A machine carries one unitary per input symbol and a partition of the
//! basis indices into projector subspaces, one per measured symbol. The
//! transition operator for a measured step is T(y|x) = U(x)·P(y); a λ
//! (no-measurement) step contributes U(x) alone, since P(λ) = 𝟙.
//!
//! Recognizers follow the same layout with the roles swapped: a single
//! unitary, and projectors keyed by the *input* alphabet, so that
//! T(x) = U·P(x) drives acceptance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{
    is_projector_partition, is_unitary, ComplexMatrix, ComplexVector, DEFAULT_TOL,
};
use crate::stochastic::{matrices_deterministic, symbol_index, StochasticMachine};
use crate::STRUCTURAL_ZERO;

/// Residual bound for the stationary fixed-point verification.
const FIXED_POINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumKind {
    Transducer,
    Recognizer,
    Generator,
}

impl QuantumKind {
    pub fn code(self) -> &'static str {
        match self {
            QuantumKind::Transducer => "QT",
            QuantumKind::Recognizer => "QR",
            QuantumKind::Generator => "QG",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "QT" => Some(QuantumKind::Transducer),
            "QR" => Some(QuantumKind::Recognizer),
            "QG" => Some(QuantumKind::Generator),
            _ => None,
        }
    }
}

/// Density operator: Hermitian, unit trace, non-negative diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension("density matrix must be square".into()));
        }
        if matrix.sub(&matrix.dagger()).max_abs() > DEFAULT_TOL {
            return Err(Error::InvalidMachine("density matrix is not Hermitian".into()));
        }
        if (matrix.trace().re - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidMachine("density matrix trace is not 1".into()));
        }
        for i in 0..matrix.rows() {
            if matrix.get(i, i).re < -DEFAULT_TOL {
                return Err(Error::InvalidMachine(
                    "density matrix has a negative diagonal entry".into(),
                ));
            }
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state 𝟙/n.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Report from the structural propositions every valid machine obeys.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    /// Whether each connected component of the |U|² union graph is
    /// strongly connected.
    pub strongly_connected: bool,
    /// Strongly connected components, by state name.
    pub components: Vec<Vec<String>>,
    /// States receiving transitions labeled with more than one symbol.
    pub incoming_label_conflicts: Vec<String>,
    /// |measured alphabet| ≤ dim(ℋ).
    pub alphabet_bounded: bool,
}

impl StructuralReport {
    pub fn is_ok(&self) -> bool {
        self.strongly_connected && self.incoming_label_conflicts.is_empty() && self.alphabet_bounded
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.strongly_connected {
            out.push("the |U|² transition graph is not strongly connected".into());
        }
        out.extend(self.incoming_label_conflicts.iter().cloned());
        if !self.alphabet_bounded {
            out.push("measured alphabet larger than the Hilbert-space dimension".into());
        }
        out
    }
}

/// A finite-state quantum machine over an n-dimensional state space.
///
/// Immutable once validated: every unitary passes `is_unitary`, the
/// projector index sets partition the basis, and the start vector has
/// unit norm. Projectors are stored as basis-index sets, which makes the
/// diagonal 0/1 eigenbasis assumption structural rather than numeric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumMachine {
    kind: QuantumKind,
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    unitaries: BTreeMap<String, ComplexMatrix>,
    projectors: BTreeMap<String, Vec<usize>>,
    start: ComplexVector,
}

impl QuantumMachine {
    pub fn new(
        kind: QuantumKind,
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        unitaries: BTreeMap<String, ComplexMatrix>,
        projectors: BTreeMap<String, Vec<usize>>,
        start: ComplexVector,
    ) -> Result<Self> {
        let mut machine = Self {
            kind,
            states,
            inputs,
            outputs,
            unitaries,
            projectors,
            start,
        };
        for indices in machine.projectors.values_mut() {
            indices.sort_unstable();
        }
        machine.validate()?;
        Ok(machine)
    }

    /// Builds a generator: one unitary, projectors keyed by output symbol.
    pub fn generator(
        states: &[&str],
        outputs: &[&str],
        unitary: ComplexMatrix,
        projectors: Vec<(&str, Vec<usize>)>,
        start: ComplexVector,
    ) -> Result<Self> {
        Self::new(
            QuantumKind::Generator,
            states.iter().map(ToString::to_string).collect(),
            vec!["t".into()],
            outputs.iter().map(ToString::to_string).collect(),
            BTreeMap::from([("t".into(), unitary)]),
            projectors
                .into_iter()
                .map(|(y, ix)| (y.to_string(), ix))
                .collect(),
            start,
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

        let projector_alphabet: &[String] = match self.kind {
            QuantumKind::Recognizer => {
                if self.outputs.len() != 1 {
                    return Err(Error::InvalidMachine(
                        "a quantum recognizer must have exactly one output symbol".into(),
                    ));
                }
                if self.unitaries.len() != 1 {
                    return Err(Error::InvalidMachine(
                        "a quantum recognizer carries a single unitary".into(),
                    ));
                }
                &self.inputs
            }
            QuantumKind::Generator => {
                if self.inputs.len() != 1 {
                    return Err(Error::InvalidMachine(
                        "a quantum generator must have exactly one input symbol".into(),
                    ));
                }
                self.require_unitary_keys_match_inputs()?;
                &self.outputs
            }
            QuantumKind::Transducer => {
                self.require_unitary_keys_match_inputs()?;
                &self.outputs
            }
        };

        for (key, u) in &self.unitaries {
            if u.rows() != n || u.cols() != n {
                return Err(Error::InvalidMachine(format!(
                    "unitary `{key}` is {}x{}, expected {n}x{n}",
                    u.rows(),
                    u.cols()
                )));
            }
            if !u.all_finite() {
                return Err(Error::InvalidMachine(format!(
                    "unitary `{key}` has non-finite entries"
                )));
            }
            if !is_unitary(u, DEFAULT_TOL)? {
                return Err(Error::InvalidMachine(format!(
                    "matrix for input `{key}` is not unitary"
                )));
            }
        }

        let keys: Vec<&String> = self.projectors.keys().collect();
        let mut expected: Vec<&String> = projector_alphabet.iter().collect();
        expected.sort();
        if keys != expected {
            return Err(Error::InvalidMachine(format!(
                "projector symbols {keys:?} do not match the {} alphabet",
                if self.kind == QuantumKind::Recognizer {
                    "input"
                } else {
                    "output"
                }
            )));
        }
        let mut covered = vec![false; n];
        for (y, indices) in &self.projectors {
            if indices.is_empty() {
                return Err(Error::InvalidMachine(format!(
                    "projector for `{y}` projects onto nothing"
                )));
            }
            for &i in indices {
                if i >= n {
                    return Err(Error::InvalidMachine(format!(
                        "projector for `{y}` names basis index {i} out of range"
                    )));
                }
                if covered[i] {
                    return Err(Error::InvalidMachine(format!(
                        "basis index {i} appears in more than one projector"
                    )));
                }
                covered[i] = true;
            }
        }
        if !covered.iter().all(|&c| c) {
            return Err(Error::InvalidMachine(
                "projectors do not sum to the identity".into(),
            ));
        }

        if self.start.dim() != n {
            return Err(Error::InvalidMachine(format!(
                "start vector has dimension {}, expected {n}",
                self.start.dim()
            )));
        }
        if (self.start.norm_sqr() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidMachine("start vector is not a unit vector".into()));
        }
        Ok(())
    }

    fn require_unitary_keys_match_inputs(&self) -> Result<()> {
        let keys: Vec<&String> = self.unitaries.keys().collect();
        let mut expected: Vec<&String> = self.inputs.iter().collect();
        expected.sort();
        if keys != expected {
            return Err(Error::InvalidMachine(format!(
                "unitary symbols {keys:?} do not match the input alphabet"
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> QuantumKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.states.len()
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

    pub fn unitaries(&self) -> &BTreeMap<String, ComplexMatrix> {
        &self.unitaries
    }

    pub fn projectors(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.projectors
    }

    pub fn start(&self) -> &ComplexVector {
        &self.start
    }

    /// Alphabet of measured symbols: the projector keys, in declaration
    /// order (outputs for generators and transducers, inputs for
    /// recognizers).
    pub fn measured_alphabet(&self) -> &[String] {
        match self.kind {
            QuantumKind::Recognizer => &self.inputs,
            _ => &self.outputs,
        }
    }

    fn projector_indices(&self, y: &str) -> Result<&[usize]> {
        self.projectors
            .get(y)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: y.into(),
                alphabet: self.measured_alphabet().to_vec(),
            })
    }

    /// The unitary applied when reading input `x`.
    pub fn unitary_for(&self, x: &str) -> Result<&ComplexMatrix> {
        match self.kind {
            QuantumKind::Recognizer => {
                symbol_index(&self.inputs, x)?;
                Ok(self.unitaries.values().next().expect("validated machine"))
            }
            _ => self.unitaries.get(x).ok_or_else(|| Error::UnknownSymbol {
                symbol: x.into(),
                alphabet: self.inputs.to_vec(),
            }),
        }
    }

    /// Transition operator T(y|x) = U(x)·P(y); `None` stands for λ and
    /// yields U(x) alone, since P(λ) = 𝟙.
    pub fn transition_operator(&self, x: &str, y: Option<&str>) -> Result<ComplexMatrix> {
        let u = self.unitary_for(x)?;
        match (self.kind, y) {
            (_, None) => Ok(u.clone()),
            (QuantumKind::Recognizer, Some(sym)) => {
                // For a recognizer the input symbol selects the projector;
                // the output slot must name the lone accept symbol.
                if sym != self.outputs[0] {
                    return Err(Error::UnknownSymbol {
                        symbol: sym.into(),
                        alphabet: self.outputs.to_vec(),
                    });
                }
                Ok(u.mask_columns(self.projector_indices(x)?))
            }
            (_, Some(sym)) => Ok(u.mask_columns(self.projector_indices(sym)?)),
        }
    }

    /// Operator for one step of an observed word on a single-unitary
    /// machine (generator or recognizer): U·P(symbol).
    pub(crate) fn observed_step_operator(&self, symbol: &str) -> Result<ComplexMatrix> {
        if self.unitaries.len() != 1 {
            return Err(Error::Unsupported(
                "a transducer's word distribution depends on the input word; \
                 drive it with a measurement protocol"
                    .into(),
            ));
        }
        let u = self.unitaries.values().next().expect("nonempty");
        Ok(u.mask_columns(self.projector_indices(symbol)?))
    }

    /// One evolution step: the unnormalized successor φ = ψ·T(y|x), its
    /// norm² as the branch probability, and the renormalized state when
    /// the branch survives. A vanishing branch returns `(None, 0.0)`.
    pub fn evolve(
        &self,
        psi: &ComplexVector,
        x: &str,
        y: &str,
    ) -> Result<(Option<ComplexVector>, f64)> {
        check_state_vector(psi, self.n())?;
        let t = self.transition_operator(x, Some(y))?;
        let phi = psi.mul_matrix(&t);
        let p = phi.norm_sqr();
        if p <= STRUCTURAL_ZERO {
            Ok((None, p))
        } else {
            Ok((Some(phi.scale(1.0 / p.sqrt())), p))
        }
    }

    /// Probability of observing `y_word` while reading `x_word` from the
    /// start vector. λ slots (None) apply the unitary without measuring.
    pub fn conditional_word_probability(
        &self,
        y_word: &[Option<&str>],
        x_word: &[&str],
    ) -> Result<f64> {
        if y_word.len() != x_word.len() {
            return Err(Error::LengthMismatch(format!(
                "output word (len {}) and input word (len {}) must align",
                y_word.len(),
                x_word.len()
            )));
        }
        let mut phi = self.start.clone();
        for (y, x) in y_word.iter().zip(x_word) {
            let t = self.transition_operator(x, *y)?;
            phi = phi.mul_matrix(&t);
            if phi.is_zero() {
                return Ok(0.0);
            }
        }
        Ok(phi.norm_sqr())
    }

    /// The stationary mixed state ρ^s = 𝟙/n, verified to satisfy
    /// ρ = Σ_y P(y) U† ρ U P(y) for every unitary before returning.
    pub fn stationary_state(&self) -> Result<DensityMatrix> {
        let n = self.n();
        let rho = DensityMatrix::maximally_mixed(n);
        for (key, u) in &self.unitaries {
            let mut evolved = ComplexMatrix::zeros(n, n);
            for indices in self.projectors.values() {
                let p = ComplexMatrix::projector(n, indices);
                let term = p.mul(&u.dagger()).mul(rho.matrix()).mul(u).mul(&p);
                evolved = evolved.add(&term);
            }
            let residual = evolved.sub(rho.matrix()).max_abs();
            if residual > FIXED_POINT_TOL {
                return Err(Error::FixedPointViolation(format!(
                    "residual {residual:.3e} under unitary `{key}`"
                )));
            }
        }
        Ok(rho)
    }

    /// Asymptotic single-symbol probability rank(P(y))/n.
    pub fn symbol_probability(&self, y: &str) -> Result<f64> {
        Ok(self.projector_indices(y)?.len() as f64 / self.n() as f64)
    }

    /// Asymptotic word probability tr(T†(y^L) ρ^s T(y^L)) with T(y^L) the
    /// ordered transition-operator product; λ slots contribute U alone.
    pub fn stationary_word_probability(
        &self,
        y_word: &[Option<&str>],
        x_word: &[&str],
    ) -> Result<f64> {
        if y_word.len() != x_word.len() {
            return Err(Error::LengthMismatch(format!(
                "output word (len {}) and input word (len {}) must align",
                y_word.len(),
                x_word.len()
            )));
        }
        let n = self.n();
        let mut t = ComplexMatrix::identity(n);
        for (y, x) in y_word.iter().zip(x_word) {
            t = t.mul(&self.transition_operator(x, *y)?);
            if t.is_zero() {
                return Ok(0.0);
            }
        }
        Ok(trace_probability(&t, &DensityMatrix::maximally_mixed(n)))
    }

    /// tr(T† ρ^s T) for an already-assembled operator product.
    pub(crate) fn stationary_operator_probability(&self, t: &ComplexMatrix) -> f64 {
        trace_probability(t, &DensityMatrix::maximally_mixed(self.n()))
    }

    /// Stationary probability of an observed word on a single-unitary
    /// machine, measuring at every step.
    pub fn observed_word_probability(&self, word: &[&str]) -> Result<f64> {
        let n = self.n();
        let mut t = ComplexMatrix::identity(n);
        for sym in word {
            t = t.mul(&self.observed_step_operator(sym)?);
            if t.is_zero() {
                return Ok(0.0);
            }
        }
        Ok(trace_probability(&t, &DensityMatrix::maximally_mixed(n)))
    }

    /// True iff every transition operator has at most one nonzero entry
    /// per row.
    pub fn is_deterministic(&self) -> bool {
        let ts: Vec<ComplexMatrix> = self
            .unitaries
            .values()
            .flat_map(|u| {
                self.projectors
                    .values()
                    .map(|indices| u.mask_columns(indices))
            })
            .collect();
        matrices_deterministic(ts.iter())
    }

    /// True iff all measurements are non-degenerate (every projector is a
    /// singleton).
    pub fn is_complete(&self) -> bool {
        self.projectors.values().all(|indices| indices.len() == 1)
    }

    /// The classical generator with T'(y)_ij = |T(y)_ij|² and a uniform
    /// initial distribution, matching ρ^s. Generates the same process
    /// language as a deterministic quantum generator.
    pub fn equivalent_sdg(&self) -> Result<StochasticMachine> {
        if self.kind == QuantumKind::Recognizer {
            return Err(Error::Unsupported(
                "the equivalent-SDG construction applies to generators".into(),
            ));
        }
        if self.unitaries.len() != 1 {
            return Err(Error::Unsupported(
                "the equivalent-SDG construction needs a single input symbol".into(),
            ));
        }
        if !self.is_deterministic() {
            return Err(Error::Nondeterministic(
                "the equivalent SDG is defined for deterministic generators".into(),
            ));
        }
        let u = self.unitaries.values().next().expect("nonempty");
        let matrices = self
            .measured_alphabet()
            .iter()
            .enumerate()
            .map(|(y_idx, y)| {
                let t = u.mask_columns(&self.projectors[y]);
                ((0usize, y_idx), t.entrywise_norm_sqr())
            })
            .collect();
        StochasticMachine::new(
            crate::stochastic::StochasticKind::Generator,
            self.states.clone(),
            self.inputs.clone(),
            self.measured_alphabet().to_vec(),
            matrices,
            ComplexVector::uniform(self.n()),
        )
    }

    /// The reversed machine: every unitary transposed, projectors (being
    /// diagonal) unchanged. Always yields another valid machine.
    pub fn reverse(&self) -> Result<QuantumMachine> {
        QuantumMachine::new(
            self.kind,
            self.states.clone(),
            self.inputs.clone(),
            self.outputs.clone(),
            self.unitaries
                .iter()
                .map(|(k, u)| (k.clone(), u.transpose()))
                .collect(),
            self.projectors.clone(),
            self.start.clone(),
        )
    }

    /// Checks the structural propositions: strong connectivity of the
    /// |U|² union graph, single-symbol incoming labels, and the alphabet
    /// bound. Violations on a validated machine indicate library bugs.
    pub fn structural_checks(&self) -> StructuralReport {
        let unistochastic: Vec<ComplexMatrix> = self
            .unitaries
            .values()
            .map(ComplexMatrix::entrywise_norm_sqr)
            .collect();
        let graph = Digraph::from_union(unistochastic.iter(), STRUCTURAL_ZERO);
        let sccs = graph.sccs();
        let mut strongly_connected = true;
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && graph.has_edge(i, j) {
                    let same = sccs.iter().any(|c| c.contains(&i) && c.contains(&j));
                    if !same {
                        strongly_connected = false;
                    }
                }
            }
        }
        let components = sccs
            .iter()
            .map(|c| c.iter().map(|&i| self.states[i].clone()).collect())
            .collect();

        let mut symbol_of_state = vec![String::new(); self.n()];
        for (y, indices) in &self.projectors {
            for &i in indices {
                symbol_of_state[i] = y.clone();
            }
        }
        let mut conflicts = Vec::new();
        for (x, u) in &self.unitaries {
            for (y, indices) in &self.projectors {
                let t = u.mask_columns(indices);
                for i in 0..self.n() {
                    for (j, state_symbol) in symbol_of_state.iter().enumerate() {
                        if t.get(i, j).norm() > STRUCTURAL_ZERO && state_symbol != y {
                            conflicts.push(format!(
                                "transition {} -> {} under `{x}` carries `{y}` into a \
                                 `{state_symbol}` state",
                                self.states[i], self.states[j]
                            ));
                        }
                    }
                }
            }
        }

        StructuralReport {
            strongly_connected,
            components,
            incoming_label_conflicts: conflicts,
            alphabet_bounded: self.measured_alphabet().len() <= self.n(),
        }
    }
}

fn trace_probability(t: &ComplexMatrix, rho: &DensityMatrix) -> f64 {
    t.dagger().mul(rho.matrix()).mul(t).trace().re
}

/// Requires a unit vector of the machine's dimension.
pub(crate) fn check_state_vector(psi: &ComplexVector, n: usize) -> Result<()> {
    if psi.dim() != n {
        return Err(Error::InvalidStateVector(format!(
            "dimension {} does not match the {n}-state machine",
            psi.dim()
        )));
    }
    if (psi.norm_sqr() - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::InvalidStateVector(format!(
            "norm² is {}, expected 1",
            psi.norm_sqr()
        )));
    }
    Ok(())
}

/// Unitaries keyed by input plus projector index sets keyed by symbol,
/// as recovered from a transition-operator set.
pub type RecoveredOperators = (BTreeMap<String, ComplexMatrix>, BTreeMap<String, Vec<usize>>);

/// Recovers the unitaries and projectors from a transition-operator set
/// keyed by (output, input): U(x) = Σ_y T(y|x) and P(y) = U†(x)·T(y|x).
/// Fails when the sum is not unitary, the recovered projectors differ
/// across inputs, or they do not form a partition.
pub fn recover_unitaries_and_projectors(
    t_set: &BTreeMap<(String, String), ComplexMatrix>,
    tol: f64,
) -> Result<RecoveredOperators> {
    if t_set.is_empty() {
        return Err(Error::InconsistentTransitions("empty transition set".into()));
    }
    let n = t_set.values().next().expect("nonempty").rows();
    let mut by_input: BTreeMap<&String, Vec<(&String, &ComplexMatrix)>> = BTreeMap::new();
    for ((y, x), t) in t_set {
        if t.rows() != n || t.cols() != n {
            return Err(Error::Dimension(
                "transition matrices must share one square dimension".into(),
            ));
        }
        by_input.entry(x).or_default().push((y, t));
    }

    let mut unitaries = BTreeMap::new();
    let mut projectors: Option<BTreeMap<String, Vec<usize>>> = None;
    for (x, terms) in &by_input {
        let mut u = ComplexMatrix::zeros(n, n);
        for (_, t) in terms {
            u = u.add(t);
        }
        if !is_unitary(&u, tol)? {
            return Err(Error::InconsistentTransitions(format!(
                "Σ_y T(y|{x}) is not unitary"
            )));
        }
        let mut recovered: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut p_matrices = Vec::new();
        for (y, t) in terms {
            let p = u.dagger().mul(t);
            let mut indices = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let e = p.get(i, j);
                    if i == j {
                        if (e.re - 1.0).abs() <= tol && e.im.abs() <= tol {
                            indices.push(i);
                        } else if e.norm() > tol {
                            return Err(Error::InconsistentTransitions(format!(
                                "recovered P({y}) is not a 0/1 diagonal"
                            )));
                        }
                    } else if e.norm() > tol {
                        return Err(Error::InconsistentTransitions(format!(
                            "recovered P({y}) has off-diagonal weight"
                        )));
                    }
                }
            }
            p_matrices.push(ComplexMatrix::projector(n, &indices));
            recovered.insert((*y).clone(), indices);
        }
        if !is_projector_partition(&p_matrices, tol)? {
            return Err(Error::InconsistentTransitions(format!(
                "recovered projectors for input `{x}` do not partition the basis"
            )));
        }
        match &projectors {
            None => projectors = Some(recovered),
            Some(previous) if *previous != recovered => {
                return Err(Error::InconsistentTransitions(
                    "recovered projectors differ across inputs".into(),
                ));
            }
            Some(_) => {}
        }
        unitaries.insert((*x).clone(), u);
    }
    Ok((unitaries, projectors.expect("at least one input")))
}
