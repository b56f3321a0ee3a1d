//! Dense complex linear algebra for small state spaces, plus the
//! validation predicates every machine class relies on.
//!
//! Machines in this crate have at most a handful of states, so matrices
//! are stored row-major in a flat `Vec` and every operation is a plain
//! loop. Row vectors act on matrices from the left (`v · M`), matching
//! the transition-matrix convention used throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Complex scalar used for all amplitudes and probabilities.
pub type Complex = Complex64;

/// Default numerical tolerance for the validation predicates.
///
/// Machines are tiny (n ≤ ~16) with entries like 1/√2, so double-precision
/// rounding sits far below this.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Iteration cap for the stationary-distribution power iteration.
pub const POWER_ITERATION_CAP: usize = 1_000_000;

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Row vector over the complex field.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex>) -> Self {
        Self { entries }
    }

    pub fn from_reals(reals: &[f64]) -> Self {
        Self {
            entries: reals.iter().map(|&r| c(r)).collect(),
        }
    }

    /// Indicator vector with a single 1 at `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut entries = vec![c(0.0); dim];
        entries[index] = c(1.0);
        Self { entries }
    }

    /// Uniform probability vector (1/n, ..., 1/n).
    pub fn uniform(dim: usize) -> Self {
        Self {
            entries: vec![c(1.0 / dim as f64); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Complex {
        self.entries[i]
    }

    /// Sum of entries; ⟨v|η⟩ with |η⟩ the all-ones column.
    pub fn sum(&self) -> Complex {
        self.entries.iter().sum()
    }

    /// Squared Euclidean norm ⟨v|v⟩.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Row-vector times matrix: (v · M)_j = Σ_i v_i M_ij.
    pub fn mul_matrix(&self, m: &ComplexMatrix) -> Self {
        assert_eq!(self.dim(), m.rows, "vector/matrix dimension mismatch");
        let mut out = vec![c(0.0); m.cols];
        for i in 0..m.rows {
            let v = self.entries[i];
            if v == c(0.0) {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += v * m.get(i, j);
            }
        }
        Self { entries: out }
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.re == 0.0 && e.im == 0.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Checks the entries form a probability distribution: real within
    /// `tol`, at least `-tol`, summing to 1 within `tol`.
    pub fn is_probability_vector(&self, tol: f64) -> bool {
        let mut sum = 0.0;
        for e in &self.entries {
            if e.im.abs() > tol || e.re < -tol {
                return false;
            }
            sum += e.re;
        }
        (sum - 1.0).abs() <= tol
    }
}

/// Dense row-major matrix over the complex field.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![c(0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c(1.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a square matrix from real entries, row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols));
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.iter().flat_map(|r| r.iter().map(|&x| c(x))).collect(),
        }
    }

    /// Diagonal 0/1 projector onto the given basis indices.
    pub fn projector(dim: usize, indices: &[usize]) -> Self {
        let mut m = Self::zeros(dim, dim);
        for &i in indices {
            m.set(i, i, c(1.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == c(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Conjugate transpose M†.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Σ_ij |M_ij|², the squared Frobenius norm.
    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.re == 0.0 && e.im == 0.0)
    }

    /// Zeroes every column not listed in `keep`. Applying a diagonal 0/1
    /// projector on the right (M · P) reduces to this, with no rounding.
    pub fn mask_columns(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for &j in keep {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Entrywise squared magnitudes |M_ij|² as a real matrix.
    pub fn entrywise_norm_sqr(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| c(e.norm_sqr())).collect(),
        }
    }

    /// Keeps only the rows and columns listed in `indices`.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = Self::zeros(k, k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

/// True iff the largest entry magnitude of M·M† − 𝟙 is at most `tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.require_square()?;
    let residual = m.mul(&m.dagger()).sub(&ComplexMatrix::identity(m.rows()));
    Ok(residual.max_abs() <= tol)
}

/// True iff every entry is real within `tol`, at least −`tol`, and every
/// row sums to at most 1 + `tol`.
pub fn is_substochastic(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.require_square()?;
    for i in 0..m.rows() {
        let mut row_sum = 0.0;
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if e.im.abs() > tol || e.re < -tol {
                return Ok(false);
            }
            row_sum += e.re;
        }
        if row_sum > 1.0 + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff substochastic and every row sums to 1 within `tol`.
pub fn is_stochastic(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    if !is_substochastic(m, tol)? {
        return Ok(false);
    }
    for i in 0..m.rows() {
        let row_sum: f64 = (0..m.cols()).map(|j| m.get(i, j).re).sum();
        if (row_sum - 1.0).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff each matrix is a diagonal 0/1 projector (hence Hermitian and
/// idempotent) and the set sums to the identity within `tol`.
pub fn is_projector_partition(p_set: &[ComplexMatrix], tol: f64) -> Result<bool> {
    let first = p_set
        .first()
        .ok_or_else(|| Error::Dimension("empty projector set".into()))?;
    first.require_square()?;
    let n = first.rows();
    let mut sum = ComplexMatrix::zeros(n, n);
    for p in p_set {
        p.require_square()?;
        if p.rows() != n {
            return Err(Error::Dimension(format!(
                "projector dimension mismatch: {} vs {}",
                p.rows(),
                n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let e = p.get(i, j);
                if i == j {
                    if e.im.abs() > tol || (e.re.abs() > tol && (e.re - 1.0).abs() > tol) {
                        return Ok(false);
                    }
                } else if e.norm() > tol {
                    return Ok(false);
                }
            }
        }
        if p.mul(p).sub(p).max_abs() > tol || p.sub(&p.dagger()).max_abs() > tol {
            return Ok(false);
        }
        sum = sum.add(p);
    }
    Ok(sum.sub(&ComplexMatrix::identity(n)).max_abs() <= tol)
}

/// Stationary distribution ⟨π^s| of a stochastic matrix with a single
/// recurrent class, computed by power iteration from the uniform vector.
///
/// Periodic chains whose iterates fail to settle are reported as
/// non-convergent rather than silently averaged.
pub fn stationary_left_eigenvector(t: &ComplexMatrix, tol: f64) -> Result<ComplexVector> {
    if !is_stochastic(t, tol)? {
        return Err(Error::NotStochastic(
            "stationary distribution requires a stochastic matrix".into(),
        ));
    }
    let graph = Digraph::from_positive_entries(t, tol);
    let classes = graph.absorbing_classes();
    if classes.len() != 1 {
        return Err(Error::MultipleRecurrentClasses {
            classes: classes
                .iter()
                .map(|class| class.iter().map(ToString::to_string).collect())
                .collect(),
        });
    }

    let n = t.rows();
    let mut v = ComplexVector::uniform(n);
    // Iterate well past the requested tolerance so downstream word
    // probabilities inherit a near-exact vector; `tol` remains the
    // acceptance bound on the fixed-point residual.
    let settle = (tol * 1e-6).max(1e-15);
    for _ in 0..POWER_ITERATION_CAP {
        let mut next = v.mul_matrix(t);
        let total = next.sum().re;
        if total > 0.0 {
            next = next.scale(1.0 / total);
        }
        if next.max_abs_diff(&v) <= settle {
            return Ok(next);
        }
        v = next;
    }
    if v.mul_matrix(t).max_abs_diff(&v) <= tol {
        return Ok(v);
    }
    Err(Error::NoConvergence {
        cap: POWER_ITERATION_CAP,
    })
}
