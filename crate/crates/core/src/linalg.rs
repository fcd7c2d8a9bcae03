//! Dense complex linear algebra for small state vectors and operators.
//!
//! Everything here is sized for machine simulation, not numerics research:
//! state vectors up to roughly 2^20 amplitudes, operators up to a few dozen
//! rows. Matrices are dense, row-major `Complex64`. Validation (unitarity,
//! projector completeness) happens once at construction; the operations
//! trust validated inputs afterwards.

pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for structural validation (unitarity, projector algebra, norms).
pub const VALIDATION_TOL: f64 = 1e-9;
/// Tolerance for comparing two independently computed quantities.
pub const COMPARISON_TOL: f64 = 1e-10;
/// Probability mass below which a measurement branch is reported as absent.
pub const BRANCH_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("invalid projective measurement: {0}")]
    InvalidMeasurement(String),
    #[error("non-finite entry at index {0}")]
    NonFinite(usize),
    #[error("state vector is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("dimension must be positive")]
    ZeroDimension,
}

fn check_finite(data: &[Complex64]) -> Result<(), LinalgError> {
    for (i, z) in data.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(LinalgError::NonFinite(i));
        }
    }
    Ok(())
}

/// A column vector of complex amplitudes.
///
/// `new` enforces unit norm (within [`VALIDATION_TOL`]); `new_raw` only
/// checks finiteness and is meant for intermediate unnormalized values such
/// as the non-halting component of a measure-many run.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        let v = Self::new_raw(amps)?;
        let n = v.norm_sq();
        if (n - 1.0).abs() > VALIDATION_TOL {
            return Err(LinalgError::NotNormalized { norm_sq: n });
        }
        Ok(v)
    }

    pub fn new_raw(amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        if amps.is_empty() {
            return Err(LinalgError::ZeroDimension);
        }
        check_finite(&amps)?;
        Ok(StateVector { amps })
    }

    /// Basis vector |i> in the given dimension.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[i] = Complex64::new(1.0, 0.0);
        StateVector { amps }
    }

    /// The trivial one-dimensional state (used as the empty quantum register).
    pub fn scalar_one() -> Self {
        StateVector {
            amps: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        StateVector {
            amps: self.amps.iter().map(|z| z * factor).collect(),
        }
    }

    /// Kronecker product; `self` supplies the high-order factor.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { amps }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        check_finite(&data)?;
        Ok(CMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major table of real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul_vec(&self, v: &StateVector) -> Result<StateVector, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: v.dim(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v.amplitudes()) {
                acc += a * b;
            }
            *slot = acc;
        }
        Ok(StateVector { amps: out })
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.data[k * other.cols + c];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product; `self` supplies the high-order blocks.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.data[ar * self.cols + ac];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for br in 0..other.rows {
                    for bc in 0..other.cols {
                        out.data[(ar * other.rows + br) * cols + (ac * other.cols + bc)] =
                            a * other.data[br * other.cols + bc];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-norm deviation of `U† U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let gram = self.adjoint().mul_mat(self).expect("square");
        gram.max_abs_diff(&Self::identity(self.rows))
    }

    /// Checks idempotence and hermiticity within `tol`.
    pub fn is_projector(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let sq = self.mul_mat(self).expect("square");
        sq.max_abs_diff(self) <= tol && self.adjoint().max_abs_diff(self) <= tol
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// A square matrix validated to be unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    matrix: CMatrix,
}

impl UnitaryOperator {
    pub fn new(matrix: CMatrix) -> Result<Self, LinalgError> {
        let deviation = matrix.unitarity_defect();
        if deviation > VALIDATION_TOL {
            return Err(LinalgError::NotUnitary { deviation });
        }
        Ok(UnitaryOperator { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOperator {
            matrix: CMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Applies the operator: returns `U v`.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector, LinalgError> {
        self.matrix.mul_vec(v)
    }

    pub fn adjoint(&self) -> Self {
        UnitaryOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        UnitaryOperator {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// One branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementBranch {
    pub outcome: String,
    pub probability: f64,
    /// Renormalized post-measurement state; absent when the branch
    /// probability falls below [`BRANCH_CUTOFF`].
    pub post_state: Option<StateVector>,
}

/// A complete family of orthogonal projectors, one per outcome label.
///
/// Validated at construction: each projector idempotent and Hermitian,
/// pairwise products zero, and the family summing to the identity, all
/// within [`VALIDATION_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    outcomes: Vec<String>,
    projectors: Vec<CMatrix>,
}

impl ProjectiveMeasurement {
    pub fn new(outcomes: Vec<String>, projectors: Vec<CMatrix>) -> Result<Self, LinalgError> {
        if outcomes.is_empty() || outcomes.len() != projectors.len() {
            return Err(LinalgError::InvalidMeasurement(
                "outcome and projector counts differ".into(),
            ));
        }
        let dim = projectors[0].rows();
        let mut sum = CMatrix::zeros(dim, dim);
        for (label, p) in outcomes.iter().zip(&projectors) {
            if p.rows() != dim || p.cols() != dim {
                return Err(LinalgError::InvalidMeasurement(format!(
                    "projector for outcome {label} has mismatched dimension"
                )));
            }
            if !p.is_projector(VALIDATION_TOL) {
                return Err(LinalgError::InvalidMeasurement(format!(
                    "projector for outcome {label} is not idempotent Hermitian"
                )));
            }
            sum = sum.add(p);
        }
        if sum.max_abs_diff(&CMatrix::identity(dim)) > VALIDATION_TOL {
            return Err(LinalgError::InvalidMeasurement(
                "projectors do not sum to the identity".into(),
            ));
        }
        for i in 0..projectors.len() {
            for j in (i + 1)..projectors.len() {
                let prod = projectors[i].mul_mat(&projectors[j]).expect("square");
                if prod.max_abs() > VALIDATION_TOL {
                    return Err(LinalgError::InvalidMeasurement(format!(
                        "projectors {} and {} are not orthogonal",
                        outcomes[i], outcomes[j]
                    )));
                }
            }
        }
        Ok(ProjectiveMeasurement {
            outcomes,
            projectors,
        })
    }

    /// The trivial single-outcome measurement {I}.
    pub fn trivial(dim: usize, outcome: &str) -> Self {
        ProjectiveMeasurement {
            outcomes: vec![outcome.to_string()],
            projectors: vec![CMatrix::identity(dim)],
        }
    }

    /// Projectors onto the computational basis vectors, labelled `0..dim`.
    pub fn computational(dim: usize) -> Self {
        let outcomes = (0..dim).map(|i| i.to_string()).collect();
        let projectors = (0..dim)
            .map(|i| {
                let mut p = CMatrix::zeros(dim, dim);
                p[(i, i)] = Complex64::new(1.0, 0.0);
                p
            })
            .collect();
        ProjectiveMeasurement {
            outcomes,
            projectors,
        }
    }

    /// Two-outcome measurement from a projector and its complement.
    pub fn binary(
        accept: CMatrix,
        accept_label: &str,
        reject_label: &str,
    ) -> Result<Self, LinalgError> {
        let dim = accept.rows();
        let reject = CMatrix::identity(dim).sub(&accept);
        Self::new(
            vec![accept_label.to_string(), reject_label.to_string()],
            vec![accept, reject],
        )
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn projector(&self, outcome: &str) -> Option<&CMatrix> {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .map(|i| &self.projectors[i])
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// Measures `v`, returning one branch per outcome in declaration order.
    ///
    /// Branch probabilities are `||P v||^2`; they sum to `||v||^2`.
    pub fn measure(&self, v: &StateVector) -> Result<Vec<MeasurementBranch>, LinalgError> {
        if v.dim() != self.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: v.dim(),
            });
        }
        let mut branches = Vec::with_capacity(self.outcomes.len());
        for (label, p) in self.outcomes.iter().zip(&self.projectors) {
            let projected = p.mul_vec(v)?;
            let probability = projected.norm_sq();
            let post_state = if probability > BRANCH_CUTOFF {
                Some(projected.scale(1.0 / probability.sqrt()))
            } else {
                None
            };
            branches.push(MeasurementBranch {
                outcome: label.clone(),
                probability,
                post_state,
            });
        }
        Ok(branches)
    }
}

/// Projector onto the span of the given basis indices.
pub fn basis_projector(dim: usize, indices: &[usize]) -> CMatrix {
    let mut p = CMatrix::zeros(dim, dim);
    for &i in indices {
        assert!(i < dim, "basis index out of range");
        p[(i, i)] = Complex64::new(1.0, 0.0);
    }
    p
}

// ---------------------------------------------------------------------------
// Wire representation: Complex64 as [re, im], matrices as nested row-major
// arrays. Used by every machine document.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexWire(pub f64, pub f64);

pub fn vector_to_wire(v: &StateVector) -> Vec<ComplexWire> {
    v.amplitudes()
        .iter()
        .map(|z| ComplexWire(z.re, z.im))
        .collect()
}

pub fn vector_from_wire(wire: &[ComplexWire]) -> Result<StateVector, LinalgError> {
    StateVector::new_raw(wire.iter().map(|c| Complex64::new(c.0, c.1)).collect())
}

pub fn matrix_to_wire(m: &CMatrix) -> Vec<Vec<ComplexWire>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let z = m[(r, c)];
                    ComplexWire(z.re, z.im)
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_wire(wire: &[Vec<ComplexWire>]) -> Result<CMatrix, LinalgError> {
    let rows = wire.len();
    if rows == 0 {
        return Err(LinalgError::ZeroDimension);
    }
    let cols = wire[0].len();
    let mut data = Vec::with_capacity(rows * cols);
    for row in wire {
        if row.len() != cols {
            return Err(LinalgError::DimensionMismatch {
                left: cols,
                right: row.len(),
            });
        }
        for c in row {
            data.push(Complex64::new(c.0, c.1));
        }
    }
    CMatrix::new(rows, cols, data)
}
