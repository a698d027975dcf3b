//! Gram-matrix algebra: validation, circulant synthesis from eigenvalue
//! spectra, circulant averaging, state extraction, and invariant evaluation
//! from overlaps.
//!
//! A circulant Gram matrix is diagonalized by the unitary Fourier matrix
//! `F_ij = w_n^(ij)/sqrt(n)`; a nonnegative spectrum summing to n is exactly
//! the data of a normalized circulant Gram matrix, and its first-row overlap
//! is the convex combination `G_01 = sum_i (lambda_i/n) w_n^(-i)` of the
//! n-th roots of unity.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{hermitian_eigen, hermitian_eigenvalues};
use crate::math::{fabs, root_power, sqrt};
use crate::states::StateTuple;

/// Validity gate used by operations that require a well-formed Gram matrix.
const OPERATIONAL_TOL: f64 = 1e-8;

/// Spectrum sum must match the matrix order within this bound.
const SPECTRUM_SUM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum GramError {
    /// Entry count is not a perfect square of the declared order.
    ShapeMismatch { expected: usize, got: usize },
    /// Order zero is not a matrix.
    ZeroSize,
    /// Entries must be finite.
    NonFinite,
    /// Spectra must be nonnegative.
    NegativeEigenvalue { index: usize, value: f64 },
    /// Spectrum must sum to the order n.
    SpectrumSum { sum: f64, expected: f64 },
    /// Validation failed; the report carries the defects.
    Invalid(GramReport),
    /// Matrix has an eigenvalue below the PSD tolerance.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
}

impl fmt::Display for GramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GramError::ShapeMismatch { expected, got } => {
                write!(f, "expected {expected} entries for a square matrix, got {got}")
            }
            GramError::ZeroSize => write!(f, "matrix order must be at least 1"),
            GramError::NonFinite => write!(f, "matrix entries must be finite"),
            GramError::NegativeEigenvalue { index, value } => {
                write!(f, "spectrum entry {index} is negative ({value})")
            }
            GramError::SpectrumSum { sum, expected } => {
                write!(f, "spectrum sums to {sum}, expected {expected}")
            }
            GramError::Invalid(report) => write!(
                f,
                "not a valid Gram matrix (hermiticity defect {:.3e}, diagonal defect {:.3e}, min eigenvalue {:.3e})",
                report.hermiticity_defect, report.diagonal_defect, report.min_eigenvalue
            ),
            GramError::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
            }
        }
    }
}

impl core::error::Error for GramError {}

/// Defect summary produced by [`validate_gram`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramReport {
    /// Largest `|G_ij - conj(G_ji)|`.
    pub hermiticity_defect: f64,
    /// Largest `|G_ii - 1|`.
    pub diagonal_defect: f64,
    /// Smallest eigenvalue of the Hermitized matrix.
    pub min_eigenvalue: f64,
    /// True when every defect is within the requested tolerance.
    pub pass: bool,
}

/// An n x n complex matrix of pairwise overlaps, stored row-major.
///
/// Construction checks shape and finiteness only; [`validate_gram`] reports
/// on the Gram properties (Hermitian, unit diagonal, positive semidefinite)
/// so that defective matrices can be inspected rather than rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self, GramError> {
        if n == 0 {
            return Err(GramError::ZeroSize);
        }
        if entries.len() != n * n {
            return Err(GramError::ShapeMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(GramError::NonFinite);
        }
        Ok(GramMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, GramError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GramError::ShapeMismatch {
                    expected: n * n,
                    got: row.len() * n,
                });
            }
            entries.extend_from_slice(row);
        }
        GramMatrix::new(n, entries)
    }

    pub fn identity(n: usize) -> Result<Self, GramError> {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        GramMatrix::new(n, entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.entries[..self.n]
    }

    /// Ascending eigenvalues of the Hermitized matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.n, &self.entries)
    }

    /// Largest deviation from circulant structure:
    /// `max |G_ij - G_0,(j-i mod n)|`.
    pub fn circulant_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let reference = self.entries[(j + n - i) % n];
                let defect = (self.entry(i, j) - reference).norm();
                worst = worst.max(defect);
            }
        }
        worst
    }

    pub fn is_circulant(&self, tol: f64) -> bool {
        self.circulant_defect() <= tol
    }

    /// Eigenvalues of a circulant matrix via the Fourier transform of its
    /// first row: `lambda_k = sum_j G_0j w_n^(jk)`. Only meaningful when the
    /// matrix is circulant; for Hermitian circulants the result is real.
    pub fn fourier_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, g) in self.first_row().iter().enumerate() {
                    acc += g * root_power(n, (j * k) as i64);
                }
                acc.re
            })
            .collect()
    }

    fn require_valid(&self) -> Result<(), GramError> {
        let report = validate_gram(self, OPERATIONAL_TOL);
        if report.pass {
            Ok(())
        } else {
            Err(GramError::Invalid(report))
        }
    }
}

/// Reports the Hermiticity defect, diagonal defect and smallest eigenvalue
/// of `g`; passes iff the defects are within `tol` and the smallest
/// eigenvalue is at least `-tol * n`.
pub fn validate_gram(g: &GramMatrix, tol: f64) -> GramReport {
    let n = g.order();
    let mut hermiticity_defect = 0.0_f64;
    let mut diagonal_defect = 0.0_f64;
    for i in 0..n {
        diagonal_defect = diagonal_defect.max((g.entry(i, i) - 1.0).norm());
        for j in i..n {
            let defect = (g.entry(i, j) - g.entry(j, i).conj()).norm();
            hermiticity_defect = hermiticity_defect.max(defect);
        }
    }
    let min_eigenvalue = g.eigenvalues().first().copied().unwrap_or(0.0);
    let pass =
        hermiticity_defect <= tol && diagonal_defect <= tol && min_eigenvalue >= -tol * n as f64;
    GramReport {
        hermiticity_defect,
        diagonal_defect,
        min_eigenvalue,
        pass,
    }
}

/// Eigenvalue spectrum of a normalized circulant Gram matrix: n nonnegative
/// values summing to n.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpectrum {
    lambdas: Vec<f64>,
}

impl CirculantSpectrum {
    pub fn new(lambdas: Vec<f64>) -> Result<Self, GramError> {
        if lambdas.is_empty() {
            return Err(GramError::ZeroSize);
        }
        for (index, &value) in lambdas.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(GramError::NegativeEigenvalue { index, value });
            }
        }
        let sum: f64 = lambdas.iter().sum();
        let expected = lambdas.len() as f64;
        if fabs(sum - expected) > SPECTRUM_SUM_TOL {
            return Err(GramError::SpectrumSum { sum, expected });
        }
        Ok(CirculantSpectrum { lambdas })
    }

    pub fn order(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// The overlap `G_01` of the synthesized circulant Gram matrix:
    /// `sum_i (lambda_i/n) w_n^(-i)`, a convex combination of the n-th
    /// roots of unity.
    pub fn root(&self) -> Complex64 {
        let n = self.order();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &lambda) in self.lambdas.iter().enumerate() {
            acc += (lambda / n as f64) * root_power(n, -(i as i64));
        }
        acc
    }
}

/// The cyclic relabeling `v_i -> v_(i+k mod n)` acting on Gram matrices;
/// the k-th power of the basic cycle permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicShift {
    n: usize,
    k: usize,
}

impl CyclicShift {
    pub fn new(n: usize, k: usize) -> Result<Self, GramError> {
        if n == 0 {
            return Err(GramError::ZeroSize);
        }
        Ok(CyclicShift { n, k: k % n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn power(&self) -> usize {
        self.k
    }

    pub fn apply(&self, index: usize) -> usize {
        (index + self.k) % self.n
    }

    /// Gram matrix of the relabeled tuple: entry `(i, j)` becomes
    /// `G_(i+k, j+k)` with indices mod n.
    pub fn conjugate(&self, g: &GramMatrix) -> Result<GramMatrix, GramError> {
        if g.order() != self.n {
            return Err(GramError::ShapeMismatch {
                expected: self.n * self.n,
                got: g.order() * g.order(),
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(g.entry(self.apply(i), self.apply(j)));
            }
        }
        GramMatrix::new(n, entries)
    }
}

/// Synthesizes the circulant Gram matrix `F diag(lambda) F^dagger` with first
/// row `g_j = (1/n) sum_i lambda_i w_n^(-ij)`.
pub fn circulant_from_spectrum(spectrum: &CirculantSpectrum) -> GramMatrix {
    let n = spectrum.order();
    let nf = n as f64;
    let first_row: Vec<Complex64> = (0..n)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &lambda) in spectrum.lambdas().iter().enumerate() {
                acc += (lambda / nf) * root_power(n, -((i * j) as i64));
            }
            acc
        })
        .collect();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(first_row[(j + n - i) % n]);
        }
    }
    GramMatrix::new(n, entries).expect("square by construction")
}

/// Averages a Gram matrix over all cyclic relabelings.
///
/// The result is circulant, positive semidefinite and unit-diagonal, and its
/// `(0, 1)` entry is the arithmetic mean of the cyclic overlaps
/// `G_01, G_12, ..., G_(n-1)0`.
pub fn circulant_average(g: &GramMatrix) -> Result<GramMatrix, GramError> {
    g.require_valid()?;
    let n = g.order();
    let nf = n as f64;
    let first_row: Vec<Complex64> = (0..n)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += g.entry(k, (m + k) % n);
            }
            acc / nf
        })
        .collect();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(first_row[(j + n - i) % n]);
        }
    }
    GramMatrix::new(n, entries)
}

/// Extracts a tuple of unit vectors whose Gram matrix reproduces `g`.
///
/// The dimension is the rank of `g` at the eigenvalue cutoff `tol * n`;
/// eigenvalues below `-tol * n` are a PSD violation. Vectors are rows of
/// `sqrt(Lambda) U^dagger` over the retained eigenvalues, largest first.
pub fn states_from_gram(g: &GramMatrix, tol: f64) -> Result<StateTuple, GramError> {
    let n = g.order();
    let eig = hermitian_eigen(n, g.entries());
    let cutoff = tol * n as f64;
    if eig.values[0] < -cutoff {
        return Err(GramError::NotPositiveSemidefinite {
            min_eigenvalue: eig.values[0],
        });
    }
    // Indices of retained eigenvalues, largest first.
    let kept: Vec<usize> = (0..n).rev().filter(|&k| eig.values[k] > cutoff).collect();
    if kept.is_empty() {
        return Err(GramError::NotPositiveSemidefinite {
            min_eigenvalue: eig.values[0],
        });
    }
    let mut vectors = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = kept
            .iter()
            .map(|&a| sqrt(eig.values[a]) * eig.vector_entry(j, a).conj())
            .collect();
        let norm = sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if norm == 0.0 {
            return Err(GramError::Invalid(validate_gram(g, tol)));
        }
        for z in v.iter_mut() {
            *z /= norm;
        }
        vectors.push(v);
    }
    Ok(StateTuple::new(vectors).expect("unit-normalized rows"))
}

/// Cyclic product of superdiagonal overlaps `G_01 G_12 ... G_(n-1)0`.
pub fn invariant_from_gram(g: &GramMatrix) -> Complex64 {
    let n = g.order();
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        acc *= g.entry(k, (k + 1) % n);
    }
    acc
}
