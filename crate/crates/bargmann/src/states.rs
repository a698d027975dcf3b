//! State tuples and their invariants: pure and mixed multivariate traces,
//! Gram extraction, gauge alignment, and geometric-phase reporting.

use core::fmt;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::geometry::{region_contains, GeometryError, MembershipVerdict};
use crate::gram::GramMatrix;
use crate::linalg::hermitian_eigenvalues;
use crate::math::{atan2, cos, sin, sqrt, wrap_angle};

/// Unit-norm tolerance for state vectors.
const NORM_TOL: f64 = 1e-10;

/// Consecutive overlaps at or below this magnitude make gauge alignment
/// undefined.
const OVERLAP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum StatesError {
    EmptyTuple,
    /// Vector `index` has norm `norm`, too far from 1.
    NotNormalized {
        index: usize,
        norm: f64,
    },
    /// Vector or matrix `index` does not match the tuple dimension.
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    NonFinite,
    /// Cannot rescale a zero vector.
    ZeroVector {
        index: usize,
    },
    /// Consecutive overlap `(index, index+1)` vanishes; the invariant is 0
    /// and no common overlap argument exists.
    ZeroOverlap {
        index: usize,
    },
    /// Density matrix `index` fails a defect check (`defect` is the measured
    /// deviation).
    InvalidDensity {
        index: usize,
        defect: f64,
    },
    InvalidProbability {
        value: f64,
    },
    Geometry(GeometryError),
}

impl fmt::Display for StatesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatesError::EmptyTuple => write!(f, "tuple must contain at least one state"),
            StatesError::NotNormalized { index, norm } => {
                write!(f, "vector {index} has norm {norm}, expected 1")
            }
            StatesError::DimensionMismatch {
                index,
                expected,
                got,
            } => {
                write!(f, "entry {index} has dimension {got}, expected {expected}")
            }
            StatesError::NonFinite => write!(f, "entries must be finite"),
            StatesError::ZeroVector { index } => write!(f, "vector {index} is zero"),
            StatesError::ZeroOverlap { index } => {
                write!(
                    f,
                    "overlap between states {index} and {} vanishes",
                    index + 1
                )
            }
            StatesError::InvalidDensity { index, defect } => {
                write!(
                    f,
                    "matrix {index} is not a density matrix (defect {defect:.3e})"
                )
            }
            StatesError::InvalidProbability { value } => {
                write!(f, "probability {value} is outside [0, 1]")
            }
            StatesError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StatesError {}

impl From<GeometryError> for StatesError {
    fn from(e: GeometryError) -> Self {
        StatesError::Geometry(e)
    }
}

/// An ordered tuple of n unit vectors of common dimension d.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTuple {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl StateTuple {
    /// Builds a tuple from unit vectors (norm within 1e-10 of 1).
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self, StatesError> {
        let dim = check_shapes(&vectors)?;
        for (index, v) in vectors.iter().enumerate() {
            let norm = vector_norm(v);
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(StatesError::NotNormalized { index, norm });
            }
        }
        Ok(StateTuple { dim, vectors })
    }

    /// Builds a tuple by rescaling each vector to unit norm.
    pub fn new_normalized(mut vectors: Vec<Vec<Complex64>>) -> Result<Self, StatesError> {
        let dim = check_shapes(&vectors)?;
        for (index, v) in vectors.iter_mut().enumerate() {
            let norm = vector_norm(v);
            if norm == 0.0 {
                return Err(StatesError::ZeroVector { index });
            }
            for z in v.iter_mut() {
                *z /= norm;
            }
        }
        Ok(StateTuple { dim, vectors })
    }

    /// Number of states n.
    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    /// Common dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Inner product `<v_i | v_j>`.
    pub fn overlap(&self, i: usize, j: usize) -> Complex64 {
        inner(&self.vectors[i], &self.vectors[j])
    }

    /// Applies a d x d matrix (row-major) to every vector.
    pub fn apply_unitary(&self, u: &[Complex64]) -> Result<StateTuple, StatesError> {
        let d = self.dim;
        if u.len() != d * d {
            return Err(StatesError::DimensionMismatch {
                index: 0,
                expected: d * d,
                got: u.len(),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                (0..d)
                    .map(|r| (0..d).map(|c| u[r * d + c] * v[c]).sum())
                    .collect()
            })
            .collect();
        StateTuple::new_normalized(vectors)
    }
}

fn check_shapes(vectors: &[Vec<Complex64>]) -> Result<usize, StatesError> {
    if vectors.is_empty() {
        return Err(StatesError::EmptyTuple);
    }
    let dim = vectors[0].len();
    if dim == 0 {
        return Err(StatesError::EmptyTuple);
    }
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(StatesError::DimensionMismatch {
                index,
                expected: dim,
                got: v.len(),
            });
        }
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StatesError::NonFinite);
        }
    }
    Ok(dim)
}

fn vector_norm(v: &[Complex64]) -> f64 {
    sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// An ordered tuple of n density matrices (d x d, Hermitian, PSD, unit
/// trace), stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTuple {
    dim: usize,
    matrices: Vec<Vec<Complex64>>,
}

impl MixedTuple {
    pub fn new(matrices: Vec<Vec<Complex64>>, dim: usize) -> Result<Self, StatesError> {
        if matrices.is_empty() || dim == 0 {
            return Err(StatesError::EmptyTuple);
        }
        for (index, m) in matrices.iter().enumerate() {
            if m.len() != dim * dim {
                return Err(StatesError::DimensionMismatch {
                    index,
                    expected: dim * dim,
                    got: m.len(),
                });
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(StatesError::NonFinite);
            }
            let mut herm = 0.0_f64;
            let mut trace = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                trace += m[i * dim + i];
                for j in i..dim {
                    herm = herm.max((m[i * dim + j] - m[j * dim + i].conj()).norm());
                }
            }
            if herm > 1e-12 {
                return Err(StatesError::InvalidDensity {
                    index,
                    defect: herm,
                });
            }
            let trace_defect = (trace - 1.0).norm();
            if trace_defect > 1e-10 {
                return Err(StatesError::InvalidDensity {
                    index,
                    defect: trace_defect,
                });
            }
            let min_eig = hermitian_eigenvalues(dim, m)[0];
            if min_eig < -1e-10 {
                return Err(StatesError::InvalidDensity {
                    index,
                    defect: -min_eig,
                });
            }
        }
        Ok(MixedTuple { dim, matrices })
    }

    /// Rank-1 projectors `|v_i><v_i|` of a pure tuple.
    pub fn from_projectors(tuple: &StateTuple) -> MixedTuple {
        let d = tuple.dim();
        let matrices = tuple
            .vectors()
            .iter()
            .map(|v| {
                let norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                let mut m = Vec::with_capacity(d * d);
                for i in 0..d {
                    for j in 0..d {
                        m.push(v[i] * v[j].conj() / norm_sqr);
                    }
                }
                m
            })
            .collect();
        MixedTuple { dim: d, matrices }
    }

    pub fn count(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &[Complex64] {
        &self.matrices[i]
    }
}

/// Per-state phases applied by gauge alignment; the first is 0 by
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePhases {
    phases: Vec<f64>,
}

impl GaugePhases {
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

/// Cyclic product of consecutive overlaps
/// `<v_1|v_2> <v_2|v_3> ... <v_n|v_1>`; modulus at most 1.
pub fn bargmann_invariant(tuple: &StateTuple) -> Complex64 {
    let n = tuple.count();
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        acc *= tuple.overlap(k, (k + 1) % n);
    }
    acc
}

/// Multivariate trace `Tr(rho_1 rho_2 ... rho_n)` of a mixed tuple.
///
/// Agrees with [`bargmann_invariant`] when every matrix is the rank-1
/// projector onto the corresponding pure state.
pub fn multivariate_trace(tuple: &MixedTuple) -> Complex64 {
    let d = tuple.dim();
    let mut acc = tuple.matrix(0).to_vec();
    for k in 1..tuple.count() {
        let m = tuple.matrix(k);
        let mut next = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut cell = Complex64::new(0.0, 0.0);
                for l in 0..d {
                    cell += acc[i * d + l] * m[l * d + j];
                }
                next.push(cell);
            }
        }
        acc = next;
    }
    (0..d).map(|i| acc[i * d + i]).sum()
}

/// Gram matrix of pairwise overlaps `G_ij = <v_i|v_j>`.
pub fn gram_of(tuple: &StateTuple) -> GramMatrix {
    let n = tuple.count();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(tuple.overlap(i, j));
        }
    }
    GramMatrix::new(n, entries).expect("square by construction")
}

/// Rephases each state so that every consecutive overlap has the same
/// argument `arg(Delta)/n`, leaving the invariant unchanged.
///
/// Fails with [`StatesError::ZeroOverlap`] when some consecutive overlap
/// vanishes (the invariant is 0 and alignment is undefined).
pub fn gauge_align(tuple: &StateTuple) -> Result<(StateTuple, GaugePhases), StatesError> {
    let n = tuple.count();
    let mut overlaps = Vec::with_capacity(n);
    for k in 0..n {
        let o = tuple.overlap(k, (k + 1) % n);
        if o.norm() <= OVERLAP_EPS {
            return Err(StatesError::ZeroOverlap { index: k });
        }
        overlaps.push(o);
    }
    let delta = bargmann_invariant(tuple);
    let theta = delta.arg() / n as f64;

    let mut phases = Vec::with_capacity(n);
    phases.push(0.0);
    for i in 1..n {
        let prev = phases[i - 1];
        phases.push(wrap_angle(prev + theta - overlaps[i - 1].arg()));
    }

    let vectors = tuple
        .vectors()
        .iter()
        .zip(&phases)
        .map(|(v, &phi)| {
            let phase = Complex64::new(cos(phi), sin(phi));
            v.iter().map(|z| phase * z).collect()
        })
        .collect();
    let aligned = StateTuple::new(vectors)?;
    Ok((aligned, GaugePhases { phases }))
}

/// Post-selection probability and geometric (Pancharatnam) phase of a cyclic
/// projection sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricPhase {
    /// `|Delta|^2`.
    pub probability: f64,
    /// `arg(Delta)`; `None` when the invariant vanishes and the phase is
    /// physically undefined.
    pub phase: Option<f64>,
}

/// Probability/phase pair `(|Delta|^2, arg Delta)` of a tuple's invariant.
pub fn geometric_phase(tuple: &StateTuple) -> GeometricPhase {
    let delta = bargmann_invariant(tuple);
    let probability = delta.norm_sqr();
    let phase = if delta.norm() <= 1e-12 {
        None
    } else {
        Some(delta.arg())
    };
    GeometricPhase { probability, phase }
}

/// Whether a geometric-phase experiment with `n` projections can produce the
/// given post-selection probability and phase: feasible iff
/// `sqrt(probability) * exp(i phase)` lies in the invariant region.
pub fn phase_feasible(
    probability: f64,
    phase: f64,
    n: usize,
    tol: f64,
) -> Result<MembershipVerdict, StatesError> {
    if !probability.is_finite() || !(0.0..=1.0 + 1e-12).contains(&probability) {
        return Err(StatesError::InvalidProbability { value: probability });
    }
    if !phase.is_finite() {
        return Err(StatesError::Geometry(GeometryError::NonFinite));
    }
    let r = sqrt(probability.min(1.0));
    let z = Complex64::new(r * cos(phase), r * sin(phase));
    Ok(region_contains(z, n, tol)?)
}

/// Angle of a complex number; exposed for callers working with raw parts.
pub fn argument(z: Complex64) -> f64 {
    atan2(z.im, z.re)
}
