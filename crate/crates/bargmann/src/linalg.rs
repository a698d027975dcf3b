//! Dense Hermitian eigendecomposition for the small matrices this crate
//! works with (Gram matrices and density matrices, n <= 64).
//!
//! Cyclic Jacobi with complex rotations: robust on rank-deficient PSD input,
//! which the vertex/edge constructions produce by design.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::sqrt;

/// Eigendecomposition `A = U diag(values) U^dagger` of a Hermitian matrix.
///
/// `values` are ascending; column `j` of the row-major `vectors` matrix is
/// the eigenvector for `values[j]`.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Complex64>,
    pub dim: usize,
}

impl HermitianEigen {
    pub fn vector_entry(&self, row: usize, col: usize) -> Complex64 {
        self.vectors[row * self.dim + col]
    }
}

fn off_diagonal_norm(n: usize, a: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    sqrt(acc)
}

fn frobenius_norm(a: &[Complex64]) -> f64 {
    sqrt(a.iter().map(|z| z.norm_sqr()).sum())
}

/// Eigendecomposition of a Hermitian `n x n` matrix in row-major order.
///
/// The input is Hermitized as `(A + A^dagger)/2` first, so slightly
/// asymmetric input (from accumulated rounding) is handled gracefully.
pub(crate) fn hermitian_eigen(n: usize, entries: &[Complex64]) -> HermitianEigen {
    assert_eq!(entries.len(), n * n, "matrix shape mismatch");
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (entries[i * n + j] + entries[j * n + i].conj());
        }
    }
    let mut u: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        u[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale = frobenius_norm(&a).max(1e-300);
    let target = 1e-14 * scale;

    for _sweep in 0..60 {
        if off_diagonal_norm(n, &a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + sqrt(tau * tau + 1.0))
                } else {
                    -1.0 / (-tau + sqrt(tau * tau + 1.0))
                };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                let s_ph = s * phase; // s e^{i phi}
                let s_ph_c = s * phase.conj(); // s e^{-i phi}

                // A <- A J (columns p, q)
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip + s_ph_c * aiq;
                    a[i * n + q] = -s_ph * aip + c * aiq;
                }
                // A <- J^dagger A (rows p, q)
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj + s_ph * aqj;
                    a[q * n + j] = -s_ph_c * apj + c * aqj;
                }
                // U <- U J
                for i in 0..n {
                    let uip = u[i * n + p];
                    let uiq = u[i * n + q];
                    u[i * n + p] = c * uip + s_ph_c * uiq;
                    u[i * n + q] = -s_ph * uip + c * uiq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| {
        let (vi, vj) = (a[i * n + i].re, a[j * n + j].re);
        vi.partial_cmp(&vj).expect("eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = u[row * n + k];
        }
    }

    HermitianEigen {
        values,
        vectors,
        dim: n,
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub(crate) fn hermitian_eigenvalues(n: usize, entries: &[Complex64]) -> Vec<f64> {
    hermitian_eigen(n, entries).values
}
