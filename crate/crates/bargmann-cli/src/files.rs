//! On-disk JSON schemas: tuple files and witness files.
//!
//! Complex numbers are `[re, im]` arrays; every float is written with 17
//! significant digits so files round-trip doubles exactly.

use bargmann::states::{MixedTuple, StateTuple};
use bargmann::Complex64;
use serde::{Deserialize, Serialize};

/// A tuple of pure states or density matrices.
///
/// Exactly one of `vectors` / `mixed` is present. `vectors` holds n lists of
/// d `[re, im]` pairs; `mixed` holds n row-major d x d matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleFile {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixed: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

/// Either kind of loaded tuple.
pub enum LoadedTuple {
    Pure(StateTuple),
    Mixed(MixedTuple),
}

impl TupleFile {
    pub fn from_tuple(tuple: &StateTuple) -> Self {
        TupleFile {
            n: tuple.count(),
            d: tuple.dim(),
            vectors: Some(
                tuple
                    .vectors()
                    .iter()
                    .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            ),
            mixed: None,
        }
    }

    /// Validates shape and physical constraints and builds the core type.
    pub fn load(&self) -> Result<LoadedTuple, String> {
        match (&self.vectors, &self.mixed) {
            (Some(vectors), None) => {
                if vectors.len() != self.n {
                    return Err(format!(
                        "declared n={} but found {} vectors",
                        self.n,
                        vectors.len()
                    ));
                }
                let parsed: Vec<Vec<Complex64>> = vectors
                    .iter()
                    .map(|v| v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                for (i, v) in parsed.iter().enumerate() {
                    if v.len() != self.d {
                        return Err(format!(
                            "vector {i} has dimension {}, declared d={}",
                            v.len(),
                            self.d
                        ));
                    }
                }
                StateTuple::new(parsed)
                    .map(LoadedTuple::Pure)
                    .map_err(|e| e.to_string())
            }
            (None, Some(mixed)) => {
                if mixed.len() != self.n {
                    return Err(format!(
                        "declared n={} but found {} matrices",
                        self.n,
                        mixed.len()
                    ));
                }
                let mut matrices = Vec::with_capacity(mixed.len());
                for (i, m) in mixed.iter().enumerate() {
                    if m.len() != self.d || m.iter().any(|row| row.len() != self.d) {
                        return Err(format!("matrix {i} is not {0} x {0}", self.d));
                    }
                    let flat: Vec<Complex64> = m
                        .iter()
                        .flat_map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)))
                        .collect();
                    matrices.push(flat);
                }
                MixedTuple::new(matrices, self.d)
                    .map(LoadedTuple::Mixed)
                    .map_err(|e| e.to_string())
            }
            (Some(_), Some(_)) => Err("exactly one of `vectors`/`mixed` may be present".into()),
            (None, None) => Err("one of `vectors`/`mixed` must be present".into()),
        }
    }
}

/// A realization witness: the target, the synthesized tuple, and the
/// recomputed residual at write time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub target: [f64; 2],
    pub n: usize,
    pub form: String,
    pub tuple: TupleFile,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub const FORM_QUTRIT_CIRCULANT: &str = "qutrit-circulant";
pub const FORM_QUBIT_BOUNDARY: &str = "qubit-boundary";
pub const FORM_QUBIT_GENERAL: &str = "qubit-general";
