//! Witness synthesis: explicit state tuples realizing a target invariant.
//!
//! Three constructions, one per region stratum:
//!
//! * circulant qutrit tuples `a|0> + b w_n^k |1> + c y_n^k |2>` for any
//!   realizable target;
//! * the boundary qubit family (OBG states)
//!   `cos(theta)|0> + sin(theta) w_n^k |1>` for boundary targets;
//! * general qubit tuples `(|x>, |v_1>, ..., |v_(n-1)>)`, where `|x>` is
//!   found inside the numerical range of the 2x2 product operator
//!   `V = |v_1><v_1| ... |v_(n-1)><v_(n-1)|` by a grid-seeded damped Newton
//!   solve.

use core::fmt;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::geometry::{
    boundary_radius, caratheodory_decompose, region_contains, sector_root, BoundaryCurve,
    CaratheodoryCoeffs, GeometryError, DEFAULT_TOL,
};
use crate::math::{asin, atan2, cos, root_power, sin, sqrt, wrap_angle, PI, TAU};
use crate::states::{bargmann_invariant, StateTuple, StatesError};

/// Accepted residual for the general qubit construction.
const QUBIT_RESIDUAL_TOL: f64 = 1e-6;

/// Newton stops once the equation residual is this small.
const NEWTON_TARGET: f64 = 1e-12;

const GRID_SIZE: usize = 64;
const NEWTON_SEEDS: usize = 6;
const NEWTON_MAX_ITERS: usize = 80;

#[derive(Debug, Clone, PartialEq)]
pub enum RealizeError {
    Geometry(GeometryError),
    States(StatesError),
    /// The numerical-range solve did not reach the required residual.
    SolverFailed {
        residual: f64,
    },
}

impl fmt::Display for RealizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizeError::Geometry(e) => write!(f, "{e}"),
            RealizeError::States(e) => write!(f, "{e}"),
            RealizeError::SolverFailed { residual } => {
                write!(
                    f,
                    "numerical-range solver stalled at residual {residual:.3e}"
                )
            }
        }
    }
}

impl core::error::Error for RealizeError {}

impl From<GeometryError> for RealizeError {
    fn from(e: GeometryError) -> Self {
        RealizeError::Geometry(e)
    }
}

impl From<StatesError> for RealizeError {
    fn from(e: StatesError) -> Self {
        RealizeError::States(e)
    }
}

/// A 2x2 complex operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub entries: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn identity() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Mat2 {
            entries: [[one, zero], [zero, one]],
        }
    }

    pub fn diagonal(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2 {
            entries: [[a, zero], [zero, b]],
        }
    }

    /// Projector `|v><v|` onto a 2-dimensional state.
    pub fn projector(v: &[Complex64]) -> Self {
        Mat2 {
            entries: [
                [v[0] * v[0].conj(), v[0] * v[1].conj()],
                [v[1] * v[0].conj(), v[1] * v[1].conj()],
            ],
        }
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2 { entries: out }
    }

    /// Quadratic form `<x| M |x>`.
    pub fn expectation(&self, x: &[Complex64; 2]) -> Complex64 {
        let m = &self.entries;
        let mx = [
            m[0][0] * x[0] + m[0][1] * x[1],
            m[1][0] * x[0] + m[1][1] * x[1],
        ];
        x[0].conj() * mx[0] + x[1].conj() * mx[1]
    }
}

/// Circulant qutrit witness `|u_k> = a|0> + b w_n^k |1> + c y_n^k |2>`.
#[derive(Debug, Clone)]
pub struct QutritCirculantWitness {
    /// Convex weights `(a^2, b^2, c^2)` of the sector root.
    pub coeffs: CaratheodoryCoeffs,
    pub tuple: StateTuple,
}

impl QutritCirculantWitness {
    /// Nonnegative amplitudes `(a, b, c)`.
    pub fn amplitudes(&self) -> (f64, f64, f64) {
        self.coeffs.amplitudes()
    }
}

/// Boundary qubit witness from the OBG family
/// `|v_k> = cos(theta)|0> + sin(theta) w_n^k |1>`.
#[derive(Debug, Clone)]
pub struct QubitBoundaryWitness {
    /// Mixing angle `theta` in `[0, pi/2]`.
    pub mixing: f64,
    pub tuple: StateTuple,
}

/// General qubit witness `(|x>, |v_1>, ..., |v_(n-1)>)` with
/// `<x| V |x> = Delta`.
#[derive(Debug, Clone)]
pub struct QubitGeneralWitness {
    /// Boundary anchor supplying the states `|v_k>`.
    pub anchor: QubitBoundaryWitness,
    /// The solved state `|x>`.
    pub state: [Complex64; 2],
    /// The ordered witness tuple.
    pub tuple: StateTuple,
    /// Product operator `V = |v_1><v_1| ... |v_(n-1)><v_(n-1)|`.
    pub product_operator: Mat2,
    /// `|invariant(tuple) - Delta|`, checked against 1e-6.
    pub residual: f64,
}

/// Realizes any `Delta` in the region as a circulant qutrit tuple.
///
/// Takes the sector root, decomposes it over `{1, w_n, y_n}` and uses the
/// nonnegative square roots as amplitudes. Boundary targets come out with
/// `c = 0`, an embedded qubit witness.
pub fn realize_qutrit_circulant(
    delta: Complex64,
    n: usize,
) -> Result<QutritCirculantWitness, RealizeError> {
    let root = sector_root(delta, n)?;
    let coeffs = caratheodory_decompose(root, n)?;
    let (a, b, c) = coeffs.amplitudes();
    let half = n.div_ceil(2) as i64;
    let vectors = (0..n)
        .map(|k| {
            alloc::vec![
                Complex64::new(a, 0.0),
                b * root_power(n, k as i64),
                c * root_power(n, half * k as i64),
            ]
        })
        .collect();
    let tuple = StateTuple::new(vectors)?;
    Ok(QutritCirculantWitness { coeffs, tuple })
}

/// Realizes the boundary point of the region at argument `phi` as an OBG
/// qubit tuple.
///
/// Solves `1 + t delta = s` for the segment parameter of the boundary root
/// at `theta = wrap(phi - pi)` and sets the mixing angle to
/// `arcsin(sqrt(t))`.
pub fn realize_qubit_boundary(phi: f64, n: usize) -> Result<QubitBoundaryWitness, RealizeError> {
    if !phi.is_finite() {
        return Err(GeometryError::NonFinite.into());
    }
    let curve = BoundaryCurve::new(n)?;
    let theta_b = wrap_angle(wrap_angle(phi) - PI);
    let segment_point = curve.root_at(theta_b);
    let t = curve.segment_parameter(segment_point);
    let mixing = asin(sqrt(t));
    let tuple = obg_tuple(mixing, n)?;
    Ok(QubitBoundaryWitness { mixing, tuple })
}

fn obg_tuple(theta: f64, n: usize) -> Result<StateTuple, StatesError> {
    let (ct, st) = (cos(theta), sin(theta));
    let vectors = (0..n)
        .map(|k| alloc::vec![Complex64::new(ct, 0.0), st * root_power(n, k as i64)])
        .collect();
    StateTuple::new(vectors)
}

/// Unit vector orthogonal to a 2-dimensional state.
fn orthogonal_complement(v: &[Complex64]) -> [Complex64; 2] {
    [-v[1].conj(), v[0].conj()]
}

/// Realizes any `Delta` in the region as a (generally non-circulant) qubit
/// tuple `(|x>, |v_1>, ..., |v_(n-1)>)`.
///
/// The anchors are the boundary witness at `arg(Delta)`; `|x>` is found by
/// solving `<x|V|x> = Delta` inside the numerical range of the product
/// operator, seeded on a coarse grid and polished with damped Newton steps.
/// `Delta = 0` short-circuits to the orthogonal complement of `|v_1>`.
pub fn realize_qubit_general(
    delta: Complex64,
    n: usize,
) -> Result<QubitGeneralWitness, RealizeError> {
    if n < 3 {
        return Err(GeometryError::InvalidOrder { n, min: 3 }.into());
    }
    let verdict = region_contains(delta, n, DEFAULT_TOL)?;
    if !verdict.is_inside() {
        return Err(GeometryError::NotRealizable {
            modulus: delta.norm(),
            radius: boundary_radius(atan2(delta.im, delta.re), n)?,
        }
        .into());
    }

    let phi = if delta.norm() == 0.0 {
        0.0
    } else {
        atan2(delta.im, delta.re)
    };
    let anchor = realize_qubit_boundary(phi, n)?;

    let mut product = Mat2::identity();
    for k in 1..n {
        product = product.mul(&Mat2::projector(anchor.tuple.vector(k)));
    }

    let x = if delta.norm() == 0.0 {
        orthogonal_complement(anchor.tuple.vector(1))
    } else if verdict.is_on_boundary() {
        let v0 = anchor.tuple.vector(0);
        [v0[0], v0[1]]
    } else {
        solve_numerical_range(&product, delta)?
    };

    let mut vectors = Vec::with_capacity(n);
    vectors.push(alloc::vec![x[0], x[1]]);
    for k in 1..n {
        vectors.push(anchor.tuple.vector(k).to_vec());
    }
    let tuple = StateTuple::new(vectors)?;
    let residual = (bargmann_invariant(&tuple) - delta).norm();
    if residual > QUBIT_RESIDUAL_TOL {
        return Err(RealizeError::SolverFailed { residual });
    }
    Ok(QubitGeneralWitness {
        anchor,
        state: x,
        tuple,
        product_operator: product,
        residual,
    })
}

fn bloch_state(alpha: f64, beta: f64) -> [Complex64; 2] {
    [
        Complex64::new(cos(alpha), 0.0),
        sin(alpha) * Complex64::new(cos(beta), sin(beta)),
    ]
}

/// Finds `(alpha, beta)` with `<x(alpha, beta)| V |x(alpha, beta)> = target`.
fn solve_numerical_range(v: &Mat2, target: Complex64) -> Result<[Complex64; 2], RealizeError> {
    // Coarse grid seeds, best first.
    let mut seeds: Vec<(f64, f64, f64)> = Vec::with_capacity(GRID_SIZE * GRID_SIZE);
    for i in 0..GRID_SIZE {
        let alpha = (PI / 2.0) * i as f64 / (GRID_SIZE - 1) as f64;
        for j in 0..GRID_SIZE {
            let beta = -PI + TAU * j as f64 / GRID_SIZE as f64;
            let value = v.expectation(&bloch_state(alpha, beta));
            seeds.push(((value - target).norm(), alpha, beta));
        }
    }
    seeds.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite residuals"));

    let mut best: Option<(f64, f64, f64)> = None;
    for &(_, alpha0, beta0) in seeds.iter().take(NEWTON_SEEDS) {
        let (alpha, beta, residual) = newton_polish(v, target, alpha0, beta0);
        if best.is_none_or(|(r, _, _)| residual < r) {
            best = Some((residual, alpha, beta));
        }
        if residual <= NEWTON_TARGET {
            break;
        }
    }
    let (residual, alpha, beta) = best.expect("at least one seed");
    if residual > QUBIT_RESIDUAL_TOL {
        return Err(RealizeError::SolverFailed { residual });
    }
    Ok(bloch_state(alpha, beta))
}

/// Damped Newton iteration on the two real equations
/// `Re/Im(<x|V|x> - target) = 0`.
fn newton_polish(v: &Mat2, target: Complex64, mut alpha: f64, mut beta: f64) -> (f64, f64, f64) {
    let mut residual = (v.expectation(&bloch_state(alpha, beta)) - target).norm();
    for _ in 0..NEWTON_MAX_ITERS {
        if residual <= NEWTON_TARGET {
            break;
        }
        let x = bloch_state(alpha, beta);
        let f = v.expectation(&x) - target;

        let e_beta = Complex64::new(cos(beta), sin(beta));
        let dx_da = [Complex64::new(-sin(alpha), 0.0), cos(alpha) * e_beta];
        let dx_db = [
            Complex64::new(0.0, 0.0),
            sin(alpha) * e_beta * Complex64::new(0.0, 1.0),
        ];
        let dq_da = form_derivative(v, &x, &dx_da);
        let dq_db = form_derivative(v, &x, &dx_db);

        // Real 2x2 Jacobian in (alpha, beta).
        let (j00, j01) = (dq_da.re, dq_db.re);
        let (j10, j11) = (dq_da.im, dq_db.im);
        let det = j00 * j11 - j01 * j10;
        let scale = j00 * j00 + j01 * j01 + j10 * j10 + j11 * j11;

        let (mut da, mut db) = if det.abs() > 1e-14 * scale.max(1e-300) {
            (
                (-f.re * j11 + f.im * j01) / det,
                (-j00 * f.im + j10 * f.re) / det,
            )
        } else {
            // Levenberg-Marquardt fallback near a singular Jacobian.
            let mu = 1e-8 * scale.max(1e-300);
            let a00 = j00 * j00 + j10 * j10 + mu;
            let a01 = j00 * j01 + j10 * j11;
            let a11 = j01 * j01 + j11 * j11 + mu;
            let g0 = -(j00 * f.re + j10 * f.im);
            let g1 = -(j01 * f.re + j11 * f.im);
            let d = a00 * a11 - a01 * a01;
            ((g0 * a11 - g1 * a01) / d, (a00 * g1 - a01 * g0) / d)
        };

        let mut improved = false;
        for _ in 0..40 {
            let trial = (alpha + da, beta + db);
            let trial_res = (v.expectation(&bloch_state(trial.0, trial.1)) - target).norm();
            if trial_res < residual {
                alpha = trial.0;
                beta = trial.1;
                residual = trial_res;
                improved = true;
                break;
            }
            da *= 0.5;
            db *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (alpha, beta, residual)
}

fn form_derivative(v: &Mat2, x: &[Complex64; 2], dx: &[Complex64; 2]) -> Complex64 {
    let m = &v.entries;
    let mx = [
        m[0][0] * x[0] + m[0][1] * x[1],
        m[1][0] * x[0] + m[1][1] * x[1],
    ];
    let mdx = [
        m[0][0] * dx[0] + m[0][1] * dx[1],
        m[1][0] * dx[0] + m[1][1] * dx[1],
    ];
    dx[0].conj() * mx[0] + dx[1].conj() * mx[1] + x[0].conj() * mdx[0] + x[1].conj() * mdx[1]
}

/// Samples `<x|V|x>` over a deterministic `(alpha, beta)` grid covering the
/// Bloch sphere; at least `count` values are returned.
pub fn numerical_range_sample(v: &Mat2, count: usize) -> Vec<Complex64> {
    let count = count.max(1);
    let m = {
        let mut m = 1;
        while m * m < count {
            m += 1;
        }
        m
    };
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        let alpha = if m == 1 {
            0.0
        } else {
            (PI / 2.0) * i as f64 / (m - 1) as f64
        };
        for j in 0..m {
            let beta = -PI + TAU * j as f64 / m as f64;
            out.push(v.expectation(&bloch_state(alpha, beta)));
        }
    }
    out
}
