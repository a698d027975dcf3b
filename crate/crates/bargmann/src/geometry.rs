//! Geometry of the unit n-gon and of the region of order-n Bargmann
//! invariants.
//!
//! The roots of order-n invariants fill the regular n-gon `P_n` (convex hull
//! of the n-th roots of unity); the invariants themselves fill the teardrop
//! region `B_n = P_n^n`. This module classifies points against both sets,
//! parametrizes the boundary of `B_n`, selects the canonical n-th root in the
//! first sector, and decomposes sector points over the vertices
//! `{1, w_n, y_n}`.

use core::fmt;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::{atan2, cos, fabs, powi, rem_euclid, root_power, sqrt, wrap_angle, PI, TAU};

/// Default relative tolerance for boundary classification.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Negative Caratheodory coefficients above this magnitude are errors;
/// smaller ones are rounding noise and get clamped to zero.
const COEFF_CLAMP: f64 = 1e-10;

/// Residual bound for an accepted Caratheodory decomposition.
const DECOMPOSE_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Order `n` below the minimum supported by the operation.
    InvalidOrder { n: usize, min: usize },
    /// Tolerance must be a positive finite number.
    InvalidTolerance { tol: f64 },
    /// Query value is NaN or infinite.
    NonFinite,
    /// Target lies outside the invariant region for its order.
    NotRealizable { modulus: f64, radius: f64 },
    /// Point is not inside the sector triangle conv{0, 1, w_n}.
    OutsideSector { residual: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::InvalidOrder { n, min } => {
                write!(f, "order {n} is invalid here (minimum {min})")
            }
            GeometryError::InvalidTolerance { tol } => {
                write!(f, "tolerance {tol} must be positive and finite")
            }
            GeometryError::NonFinite => write!(f, "input is not finite"),
            GeometryError::NotRealizable { modulus, radius } => write!(
                f,
                "modulus {modulus} exceeds the boundary radius {radius} at this argument"
            ),
            GeometryError::OutsideSector { residual } => {
                write!(
                    f,
                    "point is outside the sector triangle (residual {residual:e})"
                )
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// Where a point sits relative to a closed convex region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Outside,
    Boundary,
    Interior,
    Vertex,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Outside => "outside",
            Classification::Boundary => "boundary",
            Classification::Interior => "interior",
            Classification::Vertex => "vertex",
        }
    }
}

/// Membership answer: a classification plus the signed radial slack at the
/// query argument (positive inside, negative outside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub classification: Classification,
    pub margin: f64,
}

impl MembershipVerdict {
    /// True for interior, boundary and vertex points.
    pub fn is_inside(&self) -> bool {
        self.classification != Classification::Outside
    }

    /// True for boundary and vertex points (a vertex is a boundary point).
    pub fn is_on_boundary(&self) -> bool {
        matches!(
            self.classification,
            Classification::Boundary | Classification::Vertex
        )
    }
}

fn check_tol(tol: f64) -> Result<(), GeometryError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidTolerance { tol })
    }
}

fn check_finite(z: Complex64) -> Result<(), GeometryError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::NonFinite)
    }
}

/// The regular unit n-gon: vertices, primitive root, membership.
#[derive(Debug, Clone)]
pub struct NGon {
    n: usize,
    omega: Complex64,
    vertices: Vec<Complex64>,
}

impl NGon {
    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::InvalidOrder { n, min: 1 });
        }
        let vertices: Vec<Complex64> = (0..n).map(|k| root_power(n, k as i64)).collect();
        Ok(NGon {
            n,
            omega: root_power(n, 1),
            vertices,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Primitive root of unity `w_n = exp(2 pi i / n)`.
    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// Vertex `w_n^k`; the index wraps modulo n.
    pub fn vertex(&self, k: usize) -> Complex64 {
        self.vertices[k % self.n]
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Inradius of the polygon (1 for the degenerate orders).
    pub fn inradius(&self) -> f64 {
        if self.n >= 3 {
            cos(PI / self.n as f64)
        } else {
            1.0
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> Result<MembershipVerdict, GeometryError> {
        ngon_contains(z, self.n, tol)
    }
}

/// Distance from `z` to the closed segment `[a, b]` on the real axis.
fn segment_distance(z: Complex64, a: f64, b: f64) -> f64 {
    let dx = if z.re < a {
        a - z.re
    } else if z.re > b {
        z.re - b
    } else {
        0.0
    };
    sqrt(dx * dx + z.im * z.im)
}

/// Classifies `z` against a degenerate (order 1 or 2) set: a single point
/// `{right}` when `left == right`, otherwise the real segment `[left, right]`.
fn segment_contains(z: Complex64, left: f64, right: f64, tol_abs: f64) -> MembershipVerdict {
    let dist = segment_distance(z, left, right);
    if left == right {
        let classification = if dist <= tol_abs {
            Classification::Vertex
        } else {
            Classification::Outside
        };
        return MembershipVerdict {
            classification,
            margin: -dist,
        };
    }
    if dist > tol_abs {
        return MembershipVerdict {
            classification: Classification::Outside,
            margin: -dist,
        };
    }
    let slack = (z.re - left).min(right - z.re);
    let classification = if (z - Complex64::new(left, 0.0)).norm() <= tol_abs
        || (z - Complex64::new(right, 0.0)).norm() <= tol_abs
    {
        Classification::Vertex
    } else if slack <= tol_abs {
        Classification::Boundary
    } else {
        Classification::Interior
    };
    MembershipVerdict {
        classification,
        margin: slack,
    }
}

/// Classifies `z` against the unit n-gon `P_n`.
///
/// `P_1 = {1}` and `P_2 = [-1, 1]`; for n >= 3 the polygon is the convex hull
/// of the n-th roots of unity. The margin is the radial slack
/// `r_polygon(arg z) - |z|` (for the degenerate orders, the slack within the
/// segment). Boundary classification uses the relative tolerance
/// `tol * max(1, |z|)`.
pub fn ngon_contains(z: Complex64, n: usize, tol: f64) -> Result<MembershipVerdict, GeometryError> {
    if n == 0 {
        return Err(GeometryError::InvalidOrder { n, min: 1 });
    }
    check_tol(tol)?;
    check_finite(z)?;
    let tol_abs = tol * z.norm().max(1.0);
    match n {
        1 => Ok(segment_contains(z, 1.0, 1.0, tol_abs)),
        2 => Ok(segment_contains(z, -1.0, 1.0, tol_abs)),
        _ => {
            let r = z.norm();
            let phi = atan2(z.im, z.re);
            let sector = TAU / n as f64;
            let u = rem_euclid(phi, sector);
            // Polar form of the edge through 1 and w_n, shifted to the sector.
            let r_poly = cos(PI / n as f64) / cos(u - PI / n as f64);
            let margin = r_poly - r;

            let nearest = libm::round(phi / sector) as i64;
            let vertex = root_power(n, nearest);
            let classification = if (z - vertex).norm() <= tol_abs {
                Classification::Vertex
            } else if fabs(margin) <= tol_abs {
                Classification::Boundary
            } else if margin > 0.0 {
                Classification::Interior
            } else {
                Classification::Outside
            };
            Ok(MembershipVerdict {
                classification,
                margin,
            })
        }
    }
}

fn powi_f64(base: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}

/// Largest modulus attainable by an order-n invariant with argument `phi`:
/// `r_max(phi) = (sec(theta/n) / sec(pi/n))^n` with `theta = wrap(phi - pi)`.
///
/// A value with argument `phi` lies in `B_n` iff its modulus is at most
/// `r_max(phi)`. Orders below 3 are rejected; use the degenerate sets
/// `B_1 = {1}` and `B_2 = [0, 1]` through [`region_contains`] instead.
pub fn boundary_radius(phi: f64, n: usize) -> Result<f64, GeometryError> {
    if n < 3 {
        return Err(GeometryError::InvalidOrder { n, min: 3 });
    }
    if !phi.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let theta = wrap_angle(phi - PI);
    let nf = n as f64;
    let base = cos(PI / nf) / cos(theta / nf);
    Ok(powi_f64(base, n))
}

/// Classifies `delta` against the invariant region `B_n = P_n^n`.
///
/// For n >= 3 the margin is `r_max(arg delta) - |delta|`; the degenerate
/// orders use `B_1 = {1}` and `B_2 = [0, 1]`.
pub fn region_contains(
    delta: Complex64,
    n: usize,
    tol: f64,
) -> Result<MembershipVerdict, GeometryError> {
    if n == 0 {
        return Err(GeometryError::InvalidOrder { n, min: 1 });
    }
    check_tol(tol)?;
    check_finite(delta)?;
    let tol_abs = tol * delta.norm().max(1.0);
    match n {
        1 => Ok(segment_contains(delta, 1.0, 1.0, tol_abs)),
        2 => Ok(segment_contains(delta, 0.0, 1.0, tol_abs)),
        _ => {
            let r_max = boundary_radius(atan2(delta.im, delta.re), n)?;
            let margin = r_max - delta.norm();
            let classification = if fabs(margin) <= tol_abs {
                Classification::Boundary
            } else if margin > 0.0 {
                Classification::Interior
            } else {
                Classification::Outside
            };
            Ok(MembershipVerdict {
                classification,
                margin,
            })
        }
    }
}

/// The first edge of `P_n` and the matching boundary curve of `B_n`,
/// parametrized either by the segment parameter `t` or by the boundary
/// angle `theta` in `[-pi, pi]`.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryCurve {
    n: usize,
    delta: Complex64,
}

impl BoundaryCurve {
    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n < 3 {
            return Err(GeometryError::InvalidOrder { n, min: 3 });
        }
        Ok(BoundaryCurve {
            n,
            delta: root_power(n, 1) - Complex64::new(1.0, 0.0),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge direction `delta = w_n - 1`.
    pub fn edge_delta(&self) -> Complex64 {
        self.delta
    }

    /// Segment point `s(t) = 1 + t delta`, `t` in `[0, 1]`.
    pub fn segment_point(&self, t: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) + self.delta * t
    }

    /// Inverts [`Self::segment_point`]: the `t` whose segment point is
    /// closest to `point`, clamped to `[0, 1]`.
    pub fn segment_parameter(&self, point: Complex64) -> f64 {
        let shifted = point - Complex64::new(1.0, 0.0);
        let t = (shifted * self.delta.conj()).re / self.delta.norm_sqr();
        t.clamp(0.0, 1.0)
    }

    /// Root on the first edge at boundary angle `theta`.
    pub fn root_at(&self, theta: f64) -> Complex64 {
        let nf = self.n as f64;
        let radius = cos(PI / nf) / cos(theta / nf);
        let angle = (theta + PI) / nf;
        Complex64::new(radius * cos(angle), radius * crate::math::sin(angle))
    }

    /// Boundary point of `B_n` at boundary angle `theta`; its argument is
    /// `wrap(theta + pi)`.
    pub fn invariant_at(&self, theta: f64) -> Complex64 {
        powi(self.root_at(theta), self.n)
    }
}

/// Root on the first edge of `P_n` at boundary angle `theta` in `[-pi, pi]`:
/// `z = (sec(theta/n)/sec(pi/n)) exp(i (theta + pi)/n)`.
///
/// Raising the result to the n-th power gives the boundary point of `B_n`
/// at argument `wrap(theta + pi)`. Inputs slightly past the ends are clamped.
pub fn boundary_point(theta: f64, n: usize) -> Result<Complex64, GeometryError> {
    if !theta.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let curve = BoundaryCurve::new(n)?;
    Ok(curve.root_at(theta.clamp(-PI, PI)))
}

/// The unique n-th root of `delta` with argument in `[0, 2 pi / n)`.
///
/// The principal root is rotated by `w_n` when its argument is negative, so
/// the result always lies in the first triangular sector of `P_n`. Requires
/// `delta` in `B_n` (checked at the default tolerance); zero maps to zero.
pub fn sector_root(delta: Complex64, n: usize) -> Result<Complex64, GeometryError> {
    if n < 3 {
        return Err(GeometryError::InvalidOrder { n, min: 3 });
    }
    check_finite(delta)?;
    let verdict = region_contains(delta, n, DEFAULT_TOL)?;
    if !verdict.is_inside() {
        return Err(GeometryError::NotRealizable {
            modulus: delta.norm(),
            radius: boundary_radius(atan2(delta.im, delta.re), n)?,
        });
    }
    if delta.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = libm::pow(delta.norm(), 1.0 / n as f64);
    let mut angle = atan2(delta.im, delta.re) / n as f64;
    if angle < 0.0 {
        angle += TAU / n as f64;
    }
    Ok(Complex64::new(r * cos(angle), r * crate::math::sin(angle)))
}

/// Convex weights of a sector point over the anchors `{1, w_n, y_n}` with
/// `y_n = w_n^(ceil(n/2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryCoeffs {
    /// Weight on the anchor 1 (the square `a^2`).
    pub a2: f64,
    /// Weight on the anchor `w_n`.
    pub b2: f64,
    /// Weight on the anchor `y_n`.
    pub c2: f64,
    /// Third anchor `y_n = w_n^(ceil(n/2))`.
    pub yn: Complex64,
    /// `sqrt(1/2 + cos(2 pi / n)/2)`; relates `y_n` to the first edge
    /// midpoint when n is odd.
    pub k: f64,
}

impl CaratheodoryCoeffs {
    /// Nonnegative square roots `(a, b, c)` of the weights.
    pub fn amplitudes(&self) -> (f64, f64, f64) {
        (sqrt(self.a2), sqrt(self.b2), sqrt(self.c2))
    }

    /// Reconstructs the decomposed point `a^2 + b^2 w_n + c^2 y_n`.
    pub fn reconstruct(&self, n: usize) -> Complex64 {
        Complex64::new(self.a2, 0.0) + self.b2 * root_power(n, 1) + self.c2 * self.yn
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Writes a sector point as a convex combination `a^2 + b^2 w_n + c^2 y_n`.
///
/// Solves the 3x3 real system (real part, imaginary part, normalization),
/// clamps rounding-level negative weights to zero and renormalizes. Points
/// outside the sector triangle produce either a large negative weight or a
/// residual above 1e-8; both are rejected.
pub fn caratheodory_decompose(z: Complex64, n: usize) -> Result<CaratheodoryCoeffs, GeometryError> {
    if n < 3 {
        return Err(GeometryError::InvalidOrder { n, min: 3 });
    }
    check_finite(z)?;
    let omega = root_power(n, 1);
    let yn = root_power(n, n.div_ceil(2) as i64);
    let m = [
        [1.0, omega.re, yn.re],
        [0.0, omega.im, yn.im],
        [1.0, 1.0, 1.0],
    ];
    let rhs = [z.re, z.im, 1.0];
    let det = det3(&m);
    let mut coeffs = [0.0_f64; 3];
    for col in 0..3 {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = rhs[row];
        }
        coeffs[col] = det3(&mc) / det;
    }

    for c in coeffs.iter_mut() {
        if *c < -COEFF_CLAMP {
            return Err(GeometryError::OutsideSector { residual: -*c });
        }
        if *c < 0.0 {
            *c = 0.0;
        }
    }
    let sum: f64 = coeffs.iter().sum();
    for c in coeffs.iter_mut() {
        *c /= sum;
    }

    let out = CaratheodoryCoeffs {
        a2: coeffs[0],
        b2: coeffs[1],
        c2: coeffs[2],
        yn,
        k: sqrt(0.5 + cos(TAU / n as f64) / 2.0),
    };
    let residual = (out.reconstruct(n) - z).norm();
    if residual > DECOMPOSE_RESIDUAL {
        return Err(GeometryError::OutsideSector { residual });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ngon_vertices_are_unit_and_multiplicatively_closed() {
        for n in [1_usize, 2, 3, 5, 8] {
            let ngon = NGon::new(n).unwrap();
            for k in 0..n {
                assert!((ngon.vertex(k).norm() - 1.0).abs() < 1e-12);
                for j in 0..n {
                    let product = ngon.vertex(k) * ngon.vertex(j);
                    assert!((product - ngon.vertex((k + j) % n)).norm() < 1e-12);
                }
            }
            assert!((ngon.vertex(1) - ngon.omega()).norm() < 1e-15);
        }
    }

    #[test]
    fn roots_of_unity_are_vertices() {
        let v = ngon_contains(c(1.0, 0.0), 5, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Vertex);
        let w = root_power(5, 3);
        let v = ngon_contains(w, 5, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Vertex);
    }

    #[test]
    fn centroid_is_interior() {
        let v = ngon_contains(c(0.0, 0.0), 5, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Interior);
        assert!(v.margin > 0.5);
    }

    #[test]
    fn square_edge_midpoint_is_boundary() {
        // Midpoint of the segment from 1 to i. Edge-equation check:
        // Re(z e^{-i pi/4}) = cos(pi/4) holds exactly for this point.
        let z = c(0.5, 0.5);
        let edge_lhs = (z * Complex64::from_polar(1.0, -PI / 4.0)).re;
        assert!((edge_lhs - cos(PI / 4.0)).abs() < 1e-15);
        let v = ngon_contains(z, 4, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Boundary);
    }

    #[test]
    fn order_zero_is_rejected() {
        assert!(matches!(
            ngon_contains(c(0.0, 0.0), 0, 1e-9),
            Err(GeometryError::InvalidOrder { .. })
        ));
        assert!(matches!(
            region_contains(c(0.0, 0.0), 0, 1e-9),
            Err(GeometryError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn degenerate_orders_are_segments() {
        // P_1 = {1}
        assert_eq!(
            ngon_contains(c(1.0, 0.0), 1, 1e-9).unwrap().classification,
            Classification::Vertex
        );
        assert_eq!(
            ngon_contains(c(0.9999, 0.0), 1, 1e-9)
                .unwrap()
                .classification,
            Classification::Outside
        );
        // P_2 = [-1, 1]
        assert_eq!(
            ngon_contains(c(-0.5, 0.0), 2, 1e-9).unwrap().classification,
            Classification::Interior
        );
        assert_eq!(
            ngon_contains(c(-1.0, 0.0), 2, 1e-9).unwrap().classification,
            Classification::Vertex
        );
        assert_eq!(
            ngon_contains(c(0.0, 1e-3), 2, 1e-9).unwrap().classification,
            Classification::Outside
        );
        // B_2 = [0, 1]
        assert_eq!(
            region_contains(c(-0.5, 0.0), 2, 1e-9)
                .unwrap()
                .classification,
            Classification::Outside
        );
        assert_eq!(
            region_contains(c(0.5, 0.0), 2, 1e-9)
                .unwrap()
                .classification,
            Classification::Interior
        );
    }

    #[test]
    fn boundary_radius_frozen_values() {
        // cos^3(pi/3) = 1/8.
        assert!((boundary_radius(PI, 3).unwrap() - 0.125).abs() < 1e-12);
        // theta = -pi gives sec(-pi/n)/sec(pi/n) = 1 exactly.
        assert_eq!(boundary_radius(0.0, 5).unwrap(), 1.0);
        // cos^5(pi/5); the independent route is the polygon inradius at the
        // first edge-midpoint direction, raised to the n-th power.
        let inradius = cos(PI / 5.0);
        let expected = inradius.powi(5);
        assert!((expected - 0.34656781074217113).abs() < 1e-12);
        assert!((boundary_radius(PI, 5).unwrap() - expected).abs() < 1e-12);
        assert!(matches!(
            boundary_radius(0.0, 2),
            Err(GeometryError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn region_membership_examples() {
        let v = region_contains(c(-0.125, 0.0), 3, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Boundary);
        let v = region_contains(c(-0.2, 0.0), 3, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Outside);
        let v = region_contains(c(1.0, 0.0), 7, 1e-9).unwrap();
        assert_eq!(v.classification, Classification::Boundary);
    }

    #[test]
    fn boundary_point_examples() {
        assert!((boundary_point(PI, 4).unwrap() - c(0.0, 1.0)).norm() < 1e-12);
        assert!((boundary_point(-PI, 4).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((boundary_point(0.0, 4).unwrap() - c(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn boundary_point_lies_on_segment() {
        for n in 3..=8 {
            let curve = BoundaryCurve::new(n).unwrap();
            let mut theta = -PI;
            while theta <= PI {
                let z = curve.root_at(theta);
                let t = curve.segment_parameter(z);
                assert!(
                    (curve.segment_point(t) - z).norm() < 1e-10,
                    "off-segment at n={n}, theta={theta}"
                );
                assert!(z.norm() <= 1.0 + 1e-12);
                let v = ngon_contains(z, n, 1e-9).unwrap();
                assert!(v.is_on_boundary(), "n={n}, theta={theta}: {v:?}");
                theta += 0.05;
            }
        }
    }

    #[test]
    fn boundary_curve_endpoints_are_vertices() {
        for n in [3_usize, 5, 8] {
            let curve = BoundaryCurve::new(n).unwrap();
            assert!((curve.root_at(PI) - root_power(n, 1)).norm() < 1e-12);
            assert!((curve.root_at(-PI) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sector_root_examples() {
        assert!((sector_root(c(1.0, 0.0), 4).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        let z = sector_root(c(-0.25, 0.0), 4).unwrap();
        assert!((z - c(0.5, 0.5)).norm() < 1e-12);
        // Consistent with the boundary parametrization at theta = 0.
        assert!((z - boundary_point(0.0, 4).unwrap()).norm() < 1e-12);
        assert_eq!(sector_root(c(0.0, 0.0), 6).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            sector_root(c(-0.2, 0.0), 3),
            Err(GeometryError::NotRealizable { .. })
        ));
    }

    #[test]
    fn sector_root_angle_range() {
        let mut phi = -PI + 1e-6;
        while phi < PI {
            let delta = Complex64::from_polar(0.07, phi);
            let z = sector_root(delta, 5).unwrap();
            let angle = atan2(z.im, z.re);
            assert!(
                (0.0..TAU / 5.0).contains(&angle),
                "phi={phi}, angle={angle}"
            );
            assert!((powi(z, 5) - delta).norm() < 1e-12);
            phi += 0.01;
        }
    }

    #[test]
    fn caratheodory_examples() {
        let coeffs = caratheodory_decompose(c(0.5, 0.5), 4).unwrap();
        assert!((coeffs.a2 - 0.5).abs() < 1e-12);
        assert!((coeffs.b2 - 0.5).abs() < 1e-12);
        assert!(coeffs.c2.abs() < 1e-12);

        // Even order: 0 = (1 + y_n)/2.
        let coeffs = caratheodory_decompose(c(0.0, 0.0), 6).unwrap();
        assert!((coeffs.a2 - 0.5).abs() < 1e-12);
        assert!(coeffs.b2.abs() < 1e-12);
        assert!((coeffs.c2 - 0.5).abs() < 1e-12);

        let coeffs = caratheodory_decompose(c(1.0, 0.0), 5).unwrap();
        assert!((coeffs.a2 - 1.0).abs() < 1e-12);
        assert!(coeffs.b2.abs() < 1e-12);
        assert!(coeffs.c2.abs() < 1e-12);
    }

    #[test]
    fn caratheodory_zero_for_odd_order() {
        // Odd order: 0 = K y_n + (1 + w_n)/2 normalized by S = 1 + K gives
        // weights (1/(2S), 1/(2S), K/S).
        for n in [3_usize, 5, 7, 9] {
            let k = sqrt(0.5 + cos(TAU / n as f64) / 2.0);
            let s = 1.0 + k;
            let coeffs = caratheodory_decompose(c(0.0, 0.0), n).unwrap();
            assert!((coeffs.a2 - 0.5 / s).abs() < 1e-10, "n={n}");
            assert!((coeffs.b2 - 0.5 / s).abs() < 1e-10, "n={n}");
            assert!((coeffs.c2 - k / s).abs() < 1e-10, "n={n}");
            assert!((coeffs.k - k).abs() < 1e-15);
        }
    }

    #[test]
    fn caratheodory_rejects_outside_sector() {
        // A point far outside the triangle conv{0, 1, w_5}.
        assert!(matches!(
            caratheodory_decompose(c(-0.8, -0.4), 5),
            Err(GeometryError::OutsideSector { .. })
        ));
    }

    #[test]
    fn rotation_closure_of_the_ngon() {
        // z in P_n iff w_n z in P_n, away from the boundary band.
        let omega = root_power(7, 1);
        let mut k = 0u32;
        while k < 500 {
            let x = -1.2 + 2.4 * ((k as f64 * 0.7371) % 1.0);
            let y = -1.2 + 2.4 * ((k as f64 * 0.2417) % 1.0);
            let z = c(x, y);
            let a = ngon_contains(z, 7, 1e-9).unwrap();
            if fabs(a.margin) > 1e-7 {
                let b = ngon_contains(omega * z, 7, 1e-9).unwrap();
                assert_eq!(a.is_inside(), b.is_inside(), "z = {z}");
            }
            k += 1;
        }
    }
}
