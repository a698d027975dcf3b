//! Scalar helpers shared across the crate.
//!
//! All transcendental functions route through `libm` so results are
//! bit-identical with and without the `std` feature.

use num_complex::Complex64;

pub(crate) use libm::{asin, atan2, cos, fabs, sin, sqrt};

pub const PI: f64 = core::f64::consts::PI;
pub const TAU: f64 = core::f64::consts::TAU;

/// Wraps an angle to the half-open interval `[-pi, pi)`; ties go to `-pi`.
pub fn wrap_angle(phi: f64) -> f64 {
    let w = phi - TAU * libm::round(phi / TAU);
    if w >= PI {
        w - TAU
    } else {
        w
    }
}

/// Euclidean remainder in `[0, modulus)`; `f64::rem_euclid` needs std.
pub(crate) fn rem_euclid(x: f64, modulus: f64) -> f64 {
    let r = x % modulus;
    if r < 0.0 {
        r + modulus
    } else {
        r
    }
}

/// `exp(2*pi*i*k/n)`, evaluated from the reduced angle for accuracy.
pub(crate) fn root_power(n: usize, k: i64) -> Complex64 {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    let angle = TAU * (k as f64) / (n as f64);
    Complex64::new(cos(angle), sin(angle))
}

/// `z^n` by repeated squaring; exact for the small integer exponents used here.
pub(crate) fn powi(z: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}
