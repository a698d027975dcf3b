#![cfg_attr(not(feature = "std"), no_std)]

//! Evaluation, region membership and explicit realization of Bargmann
//! invariants (multivariate traces) `Tr(rho_1 ... rho_n)`.
//!
//! The toolkit answers three questions about order-n invariants:
//!
//! * **Evaluation** — compute the invariant of a tuple of pure states or
//!   density matrices, together with the geometric phase and post-selection
//!   probability it encodes ([`states`]).
//! * **Membership** — decide whether a complex number is attainable as an
//!   order-n invariant: the attainable region is the n-th power of the unit
//!   n-gon, a teardrop-shaped convex set ([`geometry`]).
//! * **Realization** — synthesize explicit minimal-dimension witnesses for
//!   any attainable value: circulant qutrit tuples, boundary qubit tuples,
//!   and general qubit tuples via the numerical range of a 2x2 operator
//!   ([`realize`], with the circulant machinery in [`gram`]).
//!
//! A Monte-Carlo oracle ([`oracle`]) cross-checks the analytic constructions
//! by sampling Haar-random tuples and circulant spectra.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only toggles the standard library for downstream convenience.

extern crate alloc;

pub use num_complex::Complex64;

mod linalg;
mod math;

pub mod geometry;
pub mod gram;
pub mod oracle;
pub mod realize;
pub mod states;

pub use math::wrap_angle;
