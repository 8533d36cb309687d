//! Evaluation of the cosh-weighted Bessel integrals
//!
//! ```text
//! F^N_nu(z) = int_0^inf cosh^N(t) K_nu(z cosh t) dt
//! G^N_nu(z) = int_0^inf cosh^N(t) K_nu(z cosh t) sinh^2(t) dt
//! ```
//!
//! by four independent routes:
//!
//! * [`closed`]: exact `pi * z^-p * e^-z * poly(1/z)` forms built by recursion
//!   from half-integer-order base cases, plus the general finite sum of
//!   Bessel products obtained from the cosh power expansion;
//! * [`asymptotic`]: the large-`z` series, which terminates exactly when `N`
//!   and `nu` have opposite parity;
//! * [`oracle`]: brute-force adaptive quadrature of the defining integrals;
//! * [`rates`]: the `e- e+ -> nu_e nubar_e` rate constant built on `G^3_1`
//!   and `G^5_1`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Negated comparisons are how range checks reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asymptotic;
pub mod closed;
mod error;
pub mod kernels;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod rates;
pub mod rational;
pub mod scalar;

pub use error::{Error, Result};
pub use poly::ReciprocalPoly;
pub use rational::Rational;
pub use scalar::Scalar;
