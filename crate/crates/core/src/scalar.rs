//! Coefficient field abstraction shared by the exact and floating series paths.

use core::fmt::Debug;

use crate::rational::Rational;

/// Field in which series coefficients are accumulated.
///
/// [`Rational`] gives exact coefficients for rational `N` and `nu`; `f64`
/// covers arbitrary real parameters.
pub trait Scalar: Clone + Debug + PartialEq {
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on exact division by zero.
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// `Some(2x)` when `2x` is an integer.
    fn twice_as_integer(&self) -> Option<i64>;

    fn from_f64_lossy(x: f64) -> Self;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn twice_as_integer(&self) -> Option<i64> {
        (self * Rational::from(2)).to_i64()
    }
    fn from_f64_lossy(x: f64) -> Self {
        Rational::from_f64(x).unwrap_or_else(Rational::zero)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn twice_as_integer(&self) -> Option<i64> {
        let t = 2.0 * self;
        (t.is_finite() && libm::trunc(t) == t && t.abs() < 9.0e15).then_some(t as i64)
    }
    fn from_f64_lossy(x: f64) -> Self {
        x
    }
}
