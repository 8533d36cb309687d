//! Dense polynomials in `u = 1/z` with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

/// Polynomial `sum_l coeffs[l] * u^l`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial is
/// the empty coefficient list and `degree()` is `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ReciprocalPoly {
    coeffs: Vec<Rational>,
}

impl ReciprocalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        ReciprocalPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        ReciprocalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `u^power`; zero past the degree.
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `dp/du`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, c)| c * Rational::from(l as i64))
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c.to_f64())
    }

    /// Exact `a*p + b*q`.
    pub fn combine(a: &Rational, p: &Self, b: &Rational, q: &Self) -> Self {
        let len = p.coeffs.len().max(q.coeffs.len());
        let coeffs = (0..len)
            .map(|l| {
                let mut acc = Rational::zero();
                if let Some(c) = p.coeffs.get(l) {
                    acc += &(a * c);
                }
                if let Some(c) = q.coeffs.get(l) {
                    acc += &(b * c);
                }
                acc
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::combine(&Rational::one(), self, &Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::combine(&Rational::one(), self, &-Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::new(coeffs)
    }

    /// `p(u) * u^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `p(u) / u^k`, or `None` if one of the `k` lowest coefficients is nonzero.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// `p(c * u)`.
    pub fn rescale_argument(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &power);
            power *= c;
        }
        Self::new(coeffs)
    }
}

impl fmt::Debug for ReciprocalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
