//! Exact constructions of `F^N_nu` and `G^N_nu`.
//!
//! Two representations are provided:
//!
//! * [`ExpClosedForm`], `c * pi * z^-p * e^-z * poly(1/z)` with rational `c`
//!   and a rational polynomial. It exists only when `N` and `nu` have opposite
//!   parity, where the base cases reduce to half-odd-integer Bessel functions.
//!   Higher `N` is reached by the second-order recursion in `N`, written
//!   directly on the polynomial in `u = 1/z`.
//! * [`BesselProductForm`], a finite sum of products `K_a(z/2) K_b(z/2)`
//!   obtained by expanding `cosh^N` into `cosh(kt)` harmonics. Valid for any
//!   parity.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::kernels::{k_half_exact, k_scaled_auto};
use crate::poly::ReciprocalPoly;
use crate::rational::Rational;

/// `pi_factor * pi * z^-power * e^-z * poly(1/z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpClosedForm {
    pub pi_factor: Rational,
    /// 1 for `F` forms, 2 for `G` forms.
    pub power: u32,
    pub poly: ReciprocalPoly,
}

impl ExpClosedForm {
    /// Value with the `e^-z` factor removed.
    pub fn eval_scaled(&self, z: f64) -> f64 {
        self.pi_factor.to_f64() * PI * libm::pow(z, -(self.power as f64)) * self.poly.eval(1.0 / z)
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.eval_scaled(z) * libm::exp(-z)
    }

    /// Polynomial coefficients in units of `pi/2`.
    pub fn pi_half_coeffs(&self) -> ReciprocalPoly {
        self.poly.scale(&(&self.pi_factor * Rational::from(2)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTerm {
    pub c: Rational,
    pub k: u32,
}

/// `1/2 * sum_k c_k K_{(nu+k)/2}(z/2) K_{(nu-k)/2}(z/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BesselProductForm {
    pub nu: u32,
    pub terms: Vec<ProductTerm>,
}

impl BesselProductForm {
    /// Bessel orders `((nu+k)/2, (nu-k)/2)` of a term.
    pub fn orders(&self, k: u32) -> (f64, f64) {
        let nu = self.nu as f64;
        let k = k as f64;
        (0.5 * (nu + k), 0.5 * (nu - k))
    }

    /// `self - other`, merging equal `k` and dropping cancelled terms.
    pub fn difference(&self, other: &BesselProductForm) -> BesselProductForm {
        debug_assert_eq!(self.nu, other.nu);
        let mut terms: Vec<ProductTerm> = self.terms.clone();
        for t in &other.terms {
            match terms.iter_mut().find(|s| s.k == t.k) {
                Some(s) => s.c -= &t.c,
                None => terms.push(ProductTerm {
                    c: -&t.c,
                    k: t.k,
                }),
            }
        }
        terms.retain(|t| !t.c.is_zero());
        terms.sort_by_key(|t| Reverse(t.k));
        BesselProductForm { nu: self.nu, terms }
    }
}

fn is_mixed_parity(n: i64, nu: i64) -> bool {
    (n + nu).rem_euclid(2) == 1
}

fn check_n(n: i64) -> Result<()> {
    if n < 0 {
        return Err(Error::domain(format!("N must be non-negative, got {n}")));
    }
    Ok(())
}

fn parity_checked(n: i64, nu: i64) -> Result<(i64, i64)> {
    check_n(n)?;
    let nu = nu.abs();
    if !is_mixed_parity(n, nu) {
        return Err(Error::Parity { n, nu });
    }
    Ok((n, nu))
}

/// Termination order `M_{N,nu}`: `nu - 1` if `N < nu`, else `N - 1`.
///
/// Only meaningful for opposite-parity `N`, `nu`, where it bounds
/// `deg Q_{N,nu}`.
pub fn f_degree_bound(n: i64, nu: i64) -> Result<usize> {
    let (n, nu) = parity_checked(n, nu)?;
    Ok(if n < nu { nu - 1 } else { n - 1 } as usize)
}

/// `K_{N,nu} = M_{N+2,nu} - 1`, the bound on `deg P_{N,nu}`.
pub fn g_degree_bound(n: i64, nu: i64) -> Result<usize> {
    Ok(f_degree_bound(n + 2, nu)? - 1)
}

/// Degree bound obtained without the top-coefficient cancellations:
/// `2(n+m)` for `Q_{2m,2n+1}`, `2m` for `Q_{2m+1,0}`, `2(n+m)-1` for
/// `Q_{2m+1,2n}`, `n > 0`.
pub fn naive_degree_bound(n: i64, nu: i64) -> Result<usize> {
    let (n, nu) = parity_checked(n, nu)?;
    Ok(if n % 2 == 0 {
        n + (nu - 1)
    } else if nu == 0 {
        n - 1
    } else {
        n + nu - 2
    } as usize)
}

/// `cosh^N t = sum_k c_k cosh(kt)`, as `(k, c_k)` pairs with `k` descending
/// from `N` in steps of 2.
pub fn cosh_expand(n: u32) -> Vec<(u32, Rational)> {
    let scale = Rational::new(1, 2).powi(n as i32);
    (0..=n / 2)
        .map(|m| {
            let k = n - 2 * m;
            let b = Rational::from_integer(binomial(BigInt::from(n), BigInt::from(m)));
            let c = if k == 0 { &scale * b } else { &scale * b * Rational::from(2) };
            (k, c)
        })
        .collect()
}

/// `F^N_nu` as a product form, from the cosh expansion of `cosh^N`.
pub fn product_form(n: i64, nu: i64) -> Result<BesselProductForm> {
    check_n(n)?;
    let terms = cosh_expand(n as u32)
        .into_iter()
        .map(|(k, c)| ProductTerm { c, k })
        .collect();
    Ok(BesselProductForm {
        nu: nu.unsigned_abs() as u32,
        terms,
    })
}

/// `G^N_nu = F^{N+2}_nu - F^N_nu` as a product form.
pub fn product_form_g(n: i64, nu: i64) -> Result<BesselProductForm> {
    Ok(product_form(n + 2, nu)?.difference(&product_form(n, nu)?))
}

/// Base cases `F^0_nu = 1/2 K_{nu/2}(z/2)^2` and
/// `F^1_nu = 1/2 K_{(nu+1)/2}(z/2) K_{(nu-1)/2}(z/2)`.
pub fn base_case_f(n: i64, nu: i64) -> Result<BesselProductForm> {
    if !(n == 0 || n == 1) {
        return Err(Error::domain(format!("base cases exist for N = 0, 1; got {n}")));
    }
    Ok(BesselProductForm {
        nu: nu.unsigned_abs() as u32,
        terms: alloc::vec![ProductTerm {
            c: Rational::one(),
            k: n as u32,
        }],
    })
}

/// Base case with opposite parity, expanded exactly.
///
/// Both Bessel orders are half-odd-integers. Each factor
/// `K_{m+1/2}(z/2) = sqrt(pi/z) e^{-z/2} p_m(2u)`, so the product is
/// `(pi/2) z^-1 e^-z p_a(2u) p_b(2u)`.
pub fn base_case_exp(n: i64, nu: i64) -> Result<ExpClosedForm> {
    if !(n == 0 || n == 1) {
        return Err(Error::domain(format!("base cases exist for N = 0, 1; got {n}")));
    }
    let (n, nu) = parity_checked(n, nu)?;
    // |(nu +- n)/2| = m + 1/2
    let half_index = |twice: i64| ((twice.abs() - 1) / 2) as u32;
    let two = Rational::from(2);
    let pa = k_half_exact(half_index(nu + n)).coeffs.rescale_argument(&two);
    let pb = k_half_exact(half_index(nu - n)).coeffs.rescale_argument(&two);
    Ok(ExpClosedForm {
        pi_factor: Rational::new(1, 2),
        power: 1,
        poly: pa.mul(&pb),
    })
}

fn require_f_form(form: &ExpClosedForm) -> Result<()> {
    if form.power != 1 {
        return Err(Error::domain(format!(
            "recursions act on F forms (power 1), got power {}",
            form.power
        )));
    }
    Ok(())
}

/// `Q_{N,nu} -> Q_{N+2,nu}`:
/// `((1 - nu^2) u^2 + u + 1) Q + (3u^3 + 2u^2) Q' + u^4 Q''`.
pub fn recur_in_n(form: &ExpClosedForm, nu: i64) -> Result<ExpClosedForm> {
    require_f_form(form)?;
    let q = &form.poly;
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let nu2 = Rational::from(nu * nu);
    let multiplier = ReciprocalPoly::new(alloc::vec![
        Rational::one(),
        Rational::one(),
        Rational::one() - nu2,
    ]);
    let poly = multiplier
        .mul(q)
        .add(&ReciprocalPoly::from_integers(&[0, 0, 2, 3]).mul(&d1))
        .add(&d2.shift_up(4));
    Ok(ExpClosedForm {
        pi_factor: form.pi_factor.clone(),
        power: 1,
        poly,
    })
}

/// `Q_{N,nu} -> Q_{N+1,nu+1}`: `((nu+1) u + 1) Q + u^2 Q'`.
pub fn recur_in_n_nu(form: &ExpClosedForm, nu: i64) -> Result<ExpClosedForm> {
    require_f_form(form)?;
    let q = &form.poly;
    let multiplier = ReciprocalPoly::from_integers(&[1, nu + 1]);
    let poly = multiplier.mul(q).add(&q.derivative().shift_up(2));
    Ok(ExpClosedForm {
        pi_factor: form.pi_factor.clone(),
        power: 1,
        poly,
    })
}

/// `F^N_nu = pi_factor * pi * z^-1 e^-z Q_{N,nu}(1/z)` for opposite-parity
/// `N`, `nu`, built from the `N mod 2` base case by recursion in `N`.
pub fn closed_f(n: i64, nu: i64) -> Result<ExpClosedForm> {
    let (n, nu) = parity_checked(n, nu)?;
    let mut form = base_case_exp(n % 2, nu)?;
    for _ in 0..n / 2 {
        form = recur_in_n(&form, nu)?;
    }
    Ok(form)
}

/// `G^N_nu = pi_factor * pi * z^-2 e^-z P_{N,nu}(1/z)`, from
/// `Q_{N+2,nu} - Q_{N,nu}` whose constant term cancels.
pub fn closed_g(n: i64, nu: i64) -> Result<ExpClosedForm> {
    let upper = closed_f(n + 2, nu)?;
    let lower = closed_f(n, nu)?;
    debug_assert_eq!(upper.pi_factor, lower.pi_factor);
    let diff = upper.poly.sub(&lower.poly);
    let poly = diff.shift_down(1).ok_or_else(|| {
        Error::Internal(format!(
            "constant term of Q_{{{},{nu}}} - Q_{{{n},{nu}}} does not cancel",
            n + 2
        ))
    })?;
    Ok(ExpClosedForm {
        pi_factor: upper.pi_factor,
        power: 2,
        poly,
    })
}

/// Numerically evaluates a product form. Half-odd-integer orders use the
/// exact finite forms, all others the quadrature kernel at tolerance `tol`.
pub fn eval_product_form(pf: &BesselProductForm, z: f64, tol: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain(format!("z must be positive, got {z}")));
    }
    let x = 0.5 * z;
    let mut sum = 0.0;
    for t in &pf.terms {
        let (a, b) = pf.orders(t.k);
        let ka = k_scaled_auto(a, x, tol)?;
        let kb = if a.abs() == b.abs() {
            ka
        } else {
            k_scaled_auto(b, x, tol)?
        };
        sum += t.c.to_f64() * ka * kb;
    }
    Ok(0.5 * sum * libm::exp(-z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[i64]) -> ReciprocalPoly {
        ReciprocalPoly::from_integers(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn f_form(poly: &[i64]) -> ExpClosedForm {
        ExpClosedForm {
            pi_factor: r(1, 2),
            power: 1,
            poly: p(poly),
        }
    }

    #[test]
    fn cosh_expansion() {
        assert_eq!(cosh_expand(0), vec![(0, r(1, 1))]);
        assert_eq!(cosh_expand(2), vec![(2, r(1, 2)), (0, r(1, 2))]);
        assert_eq!(cosh_expand(3), vec![(3, r(1, 4)), (1, r(3, 4))]);
        for n in 0..12 {
            let sum = cosh_expand(n)
                .iter()
                .fold(Rational::zero(), |acc, (_, c)| acc + c);
            assert_eq!(sum, Rational::one(), "N = {n}");
        }
    }

    #[test]
    fn base_case_products() {
        assert_eq!(base_case_f(0, 1).unwrap().terms, vec![ProductTerm { c: r(1, 1), k: 0 }]);
        let f = base_case_f(1, 2).unwrap();
        assert_eq!(f.orders(1), (1.5, 0.5));
        assert_eq!(base_case_f(1, 0).unwrap().orders(1), (0.5, -0.5));
        assert!(matches!(base_case_f(2, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn base_case_exact_forms() {
        assert_eq!(base_case_exp(0, 1).unwrap(), f_form(&[1]));
        assert_eq!(base_case_exp(1, 0).unwrap(), f_form(&[1]));
        assert_eq!(base_case_exp(0, 3).unwrap(), f_form(&[1, 4, 4]));
        assert_eq!(base_case_exp(1, 2).unwrap(), f_form(&[1, 2]));
        assert!(matches!(base_case_exp(0, 2), Err(Error::Parity { .. })));
        assert!(matches!(base_case_exp(3, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn recursion_in_n() {
        assert_eq!(recur_in_n(&f_form(&[1]), 1).unwrap(), f_form(&[1, 1]));
        assert_eq!(recur_in_n(&f_form(&[1, 1]), 1).unwrap(), f_form(&[1, 2, 3, 3]));
        assert_eq!(recur_in_n(&f_form(&[1]), 0).unwrap(), f_form(&[1, 1, 1]));
        let g = ExpClosedForm {
            power: 2,
            ..f_form(&[1])
        };
        assert!(recur_in_n(&g, 1).is_err());
    }

    #[test]
    fn recursion_in_n_and_nu() {
        assert_eq!(recur_in_n_nu(&f_form(&[1]), 1).unwrap(), f_form(&[1, 2]));
        assert_eq!(recur_in_n_nu(&f_form(&[1]), 0).unwrap(), f_form(&[1, 1]));
        assert_eq!(recur_in_n_nu(&f_form(&[]), 3).unwrap(), f_form(&[]));
    }

    #[test]
    fn closed_f_examples() {
        assert_eq!(closed_f(2, 1).unwrap(), f_form(&[1, 1]));
        assert_eq!(closed_f(1, 2).unwrap(), f_form(&[1, 2]));
        assert_eq!(closed_f(4, 1).unwrap(), f_form(&[1, 2, 3, 3]));
        assert_eq!(closed_f(2, -1).unwrap(), closed_f(2, 1).unwrap());
        assert_eq!(closed_f(2, 2), Err(Error::Parity { n: 2, nu: 2 }));
        assert!(matches!(closed_f(-1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_g_examples() {
        let g = closed_g(2, 1).unwrap();
        assert_eq!(g.power, 2);
        assert_eq!(g.poly, p(&[1, 3, 3]));
        assert_eq!(closed_g(0, 1).unwrap().poly, p(&[1]));
        assert!(matches!(closed_g(1, 1), Err(Error::Parity { .. })));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(f_degree_bound(2, 1).unwrap(), 1);
        assert_eq!(f_degree_bound(0, 3).unwrap(), 2);
        assert_eq!(f_degree_bound(3, 2).unwrap(), 2);
        assert_eq!(g_degree_bound(2, 1).unwrap(), 2);
        assert_eq!(naive_degree_bound(2, 1).unwrap(), 2);
        assert_eq!(naive_degree_bound(3, 0).unwrap(), 2);
        assert_eq!(naive_degree_bound(3, 2).unwrap(), 3);
        assert!(f_degree_bound(2, 2).is_err());
    }

    #[test]
    fn product_forms() {
        let f = product_form(3, 1).unwrap();
        assert_eq!(
            f.terms,
            vec![ProductTerm { c: r(1, 4), k: 3 }, ProductTerm { c: r(3, 4), k: 1 }]
        );
        assert_eq!(f.orders(3), (2.0, -1.0));
        assert_eq!(
            product_form(2, 1).unwrap().terms,
            vec![ProductTerm { c: r(1, 2), k: 2 }, ProductTerm { c: r(1, 2), k: 0 }]
        );
        assert_eq!(product_form(0, 5).unwrap().terms, vec![ProductTerm { c: r(1, 1), k: 0 }]);

        let g = product_form_g(1, 1).unwrap();
        // cosh^3 - cosh = (1/4) cosh 3t - (1/4) cosh t
        assert_eq!(
            g.terms,
            vec![ProductTerm { c: r(1, 4), k: 3 }, ProductTerm { c: r(-1, 4), k: 1 }]
        );
    }

    #[test]
    fn product_form_values() {
        let v = eval_product_form(&product_form(0, 1).unwrap(), 1.0, 1e-13).unwrap();
        assert!((v - 0.5778636748954609).abs() < 1e-12);
        let expected = closed_f(2, 1).unwrap().eval(2.0);
        let v = eval_product_form(&product_form(2, 1).unwrap(), 2.0, 1e-13).unwrap();
        assert!((v - expected).abs() < 1e-9 * expected);
    }
}
