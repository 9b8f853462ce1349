//! Integer Laurent polynomials in one variable `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CyclotomicElement;
use crate::ratpoly::Rational;
use crate::Result;

/// `Σ coeffs[i] · z^{offset+i}`. Stored coefficients are trimmed at both
/// ends, so the zero polynomial has no coefficients and offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        Self::new(exp, vec![coeff.into()])
    }

    pub fn new(offset: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPolynomial { offset: offset + lead as i64, coeffs }
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        let Some((&lo, _)) = acc.first_key_value() else {
            return Self::zero();
        };
        let hi = *acc.last_key_value().unwrap().0;
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in acc {
            coeffs[(e - lo) as usize] = c;
        }
        Self::new(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.offset;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms().count()
    }

    /// The constant value, if no other power of `z` survives.
    pub fn as_constant(&self) -> Option<BigInt> {
        match (self.min_exponent(), self.max_exponent()) {
            (None, _) => Some(BigInt::zero()),
            (Some(0), Some(0)) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `p(1/z)`
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// Substitutes `z = ζ_N^a`.
    pub fn eval_root_of_unity(&self, order: usize, a: i64) -> Result<CyclotomicElement> {
        let n = order as i64;
        let mut raw = vec![Rational::zero(); order.max(1)];
        for (e, c) in self.terms() {
            let idx = (e as i128 * a as i128).rem_euclid(n as i128) as usize;
            raw[idx] += &Rational::from(c.clone());
        }
        CyclotomicElement::from_coeffs(order, raw)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (_, true) => write!(f, "z^{e}")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, false) => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.offset + rhs.offset, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_zero() {
        let p = LaurentPolynomial::new(-3, [0, 0, 2, 0, -1, 0].map(BigInt::from).to_vec());
        assert_eq!(p.min_exponent(), Some(-1));
        assert_eq!(p.max_exponent(), Some(1));
        assert_eq!(p.coeff(-1), BigInt::from(2));
        assert_eq!(p.coeff(5), BigInt::zero());
        assert!(LaurentPolynomial::new(4, vec![BigInt::zero(); 3]).is_zero());
        assert_eq!(LaurentPolynomial::new(4, vec![BigInt::zero()]), LaurentPolynomial::zero());
    }

    #[test]
    fn cancellation_in_from_terms() {
        let p = LaurentPolynomial::from_terms([(-2, -1), (-2, 1)]);
        assert!(p.is_zero());
        let q = LaurentPolynomial::from_terms([(-2, 1), (3, 4), (-2, 1)]);
        assert_eq!(q.to_string(), "2*z^-2 + 4*z^3");
    }

    #[test]
    fn arithmetic() {
        let a = &LaurentPolynomial::monomial(1, -1) + &LaurentPolynomial::monomial(1, 1);
        let sq = &a * &a;
        assert_eq!(sq, LaurentPolynomial::from_terms([(-2, 1), (0, 2), (2, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.invert_variable(), a);
        assert_eq!(sq.as_constant(), None);
        assert_eq!(LaurentPolynomial::monomial(-7, 0).as_constant(), Some(BigInt::from(-7)));
    }

    #[test]
    fn evaluation_at_roots_of_unity() {
        // z + z^-1 at z = i is 0
        let a = &LaurentPolynomial::monomial(1, -1) + &LaurentPolynomial::monomial(1, 1);
        assert!(a.eval_root_of_unity(4, 1).unwrap().is_zero());
        let c = LaurentPolynomial::monomial(3, 0).eval_root_of_unity(7, 2).unwrap();
        assert_eq!(c.as_rational(), Some(Rational::from(3)));
    }
}
