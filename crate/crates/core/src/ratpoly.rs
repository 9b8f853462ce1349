//! Exact rationals and dense univariate polynomials over them.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary rational arithmetic; the only failure is division by zero.
pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            return self.recip().map(|r| Rational(num_traits::Pow::pow(&r.0, exp.unsigned_abs())));
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp as u32)))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }

    /// `(-1)^k` as a rational.
    pub fn sign_power(k: i64) -> Self {
        if k.is_even() {
            Rational::one()
        } else {
            -Rational::one()
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()));
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse_int(p)?, parse_int(q)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Dense polynomial with rational coefficients in ascending degree order.
/// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePolynomial {
    coeffs: Vec<Rational>,
}

impl DensePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DensePolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        DensePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DensePolynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip().expect("leading coefficient is nonzero")),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn divmod(&self, den: &DensePolynomial) -> Result<(DensePolynomial, DensePolynomial)> {
        poly_divmod(self, den)
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePolynomial({self})")
    }
}

impl Add for &DensePolynomial {
    type Output = DensePolynomial;
    fn add(self, rhs: &DensePolynomial) -> DensePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePolynomial {
    type Output = DensePolynomial;
    fn sub(self, rhs: &DensePolynomial) -> DensePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePolynomial {
    type Output = DensePolynomial;
    fn mul(self, rhs: &DensePolynomial) -> DensePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        DensePolynomial::new(out)
    }
}

impl Neg for &DensePolynomial {
    type Output = DensePolynomial;
    fn neg(self) -> DensePolynomial {
        DensePolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Euclidean division: returns `(q, r)` with `num = q*den + r` and
/// `deg r < deg den`.
pub fn poly_divmod(num: &DensePolynomial, den: &DensePolynomial) -> Result<(DensePolynomial, DensePolynomial)> {
    let Some(den_deg) = den.degree() else {
        return Err(Error::ZeroPolynomialDivisor);
    };
    let Some(num_deg) = num.degree() else {
        return Ok((DensePolynomial::zero(), DensePolynomial::zero()));
    };
    if num_deg < den_deg {
        return Ok((DensePolynomial::zero(), num.clone()));
    }
    let lc_inv = den.coeffs[den_deg].recip()?;
    let mut rem = num.coeffs.clone();
    let mut quot = vec![Rational::zero(); num_deg - den_deg + 1];
    for i in (den_deg..=num_deg).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] * &lc_inv;
        let shift = i - den_deg;
        for (j, d) in den.coeffs.iter().enumerate() {
            if !d.is_zero() {
                rem[shift + j] -= &(&c * d);
            }
        }
        quot[shift] = c;
    }
    rem.truncate(den_deg);
    Ok((DensePolynomial::new(quot), DensePolynomial::new(rem)))
}

/// Extended Euclid over `Q[x]`: returns `(g, s, t)` with `s*a + t*b = g`,
/// `g` the monic gcd.
pub fn poly_ext_gcd(
    a: &DensePolynomial,
    b: &DensePolynomial,
) -> Result<(DensePolynomial, DensePolynomial, DensePolynomial)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (DensePolynomial::one(), DensePolynomial::zero());
    let (mut t0, mut t1) = (DensePolynomial::zero(), DensePolynomial::one());
    while !r1.is_zero() {
        let (q, r) = poly_divmod(&r0, &r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc_inv = r0.leading().expect("gcd is nonzero").recip()?;
    Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Only the Bézout
/// cofactor of `a` is tracked.
pub(crate) fn poly_inverse_mod(a: &DensePolynomial, m: &DensePolynomial) -> Result<Option<DensePolynomial>> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (a.clone(), m.clone());
    let (mut s0, mut s1) = (DensePolynomial::one(), DensePolynomial::zero());
    while !r1.is_zero() {
        let (q, r) = poly_divmod(&r0, &r1)?;
        let s2 = &s0 - &(&q * &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.degree() != Some(0) {
        return Ok(None);
    }
    let inv = r0.coeffs[0].recip()?;
    let (_, s) = poly_divmod(&s0.scale(&inv), m)?;
    Ok(Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn rational_is_stored_reduced() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(r(0, 7), Rational::zero());
        assert_eq!(Rational::zero().denom(), &BigInt::from(1));
    }

    #[test]
    fn rat_arith_examples() {
        assert_eq!(rat_arith(&r(1, 2), &r(1, 3), ArithOp::Add).unwrap(), r(5, 6));
        let x = r(-22, 7);
        assert_eq!(rat_arith(&x, &Rational::one(), ArithOp::Mul).unwrap(), x);
        assert_eq!(rat_arith(&r(-7, 6), &Rational::zero(), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(rat_arith(&r(3, 4), &r(1, 4), ArithOp::Sub).unwrap(), r(1, 2));
        assert_eq!(rat_arith(&r(3, 4), &r(3, 2), ArithOp::Div).unwrap(), r(1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(r(-1, 2).to_string(), "-1/2");
        assert_eq!(r(4, 2).to_string(), "2");
        assert_eq!("-3/6".parse::<Rational>().unwrap(), r(-1, 2));
        assert_eq!("5".parse::<Rational>().unwrap(), r(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(r(2, 3).pow(3).unwrap(), r(8, 27));
        assert_eq!(r(2, 3).pow(-2).unwrap(), r(9, 4));
        assert!(Rational::zero().pow(-1).is_err());
    }

    #[test]
    fn divmod_examples() {
        let (q, rem) = poly_divmod(&DensePolynomial::from_ints(&[-1, 0, 1]), &DensePolynomial::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, DensePolynomial::from_ints(&[1, 1]));
        assert!(rem.is_zero());

        let p = DensePolynomial::new(vec![r(1, 2), r(-3, 1), r(0, 1), r(7, 5)]);
        let (q, rem) = poly_divmod(&p, &DensePolynomial::one()).unwrap();
        assert_eq!(q, p);
        assert!(rem.is_zero());

        let num = DensePolynomial::from_ints(&[-1, 0, 0, 0, 1]);
        let den = DensePolynomial::from_ints(&[1, 0, 1]);
        let (q, rem) = poly_divmod(&num, &den).unwrap();
        assert_eq!(q, DensePolynomial::from_ints(&[-1, 0, 1]));
        assert!(rem.is_zero());
        assert_eq!(&(&q * &den) + &rem, num);
    }

    #[test]
    fn divmod_by_zero_is_an_error() {
        assert_eq!(
            poly_divmod(&DensePolynomial::one(), &DensePolynomial::zero()),
            Err(Error::ZeroPolynomialDivisor)
        );
    }

    #[test]
    fn ext_gcd_coprime_linears() {
        let a = DensePolynomial::from_ints(&[-1, 1]);
        let b = DensePolynomial::from_ints(&[1, 1]);
        let (g, s, t) = poly_ext_gcd(&a, &b).unwrap();
        assert_eq!(g, DensePolynomial::one());
        assert_eq!(&(&s * &a) + &(&t * &b), DensePolynomial::one());
    }

    #[test]
    fn ext_gcd_with_zero() {
        let p = DensePolynomial::new(vec![r(1, 1), r(0, 1), r(3, 1)]);
        let (g, s, t) = poly_ext_gcd(&p, &DensePolynomial::zero()).unwrap();
        assert_eq!(g, p.monic());
        assert_eq!(s, DensePolynomial::constant(r(1, 3)));
        assert!(t.is_zero());
        assert_eq!(poly_ext_gcd(&DensePolynomial::zero(), &DensePolynomial::zero()), Err(Error::GcdOfZeros));
    }

    #[test]
    fn ext_gcd_equal_inputs() {
        let p = DensePolynomial::from_ints(&[1, 0, 1]);
        let (g, s, t) = poly_ext_gcd(&p, &p).unwrap();
        assert_eq!(g, p);
        assert_eq!(&(&s * &p) + &(&t * &p), g);
    }

    #[test]
    fn inverse_mod_matches_ext_gcd() {
        let m = DensePolynomial::from_ints(&[1, 1, 1, 1, 1]);
        let a = DensePolynomial::from_ints(&[1, -1]);
        let inv = poly_inverse_mod(&a, &m).unwrap().unwrap();
        let (_, rem) = poly_divmod(&(&inv * &a), &m).unwrap();
        assert_eq!(rem, DensePolynomial::one());
        assert!(poly_inverse_mod(&DensePolynomial::from_ints(&[-1, 1]), &DensePolynomial::from_ints(&[-1, 0, 1])).unwrap().is_none());
    }

    #[test]
    fn eval_and_display() {
        let p = DensePolynomial::from_ints(&[0, 1, -3, 2]);
        assert_eq!(p.eval(&r(1, 2)), Rational::zero());
        assert_eq!(p.to_string(), "2*x^3 - 3*x^2 + x");
        assert_eq!(DensePolynomial::zero().to_string(), "0");
        assert_eq!(DensePolynomial::from_ints(&[-1, 1]).to_string(), "x - 1");
    }
}
