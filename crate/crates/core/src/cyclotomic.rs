//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored over the power basis `1, ζ, …, ζ^{N-1}` of
//! `Q[x]/(x^N - 1)` and kept reduced modulo `Φ_N`, so only the first
//! `φ(N)` coefficients can be nonzero and equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::ratpoly::{poly_divmod, poly_inverse_mod, ArithOp, DensePolynomial, Rational};
use crate::{Error, Result};

struct CyclotomicPolynomial {
    poly: DensePolynomial,
    // Integer coefficients of the same polynomial, used by the reduction loop.
    ints: Vec<i64>,
}

type PhiCache = RwLock<HashMap<usize, Arc<CyclotomicPolynomial>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn phi_entry(n: usize) -> Result<Arc<CyclotomicPolynomial>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if let Some(entry) = phi_cache().read().unwrap().get(&n) {
        return Ok(Arc::clone(entry));
    }
    // Built outside the lock: a racing thread may compute the same entry, and
    // whichever insert lands first wins. Entries are only visible complete.
    let mut poly = DensePolynomial::monomial(Rational::one(), n);
    poly = &poly - &DensePolynomial::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = phi_entry(d)?;
        let (q, r) = poly_divmod(&poly, &phi_d.poly)?;
        debug_assert!(r.is_zero());
        poly = q;
    }
    let ints = poly
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer());
            c.numer().to_i64().expect("cyclotomic coefficient fits in i64")
        })
        .collect();
    let entry = Arc::new(CyclotomicPolynomial { poly, ints });
    let mut cache = phi_cache().write().unwrap();
    Ok(Arc::clone(cache.entry(n).or_insert(entry)))
}

/// The `n`-th cyclotomic polynomial `Φ_n`, memoized per process.
pub fn cyclotomic_polynomial(n: usize) -> Result<DensePolynomial> {
    phi_entry(n).map(|e| e.poly.clone())
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Order of `ζ_N^a` as a root of unity: `N / gcd(N, a mod N)`.
pub fn multiplicative_order(n: usize, a: i64) -> usize {
    assert!(n >= 1, "order must be positive");
    let r = a.rem_euclid(n as i64) as usize;
    n / n.gcd(&r)
}

/// True when `ζ_N^a` is a primitive `N`-th root of unity.
pub fn is_primitive_exponent(n: usize, a: i64) -> bool {
    multiplicative_order(n, a) == n
}

/// Element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    order: usize,
    coeffs: Vec<Rational>,
    canonical: bool,
}

impl CyclotomicElement {
    /// Builds an element from coefficients of `1, ζ, ζ², …` of any length;
    /// indices past `N` wrap around since `ζ^N = 1`.
    pub fn from_coeffs(order: usize, raw: Vec<Rational>) -> Result<Self> {
        let phi = phi_entry(order)?;
        let mut coeffs = vec![Rational::zero(); order];
        for (i, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs[i % order] += &c;
            }
        }
        reduce_in_place(&mut coeffs, &phi.ints);
        Ok(CyclotomicElement { order, coeffs, canonical: true })
    }

    pub fn from_rational(order: usize, r: Rational) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut coeffs = vec![Rational::zero(); order];
        coeffs[0] = r;
        Ok(CyclotomicElement { order, coeffs, canonical: true })
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::from_rational(order, Rational::one())
    }

    /// `ζ_N^e`; negative exponents wrap into `[0, N)`.
    pub fn root_power(order: usize, e: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut raw = vec![Rational::zero(); order];
        raw[e.rem_euclid(order as i64) as usize] = Rational::one();
        Self::from_coeffs(order, raw)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, if every coefficient past the constant vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        debug_assert!(self.canonical);
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn representative(&self) -> DensePolynomial {
        DensePolynomial::new(self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            canonical: true,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = align(self, rhs)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CyclotomicElement { order: a.order, coeffs, canonical: true })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = align(self, rhs)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(CyclotomicElement { order: a.order, coeffs, canonical: true })
    }

    /// Product: cyclic convolution modulo `x^N - 1`, then reduction modulo `Φ_N`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = align(self, rhs)?;
        if let Some(r) = a.scalar_value() {
            return Ok(b.scale(&r));
        }
        if let Some(r) = b.scalar_value() {
            return Ok(a.scale(&r));
        }
        let n = a.order;
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = if i + j >= n { i + j - n } else { i + j };
                out[k] += &(x * y);
            }
        }
        reduce_in_place(&mut out, &phi_entry(n)?.ints);
        Ok(CyclotomicElement { order: n, coeffs: out, canonical: true })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if let Some(r) = self.scalar_value() {
            return Self::from_rational(self.order, r.recip()?);
        }
        let phi = phi_entry(self.order)?;
        match poly_inverse_mod(&self.representative(), &phi.poly)? {
            Some(inv) => Self::from_coeffs(self.order, inv.into_coeffs()),
            None => Err(Error::NonUnitGcd(self.order)),
        }
    }

    /// `1 / (1 - ζ_N^e)` in closed form: for `w` of order `d > 1`,
    /// `Σ_{t<d} t·w^t = d / (w - 1)`.
    pub fn inverse_one_minus_root(order: usize, e: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let d = multiplicative_order(order, e);
        if d == 1 {
            return Err(Error::ZeroInverse);
        }
        let mut raw = vec![Rational::zero(); order];
        let scale = Rational::new(-1, d as i64)?;
        for t in 1..d as i64 {
            let idx = (e as i128 * t as i128).rem_euclid(order as i128) as usize;
            raw[idx] += &(&scale * &Rational::from(t));
        }
        Self::from_coeffs(order, raw)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = align(self, rhs)?;
        a.checked_mul(&b.inverse()?)
    }

    /// Image under the automorphism `ζ ↦ ζ^a`; requires `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        if !is_primitive_exponent(self.order, a) {
            return Err(Error::NotAUnit { exponent: a, order: self.order });
        }
        let n = self.order as i64;
        let a = a.rem_euclid(n);
        let mut raw = vec![Rational::zero(); self.order];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j as i64 * a % n) as usize] = c.clone();
            }
        }
        Self::from_coeffs(self.order, raw)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every N")
    }

    /// `a + conj(a)`, i.e. twice the real part.
    pub fn doubled_real_part(&self) -> Self {
        self + &self.conjugate()
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order).expect("order is positive");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn scalar_value(&self) -> Option<Rational> {
        self.as_rational()
    }
}

fn reduce_in_place(coeffs: &mut [Rational], phi: &[i64]) {
    let d = phi.len() - 1;
    for i in (d..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut coeffs[i]);
        let base = i - d;
        for (j, &p) in phi[..d].iter().enumerate() {
            match p {
                0 => {}
                1 => coeffs[base + j] -= &c,
                -1 => coeffs[base + j] += &c,
                _ => coeffs[base + j] -= &(&c * &Rational::from(p)),
            }
        }
    }
}

fn align<'a>(
    a: &'a CyclotomicElement,
    b: &'a CyclotomicElement,
) -> Result<(std::borrow::Cow<'a, CyclotomicElement>, std::borrow::Cow<'a, CyclotomicElement>)> {
    use std::borrow::Cow;
    if a.order == b.order {
        return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
    }
    if let Some(r) = a.as_rational() {
        return Ok((Cow::Owned(CyclotomicElement::from_rational(b.order, r)?), Cow::Borrowed(b)));
    }
    if let Some(r) = b.as_rational() {
        return Ok((Cow::Borrowed(a), Cow::Owned(CyclotomicElement::from_rational(a.order, r)?)));
    }
    Err(Error::OrderMismatch(a.order, b.order))
}

/// Ring operation with order checking; `Div` multiplies by the inverse.
pub fn cyc_arith(a: &CyclotomicElement, b: &CyclotomicElement, op: ArithOp) -> Result<CyclotomicElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{j}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{self}]", self.order)
    }
}

// Operator forms panic on incompatible orders; use the `checked_*` methods
// when orders are not known to agree.
impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.scale(&-Rational::one())
    }
}
