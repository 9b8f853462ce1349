//! Bernoulli numbers and polynomials, with the `B_1 = -1/2` convention.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use crate::ratpoly::{DensePolynomial, Rational};

/// Exact `B_0, …, B_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Option<&Rational> {
        self.values.get(j)
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// `B_j(x)` as ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPolynomial {
    degree: usize,
    poly: DensePolynomial,
}

impl BernoulliPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.poly.coeffs()
    }

    pub fn as_polynomial(&self) -> &DensePolynomial {
        &self.poly
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }
}

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Binomial coefficients `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::from(1);
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

fn extend_to(values: &mut Vec<Rational>, max_index: usize) {
    // Σ_{k=0}^{n} C(n+1, k) B_k = 0  ⇒  B_n = -(Σ_{k<n} C(n+1, k) B_k) / (n+1)
    while values.len() <= max_index {
        let n = values.len();
        if n >= 3 && n % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let row = binomial_row(n + 1);
        let s: Rational = values
            .iter()
            .zip(&row)
            .filter(|(b, _)| !b.is_zero())
            .map(|(b, c)| b * &Rational::from(c.clone()))
            .sum();
        let b_n = -s.checked_div(&Rational::from((n + 1) as i64)).expect("n + 1 > 0");
        values.push(b_n);
    }
}

/// Exact table through `max_index`, extended lazily and shared process-wide.
pub fn bernoulli_numbers(max_index: usize) -> BernoulliTable {
    {
        let values = table().read().unwrap();
        if values.len() > max_index {
            return BernoulliTable { values: values[..=max_index].to_vec() };
        }
    }
    let mut values = table().write().unwrap();
    extend_to(&mut values, max_index);
    BernoulliTable { values: values[..=max_index].to_vec() }
}

pub fn bernoulli_number(j: usize) -> Rational {
    {
        let values = table().read().unwrap();
        if let Some(b) = values.get(j) {
            return b.clone();
        }
    }
    bernoulli_numbers(j).values[j].clone()
}

/// `B_j(x) = Σ_i C(j, i) B_i x^{j-i}`.
pub fn bernoulli_polynomial(j: usize) -> BernoulliPolynomial {
    let b = bernoulli_numbers(j);
    let row = binomial_row(j);
    let mut coeffs = vec![Rational::zero(); j + 1];
    for (i, (bi, c)) in b.values.iter().zip(&row).enumerate() {
        coeffs[j - i] = bi * &Rational::from(c.clone());
    }
    BernoulliPolynomial { degree: j, poly: DensePolynomial::new(coeffs) }
}

pub fn eval_bernoulli(j: usize, x: &Rational) -> Rational {
    bernoulli_polynomial(j).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn seed_values() {
        assert_eq!(bernoulli_numbers(1).values(), &[r(1, 1), r(-1, 2)]);
        assert_eq!(bernoulli_numbers(0).values(), &[r(1, 1)]);
    }

    #[test]
    fn recurrence_values() {
        let t = bernoulli_numbers(20);
        assert_eq!(t.get(2), Some(&r(1, 6)));
        assert_eq!(t.get(3), Some(&Rational::zero()));
        assert_eq!(t.get(4), Some(&r(-1, 30)));
        assert_eq!(t.get(6), Some(&r(1, 42)));
        assert_eq!(t.get(12), Some(&r(-691, 2730)));
        assert_eq!(t.get(20), Some(&r(-174611, 330)));
        for j in (3..=20).step_by(2) {
            assert!(t.get(j).unwrap().is_zero());
        }
    }

    #[test]
    fn recurrence_holds() {
        let t = bernoulli_numbers(30);
        for n in 1..30 {
            let row = binomial_row(n + 1);
            let s: Rational = (0..=n).map(|k| &t.values()[k] * &Rational::from(row[k].clone())).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0).coeffs(), &[r(1, 1)]);
        assert_eq!(bernoulli_polynomial(1).coeffs(), &[r(-1, 2), r(1, 1)]);
        assert_eq!(bernoulli_polynomial(3).coeffs(), &[r(0, 1), r(1, 2), r(-3, 2), r(1, 1)]);
        assert_eq!(bernoulli_polynomial(2).coeffs(), &[r(1, 6), r(-1, 1), r(1, 1)]);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval_bernoulli(3, &r(1, 2)), Rational::zero());
        assert_eq!(eval_bernoulli(3, &r(2, 1)), r(3, 1));
        for j in 0..10 {
            assert_eq!(eval_bernoulli(j, &Rational::zero()), bernoulli_number(j));
        }
    }

    #[test]
    fn monic_with_constant_term_b_j() {
        for j in 0..16 {
            let p = bernoulli_polynomial(j);
            assert_eq!(p.degree(), j);
            assert!(p.as_polynomial().is_monic());
            assert_eq!(p.as_polynomial().coeff(0), bernoulli_number(j));
        }
    }

    #[test]
    fn odd_polynomials_vanish_at_zero_half_one() {
        for m in 1..12 {
            let j = 2 * m + 1;
            for x in [r(0, 1), r(1, 2), r(1, 1)] {
                assert!(eval_bernoulli(j, &x).is_zero(), "B_{j}({x})");
            }
        }
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomial_row(0), vec![BigInt::from(1)]);
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
    }
}
