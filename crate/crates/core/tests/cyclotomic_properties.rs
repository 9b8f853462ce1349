use cyclident::cyclotomic::{cyclotomic_polynomial, divisors, euler_phi, is_primitive_exponent, CyclotomicElement};
use cyclident::numeric::{embed_cyclotomic, PrecisionContext};
use cyclident::ratpoly::{DensePolynomial, Rational};
use proptest::prelude::*;

fn element(order: usize) -> impl Strategy<Value = CyclotomicElement> {
    prop::collection::vec((-9i64..10, 1i64..4), order)
        .prop_map(move |c| CyclotomicElement::from_coeffs(order, c.into_iter().map(|(p, q)| Rational::new(p, q).unwrap()).collect()).unwrap())
}

fn order_and_pair(max: usize) -> impl Strategy<Value = (usize, CyclotomicElement, CyclotomicElement)> {
    (1..=max).prop_flat_map(|n| (Just(n), element(n), element(n)))
}

#[test]
fn roots_have_order_dividing_n() {
    for n in 1..=60usize {
        let z = CyclotomicElement::root_power(n, 1).unwrap();
        assert_eq!(z.pow(n as u64), CyclotomicElement::one(n).unwrap());
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            assert_ne!(z.pow(d as u64), CyclotomicElement::one(n).unwrap(), "N = {n}, d = {d}");
        }
        assert_eq!(cyclotomic_polynomial(n).unwrap().degree(), Some(euler_phi(n)));
    }
}

#[test]
fn product_of_cyclotomic_polynomials() {
    for n in 1..=48usize {
        let prod = divisors(n).into_iter().fold(DensePolynomial::one(), |acc, d| &acc * &cyclotomic_polynomial(d).unwrap());
        let target = &DensePolynomial::monomial(Rational::one(), n) - &DensePolynomial::one();
        assert_eq!(prod, target, "N = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverses_multiply_to_one((n, a, _) in order_and_pair(40)) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, CyclotomicElement::one(n).unwrap());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((_n, a, b) in order_and_pair(36)) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.doubled_real_part().conjugate(), a.doubled_real_part());
    }

    #[test]
    fn galois_maps_are_ring_maps((n, a, b) in order_and_pair(36), k in 1i64..200) {
        prop_assume!(is_primitive_exponent(n, k));
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!(a.galois(-1).unwrap(), a.conjugate());
        prop_assert_eq!(CyclotomicElement::from_rational(n, Rational::new(3, 7).unwrap()).unwrap().galois(k).unwrap().as_rational(), Some(Rational::new(3, 7).unwrap()));
    }

    #[test]
    fn embedding_is_multiplicative((_n, a, b) in order_and_pair(30)) {
        let ctx = PrecisionContext::new(128).unwrap();
        let lhs = embed_cyclotomic(&(&a * &b), &ctx);
        let rhs = embed_cyclotomic(&a, &ctx).mul(&embed_cyclotomic(&b, &ctx), &ctx);
        let err = lhs.sub(&rhs, &ctx).abs(&ctx);
        prop_assert!(ctx.le(&err, &ctx.pow2(-100)));
    }

    #[test]
    fn closed_form_inverse(n in 2usize..=60, e in 1i64..60) {
        prop_assume!(e as usize % n != 0);
        let one = CyclotomicElement::one(n).unwrap();
        let w = CyclotomicElement::root_power(n, e).unwrap();
        let inv = CyclotomicElement::inverse_one_minus_root(n, e).unwrap();
        prop_assert_eq!(&(&one - &w) * &inv, one);
    }
}
