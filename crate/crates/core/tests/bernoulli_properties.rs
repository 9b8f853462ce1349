use cyclident::bernoulli::{bernoulli_number, binomial_row, eval_bernoulli};
use cyclident::ratpoly::Rational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

#[test]
fn recurrence_holds_to_index_60() {
    for n in 1..=60usize {
        let row = binomial_row(n + 1);
        let s: Rational = (0..=n).map(|k| &Rational::from(row[k].clone()) * &bernoulli_number(k)).sum();
        assert!(s.is_zero(), "n = {n}");
    }
}

proptest! {
    #[test]
    fn difference_equation(j in 1usize..24, x in rational()) {
        let lhs = &eval_bernoulli(j, &(&x + &Rational::one())) - &eval_bernoulli(j, &x);
        let rhs = &Rational::from(j as i64) * &x.pow(j as i32 - 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_symmetry(j in 0usize..24, x in rational()) {
        let reflected = eval_bernoulli(j, &(&Rational::one() - &x));
        prop_assert_eq!(reflected, &Rational::sign_power(j as i64) * &eval_bernoulli(j, &x));
    }

    #[test]
    fn value_at_zero_is_the_number(j in 0usize..40) {
        prop_assert_eq!(eval_bernoulli(j, &Rational::zero()), bernoulli_number(j));
    }
}
