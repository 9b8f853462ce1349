use cyclident::identities::trig_sum_numeric;
use cyclident::numeric::{cot_mp, draw_samples, unit_exp, PrecisionContext, SamplePlan};
use cyclident::ratpoly::Rational;
use proptest::prelude::*;

fn ctx(p: usize) -> PrecisionContext {
    PrecisionContext::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_exp_has_modulus_one(seed in any::<u64>(), p in 64usize..300) {
        let c = ctx(p);
        let thetas = draw_samples(&SamplePlan::new(seed, 4, Rational::from(-20), Rational::from(20)), &c).unwrap();
        for t in thetas {
            let dev = c.sub(&unit_exp(&t, &c).abs(&c), &c.int(1)).abs();
            prop_assert!(c.le(&dev, &c.pow2(4 - p as i32)));
        }
    }

    #[test]
    fn cot_times_tan_is_one(seed in any::<u64>()) {
        let c = ctx(128);
        let plan = SamplePlan::new(seed, 8, Rational::from(-3), Rational::from(3)).excluding_poles(2, &Rational::one());
        for t in draw_samples(&plan, &c).unwrap() {
            let tan = c.div(&c.sin(&t), &c.cos(&t));
            let prod = c.mul(&cot_mp(&t, &c).unwrap(), &tan);
            prop_assert!(c.le(&c.sub(&prod, &c.int(1)).abs(), &c.tolerance(1)));
        }
    }

    #[test]
    fn cot_is_periodic(seed in any::<u64>()) {
        let c = ctx(160);
        let plan = SamplePlan::new(seed, 6, Rational::zero(), Rational::one()).excluding_poles(1, &Rational::one());
        let two_pi = c.mul(&c.int(2), &c.pi());
        for t in draw_samples(&plan, &c).unwrap() {
            let shifted = cot_mp(&c.add(&t, &two_pi), &c).unwrap();
            let d = c.sub(&shifted, &cot_mp(&t, &c).unwrap()).abs();
            prop_assert!(c.le(&d, &c.tolerance(1)));
        }
    }

    #[test]
    fn samples_are_admissible_and_deterministic(seed in any::<u64>(), n in 1u64..12) {
        let c = ctx(96);
        let plan = SamplePlan::new(seed, 16, Rational::zero(), Rational::one()).excluding_poles(n, &Rational::one());
        let a = draw_samples(&plan, &c).unwrap();
        prop_assert_eq!(&a, &draw_samples(&plan, &c).unwrap());
        let pi = c.pi();
        for x in &a {
            for k in 1..=n as i64 {
                let d = c.distance_to_multiple(x, &c.div(&pi, &c.int(k)));
                prop_assert!(c.le(c.pole_margin(), &d));
            }
        }
    }
}

#[test]
fn residuals_shrink_with_precision() {
    for p in [96usize, 128, 192] {
        let lo = ctx(p);
        let hi = ctx(2 * p);
        let plan = SamplePlan::new(p as u64, 5, Rational::zero(), Rational::one()).excluding_poles(9, &Rational::one());
        for x in draw_samples(&plan, &lo).unwrap() {
            let r_lo = lo.sub(&trig_sum_numeric(9, &x, &lo).unwrap(), &lo.int(-4)).abs();
            let r_hi = hi.sub(&trig_sum_numeric(9, &x, &hi).unwrap(), &hi.int(-4)).abs();
            if r_lo.is_zero() {
                assert!(hi.le(&r_hi, &hi.tolerance(9)));
            } else {
                assert!(hi.le(&hi.mul(&r_hi, &hi.pow2(p as i32 / 2)), &r_lo), "P = {p}");
            }
        }
    }
}

#[test]
fn sampler_reports_dense_exclusions() {
    let c = ctx(64).with_pole_margin(ctx(64).int(1)).unwrap();
    let plan = SamplePlan::new(1, 3, Rational::zero(), Rational::one()).excluding_poles(8, &Rational::one());
    let err = draw_samples(&plan, &c).unwrap_err();
    assert!(err.to_string().contains("too dense"), "{err}");
}
