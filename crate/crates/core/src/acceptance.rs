//! The acceptance suite: ten fixed grids, each with a runtime budget.
//!
//! Shared by the `acceptance` integration test and `cyclident selftest`.
//! A criterion passes when every case passes and the grid finishes inside
//! its budget.

use std::fmt;
use std::time::{Duration, Instant};

use astro_float::BigFloat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::{is_primitive_exponent, multiplicative_order};
use crate::identities::{
    eq14_sum_exact, eq14_sum_numeric, verify_bernoulli_expanded, verify_bernoulli_identity, verify_cos_sum,
    verify_eq11, verify_eq12, verify_eq13, verify_eq14_exact, verify_eq17, verify_eq18, verify_lemma21,
    verify_sine_ratio, verify_trig_identity, EvalPoint,
};
use crate::numeric::{draw_samples, PrecisionContext, SamplePlan};
use crate::ratpoly::Rational;
use crate::report::{IdentityReport, Status};
use crate::Result;

/// Precision for every numeric criterion.
pub const ACCEPTANCE_PRECISION_BITS: usize = 192;
pub const DEFAULT_SEED: u64 = 0x5EED_2024;
const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct AcceptanceConfig {
    pub seed: u64,
    /// When false, budgets are reported but do not affect the verdict.
    pub enforce_budgets: bool,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { seed: DEFAULT_SEED, enforce_budgets: true }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub budget: Duration,
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "eq14 exact, odd n <= 15, N <= 48", budget: Duration::from_secs(60) },
    Criterion { number: 2, title: "eq15 numeric, odd n <= 25, 100 samples at 192 bits", budget: Duration::from_secs(60) },
    Criterion { number: 3, title: "lemma21 formal zero, n <= 200", budget: Duration::from_secs(10) },
    Criterion { number: 4, title: "eq16 and cor11_expanded, odd n <= 49, m <= 10", budget: Duration::from_secs(120) },
    Criterion { number: 5, title: "eq17 with sign reduction, l, m <= 6, odd n <= 9", budget: Duration::from_secs(120) },
    Criterion { number: 6, title: "eq11 and eq12 full equality, n <= 12", budget: Duration::from_secs(30) },
    Criterion { number: 7, title: "eq13 real part, m, n <= 8, delta in {0, 1}", budget: Duration::from_secs(60) },
    Criterion { number: 8, title: "eq18 real part, n <= 12, imag witness at n = 0", budget: Duration::from_secs(30) },
    Criterion { number: 9, title: "eq14 exact vs 192-bit numeric, 50 instances", budget: Duration::from_secs(30) },
    Criterion { number: 10, title: "cos_sum and sine_ratio, exact and numeric", budget: Duration::from_secs(60) },
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub number: u8,
    pub title: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
    pub within_budget: bool,
    pub ok: bool,
    pub witnesses: Vec<String>,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({} cases, {} passed, {} failed, {} inapplicable, {} ms of {} ms)",
            self.number,
            if self.ok { "PASS" } else { "FAIL" },
            self.title,
            self.cases,
            self.passed,
            self.failed,
            self.inapplicable,
            self.elapsed_ms,
            self.budget_ms
        )?;
        for w in &self.witnesses {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Scorecard {
    pub seed: u64,
    pub passed: usize,
    pub total: usize,
    pub criteria: Vec<CriterionOutcome>,
}

impl Scorecard {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scorecard serializes")
    }
}

impl fmt::Display for Scorecard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        write!(f, "{}/{} criteria passed", self.passed, self.total)
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    passed: usize,
    failed: usize,
    inapplicable: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn witness(&mut self, w: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.witness(witness());
        }
    }

    /// Grid cells satisfy the hypotheses by construction, so an
    /// inapplicable report counts as a failure.
    fn record(&mut self, outcome: Result<IdentityReport>) -> Option<IdentityReport> {
        match outcome {
            Ok(r) => {
                self.check(r.passed(), || r.to_human());
                Some(r)
            }
            Err(e) => {
                self.check(false, || format!("error: {e}"));
                None
            }
        }
    }

    /// Like `record`, but inapplicable cells are skipped and counted.
    fn record_lenient(&mut self, outcome: Result<IdentityReport>) {
        match outcome {
            Ok(r) if r.status == Status::Inapplicable => {
                self.cases += 1;
                self.inapplicable += 1;
            }
            other => {
                self.record(other);
            }
        }
    }
}

fn ctx() -> PrecisionContext {
    PrecisionContext::new(ACCEPTANCE_PRECISION_BITS).expect("acceptance precision is valid")
}

fn odd_upto(max: i64) -> impl Iterator<Item = i64> {
    (1..=max).step_by(2)
}

/// The first `cap` primitive exponents `a ≥ 1` (just `a = 1` when `N = 1`).
fn primitive_exponents(order: usize, cap: usize) -> Vec<i64> {
    (1..order.max(2) as i64)
        .filter(|&a| is_primitive_exponent(order, a))
        .take(cap)
        .collect()
}

fn derive_seed(base: u64, salt: u64) -> u64 {
    base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn criterion_1(t: &mut Tally, _: &AcceptanceConfig) {
    for n in odd_upto(15) {
        for order in (n as usize + 1)..=48 {
            let exps = (1..order as i64).filter(|&a| multiplicative_order(order, a) as i64 > n).take(10);
            for a in exps {
                t.record(verify_eq14_exact(n, order, a));
            }
        }
    }
}

fn criterion_2(t: &mut Tally, cfg: &AcceptanceConfig) {
    let ctx = ctx();
    for n in odd_upto(25) {
        let plan = SamplePlan::new(derive_seed(cfg.seed, n as u64), 100, Rational::zero(), Rational::one())
            .excluding_poles(n as u64, &Rational::one());
        match draw_samples(&plan, &ctx) {
            Ok(xs) => {
                for x in xs {
                    t.record(verify_trig_identity(n, &x, &ctx));
                }
            }
            Err(e) => t.check(false, || format!("n = {n}: sampling failed: {e}")),
        }
    }
}

fn criterion_3(t: &mut Tally, _: &AcceptanceConfig) {
    for n in 1..=200 {
        t.record(verify_lemma21(n));
    }
}

fn criterion_4(t: &mut Tally, _: &AcceptanceConfig) {
    for n in odd_upto(49) {
        for m in 1..=10 {
            t.record(verify_bernoulli_identity(n, m));
            t.record(verify_bernoulli_expanded(n, m));
        }
    }
}

fn criterion_5(t: &mut Tally, _: &AcceptanceConfig) {
    for l in 1..=6i64 {
        for m in (1..=6i64).filter(|m| (l - m) % 2 == 0) {
            for n in odd_upto(9) {
                for a in primitive_exponents((m * n + l) as usize, 8) {
                    t.record(verify_eq17(l, m, n, a));
                }
            }
        }
    }
}

fn criterion_6(t: &mut Tally, _: &AcceptanceConfig) {
    for n in 1..=12i64 {
        for a in primitive_exponents((3 * n + 2) as usize, 8) {
            t.record(verify_eq11(n, a));
        }
        for a in primitive_exponents((6 * n + 4) as usize, 8) {
            t.record(verify_eq12(n, a));
        }
    }
}

fn criterion_7(t: &mut Tally, _: &AcceptanceConfig) {
    for m in 2..=8i64 {
        for n in 2..=8i64 {
            for delta in 0..=1 {
                let order = crate::identities::eq13_order(m, n, delta) as usize;
                for a in primitive_exponents(order, 6) {
                    t.record(verify_eq13(m, n, delta, a));
                }
            }
        }
    }
}

fn criterion_8(t: &mut Tally, _: &AcceptanceConfig) {
    for n in 0..=12i64 {
        for a in primitive_exponents((6 * n + 4) as usize, 8) {
            let report = t.record(verify_eq18(n, a));
            if n == 0 && a == 1 {
                let imag = report.and_then(|r| r.computed_imag);
                t.check(imag.as_deref() == Some("1/2"), || format!("n = 0, a = 1: imaginary part {imag:?}, expected 1/2"));
            }
        }
    }
}

fn criterion_9(t: &mut Tally, cfg: &AcceptanceConfig) {
    let ctx = ctx();
    let bound = ctx.pow2(-176);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 9));
    let mut instances = 0;
    while instances < 50 {
        let n = 2 * rng.gen_range(0..8i64) + 1;
        let order = rng.gen_range(n as usize + 1..=48);
        let a = rng.gen_range(1..order as i64);
        if multiplicative_order(order, a) as i64 <= n {
            continue;
        }
        instances += 1;
        let exact = eq14_sum_exact(n, order, a).map(|s| s.doubled_real_part().as_rational());
        let theta = ctx.mul(&ctx.rational(&Rational::new(2 * a, order as i64).expect("order > 0")), &ctx.pi());
        let numeric = eq14_sum_numeric(n, &theta, &ctx);
        match (exact, numeric) {
            (Ok(Some(doubled)), Ok(s)) => {
                let re = &doubled * &Rational::new(1, 2).expect("nonzero");
                let residual: BigFloat = ctx.sub(&s.re, &ctx.rational(&re)).abs();
                t.check(ctx.le(&residual, &bound), || {
                    format!("n = {n}, N = {order}, a = {a}: exact {re}, residual {}", ctx.to_decimal(&residual))
                });
            }
            (exact, numeric) => t.check(false, || {
                format!("n = {n}, N = {order}, a = {a}: exact {exact:?}, numeric ok = {}", numeric.is_ok())
            }),
        }
    }
}

fn criterion_10(t: &mut Tally, cfg: &AcceptanceConfig) {
    let ctx = ctx();
    for n in odd_upto(15) {
        for order in 1..=40usize {
            for a in primitive_exponents(order, 4) {
                let point = EvalPoint::Root { order, exp: a };
                t.record(verify_cos_sum(n, &point, &ctx));
                t.record_lenient(verify_sine_ratio(n, &point, &ctx));
            }
        }
        let seed = derive_seed(cfg.seed, 1000 + n as u64);
        let thetas = draw_samples(&SamplePlan::new(seed, 50, Rational::zero(), Rational::from(2)), &ctx);
        let xs = draw_samples(
            &SamplePlan::new(seed ^ 1, 50, Rational::zero(), Rational::one()).excluding_poles(n as u64, &Rational::one()),
            &ctx,
        );
        match (thetas, xs) {
            (Ok(thetas), Ok(xs)) => {
                for theta in thetas {
                    t.record(verify_cos_sum(n, &EvalPoint::Angle(theta), &ctx));
                }
                for x in xs {
                    t.record(verify_sine_ratio(n, &EvalPoint::Angle(x), &ctx));
                }
            }
            (a, b) => t.check(false, || format!("n = {n}: sampling failed: {:?} {:?}", a.err(), b.err())),
        }
    }
}

/// Runs one criterion by number (1 to 10).
pub fn run_criterion(number: u8, cfg: &AcceptanceConfig) -> Option<CriterionOutcome> {
    let criterion = CRITERIA.iter().find(|c| c.number == number)?;
    let run: fn(&mut Tally, &AcceptanceConfig) = match number {
        1 => criterion_1,
        2 => criterion_2,
        3 => criterion_3,
        4 => criterion_4,
        5 => criterion_5,
        6 => criterion_6,
        7 => criterion_7,
        8 => criterion_8,
        9 => criterion_9,
        10 => criterion_10,
        _ => return None,
    };
    let start = Instant::now();
    let mut tally = Tally::default();
    run(&mut tally, cfg);
    let elapsed = start.elapsed();
    let within_budget = elapsed <= criterion.budget;
    Some(CriterionOutcome {
        number,
        title: criterion.title,
        cases: tally.cases,
        passed: tally.passed,
        failed: tally.failed,
        inapplicable: tally.inapplicable,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: criterion.budget.as_millis(),
        within_budget,
        ok: tally.failed == 0 && tally.passed > 0 && (within_budget || !cfg.enforce_budgets),
        witnesses: tally.witnesses,
    })
}

pub fn run_all(cfg: &AcceptanceConfig) -> Scorecard {
    let criteria: Vec<CriterionOutcome> =
        CRITERIA.iter().filter_map(|c| run_criterion(c.number, cfg)).collect();
    Scorecard {
        seed: cfg.seed,
        passed: criteria.iter().filter(|c| c.ok).count(),
        total: criteria.len(),
        criteria,
    }
}
