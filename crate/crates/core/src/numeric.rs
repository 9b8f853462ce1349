//! Multiprecision kernels for the numeric verification mode.
//!
//! Values are [`BigFloat`]s. A [`PrecisionContext`] fixes the reported
//! precision `P`; kernels evaluate at `P + GUARD_BITS` so that the residual
//! of a true identity is dominated by rounding at `P`, even next to the pole
//! margin where `cot` amplifies input error by up to `1/margin²`.

use std::cell::RefCell;
use std::collections::BTreeSet;

pub use astro_float::BigFloat;
use astro_float::{Consts, Radix, RoundingMode};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CyclotomicElement;
use crate::ratpoly::Rational;
use crate::{Error, Result};

pub const GUARD_BITS: usize = 64;
pub const MIN_PRECISION_BITS: usize = 64;
/// Default pole margin is `π / 2^16`.
pub const POLE_MARGIN_LOG2: i32 = -16;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Debug, Clone)]
pub struct PrecisionContext {
    precision_bits: usize,
    pole_margin: BigFloat,
}

impl PrecisionContext {
    pub fn new(precision_bits: usize) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::PrecisionTooLow(precision_bits));
        }
        let mut ctx = PrecisionContext { precision_bits, pole_margin: BigFloat::from_i64(0, 64) };
        ctx.pole_margin = ctx.mul(&ctx.pi(), &ctx.pow2(POLE_MARGIN_LOG2));
        Ok(ctx)
    }

    pub fn with_pole_margin(mut self, margin: BigFloat) -> Result<Self> {
        if !margin.is_positive() {
            return Err(Error::InvalidParameter("pole margin must be positive".into()));
        }
        self.pole_margin = margin;
        Ok(self)
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn working_bits(&self) -> usize {
        self.precision_bits + GUARD_BITS
    }

    pub fn pole_margin(&self) -> &BigFloat {
        &self.pole_margin
    }

    /// `n² · 2^{-(P-16)}`: the pass threshold for an `n`-term numeric sum.
    pub fn tolerance(&self, n: u64) -> BigFloat {
        let n = self.int(n as i64);
        self.mul(&self.mul(&n, &n), &self.pow2(16 - self.precision_bits as i32))
    }

    pub fn pi(&self) -> BigFloat {
        with_consts(|cc| cc.pi(self.working_bits(), RM))
    }

    pub fn int(&self, i: i64) -> BigFloat {
        BigFloat::from_i64(i, self.working_bits())
    }

    pub fn pow2(&self, e: i32) -> BigFloat {
        let mut x = BigFloat::from_i64(1, self.working_bits());
        x.set_exponent(e + 1);
        x
    }

    pub fn rational(&self, r: &Rational) -> BigFloat {
        let conv = |i: &num_bigint::BigInt| match i.to_i64() {
            Some(v) => self.int(v),
            None => self.parse_decimal(&i.to_string()).expect("integer literal parses"),
        };
        self.div(&conv(r.numer()), &conv(r.denom()))
    }

    fn parse_decimal(&self, s: &str) -> Result<BigFloat> {
        let x = with_consts(|cc| BigFloat::parse(s, Radix::Dec, self.working_bits(), RM, cc));
        if x.is_nan() || x.is_inf() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(x)
    }

    /// Parses a decimal literal, or a rational multiple of π written with a
    /// `pi` suffix (`"2/7pi"`, `"-1pi"`). The value is rounded to `P` bits so
    /// every kernel sees the same exactly representable input.
    pub fn parse_real(&self, s: &str) -> Result<BigFloat> {
        let s = s.trim();
        let x = if let Some(mult) = s.strip_suffix("pi") {
            let mult = mult.trim().trim_end_matches('*');
            let r: Rational = if mult.is_empty() { Rational::one() } else { mult.parse()? };
            self.mul(&self.rational(&r), &self.pi())
        } else {
            self.parse_decimal(s)?
        };
        Ok(self.round_to_precision(&x))
    }

    /// `r·π` rounded to `P` bits.
    pub fn pi_multiple(&self, r: &Rational) -> BigFloat {
        self.round_to_precision(&self.mul(&self.rational(r), &self.pi()))
    }

    pub fn round_to_precision(&self, x: &BigFloat) -> BigFloat {
        let mut y = x.clone();
        y.set_precision(self.precision_bits, RM).expect("precision is valid");
        y
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.working_bits(), RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.working_bits(), RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.working_bits(), RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.working_bits(), RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.working_bits(), RM)
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.sin(self.working_bits(), RM, cc))
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.cos(self.working_bits(), RM, cc))
    }

    pub fn le(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.cmp(b), Some(c) if c <= 0)
    }

    /// `t - period·round(t/period)`, in `[-period/2, period/2]`.
    pub fn reduce(&self, t: &BigFloat, period: &BigFloat) -> BigFloat {
        let k = self.div(t, period).round(0, RM);
        self.sub(t, &self.mul(&k, period))
    }

    /// Distance from `t` to the nearest integer multiple of `period`.
    pub fn distance_to_multiple(&self, t: &BigFloat, period: &BigFloat) -> BigFloat {
        self.reduce(t, period).abs()
    }

    /// Decimal rendering rounded to the reported precision.
    pub fn to_decimal(&self, x: &BigFloat) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let y = self.round_to_precision(x);
        let raw = with_consts(|cc| y.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string());
        tidy_mantissa(&raw)
    }
}

/// `"7.000e-1"` → `"7e-1"`, `"-1.5e+0"` unchanged: drops trailing zeros and a
/// bare decimal point from the mantissa.
fn tidy_mantissa(s: &str) -> String {
    match s.split_once('e') {
        Some((mant, exp)) if mant.contains('.') => {
            let mant = mant.trim_end_matches('0').trim_end_matches('.');
            format!("{mant}e{exp}")
        }
        _ => s.to_string(),
    }
}

/// Complex number over [`BigFloat`].
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        MpComplex { re: ctx.int(0), im: ctx.int(0) }
    }

    pub fn add(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        MpComplex { re: ctx.add(&self.re, &o.re), im: ctx.add(&self.im, &o.im) }
    }

    pub fn sub(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        MpComplex { re: ctx.sub(&self.re, &o.re), im: ctx.sub(&self.im, &o.im) }
    }

    pub fn mul(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        let re = ctx.sub(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im));
        let im = ctx.add(&ctx.mul(&self.re, &o.im), &ctx.mul(&self.im, &o.re));
        MpComplex { re, im }
    }

    pub fn scale(&self, c: &BigFloat, ctx: &PrecisionContext) -> Self {
        MpComplex { re: ctx.mul(&self.re, c), im: ctx.mul(&self.im, c) }
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self, ctx: &PrecisionContext) -> BigFloat {
        ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im))
    }

    pub fn abs(&self, ctx: &PrecisionContext) -> BigFloat {
        ctx.sqrt(&self.norm_sqr(ctx))
    }

    pub fn div(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        let d = o.norm_sqr(ctx);
        let num = self.mul(&o.conj(), ctx);
        MpComplex { re: ctx.div(&num.re, &d), im: ctx.div(&num.im, &d) }
    }
}

/// `e^{iθ} = cos θ + i sin θ`, after reducing `θ` modulo `2π`.
pub fn unit_exp(theta: &BigFloat, ctx: &PrecisionContext) -> MpComplex {
    let two_pi = ctx.mul(&ctx.int(2), &ctx.pi());
    let t = ctx.reduce(theta, &two_pi);
    MpComplex { re: ctx.cos(&t), im: ctx.sin(&t) }
}

/// `cot t`, refusing arguments within the pole margin of a multiple of `π`.
pub fn cot_mp(t: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
    let r = ctx.reduce(t, &ctx.pi());
    if !ctx.le(ctx.pole_margin(), &r.abs()) {
        return Err(Error::NearPole(format!("cot at {}", ctx.to_decimal(t))));
    }
    Ok(ctx.div(&ctx.cos(&r), &ctx.sin(&r)))
}

/// Value of a cyclotomic element under `ζ_N ↦ e^{2πi/N}`.
pub fn embed_cyclotomic(a: &CyclotomicElement, ctx: &PrecisionContext) -> MpComplex {
    let n = a.order();
    let mut acc = MpComplex::zero(ctx);
    for (j, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let angle = ctx.mul(&ctx.rational(&Rational::new(2 * j as i64, n as i64).unwrap()), &ctx.pi());
        acc = acc.add(&unit_exp(&angle, ctx).scale(&ctx.rational(c), ctx), ctx);
    }
    acc
}

/// Deterministic sampling of admissible points in `[lo·π, hi·π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Interval endpoints in units of `π`.
    pub domain: (Rational, Rational),
    /// Excluded points in units of `π`.
    pub exclusions: Vec<Rational>,
}

impl SamplePlan {
    pub fn new(seed: u64, count: usize, lo: Rational, hi: Rational) -> Self {
        SamplePlan { seed, count, domain: (lo, hi), exclusions: Vec::new() }
    }

    /// Adds the points `m·period/k` (units of `π`) for `k = 1..=n` lying in
    /// or next to the domain.
    pub fn excluding_poles(mut self, n: u64, period: &Rational) -> Self {
        let mut set: BTreeSet<Rational> = self.exclusions.drain(..).collect();
        let (lo, hi) = &self.domain;
        for k in 1..=n as i64 {
            let step = period.checked_div(&Rational::from(k)).expect("k > 0");
            let m_lo = floor_div(&lo.checked_div(&step).expect("nonzero step")) - 1;
            let m_hi = floor_div(&hi.checked_div(&step).expect("nonzero step")) + 1;
            for m in m_lo..=m_hi {
                set.insert(&step * &Rational::from(m));
            }
        }
        self.exclusions = set.into_iter().collect();
        self
    }
}

fn floor_div(r: &Rational) -> i64 {
    r.numer().div_floor(r.denom()).to_i64().expect("small quotient")
}

/// Emits `plan.count` points from a ChaCha8 stream seeded with `plan.seed`,
/// each rounded to `P` bits and at distance at least the pole margin from
/// every exclusion. Rejected draws are discarded; too many rejections is an
/// error.
pub fn draw_samples(plan: &SamplePlan, ctx: &PrecisionContext) -> Result<Vec<BigFloat>> {
    if plan.count == 0 {
        return Err(Error::Sampling("sample count must be at least 1".into()));
    }
    let (lo, hi) = &plan.domain;
    if hi <= lo {
        return Err(Error::Sampling(format!("empty domain [{lo}, {hi}]·π")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let pi = ctx.pi();
    let lo_f = ctx.mul(&ctx.rational(lo), &pi);
    let width = ctx.mul(&ctx.rational(&(hi - lo)), &pi);
    let poles: Vec<BigFloat> = plan.exclusions.iter().map(|e| ctx.mul(&ctx.rational(e), &pi)).collect();
    let two64 = ctx.pow2(64);
    let max_draws = 1000 + 100 * plan.count;
    let mut out = Vec::with_capacity(plan.count);
    let mut draws = 0;
    while out.len() < plan.count {
        if draws == max_draws {
            return Err(Error::Sampling(format!(
                "accepted {} of {} samples after {draws} draws; exclusions too dense for the pole margin",
                out.len(),
                plan.count
            )));
        }
        draws += 1;
        let hi_word = BigFloat::from_u64(rng.next_u64(), ctx.working_bits());
        let lo_word = BigFloat::from_u64(rng.next_u64(), ctx.working_bits());
        // u = (hi_word + lo_word/2^64) / 2^64, uniform in [0, 1)
        let u = ctx.div(&ctx.add(&hi_word, &ctx.div(&lo_word, &two64)), &two64);
        let x = ctx.round_to_precision(&ctx.add(&lo_f, &ctx.mul(&u, &width)));
        let admissible = poles.iter().all(|p| ctx.le(ctx.pole_margin(), &ctx.sub(&x, p).abs()));
        if admissible {
            out.push(x);
        }
    }
    Ok(out)
}
