//! Maps command-line parameters onto the core verifiers.

use cyclident::numeric::BigFloat;
use cyclident::identities::{
    eq13_order, verify_bernoulli_expanded, verify_bernoulli_identity, verify_cos_sum, verify_eq11, verify_eq12,
    verify_eq13, verify_eq14_exact, verify_eq14_numeric, verify_eq17, verify_eq18, verify_eq22_decomposition,
    verify_lemma21, verify_sine_ratio, verify_trig_identity, EvalPoint,
};
use cyclident::numeric::PrecisionContext;
use cyclident::ratpoly::Rational;
use cyclident::{Error, IdentityId, IdentityReport, Mode, Result};

/// Integer parameter names in canonical order.
pub const PARAM_NAMES: [&str; 6] = ["l", "m", "n", "delta", "order", "root_exp"];

/// Integer parameters of one evaluation, indexed like `PARAM_NAMES`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntParams(pub [Option<i64>; 6]);

impl IntParams {
    pub fn get(&self, name: &str) -> Option<i64> {
        self.0[index(name)]
    }

    pub fn set(&mut self, name: &str, v: i64) {
        self.0[index(name)] = Some(v);
    }

    fn require(&self, id: IdentityId, name: &str) -> Result<i64> {
        self.get(name).ok_or_else(|| Error::InvalidParameter(format!("{id} requires --{}", flag(name))))
    }

    fn root_exp(&self) -> i64 {
        self.get("root_exp").unwrap_or(1)
    }
}

fn index(name: &str) -> usize {
    PARAM_NAMES.iter().position(|&p| p == name).unwrap_or_else(|| panic!("unknown parameter {name}"))
}

pub fn flag(name: &str) -> String {
    name.replace('_', "-")
}

/// Integer parameters an identity accepts, and whether it takes an angle.
pub fn accepted(id: IdentityId) -> (&'static [&'static str], bool) {
    use IdentityId::*;
    match id {
        Eq11 | Eq12 | Eq18 => (&["n", "root_exp"], false),
        Eq13 => (&["m", "n", "delta", "root_exp"], false),
        Eq14 | CosSum | SineRatio => (&["n", "order", "root_exp"], true),
        Eq15 | Eq22 => (&["n"], true),
        Eq16 | Cor11Expanded => (&["n", "m"], false),
        Eq17 => (&["l", "m", "n", "root_exp"], false),
        Lemma21 => (&["n"], false),
    }
}

pub fn check_accepted(id: IdentityId, p: &IntParams, has_angle: bool) -> Result<()> {
    let (names, angle) = accepted(id);
    for (name, v) in PARAM_NAMES.iter().zip(p.0) {
        if v.is_some() && !names.contains(name) {
            return Err(Error::InvalidParameter(format!("{id} does not take --{}", flag(name))));
        }
    }
    if has_angle && !angle {
        return Err(Error::InvalidParameter(format!("{id} does not take --theta")));
    }
    Ok(())
}

/// Root order of the exact evaluation, when it is determined by the parameters.
pub fn root_order(id: IdentityId, p: &IntParams) -> Option<i64> {
    use IdentityId::*;
    let g = |name| p.get(name);
    match id {
        Eq11 => Some(3 * g("n")? + 2),
        Eq12 | Eq18 => Some(6 * g("n")? + 4),
        Eq13 => Some(eq13_order(g("m")?, g("n")?, g("delta")?)),
        Eq17 => Some(g("m")? * g("n")? + g("l")?),
        Eq14 | CosSum | SineRatio => g("order"),
        _ => None,
    }
}

/// Angle matching the exact root `ζ_N^a` for identities with both modes:
/// `θ = 2πa/N` for eq14, `θ = 4πa/N` for cos_sum (so `θ/2 = 2πa/N`) and
/// `x = 2πa/N` for sine_ratio.
pub fn angle_for_root(id: IdentityId, order: i64, a: i64, ctx: &PrecisionContext) -> Result<BigFloat> {
    if order <= 0 {
        return Err(Error::InvalidParameter(format!("root order must be positive, got {order}")));
    }
    let factor = if id == IdentityId::CosSum { 4 } else { 2 };
    let r = Rational::new(factor * a, order)?;
    Ok(ctx.mul(&ctx.rational(&r), &ctx.pi()))
}

fn order_usize(id: IdentityId, p: &IntParams) -> Result<usize> {
    let order = p.require(id, "order")?;
    usize::try_from(order)
        .ok()
        .filter(|&o| o > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("root order must be positive, got {order}")))
}

pub fn evaluate(id: IdentityId, mode: Mode, p: &IntParams, angle: Option<&BigFloat>, ctx: &PrecisionContext) -> Result<IdentityReport> {
    use IdentityId::*;
    if !id.supports(mode) {
        return Err(Error::InvalidParameter(format!("{id} has no {mode} mode")));
    }
    let n = p.require(id, "n")?;
    let a = p.root_exp();
    let numeric_angle = || -> Result<BigFloat> {
        if let Some(t) = angle {
            return Ok(t.clone());
        }
        match (p.get("order"), p.get("root_exp")) {
            (Some(order), Some(a)) => angle_for_root(id, order, a, ctx),
            _ => Err(Error::InvalidParameter(format!("{id} in numeric mode requires --theta or --order with --root-exp"))),
        }
    };
    match (id, mode) {
        (Eq11, _) => verify_eq11(n, a),
        (Eq12, _) => verify_eq12(n, a),
        (Eq13, _) => verify_eq13(p.require(id, "m")?, n, p.require(id, "delta")?, a),
        (Eq14, Mode::Exact) => verify_eq14_exact(n, order_usize(id, p)?, a),
        (Eq14, Mode::Numeric) => verify_eq14_numeric(n, &numeric_angle()?, ctx),
        (Eq15, _) => verify_trig_identity(n, &numeric_angle()?, ctx),
        (Eq16, _) => verify_bernoulli_identity(n, p.require(id, "m")?),
        (Eq17, _) => verify_eq17(p.require(id, "l")?, p.require(id, "m")?, n, a),
        (Eq18, _) => verify_eq18(n, a),
        (Lemma21, _) => verify_lemma21(n),
        (Eq22, _) => verify_eq22_decomposition(n, &numeric_angle()?, ctx),
        (CosSum | SineRatio, Mode::Exact) => {
            let point = EvalPoint::Root { order: order_usize(id, p)?, exp: a };
            if id == CosSum {
                verify_cos_sum(n, &point, ctx)
            } else {
                verify_sine_ratio(n, &point, ctx)
            }
        }
        (CosSum | SineRatio, Mode::Numeric) => {
            let point = EvalPoint::Angle(numeric_angle()?);
            if id == CosSum {
                verify_cos_sum(n, &point, ctx)
            } else {
                verify_sine_ratio(n, &point, ctx)
            }
        }
        (Cor11Expanded, _) => verify_bernoulli_expanded(n, p.require(id, "m")?),
    }
}
