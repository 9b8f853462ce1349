//! Parameter grids.

use cyclident::cyclotomic::is_primitive_exponent;
use cyclident::numeric::{draw_samples, BigFloat, PrecisionContext, SamplePlan};
use cyclident::ratpoly::Rational;
use cyclident::{Error, IdentityId, Result};

use crate::eval::{accepted, root_order, IntParams, PARAM_NAMES};

/// Values a swept parameter takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeSpec {
    Values(Vec<i64>),
    /// Every admissible root exponent for the cell's order, optionally capped.
    AllExponents(Option<usize>),
}

/// Parses `name=min:max[:step]`, `name=v1,v2,...` or `root-exp=all[:cap]`.
pub fn parse_range(s: &str) -> Result<(String, RangeSpec)> {
    let bad = |why: &str| Error::Parse(format!("range '{s}': {why}"));
    let (name, body) = s.split_once('=').ok_or_else(|| bad("expected name=values"))?;
    let name = name.trim().replace('-', "_");
    if !PARAM_NAMES.contains(&name.as_str()) {
        return Err(bad("unknown parameter"));
    }
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad("not an integer"));
    let body = body.trim();
    if let Some(rest) = body.strip_prefix("all") {
        if name != "root_exp" {
            return Err(bad("'all' applies to root-exp only"));
        }
        let cap = match rest.strip_prefix(':') {
            Some(c) => Some(c.trim().parse::<usize>().map_err(|_| bad("bad cap"))?),
            None if rest.is_empty() => None,
            None => return Err(bad("expected all or all:cap")),
        };
        return Ok((name, RangeSpec::AllExponents(cap)));
    }
    let values = if body.contains(':') {
        let parts: Vec<&str> = body.split(':').collect();
        let (lo, hi, step) = match parts.as_slice() {
            [lo, hi] => (int(lo)?, int(hi)?, 1),
            [lo, hi, step] => (int(lo)?, int(hi)?, int(step)?),
            _ => return Err(bad("expected min:max[:step]")),
        };
        if step <= 0 {
            return Err(bad("step must be positive"));
        }
        (lo..=hi).step_by(step as usize).collect()
    } else {
        body.split(',').map(int).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(bad("empty range"));
    }
    Ok((name, RangeSpec::Values(values)))
}

/// One grid cell: integer parameters plus an optional numeric angle.
#[derive(Debug, Clone)]
pub struct Cell {
    pub params: IntParams,
    pub angle: Option<BigFloat>,
}

fn exponents(id: IdentityId, order: i64, cap: Option<usize>) -> Vec<i64> {
    if order <= 0 {
        return Vec::new();
    }
    let all = (1..order.max(2)).filter(|&a| {
        // eq14, cos_sum and sine_ratio admit non-primitive roots.
        matches!(id, IdentityId::Eq14 | IdentityId::CosSum | IdentityId::SineRatio)
            || is_primitive_exponent(order as usize, a)
    });
    all.take(cap.unwrap_or(usize::MAX)).collect()
}

/// Cartesian product in canonical parameter order; `root-exp=all` is
/// expanded per cell once the order is known.
pub fn integer_grid(id: IdentityId, fixed: &IntParams, ranges: &[(String, RangeSpec)]) -> Result<Vec<IntParams>> {
    let mut cells = vec![*fixed];
    let mut all_exponents = None;
    for name in PARAM_NAMES {
        let Some((_, spec)) = ranges.iter().rev().find(|(n, _)| n == name) else {
            continue;
        };
        match spec {
            RangeSpec::Values(vs) => {
                cells = cells
                    .into_iter()
                    .flat_map(|c| {
                        vs.iter().map(move |&v| {
                            let mut c = c;
                            c.set(name, v);
                            c
                        })
                    })
                    .collect();
            }
            RangeSpec::AllExponents(cap) => all_exponents = Some(*cap),
        }
    }
    if let Some(cap) = all_exponents {
        let mut out = Vec::new();
        for c in cells {
            let order = root_order(id, &c).ok_or_else(|| {
                Error::InvalidParameter(format!("root-exp=all needs the root order of {id} to be determined"))
            })?;
            for a in exponents(id, order, cap) {
                let mut c = c;
                c.set("root_exp", a);
                out.push(c);
            }
        }
        cells = out;
    }
    let (names, _) = accepted(id);
    for (name, _) in ranges {
        if !names.contains(&name.as_str()) {
            return Err(Error::InvalidParameter(format!("{id} does not take --{}", name.replace('_', "-"))));
        }
    }
    Ok(cells)
}

/// Sampling domain for numeric cells, in units of `π`, and the period of
/// the excluded points (if any).
fn numeric_domain(id: IdentityId) -> (Rational, Rational, Option<Rational>) {
    match id {
        IdentityId::Eq14 | IdentityId::Eq22 => (Rational::zero(), Rational::from(2), Some(Rational::from(2))),
        IdentityId::CosSum => (Rational::zero(), Rational::from(2), None),
        _ => (Rational::zero(), Rational::one(), Some(Rational::one())),
    }
}

/// Seeded admissible angles for one cell.
pub fn sample_angles(id: IdentityId, n: i64, seed: u64, count: usize, ctx: &PrecisionContext) -> Result<Vec<BigFloat>> {
    let (lo, hi, period) = numeric_domain(id);
    let salt = (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut plan = SamplePlan::new(seed ^ salt, count, lo, hi);
    if let Some(period) = period {
        plan = plan.excluding_poles(n.max(1) as u64, &period);
    }
    draw_samples(&plan, ctx)
}
