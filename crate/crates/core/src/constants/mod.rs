//! Special constants: π, ln 2, Catalan's constant, Dirichlet β and η, and the
//! inverse tangent integral `Ti_m`.
//!
//! β, η and `Ti_m` are summed with the alternating-series accelerator in
//! [`accel`]. Odd β values are additionally checked against the Euler-number
//! closed form in [`euler`]; a disagreement beyond the combined bounds is an
//! error, never a silent fallback.

pub mod accel;
pub mod euler;

pub use euler::{beta_odd_closed_form, beta_odd_pi_coefficient, euler_number, EULER_INDEX_LIMIT};

use crate::error::{Error, Result};
use crate::precision::{BoundedValue, PrecisionContext, Rigor};
use crate::real::Real;

/// Extra bits carried inside the accelerated sums.
const SUM_GUARD_BITS: usize = 24;

fn sum_bits(ctx: &PrecisionContext) -> usize {
    ctx.working_bits() + SUM_GUARD_BITS
}

fn finish(v: BoundedValue, ctx: &PrecisionContext) -> BoundedValue {
    let value = v.value.with_precision(ctx.working_bits());
    let extra = crate::real::abs_diff(&value, &v.value);
    BoundedValue::new(value, &v.abs_error_bound + &extra, v.rigor)
}

pub fn pi(ctx: &PrecisionContext) -> BoundedValue {
    let p = Real::pi(ctx.working_bits());
    let ulp = p.ulp();
    BoundedValue::new(p, ulp, Rigor::Rigorous)
}

pub fn ln2(ctx: &PrecisionContext) -> BoundedValue {
    let v = Real::ln2(ctx.working_bits());
    let ulp = v.ulp();
    BoundedValue::new(v, ulp, Rigor::Rigorous)
}

/// `Σ (-1)^(k-1) / (2k-1)^m` by acceleration, without the closed-form check.
pub fn beta_series(m: u32, ctx: &PrecisionContext) -> Result<BoundedValue> {
    if m == 0 {
        return Err(Error::Domain("beta(0) diverges".into()));
    }
    let bits = sum_bits(ctx);
    let n = accel::terms_for_bits(bits);
    let v = accel::alternating_sum(
        |k| Real::from_u64(2 * k as u64 + 1, bits).powi(m).recip(),
        &Real::one(bits),
        n,
        bits,
    );
    Ok(finish(v, ctx))
}

/// Dirichlet beta `β(m) = Σ_{k≥1} (-1)^(k-1)/(2k-1)^m`.
///
/// For odd `m` the accelerated value is compared with the Euler-number
/// closed form and an error is returned if the two disagree.
pub fn beta(m: u32, ctx: &PrecisionContext) -> Result<BoundedValue> {
    let series = beta_series(m, ctx)?;
    if m % 2 == 1 {
        let closed = beta_odd_closed_form(m, ctx)?;
        if !series.agrees_with(&closed) {
            return Err(Error::CrossCheck(format!(
                "beta({m}): series {} vs closed form {}",
                series.to_sci_string(ctx.digits() as usize + 5),
                closed.to_sci_string(ctx.digits() as usize + 5)
            )));
        }
    }
    Ok(series)
}

/// Catalan's constant `G = β(2)`.
pub fn catalan(ctx: &PrecisionContext) -> Result<BoundedValue> {
    beta(2, ctx)
}

/// Dirichlet eta `η(s) = Σ_{k≥1} (-1)^(k-1)/k^s`.
pub fn eta(s: u32, ctx: &PrecisionContext) -> Result<BoundedValue> {
    if s == 0 {
        return Err(Error::Domain("eta(0) is not a convergent series".into()));
    }
    let bits = sum_bits(ctx);
    let n = accel::terms_for_bits(bits);
    let v = accel::alternating_sum(
        |k| Real::from_u64(k as u64 + 1, bits).powi(s).recip(),
        &Real::one(bits),
        n,
        bits,
    );
    Ok(finish(v, ctx))
}

/// Inverse tangent integral `Ti_m(x) = Σ_{k≥1} (-1)^(k-1) x^(2k-1)/(2k-1)^m`
/// for `|x| ≤ 1`.
pub fn ti(m: u32, x: &Real, ctx: &PrecisionContext) -> Result<BoundedValue> {
    if m == 0 {
        return Err(Error::Domain("Ti_0 is not defined here; order must be positive".into()));
    }
    if x.is_nan() || x.abs() > Real::one(64) {
        return Err(Error::Domain(format!("Ti_{m}(x) requires |x| <= 1, got {x:?}")));
    }
    if x.is_zero() {
        return Ok(BoundedValue::exact(Real::zero(ctx.working_bits())));
    }
    let bits = sum_bits(ctx);
    let ax = x.abs().with_precision(bits);
    let v = if ax <= Real::one(64).ldexp(-1) {
        ti_direct(m, &ax, bits)
    } else {
        let x2 = &ax * &ax;
        let mut power = ax.clone();
        let mut next_index = 0usize;
        let n = accel::terms_for_bits(bits);
        accel::alternating_sum(
            |k| {
                debug_assert_eq!(k, next_index);
                let t = &power / &Real::from_u64(2 * k as u64 + 1, bits).powi(m);
                power = &power * &x2;
                next_index += 1;
                t
            },
            &ax,
            n,
            bits,
        )
    };
    let v = finish(v, ctx);
    Ok(if x.is_negative() { v.neg() } else { v })
}

/// Plain summation for `0 < x ≤ 1/2`; the alternating tail is bounded by the
/// first omitted term.
fn ti_direct(m: u32, x: &Real, bits: usize) -> BoundedValue {
    let x2 = x * x;
    let stop = Real::one(64).ldexp(-(bits as i32) - 2);
    let mut power = x.clone();
    let mut sum = Real::zero(bits);
    let mut k = 0u64;
    loop {
        let t = &power / &Real::from_u64(2 * k + 1, bits).powi(m);
        if t.abs() < stop {
            let rounding = Real::one(64).ldexp(-(bits as i32)).mul_i64(2 * k as i64 + 2);
            return BoundedValue::new(sum, &t.abs() + &rounding, Rigor::Rigorous);
        }
        sum = if k.is_multiple_of(2) { &sum + &t } else { &sum - &t };
        power = &power * &x2;
        k += 1;
    }
}

/// `β(1), …, β(max_order)` at one context.
#[derive(Debug, Clone)]
pub struct BetaTable {
    values: Vec<BoundedValue>,
    context: PrecisionContext,
}

impl BetaTable {
    pub fn new(max_order: u32, ctx: &PrecisionContext) -> Result<Self> {
        if max_order == 0 {
            return Err(Error::Domain("beta table needs at least one order".into()));
        }
        let values = (1..=max_order).map(|m| beta(m, ctx)).collect::<Result<Vec<_>>>()?;
        Ok(BetaTable { values, context: ctx.clone() })
    }

    pub fn max_order(&self) -> u32 {
        self.values.len() as u32
    }

    /// `β(m)`, 1-based.
    pub fn get(&self, m: u32) -> Option<&BoundedValue> {
        if m == 0 {
            None
        } else {
            self.values.get(m as usize - 1)
        }
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.context
    }
}
