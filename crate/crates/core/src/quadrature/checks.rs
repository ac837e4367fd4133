//! One check per integral or series identity of the lemmas and the closing
//! section. Each returns a report comparing a numerically computed left side
//! with an independently evaluated right side, at the default tolerance for
//! its identity.

use num_rational::BigRational;

use super::{integrate, Node, QuadratureResult};
use crate::closed_form::{self, ClosedFormExpr};
use crate::constants;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicState;
use crate::precision::{BoundedValue, PrecisionContext, Rigor};
use crate::real::Real;
use crate::report::{default_tolerance, params, Comparison, VerificationReport, Work};

/// Below this distance from `π/2`, `ln(sin x)` is evaluated by series.
const SMALL_U_EXPONENT: i32 = -20;

fn half_pi(ctx: &PrecisionContext) -> Real {
    Real::pi(ctx.working_bits()).ldexp(-1)
}

fn quad<F: FnMut(&Node) -> Real>(f: F, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate(f, &Real::zero(ctx.working_bits()), &half_pi(ctx), ctx)
}

fn bounded(q: &QuadratureResult) -> BoundedValue {
    BoundedValue::new(q.value.clone(), q.abs_error_estimate.clone(), Rigor::Heuristic)
}

fn quad_method(q: &QuadratureResult, rhs: &ClosedFormExpr) -> String {
    format!("tanh-sinh level {} vs {}", q.levels, rhs)
}

fn finish(id: &str, p: &[(&str, i64)], cmp: Comparison, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let tol = default_tolerance(id, ctx.digits())?;
    Ok(cmp.into_report(id, params(p), &tol, ctx.digits()))
}

fn compare_integral<F: FnMut(&Node) -> Real>(
    id: &str,
    p: &[(&str, i64)],
    f: F,
    rhs: &ClosedFormExpr,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let q = quad(f, ctx)?;
    let r = rhs.eval(ctx)?;
    let cmp = Comparison::new(&bounded(&q), &r, quad_method(&q, rhs), Work::Nodes(q.nodes_used));
    finish(id, p, cmp, ctx)
}

/// `ln(cos u)` for small `u ≥ 0`, free of cancellation:
/// `ln(1 + y) = 2 atanh(y / (2 + y))` with `y = -2 sin²(u/2)`.
pub fn ln_cos_small(u: &Real) -> Real {
    let bits = u.precision();
    let s = u.ldexp(-1).sin();
    let y = (&s * &s).mul_i64(-2);
    let z = &y / &(&Real::from_i64(2, bits) + &y);
    let z2 = &z * &z;
    let stop = z.abs().ldexp(-(bits as i32) - 4);
    let mut power = z.clone();
    let mut sum = Real::zero(bits);
    let mut k = 1i64;
    loop {
        let t = power.div_i64(k);
        if t.abs() < stop {
            break;
        }
        sum = &sum + &t;
        power = &power * &z2;
        k += 2;
    }
    sum.ldexp(1)
}

/// `ln(sin x)` on `(0, π/2]`, switching to [`ln_cos_small`] near `π/2`.
fn ln_sin(node: &Node) -> Real {
    let small = Real::one(64).ldexp(SMALL_U_EXPONENT);
    if node.from_b < small {
        ln_cos_small(&node.from_b)
    } else {
        node.sin_half_pi().ln()
    }
}

fn x_pow(node: &Node, m: u32) -> Real {
    node.x.powi(2 * m)
}

/// `∫_0^{π/2} x^{2m} cos((2n-1)x) dx`.
pub fn check_l1i(m: u32, n: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_lemma1i(m, n)?;
    let k = (2 * n - 1) as i64;
    compare_integral(
        "L1i",
        &[("m", m as i64), ("n", n as i64)],
        |node| &x_pow(node, m) * &node.x.mul_i64(k).cos(),
        &rhs,
        ctx,
    )
}

/// `∫_0^{π/2} x^{2m} sin(2kx)/sin(x) dx`, with the integrand `2k` at `x = 0`.
pub fn check_l1ii(m: u32, k: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let rhs = closed_form::rhs_lemma1ii(m, k)?;
    compare_integral(
        "L1ii",
        &[("k", k as i64), ("m", m as i64)],
        |node| {
            let ratio = if node.x.is_zero() {
                Real::from_i64(2 * k as i64, node.x.precision())
            } else {
                &node.x.mul_i64(2 * k as i64).sin() / &node.sin_half_pi()
            };
            &x_pow(node, m) * &ratio
        },
        &rhs,
        ctx,
    )
}

/// `∫_0^{π/2} x^{2m} cos((2n-1)x) dx` by quadrature alone.
pub fn lemma1i_integral(m: u32, n: u32, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    let k = (2 * n - 1) as i64;
    quad(|node| &x_pow(node, m) * &node.x.mul_i64(k).cos(), ctx)
}

/// `∫_0^{π/2} x^{2m} sin(2kx)/sin(x) dx` by quadrature alone.
pub fn lemma1ii_integral(m: u32, k: u32, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    quad(
        |node| {
            let ratio = if node.x.is_zero() {
                Real::from_i64(2 * k as i64, node.x.precision())
            } else {
                &node.x.mul_i64(2 * k as i64).sin() / &node.sin_half_pi()
            };
            &x_pow(node, m) * &ratio
        },
        ctx,
    )
}

/// `a_k = ∫_0^1 (1-t)/(1+t) t^(k-1) dt = 2 r_k - 1/k` for `k = 1..=count`,
/// where `r_1 = ln 2` and `r_{k+1} = 1/k - r_k`.
pub fn lemma2i_coefficients(count: usize, bits: usize) -> Vec<Real> {
    let mut out = Vec::with_capacity(count);
    let mut r = Real::ln2(bits);
    for k in 1..=count as i64 {
        let inv = Real::one(bits).div_i64(k);
        out.push(&r.ldexp(1) - &inv);
        r = &inv - &r;
    }
    out
}

/// `tan(x) ln(sin x)` against the Fourier sine series truncated at `K`
/// terms, at `x = π / x_pi_over`.
pub fn check_l2i(x_pi_over: u32, k_terms: u64, ctx: &PrecisionContext) -> Result<VerificationReport> {
    if x_pi_over <= 2 {
        return Err(Error::Domain(format!("x = pi/{x_pi_over} is not inside (0, pi/2)")));
    }
    if k_terms == 0 {
        return Err(Error::Domain("K must be at least 1".into()));
    }
    let bits = ctx.working_bits();
    let x = Real::pi(bits).div_i64(x_pi_over as i64);
    let lhs = &x.tan() * &x.sin().ln();
    let coeffs = lemma2i_coefficients(k_terms as usize, bits);
    let mut sum = Real::zero(bits);
    for (i, a) in coeffs.iter().enumerate() {
        sum = &sum + &(a * &x.mul_i64(2 * (i as i64 + 1)).sin());
    }
    let rhs = -&sum;
    let cmp = Comparison::new(
        &BoundedValue::exact(lhs),
        &BoundedValue::exact(rhs),
        format!("direct vs sine series truncated at {k_terms} terms"),
        Work::Terms(k_terms),
    );
    finish("L2i", &[("K", k_terms as i64), ("x_pi_over", x_pi_over as i64)], cmp, ctx)
}

/// Terms needed so that `|t|^(2K+1) / (1 - t²)` is below the target.
pub fn lemma2ii_terms(t: &BigRational, ctx: &PrecisionContext) -> u64 {
    let tf = num_traits::ToPrimitive::to_f64(t).unwrap_or(0.0).abs();
    if tf == 0.0 {
        return 1;
    }
    let target = (ctx.digits() as f64 + 3.0) * std::f64::consts::LN_10 - (1.0 - tf * tf).ln();
    ((target / (-tf.ln()) - 1.0) / 2.0).ceil().max(1.0) as u64
}

/// `Σ_{k≤K} Ō_k^(2j+1) t^(2k-1)` against `Ti_{2j+1}(t)/(1-t²)`, with
/// `t = t_permille / 1000` and `K` chosen from the geometric tail.
pub fn check_l2ii(t_permille: i64, j: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    if t_permille.abs() > 990 {
        return Err(Error::Domain(format!("|t| must be at most 0.99, got {}", t_permille as f64 / 1000.0)));
    }
    let bits = ctx.working_bits();
    let tq = BigRational::new(t_permille.into(), 1000.into());
    let t = Real::from_ratio(&tq, bits);
    let k_terms = lemma2ii_terms(&tq, ctx);
    let order = 2 * j + 1;
    let t2 = &t * &t;
    let one = Real::one(bits);

    let mut state: HarmonicState<Real> = HarmonicState::new(0, &[order], bits);
    let mut power = t.clone();
    let mut sum = Real::zero(bits);
    for _ in 0..k_terms {
        state.step();
        sum = &sum + &(state.alt_odd_harmonic(order).expect("order tracked") * &power);
        power = &power * &t2;
    }
    // |Ō| ≤ 1, so the tail is at most |t|^(2K+1) / (1 - t²).
    let tail = &power.abs() / &(&one - &t2);
    let lhs = BoundedValue::new(sum, tail, Rigor::Rigorous);
    let ti = constants::ti(order, &t, ctx)?;
    let rhs = ti.mul(&BoundedValue::exact((&one - &t2).recip()));
    let cmp = Comparison::new(&lhs, &rhs, format!("series truncated at K={k_terms} vs Ti_{order}(t)/(1-t^2)"), Work::Terms(k_terms));
    finish("L2ii", &[("j", j as i64), ("t_permille", t_permille)], cmp, ctx)
}

/// `∫_0^1 Ti_{2j+1}(t)/(1+t²) dt`.
pub fn check_l2iii(j: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let bits = ctx.working_bits();
    let rhs = closed_form::rhs_lemma2iii(j);
    let order = 2 * j + 1;
    let one = Real::one(bits);
    let mut failure = None;
    let q = integrate(
        |node| match constants::ti(order, &node.x, ctx) {
            Ok(v) => &v.value / &(&one + &(&node.x * &node.x)),
            Err(e) => {
                failure.get_or_insert(e);
                Real::zero(bits)
            }
        },
        &Real::zero(bits),
        &one,
        ctx,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let r = rhs.eval(ctx)?;
    let cmp = Comparison::new(&bounded(&q), &r, quad_method(&q, &rhs), Work::Nodes(q.nodes_used));
    finish("L2iii", &[("j", j as i64)], cmp, ctx)
}

/// `∫_0^{π/2} x^{2m} ln(sin x)/cos x dx`.
pub fn check_l2iv(m: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_lemma2iv(m);
    compare_integral(
        "L2iv",
        &[("m", m as i64)],
        |node| &(&x_pow(node, m) * &ln_sin(node)) / &node.cos_half_pi(),
        &rhs,
        ctx,
    )
}

/// `∫_0^{π/2} x^{2m} cos^{2n-1}(x) dx`.
pub fn check_l3(m: u32, n: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_lemma3(m, n)?;
    compare_integral(
        "L3",
        &[("m", m as i64), ("n", n as i64)],
        |node| &x_pow(node, m) * &node.cos_half_pi().powi(2 * n - 1),
        &rhs,
        ctx,
    )
}

/// `∫_0^{π/2} x^{2m} cos(2nx) dx`.
pub fn check_r1(m: u32, n: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_r1(m, n)?;
    compare_integral(
        "R1",
        &[("m", m as i64), ("n", n as i64)],
        |node| &x_pow(node, m) * &node.x.mul_i64(2 * n as i64).cos(),
        &rhs,
        ctx,
    )
}

/// `∫_0^{π/2} x^{2m} ln(sin x) dx`.
pub fn check_r2(m: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_r2(m);
    compare_integral("R2", &[("m", m as i64)], |node| &x_pow(node, m) * &ln_sin(node), &rhs, ctx)
}

/// `∫_0^{π/2} x^{2m} cos^{2n}(x) dx`.
pub fn check_r3(m: u32, n: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let rhs = closed_form::rhs_r3(m, n)?;
    compare_integral(
        "R3",
        &[("m", m as i64), ("n", n as i64)],
        |node| &x_pow(node, m) * &node.cos_half_pi().powi(2 * n),
        &rhs,
        ctx,
    )
}
