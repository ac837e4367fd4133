//! Tanh-sinh quadrature on finite intervals.
//!
//! `∫_a^b f = (b-a)/2 ∫_{-∞}^{∞} f(x(t)) w(t) dt` with
//! `x(t) = tanh(π/2 · sinh t)` and `w(t) = π/2 · cosh t / cosh²(π/2 · sinh t)`.
//! Level `l` uses step `h = 2^-l`; each level adds the odd multiples of `h`
//! and reuses everything before it. Nodes hand the integrand their distance
//! to both endpoints, computed without cancellation, so integrands can be
//! written in a form that is accurate at the ends of the interval.

pub mod checks;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::{abs_diff, Real};

/// Default finest level.
pub const DEFAULT_MAX_LEVEL: u32 = 12;
/// Levels always computed before convergence is tested.
pub const MIN_LEVEL: u32 = 3;

/// A quadrature node on `[a, b]`.
#[derive(Debug, Clone)]
pub struct Node {
    pub x: Real,
    /// `x - a`.
    pub from_a: Real,
    /// `b - x`.
    pub from_b: Real,
}

impl Node {
    /// `sin x`, evaluated as `cos(b - x)` when the node is closer to `b`.
    /// Only meaningful when `b = π/2`.
    pub fn sin_half_pi(&self) -> Real {
        if self.from_b < self.from_a {
            self.from_b.cos()
        } else {
            self.x.sin()
        }
    }

    /// `cos x`, evaluated as `sin(b - x)` when the node is closer to `b`.
    /// Only meaningful when `b = π/2`.
    pub fn cos_half_pi(&self) -> Real {
        if self.from_b < self.from_a {
            self.from_b.sin()
        } else {
            self.x.cos()
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Real,
    /// Difference between the last two levels plus a rounding allowance.
    pub abs_error_estimate: Real,
    /// Integrand evaluations.
    pub nodes_used: u64,
    /// Finest level reached.
    pub levels: u32,
    /// `|S_l - S_{l-1}|` for `l = 1..=levels`.
    pub level_differences: Vec<Real>,
}

/// One abscissa of the reference rule, for `t ≥ 0`.
#[derive(Debug)]
struct RefNode {
    /// `1 - x(t)`, in `(0, 1]`.
    c: Real,
    /// `w(t)`.
    w: Real,
    /// True only for `t = 0`, which is not mirrored.
    center: bool,
}

type Table = Arc<Vec<RefNode>>;

fn cache() -> &'static Mutex<HashMap<(usize, u32), Table>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Table>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Largest `t` worth sampling: beyond it `w(t) < 2^-(bits+24)`.
fn t_max(bits: usize) -> f64 {
    (((bits + 24) as f64 * std::f64::consts::LN_2 + 4.0) / std::f64::consts::PI).asinh() + 0.25
}

fn build_level(bits: usize, level: u32) -> Vec<RefNode> {
    let pi = Real::pi(bits);
    let half_pi = pi.ldexp(-1);
    let one = Real::one(bits);
    let tmax = t_max(bits);
    let h = (0.5f64).powi(level as i32);
    let (first, step) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut k = first;
    loop {
        let tf = k as f64 * h;
        if tf > tmax {
            break;
        }
        let t = Real::from_u64(k, bits).ldexp(-(level as i32));
        let et = t.exp();
        let sinh = (&et - &et.recip()).ldexp(-1);
        let cosh = (&et + &et.recip()).ldexp(-1);
        let u = &half_pi * &sinh;
        let q = (-&u.ldexp(1)).exp();
        let opq = &one + &q;
        let c = (&q / &opq).ldexp(1);
        let w = &(&half_pi * &cosh) * &(&q / &(&opq * &opq)).ldexp(2);
        out.push(RefNode { c, w, center: k == 0 });
        k += step;
    }
    out
}

fn level_table(bits: usize, level: u32) -> Table {
    if let Some(t) = cache().lock().unwrap().get(&(bits, level)) {
        return t.clone();
    }
    let table = Arc::new(build_level(bits, level));
    cache().lock().unwrap().entry((bits, level)).or_insert(table).clone()
}

/// Integrates `f` over `[a, b]` to the target of `ctx`, refining up to
/// [`DEFAULT_MAX_LEVEL`].
pub fn integrate<F>(f: F, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    F: FnMut(&Node) -> Real,
{
    integrate_with(f, a, b, ctx, DEFAULT_MAX_LEVEL)
}

pub fn integrate_with<F>(mut f: F, a: &Real, b: &Real, ctx: &PrecisionContext, max_level: u32) -> Result<QuadratureResult>
where
    F: FnMut(&Node) -> Real,
{
    if a.partial_cmp(b) != Some(std::cmp::Ordering::Less) {
        return Err(Error::Domain(format!("integration needs a < b, got [{a}, {b}]")));
    }
    let bits = ctx.working_bits();
    let half = (b - a).ldexp(-1);
    let two = Real::from_i64(2, bits);
    let target = ctx.target_abs_error();

    let mut eval = |c: &Real, near_b: bool| -> Result<Real> {
        let near = &half * c;
        let far = &half * &(&two - c);
        let node = if near_b {
            Node { x: b - &near, from_a: far, from_b: near }
        } else {
            Node { x: a + &near, from_a: near, from_b: far }
        };
        let v = f(&node);
        if v.is_nan() {
            return Err(Error::Quadrature(format!("integrand returned NaN at x = {}", node.x)));
        }
        Ok(v)
    };

    let mut raw = Real::zero(bits);
    let mut nodes = 0u64;
    let mut prev: Option<Real> = None;
    let mut diffs = Vec::new();
    let mut magnitude = Real::zero(64);
    for level in 0..=max_level {
        let table = level_table(bits, level);
        for n in table.iter() {
            let mut s = eval(&n.c, true)?;
            nodes += 1;
            if !n.center {
                s = &s + &eval(&n.c, false)?;
                nodes += 1;
            }
            let term = &n.w * &s;
            magnitude = &magnitude + &term.abs().with_precision(64);
            raw = &raw + &term;
        }
        let value = &(&raw * &half).ldexp(-(level as i32));
        let rounding = (&magnitude * &half.abs().with_precision(64))
            .ldexp(-(level as i32))
            .mul_i64(4)
            .ldexp(-(bits as i32))
            .mul_i64(nodes.max(1) as i64);
        if let Some(p) = &prev {
            let d = abs_diff(value, p);
            diffs.push(d.clone());
            if level >= MIN_LEVEL && (d <= target || d <= rounding) {
                return Ok(QuadratureResult {
                    value: value.clone(),
                    abs_error_estimate: &d + &rounding,
                    nodes_used: nodes,
                    levels: level,
                    level_differences: diffs,
                });
            }
        }
        prev = Some(value.clone());
    }
    Err(Error::Quadrature(format!(
        "no convergence by level {max_level}; level differences: {}",
        diffs
            .iter()
            .map(|d| d.to_sci_string(3, crate::decimal::DecimalRounding::Up))
            .collect::<Vec<_>>()
            .join(", ")
    )))
}
