//! Summation of the two Apéry-like families
//!
//! * `Σ_{n≥1} 4^n / (n² C(2n,n)) · t★_n({2}_j)`  ([`FamilyKind::Theorem1`])
//! * `Σ_{n≥1} C(2n,n) / (n 4^n) · ζ★_n({2}_j)`   ([`FamilyKind::Gencev`])
//!
//! Both weights behave like `n^(-3/2)` times a power series in `1/n`, and the
//! star sums approach their limits like a power series in `1/n`, so the tail
//! after `N` terms is `N^(-1/2) · (a_0 + a_1/N + a_2/N² + …)`. Partial sums are
//! recorded at geometrically spaced checkpoints and the half-odd powers are
//! removed one at a time by Richardson elimination.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicState, Scalar, Tracks};
use crate::precision::{bits_for_digits, BoundedValue, PrecisionContext, Rigor};
use crate::real::{abs_diff, Real};

/// Largest depth accepted by [`SeriesFamily`].
pub const MAX_DEPTH: usize = 6;
/// Checkpoints below this index are ignored by the extrapolator; the tail
/// expansion is not yet accurate there.
pub const MIN_EXTRAPOLATION_N: u64 = 8;
/// Upper limit on the number of terms the adaptive driver will sum.
pub const MAX_TERMS: u64 = 1 << 22;
const INITIAL_TERMS: u64 = 1 << 10;
/// Multiplier applied to the stage difference in the heuristic bound.
pub const BOUND_SAFETY_FACTOR: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// `4^n/(n² C(2n,n)) · t★_n({2}_j)`.
    Theorem1,
    /// `C(2n,n)/(n 4^n) · ζ★_n({2}_j)`.
    Gencev,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Theorem1 => "theorem1",
            FamilyKind::Gencev => "gencev",
        })
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(FamilyKind::Theorem1),
            "gencev" => Ok(FamilyKind::Gencev),
            _ => Err(Error::Parse(format!("unknown series family {s:?}"))),
        }
    }
}

/// One member of a series family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeriesFamily {
    kind: FamilyKind,
    depth: usize,
}

impl SeriesFamily {
    pub fn new(kind: FamilyKind, depth: usize) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::Capacity(format!("series depth {depth} exceeds maximum {MAX_DEPTH}")));
        }
        Ok(SeriesFamily { kind, depth })
    }

    pub fn theorem1(depth: usize) -> Result<Self> {
        Self::new(FamilyKind::Theorem1, depth)
    }

    pub fn gencev(depth: usize) -> Result<Self> {
        Self::new(FamilyKind::Gencev, depth)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

fn central_binomial(n: u64) -> BigInt {
    // C(2n, n) = Π_{i=1}^{n} (n+i)/i, exact at every step.
    let mut c = BigInt::one();
    for i in 1..=n {
        c = c * BigInt::from(n + i) / BigInt::from(i);
    }
    c
}

fn pow4(n: u64) -> BigInt {
    BigInt::one() << (2 * n as usize)
}

/// `4^n / (n² C(2n,n))` from factorials.
pub fn weight_theorem1(n: u64) -> BigRational {
    assert!(n >= 1, "weights are defined for n >= 1");
    BigRational::new(pow4(n), BigInt::from(n) * BigInt::from(n) * central_binomial(n))
}

/// `c_{n+1} = c_n · 2n² / ((n+1)(2n+1))`.
pub fn next_weight_theorem1<S: Scalar>(c_n: &S, n: u64) -> S {
    let n = n as i64;
    c_n.mul_ratio(2 * n * n, (n + 1) * (2 * n + 1))
}

/// `C(2n,n) / (n 4^n)` from factorials.
pub fn weight_gencev(n: u64) -> BigRational {
    assert!(n >= 1, "weights are defined for n >= 1");
    BigRational::new(central_binomial(n), BigInt::from(n) * pow4(n))
}

/// `d_{n+1} = d_n · n(2n+1) / (2(n+1)²)`.
pub fn next_weight_gencev<S: Scalar>(d_n: &S, n: u64) -> S {
    let n = n as i64;
    d_n.mul_ratio(n * (2 * n + 1), 2 * (n + 1) * (n + 1))
}

/// Working precision for summing up to `n_max` terms: target digits, plus
/// ten guard digits, plus `log10(n_max)` digits for accumulated rounding.
pub fn series_context(ctx: &PrecisionContext, n_max: u64) -> Result<PrecisionContext> {
    let extra_digits = 10 + (n_max.max(1) as f64).log10().ceil() as u32;
    let guard = bits_for_digits(extra_digits);
    let working = (bits_for_digits(ctx.digits()) + guard).max(ctx.working_bits());
    PrecisionContext::from_parts(working, ctx.digits(), working - bits_for_digits(ctx.digits()))
}

/// Streaming partial sums of one family member.
#[derive(Debug, Clone)]
pub struct SeriesStream {
    family: SeriesFamily,
    state: HarmonicState<Real>,
    /// Weight of the next term.
    weight: Real,
    sum: Real,
}

impl SeriesStream {
    pub fn new(family: SeriesFamily, bits: usize) -> Self {
        let tracks = match family.kind {
            FamilyKind::Theorem1 => Tracks::ODD,
            FamilyKind::Gencev => Tracks::ZETA,
        };
        let weight = match family.kind {
            FamilyKind::Theorem1 => Real::from_i64(2, bits),
            FamilyKind::Gencev => Real::one(bits).ldexp(-1),
        };
        SeriesStream {
            family,
            state: HarmonicState::with_tracks(family.depth, &[], tracks, bits),
            weight,
            sum: Real::zero(bits),
        }
    }

    /// Number of terms summed so far.
    pub fn n(&self) -> u64 {
        self.state.n()
    }

    pub fn sum(&self) -> &Real {
        &self.sum
    }

    /// Adds term `n + 1`.
    pub fn step(&mut self) {
        self.state.step();
        let n = self.state.n();
        let star = match self.family.kind {
            FamilyKind::Theorem1 => self.state.t_star(self.family.depth),
            FamilyKind::Gencev => self.state.zeta_star(self.family.depth),
        }
        .expect("depth tracked");
        self.sum = &self.sum + &(&self.weight * star);
        self.weight = match self.family.kind {
            FamilyKind::Theorem1 => next_weight_theorem1(&self.weight, n),
            FamilyKind::Gencev => next_weight_gencev(&self.weight, n),
        };
    }

    pub fn advance_to(&mut self, n: u64) {
        while self.n() < n {
            self.step();
        }
    }
}

/// Where partial sums are recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// `1, r, r², …` up to the requested length.
    Geometric { ratio: u64 },
    /// Exactly these indices (sorted, deduplicated).
    Explicit(Vec<u64>),
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Geometric { ratio: 2 }
    }
}

#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub n: u64,
    pub sum: Real,
}

/// Checkpointed partial sums `S_N` of one series.
#[derive(Debug, Clone)]
pub struct PartialSumTrace {
    pub family: SeriesFamily,
    pub checkpoints: Vec<Checkpoint>,
    pub context: PrecisionContext,
    /// Ratio of the geometric schedule, if the trace was built from one.
    pub ratio: Option<u64>,
    /// Estimated accumulated rounding error of the last checkpoint.
    pub rounding_bound: Real,
}

impl PartialSumTrace {
    pub fn last(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }
}

fn rounding_estimate(family: &SeriesFamily, n: u64, sum: &Real, bits: usize) -> Real {
    // Each term carries the rounding of O(n·(j+1)) operations through the
    // harmonic state and the weight; summing them is bounded by n·(j+4)·u·S.
    sum.abs()
        .with_precision(64)
        .mul_i64(2 * (family.depth as i64 + 4))
        .mul_i64(n as i64)
        .ldexp(-(bits as i32))
}

fn schedule_points(schedule: &Schedule, n_max: u64) -> Result<Vec<u64>> {
    match schedule {
        Schedule::Geometric { ratio } => {
            if *ratio < 2 {
                return Err(Error::Domain(format!("checkpoint ratio must be at least 2, got {ratio}")));
            }
            let mut pts = Vec::new();
            let mut n = 1u64;
            while n <= n_max {
                pts.push(n);
                n = n.saturating_mul(*ratio);
            }
            if pts.last() != Some(&n_max) {
                pts.push(n_max);
            }
            Ok(pts)
        }
        Schedule::Explicit(v) => {
            let mut pts: Vec<u64> = v.iter().copied().filter(|&n| n >= 1 && n <= n_max).collect();
            pts.sort_unstable();
            pts.dedup();
            if pts.is_empty() {
                return Err(Error::Domain("explicit schedule has no index in [1, N]".into()));
            }
            Ok(pts)
        }
    }
}

/// Partial sums up to `n_max` at geometric checkpoints of ratio 2.
pub fn partial_sum(family: SeriesFamily, n_max: u64, ctx: &PrecisionContext) -> Result<PartialSumTrace> {
    partial_sum_with(family, n_max, &Schedule::default(), ctx)
}

/// Partial sums up to `n_max`, recording at the given schedule.
///
/// The sum is carried at `ctx.working_bits()`; see [`series_context`] for the
/// default policy. Fails if the accumulated rounding estimate exceeds the
/// context's target.
pub fn partial_sum_with(
    family: SeriesFamily,
    n_max: u64,
    schedule: &Schedule,
    ctx: &PrecisionContext,
) -> Result<PartialSumTrace> {
    if n_max == 0 {
        return Err(Error::Domain("partial sums need N >= 1".into()));
    }
    let bits = ctx.working_bits();
    let points = schedule_points(schedule, n_max)?;
    let mut stream = SeriesStream::new(family, bits);
    let mut checkpoints = Vec::with_capacity(points.len());
    for &n in &points {
        stream.advance_to(n);
        checkpoints.push(Checkpoint { n, sum: stream.sum().clone() });
    }
    let rounding_bound = rounding_estimate(&family, n_max, stream.sum(), bits);
    if rounding_bound > ctx.target_abs_error() {
        return Err(Error::Capacity(format!(
            "{bits} working bits are too coarse for {n_max} terms: rounding estimate {} exceeds target 1e-{}",
            rounding_bound.to_sci_string(3, crate::decimal::DecimalRounding::Up),
            ctx.digits()
        )));
    }
    let ratio = match schedule {
        Schedule::Geometric { ratio } => Some(*ratio),
        Schedule::Explicit(_) => None,
    };
    Ok(PartialSumTrace { family, checkpoints, context: ctx.clone(), ratio, rounding_bound })
}

/// Result of Richardson elimination on a trace.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    pub value: BoundedValue,
    /// Number of half-odd powers eliminated by the chosen estimate.
    pub stages: usize,
    /// `|e_i - e_{i-1}|` for every stage `i ≥ 1` of the chosen tableau, where
    /// `e_i` is the last element of elimination column `i`.
    pub stage_differences: Vec<Real>,
    /// Index range of the checkpoints in the chosen tableau.
    pub first_n: u64,
    pub last_n: u64,
}

/// Longest run of checkpoints, ending at the last one, whose indices grow by
/// exactly `ratio` and that starts no lower than [`MIN_EXTRAPOLATION_N`].
fn geometric_run(trace: &PartialSumTrace, ratio: u64) -> Vec<&Checkpoint> {
    let cps = &trace.checkpoints;
    let mut run: Vec<&Checkpoint> = Vec::new();
    for cp in cps.iter().rev() {
        match run.last() {
            None => run.push(cp),
            Some(prev) if prev.n == cp.n * ratio => run.push(cp),
            Some(_) => break,
        }
    }
    run.reverse();
    let trimmed: Vec<&Checkpoint> = run.iter().copied().filter(|c| c.n >= MIN_EXTRAPOLATION_N).collect();
    if trimmed.len() >= 4 {
        trimmed
    } else {
        let k = run.len().saturating_sub(4);
        run[k..].to_vec()
    }
}

/// Limit estimate with a heuristic bound (see [`extrapolate_detailed`]).
pub fn extrapolate(trace: &PartialSumTrace) -> Result<BoundedValue> {
    extrapolate_detailed(trace).map(|e| e.value)
}

struct Tableau {
    value: Real,
    bound: Real,
    stages: usize,
    diffs: Vec<Real>,
    converging: bool,
}

fn eliminate(run: &[&Checkpoint], ratio: u64, bits: usize, rounding: &Real) -> Tableau {
    let r = Real::from_u64(ratio, bits);
    let one = Real::one(bits);
    let mut column: Vec<Real> = run.iter().map(|c| c.sum.clone()).collect();
    let mut estimates = vec![column.last().unwrap().clone()];
    let mut amplification = vec![Real::one(64)];
    let mut factor = r.sqrt();
    while column.len() > 1 {
        let denom = &factor - &one;
        column = column
            .windows(2)
            .map(|w| &(&(&factor * &w[1]) - &w[0]) / &denom)
            .collect();
        estimates.push(column.last().unwrap().clone());
        let amp = amplification.last().unwrap() * &(&(&factor + &one) / &denom).with_precision(64);
        amplification.push(amp);
        factor = &factor * &r;
    }

    let diffs: Vec<Real> = estimates.windows(2).map(|w| abs_diff(&w[1], &w[0])).collect();
    let best = diffs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i + 1)
        .expect("at least three stages");
    // Past the optimum the next difference measures the noise in this
    // estimate; taking the larger guards against an accidentally small one.
    // The expansion is only asymptotic, and near its optimum the error of an
    // estimate has been observed at up to twice the stage difference, hence
    // the factor.
    let diff = match diffs.get(best) {
        Some(next) => diffs[best - 1].max(next),
        None => diffs[best - 1].clone(),
    }
    .mul_i64(BOUND_SAFETY_FACTOR);
    let converging = diff.is_finite() && !(diffs.len() >= 3 && best == 1 && diffs[1] >= diffs[0]);
    let value = estimates[best].clone();
    let noise = &(&amplification[best] * rounding) + &value.abs().with_precision(64).ldexp(4 - bits as i32);
    Tableau { bound: &diff + &noise, value, stages: best, diffs, converging }
}

/// Richardson elimination in the variable `N^(-1/2)` over a geometric trace.
///
/// Column `i` removes the `N^(-1/2-(i-1))` term:
/// `T_i[k] = (r^p T_{i-1}[k+1] - T_{i-1}[k]) / (r^p - 1)` with `p = i - 1/2`.
/// The tail expansion is asymptotic, not convergent, so tableaux are built
/// from every admissible starting checkpoint. Within a tableau the estimate
/// is taken where successive column estimates agree best; the tableau with
/// the smallest resulting bound wins. The bound is [`BOUND_SAFETY_FACTOR`]
/// times that agreement plus the rounding error of the trace amplified
/// through the elimination.
pub fn extrapolate_detailed(trace: &PartialSumTrace) -> Result<Extrapolation> {
    let ratio = trace
        .ratio
        .ok_or_else(|| Error::Domain("extrapolation needs a geometric checkpoint schedule".into()))?;
    let run = geometric_run(trace, ratio);
    if run.len() < 4 {
        return Err(Error::Domain(format!(
            "extrapolation needs at least 4 geometric checkpoints, trace has {}",
            run.len()
        )));
    }
    let bits = trace.context.working_bits();
    let mut best: Option<(usize, Tableau)> = None;
    let mut full_diffs = Vec::new();
    for start in 0..=run.len() - 4 {
        let t = eliminate(&run[start..], ratio, bits, &trace.rounding_bound);
        if start == 0 {
            full_diffs = t.diffs.clone();
        }
        if !t.converging {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| t.bound < b.bound) {
            best = Some((start, t));
        }
    }
    let Some((start, t)) = best else {
        return Err(Error::NonConvergent(format!(
            "stage differences never decrease: {}",
            full_diffs
                .iter()
                .map(|d| d.to_sci_string(3, crate::decimal::DecimalRounding::Up))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    };
    Ok(Extrapolation {
        value: BoundedValue::new(t.value, t.bound, Rigor::Heuristic),
        stages: t.stages,
        stage_differences: t.diffs,
        first_n: run[start].n,
        last_n: run.last().unwrap().n,
    })
}

/// Adaptive evaluation of a series limit to the context's target.
#[derive(Debug, Clone)]
pub struct SeriesEvaluation {
    pub family: SeriesFamily,
    pub value: BoundedValue,
    /// Terms summed.
    pub terms: u64,
    pub stages: usize,
    pub trace: PartialSumTrace,
}

/// Sums and extrapolates until the heuristic bound meets `ctx`'s target,
/// quadrupling the number of terms from 2^10 up to [`MAX_TERMS`].
pub fn evaluate_series(family: SeriesFamily, ctx: &PrecisionContext) -> Result<SeriesEvaluation> {
    let work = series_context(ctx, MAX_TERMS)?;
    let bits = work.working_bits();
    let target = ctx.target_abs_error().ldexp(-1);
    let mut stream = SeriesStream::new(family, bits);
    let mut checkpoints = Vec::new();
    let mut next_cp = 1u64;
    let mut n_max = INITIAL_TERMS;
    let mut last_err: Option<String>;
    loop {
        while stream.n() < n_max {
            stream.step();
            if stream.n() == next_cp {
                checkpoints.push(Checkpoint { n: next_cp, sum: stream.sum().clone() });
                next_cp *= 2;
            }
        }
        let trace = PartialSumTrace {
            family,
            checkpoints: checkpoints.clone(),
            context: work.clone(),
            ratio: Some(2),
            rounding_bound: rounding_estimate(&family, n_max, stream.sum(), bits),
        };
        match extrapolate_detailed(&trace) {
            Ok(ex) if ex.value.abs_error_bound <= target => {
                return Ok(SeriesEvaluation {
                    family,
                    value: ex.value,
                    terms: n_max,
                    stages: ex.stages,
                    trace,
                });
            }
            Ok(ex) => last_err = Some(ex.value.abs_error_bound.to_sci_string(3, crate::decimal::DecimalRounding::Up)),
            Err(e @ Error::NonConvergent(_)) if n_max >= MAX_TERMS => return Err(e),
            Err(Error::NonConvergent(msg)) => last_err = Some(msg),
            Err(e) => return Err(e),
        }
        if n_max >= MAX_TERMS {
            return Err(Error::NonConvergent(format!(
                "bound {} after {n_max} terms still above target 1e-{}",
                last_err.unwrap_or_default(),
                ctx.digits()
            )));
        }
        n_max *= 4;
    }
}

/// Least-squares slope of `ln(error)` against `ln(N)`.
pub fn fit_tail_exponent(points: &[(u64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| *e > 0.0 && e.is_finite())
        .map(|(n, e)| ((*n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_context;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_theorem1(1), q(2, 1));
        assert_eq!(weight_theorem1(2), q(2, 3));
        assert_eq!(next_weight_theorem1(&q(2, 1), 1), q(2, 3));
        assert_eq!(weight_gencev(1), q(1, 2));
        assert_eq!(weight_gencev(2), q(3, 16));
        assert_eq!(next_weight_gencev(&q(1, 2), 1), q(3, 16));
    }

    #[test]
    fn weight_recurrences_match_factorials() {
        let mut c = weight_theorem1(1);
        let mut d = weight_gencev(1);
        for n in 1..60u64 {
            c = next_weight_theorem1(&c, n);
            d = next_weight_gencev(&d, n);
            assert_eq!(c, weight_theorem1(n + 1), "c_{}", n + 1);
            assert_eq!(d, weight_gencev(n + 1), "d_{}", n + 1);
        }
    }

    #[test]
    fn small_partial_sums() {
        let ctx = make_context(20).unwrap();
        let t = partial_sum(SeriesFamily::theorem1(0).unwrap(), 2, &ctx).unwrap();
        assert_eq!(t.checkpoints[0].sum.to_rational(), q(2, 1));
        let eight_thirds = Real::from_ratio(&q(8, 3), ctx.working_bits() + 64);
        assert!(abs_diff(&t.checkpoints[1].sum, &eight_thirds).to_f64() < 1e-25);
        let g = partial_sum(SeriesFamily::gencev(0).unwrap(), 2, &ctx).unwrap();
        assert_eq!(g.checkpoints[1].sum.to_rational(), q(11, 16));
        assert_eq!(g.checkpoints[0].sum.to_rational(), q(1, 2));
    }

    #[test]
    fn geometric_schedule_includes_endpoint() {
        assert_eq!(schedule_points(&Schedule::default(), 10).unwrap(), vec![1, 2, 4, 8, 10]);
        assert_eq!(schedule_points(&Schedule::Geometric { ratio: 4 }, 64).unwrap(), vec![1, 4, 16, 64]);
        assert_eq!(schedule_points(&Schedule::Explicit(vec![5, 3, 5, 100]), 10).unwrap(), vec![3, 5]);
        assert!(schedule_points(&Schedule::Geometric { ratio: 1 }, 10).is_err());
    }

    #[test]
    fn depth_guard() {
        assert!(SeriesFamily::theorem1(MAX_DEPTH).is_ok());
        assert!(matches!(SeriesFamily::gencev(MAX_DEPTH + 1), Err(Error::Capacity(_))));
    }

    #[test]
    fn coarse_context_is_rejected() {
        let ctx = PrecisionContext::from_parts(80, 20, 10).unwrap();
        let r = partial_sum(SeriesFamily::theorem1(1).unwrap(), 1 << 16, &ctx);
        assert!(matches!(r, Err(Error::Capacity(_))));
    }

    #[test]
    fn too_few_checkpoints() {
        let ctx = make_context(20).unwrap();
        let t = partial_sum(SeriesFamily::theorem1(0).unwrap(), 4, &ctx).unwrap();
        assert!(extrapolate(&t).is_err());
    }

    #[test]
    fn extrapolated_j0_is_half_pi_squared() {
        let ctx = make_context(20).unwrap();
        let work = series_context(&ctx, 1 << 12).unwrap();
        let t = partial_sum(SeriesFamily::theorem1(0).unwrap(), 1 << 12, &work).unwrap();
        let v = extrapolate(&t).unwrap();
        let pi = Real::pi(work.working_bits() + 64);
        let exact = (&pi * &pi).ldexp(-1);
        assert!(v.contains(&exact));
        assert!(abs_diff(&v.value, &exact).to_f64() < 1e-20);
        assert_eq!(v.rigor, Rigor::Heuristic);
        for cp in &t.checkpoints {
            assert!(v.value >= cp.sum);
        }
    }

    #[test]
    fn gencev_j0_is_two_ln2() {
        let ctx = make_context(20).unwrap();
        let ev = evaluate_series(SeriesFamily::gencev(0).unwrap(), &ctx).unwrap();
        let exact = Real::ln2(ev.value.value.precision() + 64).ldexp(1);
        assert!(ev.value.contains(&exact));
        assert!(abs_diff(&ev.value.value, &exact).to_f64() < 1e-20);
    }

    #[test]
    fn partial_sums_increase() {
        let ctx = make_context(15).unwrap();
        for fam in [SeriesFamily::theorem1(2).unwrap(), SeriesFamily::gencev(2).unwrap()] {
            let t = partial_sum_with(fam, 200, &Schedule::Explicit((1..=200).collect()), &ctx).unwrap();
            for w in t.checkpoints.windows(2) {
                assert!(w[1].sum > w[0].sum);
            }
        }
    }

    #[test]
    fn traces_are_deterministic() {
        let ctx = make_context(20).unwrap();
        let fam = SeriesFamily::theorem1(3).unwrap();
        let a = partial_sum(fam, 3000, &ctx).unwrap();
        let b = partial_sum(fam, 3000, &ctx).unwrap();
        for (x, y) in a.checkpoints.iter().zip(&b.checkpoints) {
            assert_eq!(x.n, y.n);
            assert_eq!(x.sum.to_rational(), y.sum.to_rational());
        }
    }

    #[test]
    fn tail_exponent_fit() {
        let pts: Vec<(u64, f64)> = [1000u64, 4000, 16000].iter().map(|&n| (n, 3.0 / (n as f64).sqrt())).collect();
        assert!((fit_tail_exponent(&pts).unwrap() + 0.5).abs() < 1e-12);
        assert!(fit_tail_exponent(&pts[..1]).is_none());
    }
}
