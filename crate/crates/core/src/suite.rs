//! Identity registry: parameter grids, suite runs, tables and convergence
//! benchmarks. Shared by the command-line tool and the Python bindings.

use std::ops::RangeInclusive;
use std::time::Instant;

use num_rational::BigRational;

use crate::closed_form::{self, fold_symmetry, rhs_gencev, rhs_theorem1};
use crate::constants::{self, beta_odd_closed_form, beta_odd_pi_coefficient};
use crate::error::{Error, Result};
use crate::harmonic::{exact_state, t_star_bruteforce, t_star_poly_check, zeta_star_bruteforce};
use crate::precision::{make_context, PrecisionContext};
use crate::quadrature::checks;
use crate::real::{abs_diff, Real};
use crate::report::{default_tolerance, params, Comparison, Status, VerificationReport, Work};
use crate::series::{self, evaluate_series, FamilyKind, SeriesFamily, SeriesStream};

/// Registered identity ids, in display order.
pub const IDENTITIES: &[&str] = &[
    "theorem1",
    "gencev",
    "corollary",
    "L1i",
    "L1ii",
    "L2i",
    "L2ii",
    "L2iii",
    "L2iv",
    "L3",
    "R1",
    "R2",
    "R3",
    "oracle-tstar",
    "oracle-zetastar",
    "poly-identities",
    "beta-table",
];

pub const DEFAULT_DIGITS: u32 = 20;
/// Truncation of the sine series in `L2i` unless overridden.
pub const DEFAULT_L2I_TERMS: u64 = 10_000;
const L2I_SAMPLES: [u32; 3] = [6, 4, 3];
const L2II_SAMPLES: [i64; 3] = [250, 500, 900];

/// Optional overrides of the default parameter grid.
#[derive(Debug, Clone, Default)]
pub struct ParamRanges {
    pub j: Option<RangeInclusive<u32>>,
    pub m: Option<RangeInclusive<u32>>,
    pub n: Option<RangeInclusive<u32>>,
    pub k: Option<RangeInclusive<u32>>,
    /// Truncation length for `L2i`.
    pub terms: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub digits: u32,
    /// Overrides the per-identity default tolerance.
    pub tolerance: Option<BigRational>,
    /// Record wall-clock time in `elapsed_ms`; otherwise it is 0 so reports
    /// are reproducible byte for byte.
    pub timing: bool,
    pub ranges: ParamRanges,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { digits: DEFAULT_DIGITS, tolerance: None, timing: false, ranges: ParamRanges::default() }
    }
}

/// Parses `A..B` (inclusive) or a single integer `A`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::Parse(format!("malformed range {s:?}; expected A..B or A"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Parses a geometric schedule `N0xR^k` into `N0, N0·R, …, N0·R^k`.
pub fn parse_schedule(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("malformed schedule {s:?}; expected N0xR^k, e.g. 1000x4^2"));
    let (n0, rest) = s.split_once('x').ok_or_else(bad)?;
    let (r, k) = rest.split_once('^').ok_or_else(bad)?;
    let n0: u64 = n0.trim().parse().map_err(|_| bad())?;
    let r: u64 = r.trim().parse().map_err(|_| bad())?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    if n0 == 0 || r < 2 {
        return Err(bad());
    }
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut n = n0;
    for i in 0..=k {
        out.push(n);
        if i < k {
            n = n.checked_mul(r).ok_or_else(|| Error::Capacity(format!("schedule {s:?} overflows")))?;
        }
    }
    Ok(out)
}

fn pick(r: &Option<RangeInclusive<u32>>, default: RangeInclusive<u32>) -> RangeInclusive<u32> {
    r.clone().unwrap_or(default)
}

fn require_min(name: &str, r: &RangeInclusive<u32>, min: u32) -> Result<()> {
    if *r.start() < min {
        return Err(Error::Domain(format!("--{name} must start at {min} or above")));
    }
    Ok(())
}

type Runner<'a> = Box<dyn Fn(&PrecisionContext) -> Result<VerificationReport> + 'a>;

/// One scheduled check: parameters for the report and a runner.
struct Job<'a> {
    params: Vec<(&'static str, i64)>,
    run: Runner<'a>,
}

fn job<'a>(params: Vec<(&'static str, i64)>, run: impl Fn(&PrecisionContext) -> Result<VerificationReport> + 'a) -> Job<'a> {
    Job { params, run: Box::new(run) }
}

fn series_check(kind: FamilyKind, j: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let fam = SeriesFamily::new(kind, j as usize)?;
    let (id, rhs) = match kind {
        FamilyKind::Theorem1 => ("theorem1", fold_symmetry(&rhs_theorem1(j))),
        FamilyKind::Gencev => ("gencev", rhs_gencev(j)),
    };
    let ev = evaluate_series(fam, ctx)?;
    let r = rhs.eval(ctx)?;
    let method = format!(
        "partial sums to N={} + Richardson in N^-1/2 ({} stages) vs {}",
        ev.terms, ev.stages, rhs
    );
    let cmp = Comparison::new(&ev.value, &r, method, Work::Terms(ev.terms));
    Ok(cmp.into_report(id, params(&[("j", j as i64)]), &default_tolerance(id, ctx.digits())?, ctx.digits()))
}

fn corollary_check(j: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let (raw, reduced) = closed_form::corollary_fixture(j + 1)?;
    let a = fold_symmetry(&raw).eval(ctx)?;
    let b = reduced.eval(ctx)?;
    let cmp = Comparison::new(&a, &b, format!("{} vs {}", fold_symmetry(&raw), reduced), Work::Terms(raw.len() as u64));
    Ok(cmp.into_report("corollary", params(&[("j", j as i64)]), &default_tolerance("corollary", ctx.digits())?, ctx.digits()))
}

fn oracle_check(zeta: bool, n: u32, j: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let state = exact_state(n as u64, j as usize, &[])?;
    let (id, streamed, brute) = if zeta {
        ("oracle-zetastar", state.zeta_star(j as usize).unwrap().clone(), zeta_star_bruteforce(n as u64, j as usize)?)
    } else {
        ("oracle-tstar", state.t_star(j as usize).unwrap().clone(), t_star_bruteforce(n as u64, j as usize)?)
    };
    let cmp = Comparison::exact(streamed, brute.value, "streaming recurrence vs nested enumeration (exact)", Work::Tuples(brute.tuples));
    Ok(cmp.into_report(id, params(&[("j", j as i64), ("n", n as i64)]), &default_tolerance(id, ctx.digits())?, ctx.digits()))
}

fn poly_checks(n: u32, ctx: &PrecisionContext) -> Result<Vec<VerificationReport>> {
    let tol = default_tolerance("poly-identities", ctx.digits())?;
    Ok(t_star_poly_check(n as u64)?
        .into_iter()
        .map(|p| {
            let method = format!("{} (exact)", p.describe());
            let depth = p.depth as i64;
            Comparison::exact(p.lhs, p.rhs, method, Work::Terms(n as u64))
                .into_report("poly-identities", params(&[("j", depth), ("n", n as i64)]), &tol, ctx.digits())
        })
        .collect())
}

fn beta_check(m: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let series = constants::beta_series(m, ctx)?;
    let closed = beta_odd_closed_form(m, ctx)?;
    let coeff = beta_odd_pi_coefficient(m)?;
    let cmp = Comparison::new(
        &series,
        &closed,
        format!("accelerated alternating series vs {}*pi^{m}", coeff),
        Work::Terms(constants::accel::terms_for_bits(ctx.working_bits()) as u64),
    );
    Ok(cmp.into_report("beta-table", params(&[("m", m as i64)]), &default_tolerance("beta-table", ctx.digits())?, ctx.digits()))
}

fn jobs<'a>(id: &str, r: &'a ParamRanges) -> Result<Vec<Job<'a>>> {
    let mut out = Vec::new();
    match id {
        "theorem1" | "gencev" => {
            let kind: FamilyKind = id.parse()?;
            for j in pick(&r.j, 0..=4) {
                out.push(job(vec![("j", j as i64)], move |c| series_check(kind, j, c)));
            }
        }
        "corollary" => {
            let js = pick(&r.j, 0..=3);
            if *js.end() > 3 {
                return Err(Error::Domain("corollary fixtures exist for j = 0..3".into()));
            }
            for j in js {
                out.push(job(vec![("j", j as i64)], move |c| corollary_check(j, c)));
            }
        }
        "L1i" | "L3" | "R1" | "R3" => {
            let ns = pick(&r.n, 1..=6);
            require_min("n", &ns, 1)?;
            for m in pick(&r.m, 0..=3) {
                for n in ns.clone() {
                    let f = match id {
                        "L1i" => checks::check_l1i,
                        "L3" => checks::check_l3,
                        "R1" => checks::check_r1,
                        _ => checks::check_r3,
                    };
                    out.push(job(vec![("m", m as i64), ("n", n as i64)], move |c| f(m, n, c)));
                }
            }
        }
        "L1ii" => {
            let ks = pick(&r.k, 1..=6);
            require_min("k", &ks, 1)?;
            for m in pick(&r.m, 0..=3) {
                for k in ks.clone() {
                    out.push(job(vec![("k", k as i64), ("m", m as i64)], move |c| checks::check_l1ii(m, k, c)));
                }
            }
        }
        "L2i" => {
            let terms = r.terms.unwrap_or(DEFAULT_L2I_TERMS);
            for x in L2I_SAMPLES {
                out.push(job(vec![("K", terms as i64), ("x_pi_over", x as i64)], move |c| checks::check_l2i(x, terms, c)));
            }
        }
        "L2ii" => {
            for j in pick(&r.j, 0..=2) {
                for t in L2II_SAMPLES {
                    out.push(job(vec![("j", j as i64), ("t_permille", t)], move |c| checks::check_l2ii(t, j, c)));
                }
            }
        }
        "L2iii" => {
            for j in pick(&r.j, 0..=3) {
                out.push(job(vec![("j", j as i64)], move |c| checks::check_l2iii(j, c)));
            }
        }
        "L2iv" | "R2" => {
            let f = if id == "L2iv" { checks::check_l2iv } else { checks::check_r2 };
            for m in pick(&r.m, 0..=3) {
                out.push(job(vec![("m", m as i64)], move |c| f(m, c)));
            }
        }
        "oracle-tstar" | "oracle-zetastar" => {
            let zeta = id == "oracle-zetastar";
            let ns = pick(&r.n, 1..=15);
            require_min("n", &ns, 1)?;
            for n in ns {
                for j in pick(&r.j, 0..=4) {
                    out.push(job(vec![("j", j as i64), ("n", n as i64)], move |c| oracle_check(zeta, n, j, c)));
                }
            }
        }
        "beta-table" => {
            let ms = pick(&r.m, 1..=13);
            require_min("m", &ms, 1)?;
            for m in ms.filter(|m| m % 2 == 1) {
                out.push(job(vec![("m", m as i64)], move |c| beta_check(m, c)));
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "unknown identity {id:?}; known: {}",
                IDENTITIES.join(", ")
            )))
        }
    }
    Ok(out)
}

fn verdict_from_error(id: &str, p: &[(&str, i64)], tol: &BigRational, digits: u32, err: Error) -> Result<VerificationReport> {
    match err {
        Error::NonConvergent(_) | Error::Quadrature(_) | Error::Capacity(_) => {
            Ok(VerificationReport::inconclusive(id, params(p), tol, digits, &err))
        }
        Error::CrossCheck(_) => {
            let mut r = VerificationReport::inconclusive(id, params(p), tol, digits, &err);
            r.status = Status::Fail;
            Ok(r)
        }
        other => Err(other),
    }
}

/// Runs every check of one identity over its grid, in a fixed order.
///
/// Fails for unknown ids, malformed ranges and a digit target above the
/// ceiling. Per-check non-convergence yields an `INCONCLUSIVE` report.
pub fn run_suite(id: &str, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let ctx = make_context(opts.digits)?;
    let digits = ctx.digits();
    let tol = match &opts.tolerance {
        Some(t) => t.clone(),
        None => default_tolerance(id, digits)?,
    };
    let mut out = Vec::new();
    if id == "poly-identities" {
        let ns = pick(&opts.ranges.n, 1..=50);
        require_min("n", &ns, 1)?;
        for n in ns {
            let start = Instant::now();
            for mut r in poly_checks(n, &ctx)? {
                r.set_tolerance(&tol, digits);
                if opts.timing {
                    r.elapsed_ms = start.elapsed().as_millis() as u64;
                }
                out.push(r);
            }
        }
        return Ok(out);
    }
    for job in jobs(id, &opts.ranges)? {
        let start = Instant::now();
        let mut r = match (job.run)(&ctx) {
            Ok(r) => r,
            Err(e) => verdict_from_error(id, &job.params, &tol, digits, e)?,
        };
        r.set_tolerance(&tol, digits);
        if opts.timing {
            r.elapsed_ms = start.elapsed().as_millis() as u64;
        }
        out.push(r);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub expr: String,
    pub value: String,
}

/// The four corollary evaluations: reduced closed form and value with
/// `digits` places after the point.
pub fn table_corollary(digits: u32) -> Result<Vec<TableRow>> {
    let ctx = make_context(digits.max(1))?.with_extra_bits(32);
    (1..=4)
        .map(|i| {
            let (raw, reduced) = closed_form::corollary_fixture(i)?;
            let v = reduced.eval(&ctx)?;
            Ok(TableRow {
                label: format!("j={}", i - 1),
                expr: format!("{} = {}", fold_symmetry(&raw), reduced),
                value: v.value.to_fixed_string(digits as usize),
            })
        })
        .collect()
}

/// `β(1..=8)` with `digits` places after the point.
pub fn table_beta(digits: u32) -> Result<Vec<TableRow>> {
    let ctx = make_context(digits.max(1))?.with_extra_bits(32);
    (1..=8u32)
        .map(|m| {
            let v = constants::beta(m, &ctx)?;
            let expr = if m % 2 == 1 {
                format!("{}*pi^{m}", beta_odd_pi_coefficient(m)?)
            } else if m == 2 {
                "G".to_string()
            } else {
                format!("beta({m})")
            };
            Ok(TableRow { label: format!("beta({m})"), expr, value: v.value.to_fixed_string(digits as usize) })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: u64,
    pub s_n: String,
    /// `|RHS - S_N|`, rounded up.
    pub error: String,
    pub error_f64: f64,
    /// Time from the start of the run until `S_N` was reached.
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub family: FamilyKind,
    pub j: u32,
    pub rhs: String,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln E_N` against `ln N`.
    pub fitted_exponent: Option<f64>,
}

/// Partial sums at the schedule's indices against the closed form.
pub fn bench(kind: FamilyKind, j: u32, schedule: &[u64], digits: u32) -> Result<BenchReport> {
    if schedule.is_empty() {
        return Err(Error::Domain("empty schedule".into()));
    }
    let fam = SeriesFamily::new(kind, j as usize)?;
    let mut pts = schedule.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let ctx = make_context(digits)?;
    let work = series::series_context(&ctx, *pts.last().unwrap())?;
    let rhs_expr = match kind {
        FamilyKind::Theorem1 => fold_symmetry(&rhs_theorem1(j)),
        FamilyKind::Gencev => rhs_gencev(j),
    };
    let rhs = rhs_expr.eval(&work)?;
    let mut stream = SeriesStream::new(fam, work.working_bits());
    let start = Instant::now();
    let mut rows = Vec::new();
    for n in pts {
        stream.advance_to(n);
        let err: Real = abs_diff(stream.sum(), &rhs.value);
        rows.push(BenchRow {
            n,
            s_n: stream.sum().to_sci_string(digits as usize, crate::decimal::DecimalRounding::Nearest),
            error: err.to_sci_string(6, crate::decimal::DecimalRounding::Up),
            error_f64: err.to_f64(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    let fit: Vec<(u64, f64)> = rows.iter().map(|r| (r.n, r.error_f64)).collect();
    Ok(BenchReport { family: kind, j, rhs: rhs_expr.to_string(), fitted_exponent: series::fit_tail_exponent(&fit), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..3").unwrap(), 0..=3);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn schedules() {
        assert_eq!(parse_schedule("1000x4^2").unwrap(), vec![1000, 4000, 16000]);
        assert_eq!(parse_schedule("1x2^0").unwrap(), vec![1]);
        assert!(parse_schedule("1000x1^2").is_err());
        assert!(parse_schedule("1000*4^2").is_err());
    }

    #[test]
    fn unknown_identity() {
        assert!(run_suite("lemma9", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn oracle_reports_are_exact() {
        let opts = SuiteOptions {
            ranges: ParamRanges { n: Some(1..=4), j: Some(0..=2), ..Default::default() },
            ..Default::default()
        };
        let rs = run_suite("oracle-tstar", &opts).unwrap();
        assert_eq!(rs.len(), 12);
        for r in rs {
            assert_eq!(r.status, Status::Pass);
            assert!(crate::decimal::parse_decimal(&r.abs_error).unwrap() == BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn bench_small() {
        let b = bench(FamilyKind::Theorem1, 0, &[1], 20).unwrap();
        assert_eq!(b.rows[0].s_n, "2.0000000000000000000e+0");
        let g = bench(FamilyKind::Gencev, 0, &[2], 20).unwrap();
        assert_eq!(g.rows[0].s_n, "6.8750000000000000000e-1");
    }

    #[test]
    fn corollary_table() {
        let t = table_corollary(12).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[0].value, "4.934802200545");
        let coarse = table_corollary(1).unwrap();
        assert_eq!(coarse[0].value, "4.9");
        assert_eq!(table_beta(10).unwrap().len(), 8);
    }

    #[test]
    fn timing_off_means_zero_elapsed() {
        let opts = SuiteOptions { ranges: ParamRanges { j: Some(0..=0), ..Default::default() }, ..Default::default() };
        for r in run_suite("gencev", &opts).unwrap() {
            assert_eq!(r.elapsed_ms, 0);
            assert_eq!(r.status, Status::Pass);
        }
    }
}
