//! Odd harmonic numbers and depth-`j` star sums of weight `2j`.
//!
//! [`HarmonicState`] streams, for one index `n`, the odd harmonic numbers
//! `O_n^(m)`, their alternating variants `Ō_n^(m)`, and the star sums
//! `t★_n({2}_j')` (odd denominators) and `ζ★_n({2}_j')` (all denominators)
//! for every depth `j' ≤ J`. Advancing from `n` to `n+1` costs `O(J + #orders)`.
//!
//! Conventions: `t★_n(∅) = ζ★_n(∅) = 1` for all `n ≥ 0`, and every star sum of
//! positive depth is `0` at `n = 0` (empty range).
//!
//! The state is generic over [`Scalar`]: exact rationals for oracle tests,
//! [`Real`] for the series engine.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Largest `n` accepted by the exact-rational helpers.
pub const EXACT_MAX_N: u64 = 200;
/// Brute-force enumeration limits.
pub const BRUTE_FORCE_MAX_N: u64 = 30;
pub const BRUTE_FORCE_MAX_DEPTH: usize = 6;

/// Arithmetic needed by the harmonic recurrences.
pub trait Scalar: Clone + fmt::Debug {
    /// Evaluation parameters (nothing for rationals, bit count for reals).
    type Ctx: Clone + fmt::Debug;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    /// `1 / base^exp`.
    fn inv_pow(base: u64, exp: u32, ctx: &Self::Ctx) -> Self;
    /// `self · num / den`.
    fn mul_ratio(&self, num: i64, den: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn is_exact() -> bool;
}

impl Scalar for BigRational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        BigRational::zero()
    }
    fn one_in(_: &()) -> Self {
        BigRational::one()
    }
    fn inv_pow(base: u64, exp: u32, _: &()) -> Self {
        BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(base), exp as usize))
    }
    fn mul_ratio(&self, num: i64, den: i64) -> Self {
        self * BigRational::new(num.into(), den.into())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Real {
    type Ctx = usize;

    fn zero_in(bits: &usize) -> Self {
        Real::zero(*bits)
    }
    fn one_in(bits: &usize) -> Self {
        Real::one(*bits)
    }
    fn inv_pow(base: u64, exp: u32, bits: &usize) -> Self {
        Real::from_u64(base, *bits).powi(exp).recip()
    }
    fn mul_ratio(&self, num: i64, den: i64) -> Self {
        self.mul_i64(num).div_i64(den)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn is_exact() -> bool {
        false
    }
}

/// Arithmetic mode of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ExactRational,
    Floating,
}

/// Which star-sum families a state carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tracks {
    pub odd_star: bool,
    pub zeta_star: bool,
}

impl Tracks {
    pub const BOTH: Tracks = Tracks { odd_star: true, zeta_star: true };
    pub const ODD: Tracks = Tracks { odd_star: true, zeta_star: false };
    pub const ZETA: Tracks = Tracks { odd_star: false, zeta_star: true };
}

/// Streaming harmonic quantities at one index `n`.
#[derive(Debug, Clone)]
pub struct HarmonicState<S: Scalar> {
    n: u64,
    depth: usize,
    orders: Vec<u32>,
    odd_harmonics: Vec<S>,
    alt_odd_harmonics: Vec<S>,
    t_star: Vec<S>,
    zeta_star: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Scalar> HarmonicState<S> {
    /// State at `n = 0` carrying both star families up to `depth` and the odd
    /// harmonic numbers of the given orders.
    pub fn new(depth: usize, orders: &[u32], ctx: S::Ctx) -> Self {
        Self::with_tracks(depth, orders, Tracks::BOTH, ctx)
    }

    pub fn with_tracks(depth: usize, orders: &[u32], tracks: Tracks, ctx: S::Ctx) -> Self {
        let initial = |on: bool| -> Vec<S> {
            if !on {
                return Vec::new();
            }
            let mut v = vec![S::zero_in(&ctx); depth + 1];
            v[0] = S::one_in(&ctx);
            v
        };
        HarmonicState {
            n: 0,
            depth,
            orders: orders.to_vec(),
            odd_harmonics: vec![S::zero_in(&ctx); orders.len()],
            alt_odd_harmonics: vec![S::zero_in(&ctx); orders.len()],
            t_star: initial(tracks.odd_star),
            zeta_star: initial(tracks.zeta_star),
            ctx,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn mode(&self) -> Mode {
        if S::is_exact() {
            Mode::ExactRational
        } else {
            Mode::Floating
        }
    }

    /// `t★_n({2}_j)`, if tracked and `j ≤ depth`.
    pub fn t_star(&self, j: usize) -> Option<&S> {
        self.t_star.get(j)
    }

    /// `ζ★_n({2}_j)`, if tracked and `j ≤ depth`.
    pub fn zeta_star(&self, j: usize) -> Option<&S> {
        self.zeta_star.get(j)
    }

    pub fn t_star_all(&self) -> &[S] {
        &self.t_star
    }

    pub fn zeta_star_all(&self) -> &[S] {
        &self.zeta_star
    }

    /// `O_n^(m)` for a configured order `m`.
    pub fn odd_harmonic(&self, m: u32) -> Option<&S> {
        self.orders.iter().position(|&o| o == m).map(|i| &self.odd_harmonics[i])
    }

    /// `Ō_n^(m)` for a configured order `m`.
    pub fn alt_odd_harmonic(&self, m: u32) -> Option<&S> {
        self.orders.iter().position(|&o| o == m).map(|i| &self.alt_odd_harmonics[i])
    }

    /// Returns the state at `n + 1`.
    pub fn advance(&self) -> Self {
        let mut next = self.clone();
        next.step();
        next
    }

    /// Moves this state from `n` to `n + 1` in place.
    pub fn step(&mut self) {
        let n = self.n;
        let odd = 2 * n + 1;
        for (i, &m) in self.orders.iter().enumerate() {
            let t = S::inv_pow(odd, m, &self.ctx);
            self.odd_harmonics[i] = self.odd_harmonics[i].plus(&t);
            self.alt_odd_harmonics[i] = if n.is_multiple_of(2) {
                self.alt_odd_harmonics[i].plus(&t)
            } else {
                self.alt_odd_harmonics[i].minus(&t)
            };
        }
        if !self.t_star.is_empty() {
            let w = S::inv_pow(odd, 2, &self.ctx);
            for j in 1..=self.depth {
                let inc = self.t_star[j - 1].times(&w);
                self.t_star[j] = self.t_star[j].plus(&inc);
            }
        }
        if !self.zeta_star.is_empty() {
            let w = S::inv_pow(n + 1, 2, &self.ctx);
            for j in 1..=self.depth {
                let inc = self.zeta_star[j - 1].times(&w);
                self.zeta_star[j] = self.zeta_star[j].plus(&inc);
            }
        }
        self.n = n + 1;
    }

    /// Advances until the index equals `n` (no-op if already past it).
    pub fn advance_to(&mut self, n: u64) {
        while self.n < n {
            self.step();
        }
    }
}

/// Exact state at index `n`, refusing indices above [`EXACT_MAX_N`].
pub fn exact_state(n: u64, depth: usize, orders: &[u32]) -> Result<HarmonicState<BigRational>> {
    if n > EXACT_MAX_N {
        return Err(Error::Capacity(format!(
            "exact harmonic state requested at n = {n}; cap is {EXACT_MAX_N}"
        )));
    }
    let mut s = HarmonicState::new(depth, orders, ());
    s.advance_to(n);
    Ok(s)
}

/// Result of a brute-force nested-sum enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumerated {
    pub value: BigRational,
    /// Number of index tuples visited.
    pub tuples: u64,
}

fn check_brute_force_size(n: u64, j: usize) -> Result<()> {
    if n > BRUTE_FORCE_MAX_N || j > BRUTE_FORCE_MAX_DEPTH {
        return Err(Error::Capacity(format!(
            "brute-force enumeration limited to n <= {BRUTE_FORCE_MAX_N}, j <= {BRUTE_FORCE_MAX_DEPTH}; got n = {n}, j = {j}"
        )));
    }
    Ok(())
}

/// `Σ_{n ≥ k_1 ≥ … ≥ k_j ≥ 1} Π 1/d(k_i)^2` by enumerating every tuple.
///
/// Terms are accumulated over the common denominator `lcm(d(1..n))^(2j)` in
/// integer arithmetic, so no rational normalisation happens per tuple.
fn enumerate_star_sum(n: u64, j: usize, d: impl Fn(u64) -> u64) -> Result<Enumerated> {
    check_brute_force_size(n, j)?;
    if j == 0 {
        return Ok(Enumerated { value: BigRational::one(), tuples: 1 });
    }
    if n == 0 {
        return Ok(Enumerated { value: BigRational::zero(), tuples: 0 });
    }
    let lcm = (1..=n).fold(BigUint::one(), |acc, k| acc.lcm(&BigUint::from(d(k))));
    let common = num_traits::pow(lcm, 2 * j);

    fn walk(
        left: usize,
        max_k: u64,
        prod: u128,
        d: &dyn Fn(u64) -> u64,
        common: &BigUint,
        acc: &mut BigUint,
        tuples: &mut u64,
    ) {
        if left == 0 {
            *acc += common / BigUint::from(prod);
            *tuples += 1;
            return;
        }
        for k in 1..=max_k {
            let dk = d(k) as u128;
            walk(left - 1, k, prod * dk * dk, d, common, acc, tuples);
        }
    }

    let mut acc = BigUint::zero();
    let mut tuples = 0u64;
    walk(j, n, 1, &d, &common, &mut acc, &mut tuples);
    let value = BigRational::new(BigInt::from(acc), BigInt::from(common));
    Ok(Enumerated { value, tuples })
}

/// `t★_n({2}_j)` by direct enumeration of `n ≥ k_1 ≥ … ≥ k_j ≥ 1`.
pub fn t_star_bruteforce(n: u64, j: usize) -> Result<Enumerated> {
    enumerate_star_sum(n, j, |k| 2 * k - 1)
}

/// `ζ★_n({2}_j)` by direct enumeration.
pub fn zeta_star_bruteforce(n: u64, j: usize) -> Result<Enumerated> {
    enumerate_star_sum(n, j, |k| k)
}

/// `t★_k({2}_j)` for `k = 0..=n` from the depth recurrence
/// `t★_n({2}_j) = Σ_{k=1}^{n} t★_k({2}_{j-1}) / (2k-1)^2`, each sum formed
/// from scratch.
pub fn t_star_by_depth_recurrence(n: u64, j: usize) -> Result<Vec<BigRational>> {
    if n > EXACT_MAX_N {
        return Err(Error::Capacity(format!("depth recurrence limited to n <= {EXACT_MAX_N}")));
    }
    let mut level: Vec<BigRational> = vec![BigRational::one(); n as usize + 1];
    for _ in 0..j {
        let weighted: Vec<BigRational> = (0..=n)
            .map(|k| {
                if k == 0 {
                    BigRational::zero()
                } else {
                    &level[k as usize] / BigRational::from_integer(BigInt::from((2 * k - 1) * (2 * k - 1)))
                }
            })
            .collect();
        level = (0..=n as usize)
            .map(|m| weighted[1..=m].iter().fold(BigRational::zero(), |acc, w| acc + w))
            .collect();
    }
    Ok(level)
}

/// Outcome of one polynomial reduction at one index.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyIdentity {
    /// Depth `j` whose reduction is checked (2 or 3).
    pub depth: usize,
    pub n: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl PolyIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn describe(&self) -> String {
        match self.depth {
            2 => "t*_n({2}_2) = ((O2)^2 + O4)/2".to_string(),
            _ => "t*_n({2}_3) = ((O2)^3 + 3*O2*O4 + 2*O6)/6".to_string(),
        }
    }
}

/// Checks the depth-2 and depth-3 reductions to odd harmonic numbers exactly:
/// `t★_n({2}_2) = ((O_n^(2))² + O_n^(4))/2` and
/// `t★_n({2}_3) = ((O_n^(2))³ + 3 O_n^(2) O_n^(4) + 2 O_n^(6))/6`.
pub fn t_star_poly_check(n: u64) -> Result<Vec<PolyIdentity>> {
    if n == 0 {
        return Err(Error::Domain("polynomial identities are checked for n >= 1".into()));
    }
    let s = exact_state(n, 3, &[2, 4, 6])?;
    let o2 = s.odd_harmonic(2).expect("order 2 tracked");
    let o4 = s.odd_harmonic(4).expect("order 4 tracked");
    let o6 = s.odd_harmonic(6).expect("order 6 tracked");
    let half = BigRational::new(1.into(), 2.into());
    let sixth = BigRational::new(1.into(), 6.into());
    let three = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());

    let rhs2 = (o2 * o2 + o4) * &half;
    let rhs3 = (o2 * o2 * o2 + &three * o2 * o4 + &two * o6) * &sixth;
    Ok(vec![
        PolyIdentity { depth: 2, n, lhs: s.t_star(2).unwrap().clone(), rhs: rhs2 },
        PolyIdentity { depth: 3, n, lhs: s.t_star(3).unwrap().clone(), rhs: rhs3 },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn advance_examples() {
        let s0: HarmonicState<BigRational> = HarmonicState::new(4, &[2], ());
        assert_eq!(s0.t_star(0), Some(&q(1, 1)));
        assert!(s0.t_star_all()[1..].iter().all(|v| v.is_zero()));
        assert!(s0.zeta_star_all()[1..].iter().all(|v| v.is_zero()));

        let s1 = s0.advance();
        assert!(s1.t_star_all().iter().all(|v| *v == q(1, 1)));
        assert!(s1.zeta_star_all().iter().all(|v| *v == q(1, 1)));

        let s2 = s1.advance();
        assert_eq!(s2.t_star(1), Some(&q(10, 9)));
        assert_eq!(s2.t_star(2), Some(&q(91, 81)));
        assert_eq!(s2.odd_harmonic(2), Some(&q(10, 9)));
        assert_eq!(s2.alt_odd_harmonic(2), Some(&q(8, 9)));
        assert_eq!(s2.zeta_star(1), Some(&q(5, 4)));
    }

    #[test]
    fn brute_force_examples() {
        for n in 0..6 {
            assert_eq!(t_star_bruteforce(n, 0).unwrap().value, q(1, 1));
            assert_eq!(zeta_star_bruteforce(n, 0).unwrap().value, q(1, 1));
        }
        for j in 0..=6 {
            assert_eq!(t_star_bruteforce(1, j).unwrap().value, q(1, 1));
        }
        assert_eq!(t_star_bruteforce(2, 1).unwrap().value, q(10, 9));
        assert_eq!(zeta_star_bruteforce(2, 1).unwrap().value, q(5, 4));

        // 3 ≥ k1 ≥ k2 ≥ 1: (1,1),(2,1),(2,2),(3,1),(3,2),(3,3)
        let by_hand = q(1, 1) + q(1, 4) + q(1, 16) + q(1, 9) + q(1, 36) + q(1, 81);
        let e = zeta_star_bruteforce(3, 2).unwrap();
        assert_eq!(e.value, by_hand);
        assert_eq!(e.tuples, 6);
    }

    #[test]
    fn brute_force_size_guard() {
        assert!(matches!(t_star_bruteforce(31, 2), Err(Error::Capacity(_))));
        assert!(matches!(zeta_star_bruteforce(5, 7), Err(Error::Capacity(_))));
    }

    #[test]
    fn streaming_matches_brute_force_on_full_grid() {
        let mut s: HarmonicState<BigRational> = HarmonicState::new(6, &[], ());
        for n in 0..=BRUTE_FORCE_MAX_N {
            s.advance_to(n);
            for j in 0..=6 {
                assert_eq!(s.t_star(j).unwrap(), &t_star_bruteforce(n, j).unwrap().value, "t* n={n} j={j}");
                assert_eq!(s.zeta_star(j).unwrap(), &zeta_star_bruteforce(n, j).unwrap().value, "z* n={n} j={j}");
            }
        }
    }

    #[test]
    fn streaming_matches_depth_recurrence() {
        let mut s: HarmonicState<BigRational> = HarmonicState::with_tracks(5, &[2], Tracks::ODD, ());
        let tables: Vec<Vec<BigRational>> = (0..=5).map(|j| t_star_by_depth_recurrence(100, j).unwrap()).collect();
        for n in 0..=100u64 {
            s.advance_to(n);
            for (j, table) in tables.iter().enumerate() {
                assert_eq!(s.t_star(j).unwrap(), &table[n as usize]);
            }
            assert_eq!(s.t_star(1), s.odd_harmonic(2));
        }
    }

    #[test]
    fn star_sum_bounds_and_monotonicity() {
        let mut s: HarmonicState<BigRational> = HarmonicState::with_tracks(4, &[2], Tracks::ODD, ());
        let mut prev = s.t_star_all().to_vec();
        let fact = [1i64, 1, 2, 6, 24];
        for n in 1..=40u64 {
            s.step();
            let o2 = s.odd_harmonic(2).unwrap().clone();
            for j in 0..=4usize {
                let t = s.t_star(j).unwrap();
                assert!(t >= &prev[j]);
                let full = num_traits::pow(o2.clone(), j);
                assert!(t <= &full, "upper n={n} j={j}");
                assert!(t >= &(&full / BigRational::from_integer(fact[j].into())), "lower n={n} j={j}");
            }
            prev = s.t_star_all().to_vec();
        }
    }

    #[test]
    fn poly_identities_examples() {
        for n in [1u64, 2, 50] {
            let r = t_star_poly_check(n).unwrap();
            assert!(r.iter().all(PolyIdentity::holds), "n = {n}");
        }
        let s = exact_state(2, 0, &[2, 4, 6]).unwrap();
        assert_eq!(s.odd_harmonic(2), Some(&q(10, 9)));
        assert_eq!(s.odd_harmonic(4), Some(&q(82, 81)));
        assert_eq!(s.odd_harmonic(6), Some(&q(730, 729)));
        assert!(t_star_poly_check(0).is_err());
    }

    #[test]
    fn exact_cap_is_enforced() {
        assert!(matches!(exact_state(EXACT_MAX_N + 1, 1, &[]), Err(Error::Capacity(_))));
    }

    #[test]
    fn floating_mode_tracks_rational_mode() {
        let bits = 128;
        let mut exact: HarmonicState<BigRational> = HarmonicState::new(4, &[1, 2, 3], ());
        let mut float: HarmonicState<Real> = HarmonicState::new(4, &[1, 2, 3], bits);
        assert_eq!(float.mode(), Mode::Floating);
        assert_eq!(exact.mode(), Mode::ExactRational);
        for n in [1u64, 7, 50, 200] {
            exact.advance_to(n);
            float.advance_to(n);
            let tol = Real::one(64).ldexp(-(bits as i32) + 16);
            for j in 0..=4 {
                let a = Real::from_ratio(exact.t_star(j).unwrap(), bits + 64);
                assert!(crate::real::abs_diff(&a, float.t_star(j).unwrap()) <= tol);
                let b = Real::from_ratio(exact.zeta_star(j).unwrap(), bits + 64);
                assert!(crate::real::abs_diff(&b, float.zeta_star(j).unwrap()) <= tol);
            }
            let ob = Real::from_ratio(exact.alt_odd_harmonic(3).unwrap(), bits + 64);
            assert!(crate::real::abs_diff(&ob, float.alt_odd_harmonic(3).unwrap()) <= tol);
        }
    }
}
