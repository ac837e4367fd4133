//! Symbolic right-hand sides built from rationals, π powers, Catalan's
//! constant and values of β and η.
//!
//! An expression is a sum of terms `coeff * f_1 * f_2 * …`. Expressions are
//! kept in canonical form (factors sorted, π powers merged, like terms
//! combined, zero terms dropped), so structural equality is meaningful. The
//! one exception is [`rhs_theorem1`], which keeps its 2j+1 summands apart
//! until [`fold_symmetry`] merges them.
//!
//! Text form, used in reports and accepted by [`ClosedFormExpr::from_str`]:
//!
//! ```text
//! expr    := "0" | term (("+" | "-") term)*      leading "-" allowed
//! term    := coeff | [coeff "*"] factor ("*" factor)*
//! coeff   := int | int "/" int
//! factor  := atom ["^" int]
//! atom    := "pi" | "G" | "beta(" int ")" | "eta(" int ")"
//! ```
//!
//! For example `16*beta(1)*beta(3) - 8*beta(2)^2` or `17/5760*pi^8`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constants;
use crate::error::{Error, Result};
use crate::harmonic::exact_state;
use crate::precision::{BoundedValue, PrecisionContext};
use crate::real::Real;

/// Factor kinds, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    /// `π^arg`.
    PiPower,
    /// Catalan's constant `G`; `arg` is unused and kept at 0.
    Catalan,
    /// `β(arg)`.
    Beta,
    /// `η(arg)`.
    Eta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub kind: FactorKind,
    pub arg: u32,
}

impl Factor {
    pub fn beta(m: u32) -> Self {
        Factor { kind: FactorKind::Beta, arg: m }
    }
    pub fn eta(s: u32) -> Self {
        Factor { kind: FactorKind::Eta, arg: s }
    }
    pub fn pi_power(k: u32) -> Self {
        Factor { kind: FactorKind::PiPower, arg: k }
    }
    pub fn catalan() -> Self {
        Factor { kind: FactorKind::Catalan, arg: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn new(coeff: BigRational, factors: Vec<Factor>) -> Self {
        let mut t = Term { coeff, factors };
        t.normalize();
        t
    }

    fn normalize(&mut self) {
        let pi: u32 = self
            .factors
            .iter()
            .filter(|f| f.kind == FactorKind::PiPower)
            .map(|f| f.arg)
            .sum();
        self.factors.retain(|f| f.kind != FactorKind::PiPower);
        if pi > 0 {
            self.factors.push(Factor::pi_power(pi));
        }
        self.factors.sort();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosedFormExpr {
    terms: Vec<Term>,
}

impl ClosedFormExpr {
    pub fn zero() -> Self {
        ClosedFormExpr::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<Vec<Factor>, BigRational> = BTreeMap::new();
        for t in terms {
            let t = Term::new(t.coeff, t.factors);
            *merged.entry(t.factors).or_insert_with(BigRational::zero) += t.coeff;
        }
        ClosedFormExpr {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(factors, coeff)| Term { coeff, factors })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClosedFormExpr) -> ClosedFormExpr {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, q: &BigRational) -> ClosedFormExpr {
        Self::from_terms(self.terms.iter().map(|t| Term { coeff: &t.coeff * q, factors: t.factors.clone() }))
    }

    /// Product of two expressions, expanded.
    pub fn mul(&self, other: &ClosedFormExpr) -> ClosedFormExpr {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut f = a.factors.clone();
                f.extend_from_slice(&b.factors);
                out.push(Term { coeff: &a.coeff * &b.coeff, factors: f });
            }
        }
        Self::from_terms(out)
    }

    /// Numeric value with a propagated error bound.
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BoundedValue> {
        let mut cache: BTreeMap<Factor, BoundedValue> = BTreeMap::new();
        let mut total = BoundedValue::exact(Real::zero(ctx.working_bits()));
        for term in &self.terms {
            let mut prod = BoundedValue::from_rational(&term.coeff, ctx.working_bits());
            for f in &term.factors {
                if !cache.contains_key(f) {
                    cache.insert(*f, eval_factor(f, ctx)?);
                }
                prod = prod.mul(&cache[f]);
            }
            total = total.add(&prod);
        }
        Ok(total)
    }
}

fn eval_factor(f: &Factor, ctx: &PrecisionContext) -> Result<BoundedValue> {
    match f.kind {
        FactorKind::PiPower => Ok(constants::pi(ctx).powi(f.arg)),
        FactorKind::Catalan => constants::catalan(ctx),
        FactorKind::Beta => constants::beta(f.arg, ctx),
        FactorKind::Eta => constants::eta(f.arg, ctx),
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qi(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn sign(k: i64) -> BigRational {
    if k.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn central_binomial(n: u64) -> BigInt {
    factorial(2 * n) / (factorial(n) * factorial(n))
}

/// `(π/2)^k` as a one-term expression.
fn half_pi_power(k: u32) -> Term {
    Term::new(BigRational::new(BigInt::one(), BigInt::one() << k as usize), vec![Factor::pi_power(k)])
}

fn term_times(t: &Term, c: &BigRational) -> Term {
    Term { coeff: &t.coeff * c, factors: t.factors.clone() }
}

/// `coeff · Σ_{k=0}^{2j} (-1)^k β(k+1) β(2j-k+1)`.
pub fn beta_product_sum(j: u32, coeff: &BigRational) -> ClosedFormExpr {
    let mut terms = Vec::new();
    for k in 0..=2 * j {
        terms.push(Term {
            coeff: coeff * sign(k as i64),
            factors: vec![Factor::beta(k + 1), Factor::beta(2 * j - k + 1)],
        });
    }
    // Built without merging so the 2j+1 summands stay visible; the symmetric
    // pairs k and 2j-k are combined by fold_symmetry.
    ClosedFormExpr {
        terms: terms
            .into_iter()
            .map(|t| {
                let mut t = t;
                t.factors.sort();
                t
            })
            .collect(),
    }
}

/// `8 Σ_{k=0}^{2j} (-1)^k β(k+1) β(2j-k+1)`, unfolded (2j+1 terms).
pub fn rhs_theorem1(j: u32) -> ClosedFormExpr {
    beta_product_sum(j, &q(8, 1))
}

/// Merges the `k ↔ 2j-k` pairs of an unfolded beta product sum.
pub fn fold_symmetry(expr: &ClosedFormExpr) -> ClosedFormExpr {
    ClosedFormExpr::from_terms(expr.terms.iter().cloned())
}

/// `2 η(2j+1)`.
pub fn rhs_gencev(j: u32) -> ClosedFormExpr {
    ClosedFormExpr::from_terms([Term::new(q(2, 1), vec![Factor::eta(2 * j + 1)])])
}

/// `∫_0^{π/2} x^{2m} cos((2n-1)x) dx` in closed form.
pub fn rhs_lemma1i(m: u32, n: u32) -> Result<ClosedFormExpr> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let f2m = factorial(2 * m as u64);
    let odd = BigInt::from(2 * n - 1);
    Ok(ClosedFormExpr::from_terms((0..=m).map(|j| {
        let c = sign((j + n - 1) as i64) * qi(f2m.clone())
            / qi(factorial((2 * m - 2 * j) as u64) * num_traits::pow(odd.clone(), (2 * j + 1) as usize));
        term_times(&half_pi_power(2 * m - 2 * j), &c)
    })))
}

/// `∫_0^{π/2} x^{2m} sin(2kx)/sin(x) dx` in closed form.
pub fn rhs_lemma1ii(m: u32, k: u32) -> Result<ClosedFormExpr> {
    let orders: Vec<u32> = (0..=m).map(|j| 2 * j + 1).collect();
    let state = exact_state(k as u64, 0, &orders)?;
    let f2m = factorial(2 * m as u64);
    Ok(ClosedFormExpr::from_terms((0..=m).map(|j| {
        let alt = state.alt_odd_harmonic(2 * j + 1).expect("order tracked").clone();
        let c = sign(j as i64) * q(2, 1) * qi(f2m.clone()) * alt / qi(factorial((2 * m - 2 * j) as u64));
        term_times(&half_pi_power(2 * m - 2 * j), &c)
    })))
}

/// `½ Σ_{k=0}^{2j} (-1)^k β(k+1) β(2j-k+1)`.
pub fn rhs_lemma2iii(j: u32) -> ClosedFormExpr {
    fold_symmetry(&beta_product_sum(j, &q(1, 2)))
}

/// `∫_0^{π/2} x^{2m} ln(sin x)/cos x dx` in closed form.
pub fn rhs_lemma2iv(m: u32) -> ClosedFormExpr {
    let f2m = factorial(2 * m as u64);
    let mut out = ClosedFormExpr::zero();
    for j in 0..=m {
        let c = sign(j as i64 - 1) * q(2, 1) * qi(f2m.clone()) / qi(factorial((2 * m - 2 * j) as u64));
        let pi = ClosedFormExpr::from_terms([term_times(&half_pi_power(2 * m - 2 * j), &c)]);
        out = out.add(&pi.mul(&beta_product_sum(j, &BigRational::one())));
    }
    out
}

/// `∫_0^{π/2} x^{2m} cos^{2n-1}(x) dx` in closed form, with the star sums
/// `t★_n({2}_j)` evaluated exactly.
pub fn rhs_lemma3(m: u32, n: u32) -> Result<ClosedFormExpr> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let state = exact_state(n as u64, m as usize, &[])?;
    let n64 = n as u64;
    let weight = BigRational::new(BigInt::one() << (2 * n as usize), BigInt::from(n) * central_binomial(n64));
    let front = qi(factorial(2 * m as u64)) / q(2, 1) * weight;
    Ok(ClosedFormExpr::from_terms((0..=m).map(|j| {
        let t = state.t_star(j as usize).expect("depth tracked").clone();
        let c = &front * sign(j as i64) * t / qi(factorial((2 * m - 2 * j) as u64));
        term_times(&half_pi_power(2 * m - 2 * j), &c)
    })))
}

/// `∫_0^{π/2} x^{2m} cos(2nx) dx` in closed form.
pub fn rhs_r1(m: u32, n: u32) -> Result<ClosedFormExpr> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let f2m = factorial(2 * m as u64);
    Ok(ClosedFormExpr::from_terms((1..=m).map(|j| {
        let den = num_traits::pow(BigInt::from(n), 2 * j as usize)
            * (BigInt::one() << (2 * j as usize))
            * factorial((2 * m - 2 * j + 1) as u64);
        let c = sign((j + n - 1) as i64) * qi(f2m.clone()) / qi(den);
        term_times(&half_pi_power(2 * m - 2 * j + 1), &c)
    })))
}

/// `∫_0^{π/2} x^{2m} ln(sin x) dx` in closed form.
pub fn rhs_r2(m: u32) -> ClosedFormExpr {
    let f2m = factorial(2 * m as u64);
    ClosedFormExpr::from_terms((0..=m).map(|j| {
        let den = (BigInt::one() << (2 * j as usize)) * factorial((2 * m - 2 * j + 1) as u64);
        let c = sign(j as i64 - 1) * qi(f2m.clone()) / qi(den);
        let mut t = term_times(&half_pi_power(2 * m - 2 * j + 1), &c);
        t.factors.push(Factor::eta(2 * j + 1));
        Term::new(t.coeff, t.factors)
    }))
}

/// `∫_0^{π/2} x^{2m} cos^{2n}(x) dx` in closed form, with `ζ★_n({2}_j)`
/// evaluated exactly.
pub fn rhs_r3(m: u32, n: u32) -> Result<ClosedFormExpr> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let state = exact_state(n as u64, m as usize, &[])?;
    let front = qi(factorial(2 * m as u64)) * BigRational::new(central_binomial(n as u64), BigInt::one() << (2 * n as usize));
    Ok(ClosedFormExpr::from_terms((0..=m).map(|j| {
        let z = state.zeta_star(j as usize).expect("depth tracked").clone();
        let den = (BigInt::one() << (2 * j as usize)) * factorial((2 * m - 2 * j + 1) as u64);
        let c = &front * sign(j as i64) * z / qi(den);
        term_times(&half_pi_power(2 * m - 2 * j + 1), &c)
    })))
}

/// Corollary fixture `i ∈ 1..=4` (depth `j = i - 1`): the unfolded beta sum
/// and the reduced form.
pub fn corollary_fixture(i: u32) -> Result<(ClosedFormExpr, ClosedFormExpr)> {
    let reduced = match i {
        1 => "1/2*pi^2",
        2 => "1/8*pi^4 - 8*G^2",
        3 => "1/48*pi^6 - 16*G*beta(4)",
        4 => "17/5760*pi^8 - 16*G*beta(6) - 8*beta(4)^2",
        _ => return Err(Error::Domain(format!("corollary fixture index must be 1..4, got {i}"))),
    };
    Ok((rhs_theorem1(i - 1), reduced.parse()?))
}

fn fmt_factor(f: &Factor, power: usize, out: &mut String) {
    match f.kind {
        FactorKind::PiPower => {
            out.push_str("pi");
            if f.arg != 1 {
                out.push_str(&format!("^{}", f.arg));
            }
            return;
        }
        FactorKind::Catalan => out.push('G'),
        FactorKind::Beta => out.push_str(&format!("beta({})", f.arg)),
        FactorKind::Eta => out.push_str(&format!("eta({})", f.arg)),
    }
    if power > 1 {
        out.push_str(&format!("^{power}"));
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ClosedFormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let c = t.coeff.abs();
            let mut parts = Vec::new();
            if !c.is_one() || t.factors.is_empty() {
                parts.push(fmt_rational(&c));
            }
            let mut idx = 0;
            while idx < t.factors.len() {
                let mut run = 1;
                while idx + run < t.factors.len() && t.factors[idx + run] == t.factors[idx] {
                    run += 1;
                }
                let mut s = String::new();
                fmt_factor(&t.factors[idx], run, &mut s);
                parts.push(s);
                idx += run;
            }
            out.push_str(&parts.join("*"));
        }
        f.write_str(&out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("expression: {what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad integer"))
    }

    fn small(&mut self) -> Result<u32> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.err("integer too large"))
    }

    fn factor(&mut self) -> Result<Factor> {
        if self.eat_word("pi") {
            return Ok(Factor::pi_power(1));
        }
        if self.eat_word("G") {
            return Ok(Factor::catalan());
        }
        let kind = if self.eat_word("beta") {
            FactorKind::Beta
        } else if self.eat_word("eta") {
            FactorKind::Eta
        } else {
            return Err(self.err("expected factor"));
        };
        if !self.eat(b'(') {
            return Err(self.err("expected '('"));
        }
        let arg = self.small()?;
        if arg == 0 {
            return Err(self.err("argument must be positive"));
        }
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(Factor { kind, arg })
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            if first && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let num = self.int()?;
                let den = if self.eat(b'/') { self.int()? } else { BigInt::one() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                coeff = BigRational::new(num, den);
            } else {
                let f = self.factor()?;
                let power = if self.eat(b'^') { self.small()? } else { 1 };
                if f.kind == FactorKind::PiPower {
                    factors.push(Factor::pi_power(power));
                } else {
                    factors.extend(std::iter::repeat_n(f, power as usize));
                }
            }
            first = false;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(Term::new(coeff, factors))
    }
}

impl FromStr for ClosedFormExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let mut terms = Vec::new();
        let mut negative = p.eat(b'-');
        loop {
            let mut t = p.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            negative = match p.peek() {
                None => break,
                Some(b'+') => false,
                Some(b'-') => true,
                Some(_) => return Err(p.err("expected '+' or '-'")),
            };
            p.pos += 1;
        }
        Ok(ClosedFormExpr::from_terms(terms))
    }
}

/// Least common multiple of the coefficient denominators.
pub fn common_denominator(expr: &ClosedFormExpr) -> BigInt {
    expr.terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_context;
    use crate::real::abs_diff;

    #[test]
    fn theorem1_examples() {
        assert_eq!(rhs_theorem1(0).to_string(), "8*beta(1)^2");
        assert_eq!(fold_symmetry(&rhs_theorem1(1)).to_string(), "16*beta(1)*beta(3) - 8*beta(2)^2");
        assert_eq!(
            fold_symmetry(&rhs_theorem1(2)).to_string(),
            "16*beta(1)*beta(5) - 16*beta(2)*beta(4) + 8*beta(3)^2"
        );
        assert_eq!(
            fold_symmetry(&rhs_theorem1(3)).to_string(),
            "16*beta(1)*beta(7) - 16*beta(2)*beta(6) + 16*beta(3)*beta(5) - 8*beta(4)^2"
        );
    }

    #[test]
    fn term_counts() {
        for j in 0..=6 {
            assert_eq!(rhs_theorem1(j).len(), 2 * j as usize + 1);
            assert_eq!(fold_symmetry(&rhs_theorem1(j)).len(), j as usize + 1);
        }
    }

    #[test]
    fn folding_preserves_value() {
        let ctx = make_context(30).unwrap();
        for j in 0..=6 {
            let a = rhs_theorem1(j).eval(&ctx).unwrap();
            let b = fold_symmetry(&rhs_theorem1(j)).eval(&ctx).unwrap();
            assert!(a.agrees_with(&b), "j = {j}");
        }
    }

    #[test]
    fn gencev_rhs() {
        assert_eq!(rhs_gencev(0).to_string(), "2*eta(1)");
        assert_eq!(rhs_gencev(1).to_string(), "2*eta(3)");
        assert_eq!(rhs_gencev(2).to_string(), "2*eta(5)");
    }

    #[test]
    fn corollary_forms_agree() {
        let ctx = make_context(30).unwrap();
        for i in 1..=4 {
            let (raw, reduced) = corollary_fixture(i).unwrap();
            let a = raw.eval(&ctx).unwrap();
            let b = reduced.eval(&ctx).unwrap();
            assert!(a.agrees_with(&b), "fixture {i}");
            assert!(abs_diff(&a.value, &b.value).to_f64() < 1e-25);
        }
        assert_eq!(corollary_fixture(3).unwrap().1.to_string(), "1/48*pi^6 - 16*G*beta(4)");
        assert_eq!(
            corollary_fixture(4).unwrap().1.to_string(),
            "17/5760*pi^8 - 16*G*beta(6) - 8*beta(4)^2"
        );
        assert!(corollary_fixture(0).is_err());
    }

    #[test]
    fn pi_squared_over_two() {
        let ctx = make_context(20).unwrap();
        let v = rhs_theorem1(0).eval(&ctx).unwrap();
        assert_eq!(v.value.to_fixed_string(10), "4.9348022005");
        assert!(ClosedFormExpr::zero().eval(&ctx).unwrap().value.is_zero());
        assert_eq!(ClosedFormExpr::zero().to_string(), "0");
    }

    #[test]
    fn lemma3_examples() {
        let e = rhs_lemma3(0, 3).unwrap();
        // ½ · 64 / (3 · 20)
        assert_eq!(e.to_string(), "8/15");
        assert_eq!(rhs_lemma3(1, 1).unwrap().to_string(), "-2 + 1/4*pi^2");
        assert_eq!(rhs_lemma3(2, 1).unwrap().to_string(), "24 - 3*pi^2 + 1/16*pi^4");
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(rhs_lemma1i(0, 1).unwrap().to_string(), "1");
        assert_eq!(rhs_lemma1i(0, 2).unwrap().to_string(), "-1/3");
        assert_eq!(rhs_lemma1i(1, 1).unwrap().to_string(), "-2 + 1/4*pi^2");
        assert_eq!(rhs_lemma1ii(0, 1).unwrap().to_string(), "2");
        assert_eq!(rhs_lemma1ii(0, 2).unwrap().to_string(), "4/3");
        assert_eq!(rhs_lemma1ii(1, 1).unwrap(), rhs_lemma1i(1, 1).unwrap().scale(&q(2, 1)));
    }

    #[test]
    fn section4_examples() {
        assert!(rhs_r1(0, 3).unwrap().is_empty());
        assert_eq!(rhs_r1(1, 1).unwrap().to_string(), "-1/4*pi");
        assert_eq!(rhs_r2(0).to_string(), "-1/2*pi*eta(1)");
        assert_eq!(rhs_r3(0, 1).unwrap().to_string(), "1/4*pi");
    }

    #[test]
    fn lemma2_examples() {
        assert_eq!(rhs_lemma2iii(0).to_string(), "1/2*beta(1)^2");
        assert_eq!(rhs_lemma2iv(0).to_string(), "-2*beta(1)^2");
        let ctx = make_context(25).unwrap();
        let v = rhs_lemma2iv(0).eval(&ctx).unwrap();
        let pi = Real::pi(ctx.working_bits() + 64);
        assert!(v.contains(&(-&(&pi * &pi).div_i64(8))));
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "8*beta(1)^2",
            "16*beta(1)*beta(3) - 8*beta(2)^2",
            "17/5760*pi^8 - 16*G*beta(6) - 8*beta(4)^2",
            "-1/2*pi*eta(1)",
            "0",
            "24 - 3*pi^2 + 1/16*pi^4",
        ] {
            let e: ClosedFormExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let unfolded = rhs_theorem1(2);
        let back: ClosedFormExpr = unfolded.to_string().parse().unwrap();
        assert_eq!(back, fold_symmetry(&unfolded));
    }

    #[test]
    fn parse_normalizes() {
        let e: ClosedFormExpr = "pi*pi + beta(2)*G - G*beta(2)".parse().unwrap();
        assert_eq!(e.to_string(), "pi^2");
        assert!("beta(0)".parse::<ClosedFormExpr>().is_err());
        assert!("3*".parse::<ClosedFormExpr>().is_err());
        assert!("beta 2".parse::<ClosedFormExpr>().is_err());
        assert!("1/0".parse::<ClosedFormExpr>().is_err());
    }
}
