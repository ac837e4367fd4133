//! Arbitrary-precision binary floating point.
//!
//! [`Real`] wraps an `astro_float::BigFloat` and carries its own precision:
//! binary operations round to the larger precision of the two operands, and
//! transcendental functions round to the precision of their argument. All
//! rounding is to nearest-even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::decimal::{self, DecimalRounding};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;

/// astro-float rounds to the requested bit count but stores and reports
/// whole words, which would make `precision()` and `ulp()` overstate the
/// accuracy. Every requested precision is therefore a word multiple.
fn whole_words(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS).max(1) * WORD_BITS
}

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("allocate astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// High-precision real number.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(bits: usize) -> Self {
        Real(BigFloat::from_word(0, whole_words(bits)))
    }

    pub fn one(bits: usize) -> Self {
        Real(BigFloat::from_word(1, whole_words(bits)))
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Real(BigFloat::from_i64(v, bits.max(WORD_BITS))).with_precision(bits)
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Real(BigFloat::from_u64(v, bits.max(WORD_BITS))).with_precision(bits)
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Real(BigFloat::from_f64(v, bits.max(WORD_BITS))).with_precision(bits)
    }

    /// Correctly rounded conversion of an arbitrary integer.
    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        if v.is_zero() {
            return Real::zero(bits);
        }
        let digits = v.magnitude().to_u64_digits();
        let sign = if v.sign() == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let exp = (digits.len() * WORD_BITS) as i32;
        let mut f = BigFloat::from_words(&digits, sign, exp);
        f.set_precision(whole_words(bits), RM).expect("set precision");
        Real(f)
    }

    /// Conversion of an exact rational, accurate to about one ulp.
    pub fn from_ratio(v: &BigRational, bits: usize) -> Self {
        let wide = bits + WORD_BITS;
        let num = Real::from_bigint(v.numer(), wide);
        let den = Real::from_bigint(v.denom(), wide);
        (&num / &den).with_precision(bits)
    }

    pub fn pi(bits: usize) -> Self {
        Real(with_consts(|cc| cc.pi(whole_words(bits), RM)))
    }

    pub fn ln2(bits: usize) -> Self {
        Real(with_consts(|cc| cc.ln_2(whole_words(bits), RM)))
    }

    /// Binary precision in bits (rounded up to whole machine words). Zero
    /// carries no mantissa and reports one word.
    pub fn precision(&self) -> usize {
        match self.0.precision() {
            Some(p) if p > 0 => p,
            _ => WORD_BITS,
        }
    }

    /// Rounds (or extends) to `bits` of precision.
    pub fn with_precision(&self, bits: usize) -> Self {
        let mut f = self.0.clone();
        if f.set_precision(whole_words(bits), RM).is_err() {
            return Real(BigFloat::nan(None));
        }
        Real(f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.precision(), RM))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.precision(), RM))
    }

    pub fn exp(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::one(p);
        }
        Real(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        let p = self.precision();
        Real(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::zero(p);
        }
        Real(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::one(p);
        }
        Real(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn tan(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::zero(p);
        }
        Real(with_consts(|cc| self.0.tan(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::zero(p);
        }
        Real(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    pub fn sinh(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::zero(p);
        }
        Real(with_consts(|cc| self.0.sinh(p, RM, cc)))
    }

    pub fn cosh(&self) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Real::one(p);
        }
        Real(with_consts(|cc| self.0.cosh(p, RM, cc)))
    }

    /// `self^n` for a non-negative integer exponent.
    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Real::one(self.precision());
        }
        Real(self.0.powi(n as usize, self.precision(), RM))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Real::from_i64(k, self.precision().max(WORD_BITS))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Real::from_i64(k, self.precision().max(WORD_BITS))
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(&self, k: i32) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut f = self.0.clone();
        let e = f.exponent().expect("finite value has an exponent");
        f.set_exponent(e + k);
        Real(f)
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() || !self.is_finite() {
            None
        } else {
            self.0.exponent()
        }
    }

    /// One unit in the last place of `self` at its own precision.
    pub fn ulp(&self) -> Real {
        let p = self.precision();
        match self.exponent() {
            Some(e) => Real::one(WORD_BITS).ldexp(e - p as i32),
            None => Real::zero(WORD_BITS),
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Exact value of the binary float as a rational.
    pub fn to_rational(&self) -> BigRational {
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return BigRational::zero();
        };
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut mag = BigUint::zero();
        for w in words.iter().rev() {
            mag = (mag << WORD_BITS) + BigUint::from(*w);
        }
        let shift = exp as i64 - (words.len() * WORD_BITS) as i64;
        let mut r = BigRational::from_integer(BigInt::from(mag));
        if shift >= 0 {
            r *= BigRational::from_integer(BigInt::one() << shift as usize);
        } else {
            r /= BigRational::from_integer(BigInt::one() << (-shift) as usize);
        }
        if sign == Sign::Neg {
            -r
        } else {
            r
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_nan() {
            return f64::NAN;
        }
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent().unwrap_or(0);
        if e.abs() > 1000 {
            return if e > 0 {
                if self.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                0.0
            };
        }
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Scientific notation with exactly `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize, rounding: DecimalRounding) -> String {
        if self.is_nan() {
            return "NaN".to_string();
        }
        decimal::format_sci(&self.to_rational(), digits, rounding)
    }

    /// Positional notation with exactly `places` digits after the point.
    pub fn to_fixed_string(&self, places: usize) -> String {
        if self.is_nan() {
            return "NaN".to_string();
        }
        decimal::format_fixed(&self.to_rational(), places)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.precision() as f64) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_sci_string(digits.max(1), DecimalRounding::Nearest))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_sci_string(digits.max(1), DecimalRounding::Nearest))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.precision().max(rhs.precision());
                Real(self.0.$inner(&rhs.0, p, RM))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

/// Signed rational as a `Real`, shorthand for `Real::from_ratio`.
pub fn rational(num: i64, den: i64, bits: usize) -> Real {
    let r = BigRational::new(BigInt::from(num), BigInt::from(den));
    Real::from_ratio(&r, bits)
}

/// Absolute difference of two reals, as a rational-exact `Real`.
pub fn abs_diff(a: &Real, b: &Real) -> Real {
    let p = a.precision().max(b.precision()) + WORD_BITS;
    (a.with_precision(p) - b.with_precision(p)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn ulp_covers_conversion_error_at_odd_precisions() {
        let q = BigRational::new(5.into(), 1536.into());
        let hi = Real::from_ratio(&q, 512);
        for bits in [100usize, 132, 150, 191] {
            let a = Real::from_ratio(&q, bits);
            assert!(a.precision() >= bits);
            assert!(abs_diff(&a, &hi) <= a.ulp(), "{bits}");
        }
    }

    #[test]
    fn integer_round_trip_is_exact() {
        let big = BigInt::parse_bytes(b"-123456789012345678901234567890123", 10).unwrap();
        let r = Real::from_bigint(&big, 256);
        assert_eq!(r.to_rational(), BigRational::from_integer(big));
    }

    #[test]
    fn ratio_conversion_is_within_an_ulp() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let r = Real::from_ratio(&third, 128);
        let err = (r.to_rational() - &third).abs();
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << 128usize);
        assert!(err < ulp);
    }

    #[test]
    fn pi_digits() {
        let pi = Real::pi(200);
        assert_eq!(
            pi.to_sci_string(40, DecimalRounding::Nearest),
            "3.141592653589793238462643383279502884197e+0"
        );
    }

    #[test]
    fn ldexp_scales_exactly() {
        let x = rational(3, 7, 128);
        let y = x.ldexp(-5);
        assert_eq!(y.to_rational() * BigRational::from_integer(32.into()), x.to_rational());
    }

    #[test]
    fn ordering_and_sign() {
        let a = Real::from_i64(-3, 64);
        let b = Real::from_i64(2, 64);
        assert!(a < b);
        assert!(a.is_negative());
        assert!(!Real::zero(64).is_negative());
        assert_eq!(a.abs(), Real::from_i64(3, 64));
    }

    #[test]
    fn elementary_functions_agree_with_f64() {
        let x = Real::from_f64(0.7, 128);
        assert!((x.sin().to_f64() - 0.7f64.sin()).abs() < 1e-15);
        assert!((x.ln().to_f64() - 0.7f64.ln()).abs() < 1e-15);
        assert!((x.atan().to_f64() - 0.7f64.atan()).abs() < 1e-15);
        assert!((x.exp().to_f64() - 0.7f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn elementary_functions_at_zero() {
        let z = Real::zero(128);
        let one = Real::one(128);
        assert_eq!(z.exp(), one);
        assert_eq!(z.cos(), one);
        assert_eq!(z.cosh(), one);
        for v in [z.sin(), z.tan(), z.atan(), z.sinh()] {
            assert!(v.is_zero());
        }
    }
}
