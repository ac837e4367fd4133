//! Precision contexts and values carrying an absolute error bound.
//!
//! Every public numeric operation takes an explicit [`PrecisionContext`];
//! there is no global precision. Error bounds are tracked per result using
//! term-count × ulp estimates rather than full interval arithmetic.

use std::fmt;

use num_rational::BigRational;

use crate::decimal::{self, DecimalRounding};
use crate::error::{Error, Result};
use crate::real::{abs_diff, Real};

/// Largest digit request accepted by [`make_context`].
pub const DEFAULT_DIGIT_CEILING: u32 = 10_000;

/// Guard bits added on top of the naive `digits · log2(10)` requirement.
pub const DEFAULT_GUARD_BITS: usize = 32;

/// Precision at which error bounds themselves are carried.
const BOUND_BITS: usize = 64;

/// Bits needed to resolve `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize
}

/// Working precision and error-budget policy for one evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_bits: usize,
    digits: u32,
    guard_bits: usize,
}

/// Builds a context for `decimal_digits` digits with the default ceiling.
pub fn make_context(decimal_digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::with_ceiling(decimal_digits, DEFAULT_DIGIT_CEILING)
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> Result<Self> {
        make_context(decimal_digits)
    }

    pub fn with_ceiling(decimal_digits: u32, ceiling: u32) -> Result<Self> {
        if decimal_digits == 0 {
            return Err(Error::Capacity("at least one decimal digit is required".into()));
        }
        if decimal_digits > ceiling {
            return Err(Error::Capacity(format!(
                "{decimal_digits} digits requested, ceiling is {ceiling}"
            )));
        }
        Ok(PrecisionContext {
            working_bits: bits_for_digits(decimal_digits) + DEFAULT_GUARD_BITS,
            digits: decimal_digits,
            guard_bits: DEFAULT_GUARD_BITS,
        })
    }

    /// Builds a context from explicit parts, enforcing the bit budget.
    pub fn from_parts(working_bits: usize, decimal_digits: u32, guard_bits: usize) -> Result<Self> {
        if decimal_digits == 0 {
            return Err(Error::Capacity("at least one decimal digit is required".into()));
        }
        let needed = bits_for_digits(decimal_digits) + guard_bits;
        if working_bits < needed {
            return Err(Error::Capacity(format!(
                "{working_bits} working bits cannot carry {decimal_digits} digits with {guard_bits} guard bits"
            )));
        }
        Ok(PrecisionContext { working_bits, digits: decimal_digits, guard_bits })
    }

    pub fn working_bits(&self) -> usize {
        self.working_bits
    }

    pub fn guard_bits(&self) -> usize {
        self.guard_bits
    }

    /// Decimal digits demanded of final results.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// `10^(-digits)` exactly.
    pub fn target_rational(&self) -> BigRational {
        decimal::ten_to_minus(self.digits)
    }

    /// `10^(-digits)` as a `Real`.
    pub fn target_abs_error(&self) -> Real {
        Real::from_ratio(&self.target_rational(), BOUND_BITS)
    }

    /// Same target, more working bits.
    pub fn with_extra_bits(&self, extra: usize) -> Self {
        PrecisionContext {
            working_bits: self.working_bits + extra,
            digits: self.digits,
            guard_bits: self.guard_bits + extra,
        }
    }

    /// A context whose target is `digits` but whose working precision is
    /// never lower than this one's.
    pub fn retarget(&self, digits: u32) -> Result<Self> {
        let base = PrecisionContext::with_ceiling(digits, u32::MAX)?;
        let working_bits = base.working_bits.max(self.working_bits);
        Ok(PrecisionContext {
            working_bits,
            digits,
            guard_bits: working_bits - bits_for_digits(digits),
        })
    }

    /// `2^(-working_bits)`.
    pub fn unit_roundoff(&self) -> Real {
        Real::one(BOUND_BITS).ldexp(-(self.working_bits as i32))
    }
}

/// Whether an error bound is proven or estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rigor {
    Rigorous,
    Heuristic,
}

impl Rigor {
    /// Weakest of the two flags.
    pub fn combine(self, other: Rigor) -> Rigor {
        self.max(other)
    }
}

impl fmt::Display for Rigor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rigor::Rigorous => "rigorous",
            Rigor::Heuristic => "heuristic",
        })
    }
}

/// A value together with an absolute error bound.
#[derive(Debug, Clone)]
pub struct BoundedValue {
    pub value: Real,
    pub abs_error_bound: Real,
    pub rigor: Rigor,
}

/// Pads a bound slightly so that rounding in the bound arithmetic itself
/// cannot understate it.
fn pad(bound: Real) -> Real {
    let b = bound.with_precision(BOUND_BITS).abs();
    &b + &b.ldexp(-50)
}

fn rounding_error(v: &Real) -> Real {
    v.ulp().with_precision(BOUND_BITS)
}

impl BoundedValue {
    pub fn new(value: Real, abs_error_bound: Real, rigor: Rigor) -> Self {
        BoundedValue { value, abs_error_bound: pad(abs_error_bound), rigor }
    }

    /// A value known exactly (bound zero).
    pub fn exact(value: Real) -> Self {
        BoundedValue { value, abs_error_bound: Real::zero(BOUND_BITS), rigor: Rigor::Rigorous }
    }

    /// Converts an exact rational, accounting for the conversion rounding.
    pub fn from_rational(r: &BigRational, bits: usize) -> Self {
        let value = Real::from_ratio(r, bits);
        let err = rounding_error(&value).ldexp(1);
        BoundedValue::new(value, err, Rigor::Rigorous)
    }

    pub fn precision(&self) -> usize {
        self.value.precision()
    }

    pub fn heuristic(mut self) -> Self {
        self.rigor = Rigor::Heuristic;
        self
    }

    /// Adds `extra` to the bound.
    pub fn widen(mut self, extra: &Real) -> Self {
        self.abs_error_bound = pad(&self.abs_error_bound + &extra.abs());
        self
    }

    pub fn add(&self, other: &BoundedValue) -> BoundedValue {
        let value = &self.value + &other.value;
        let bound = &(&self.abs_error_bound + &other.abs_error_bound) + &rounding_error(&value);
        BoundedValue::new(value, bound, self.rigor.combine(other.rigor))
    }

    pub fn sub(&self, other: &BoundedValue) -> BoundedValue {
        let value = &self.value - &other.value;
        let bound = &(&self.abs_error_bound + &other.abs_error_bound) + &rounding_error(&value);
        BoundedValue::new(value, bound, self.rigor.combine(other.rigor))
    }

    pub fn mul(&self, other: &BoundedValue) -> BoundedValue {
        let value = &self.value * &other.value;
        let a = self.value.abs().with_precision(BOUND_BITS);
        let b = other.value.abs().with_precision(BOUND_BITS);
        let ea = &self.abs_error_bound;
        let eb = &other.abs_error_bound;
        let bound = &(&(&a * eb) + &(&b * ea)) + &(&(ea * eb) + &rounding_error(&value));
        BoundedValue::new(value, bound, self.rigor.combine(other.rigor))
    }

    pub fn neg(&self) -> BoundedValue {
        BoundedValue { value: -&self.value, abs_error_bound: self.abs_error_bound.clone(), rigor: self.rigor }
    }

    /// Multiplies by an exact rational.
    pub fn scale(&self, q: &BigRational) -> BoundedValue {
        let factor = BoundedValue::from_rational(q, self.precision());
        self.mul(&factor)
    }

    pub fn powi(&self, n: u32) -> BoundedValue {
        let mut acc = BoundedValue::exact(Real::one(self.precision()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when `x` lies within the bound of this value.
    pub fn contains(&self, x: &Real) -> bool {
        abs_diff(&self.value, x) <= self.abs_error_bound
    }

    /// True when the two enclosures overlap.
    pub fn agrees_with(&self, other: &BoundedValue) -> bool {
        abs_diff(&self.value, &other.value) <= &self.abs_error_bound + &other.abs_error_bound
    }

    /// Scientific representation of the value with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        self.value.to_sci_string(digits, DecimalRounding::Nearest)
    }
}
