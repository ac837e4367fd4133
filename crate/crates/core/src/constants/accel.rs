//! Chebyshev acceleration of alternating series.
//!
//! For `S = Σ_{k≥0} (-1)^k a_k` where `a_k = ∫₀¹ x^k dμ` for a positive
//! measure `μ`, the weighted partial sum built from the shifted Chebyshev
//! polynomial of degree `n` satisfies `|S - S_n| ≤ a_0 / d_n` with
//! `d_n = ((3+√8)^n + (3+√8)^(-n)) / 2`. Every sequence summed in this crate
//! (`1/(2k+1)^m`, `1/(k+1)^s`, `x^(2k+1)/(2k+1)^m`) is of that form.

use crate::precision::{BoundedValue, Rigor};
use crate::real::Real;

/// `ln(3 + √8)`.
const LN_RATE: f64 = 1.762_747_174_039_086;

/// Terms needed for a truncation error below `a_0 · 2^(-bits)`.
pub fn terms_for_bits(bits: usize) -> usize {
    ((bits as f64 + 2.0) * std::f64::consts::LN_2 / LN_RATE).ceil() as usize + 1
}

/// Sums `Σ (-1)^k term(k)` with `n` accelerated terms.
///
/// `term` must return `a_k` at (at least) `bits` precision and `leading` must
/// bound `a_0` from above. The returned bound covers truncation plus an
/// `8·n·a_0` ulp allowance for rounding.
pub fn alternating_sum<F>(mut term: F, leading: &Real, n: usize, bits: usize) -> BoundedValue
where
    F: FnMut(usize) -> Real,
{
    let one = Real::one(bits);
    let rate = &Real::from_i64(3, bits) + &Real::from_i64(8, bits).sqrt();
    let dn = rate.powi(n as u32);
    let d = (&dn + &dn.recip()).ldexp(-1);

    let mut b = -&one;
    let mut c = -&d;
    let mut s = Real::zero(bits);
    let nn = n as i64;
    for k in 0..n {
        c = &b - &c;
        s = &s + &(&c * &term(k));
        let ki = k as i64;
        // b_{k+1} = b_k (k+n)(k-n) / ((k+1/2)(k+1)) = 2 b_k (k+n)(k-n) / ((2k+1)(k+1))
        b = b.mul_i64(2 * (ki + nn) * (ki - nn)).div_i64((2 * ki + 1) * (ki + 1));
    }
    let value = &s / &d;

    let truncation = leading.abs() / d.with_precision(64);
    let rounding = leading.abs().with_precision(64).mul_i64(8 * (n as i64 + 1)).ldexp(-(bits as i32));
    BoundedValue::new(value, &truncation + &rounding, Rigor::Rigorous)
}
