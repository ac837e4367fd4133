//! Exact decimal formatting and parsing of rationals.
//!
//! Reports carry numbers as decimal strings so that they never pass through a
//! binary float. The scientific form is `[-]d.ddd…e±X` with a fixed count of
//! significant digits; zero is written with the same digit count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// How the last retained digit is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecimalRounding {
    /// Round half away from zero.
    Nearest,
    /// Round away from zero (never understates magnitude).
    Up,
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

fn scale_by_pow10(r: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        r * BigRational::from_integer(pow10(k as u32))
    } else {
        r / BigRational::from_integer(pow10((-k) as u32))
    }
}

fn round_integer(r: &BigRational, mode: DecimalRounding) -> BigInt {
    match mode {
        DecimalRounding::Nearest => r.round().to_integer(),
        DecimalRounding::Up => r.ceil().to_integer(),
    }
}

/// Rough `floor(log10(r))` for positive `r`, possibly off by one.
fn estimate_log10(r: &BigRational) -> i64 {
    let nb = r.numer().bits() as f64;
    let db = r.denom().bits() as f64;
    ((nb - db) * std::f64::consts::LOG10_2).floor() as i64
}

/// Formats `r` with exactly `digits` significant digits.
pub fn format_sci(r: &BigRational, digits: usize, rounding: DecimalRounding) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        let mut s = String::from("0");
        if digits > 1 {
            s.push('.');
            s.push_str(&"0".repeat(digits - 1));
        }
        s.push_str("e+0");
        return s;
    }
    let neg = r.is_negative();
    let mag = r.abs();
    let lo = pow10(digits as u32 - 1);
    let hi = pow10(digits as u32);
    let mut exp10 = estimate_log10(&mag);
    let mantissa = loop {
        let scaled = scale_by_pow10(&mag, digits as i64 - 1 - exp10);
        let m = round_integer(&scaled, rounding);
        if m >= hi {
            exp10 += 1;
        } else if m < lo {
            exp10 -= 1;
        } else {
            break m;
        }
    };
    let text = mantissa.to_string();
    let mut out = String::with_capacity(digits + 8);
    if neg {
        out.push('-');
    }
    out.push_str(&text[..1]);
    if digits > 1 {
        out.push('.');
        out.push_str(&text[1..]);
    }
    out.push('e');
    if exp10 >= 0 {
        out.push('+');
    }
    out.push_str(&exp10.to_string());
    out
}

/// Formats `r` rounded to `places` digits after the decimal point.
pub fn format_fixed(r: &BigRational, places: usize) -> String {
    let scaled = scale_by_pow10(&r.abs(), places as i64);
    let m = scaled.round().to_integer();
    let neg = r.is_negative() && !m.is_zero();
    let unit = pow10(places as u32);
    let (int_part, frac_part) = m.div_rem(&unit);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 {
        out.push('.');
        let frac = frac_part.to_string();
        out.push_str(&"0".repeat(places - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Parses a decimal literal (`-12.5`, `3e-7`, `1.25E+3`) exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_s, frac_s) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_s.is_empty() && frac_s.is_empty() {
        return Err(bad());
    }
    if !int_s.bytes().chain(frac_s.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_s}{frac_s}");
    let n = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    let r = scale_by_pow10(&BigRational::from_integer(n), exp - frac_s.len() as i64);
    Ok(if neg { -r } else { r })
}

/// `10^(-digits)` as an exact rational.
pub fn ten_to_minus(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow10(digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci(&q(11, 16), 4, DecimalRounding::Nearest), "6.875e-1");
        assert_eq!(format_sci(&q(-2, 3), 3, DecimalRounding::Nearest), "-6.67e-1");
        assert_eq!(format_sci(&q(999, 1), 2, DecimalRounding::Nearest), "1.0e+3");
        assert_eq!(format_sci(&q(1, 3), 1, DecimalRounding::Up), "4e-1");
        assert_eq!(format_sci(&q(0, 1), 3, DecimalRounding::Nearest), "0.00e+0");
        assert_eq!(format_sci(&q(1, 1), 1, DecimalRounding::Nearest), "1e+0");
    }

    #[test]
    fn fixed_formatting() {
        assert_eq!(format_fixed(&q(8, 3), 4), "2.6667");
        assert_eq!(format_fixed(&q(-1, 400), 2), "0.00");
        assert_eq!(format_fixed(&q(-1, 8), 2), "-0.13");
        assert_eq!(format_fixed(&q(5, 1), 0), "5");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_decimal("1e-15").unwrap(), ten_to_minus(15));
        assert_eq!(parse_decimal("-6.875e-1").unwrap(), q(-11, 16));
        assert_eq!(parse_decimal("0.5").unwrap(), q(1, 2));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
    }

    proptest! {
        #[test]
        fn formatted_value_parses_back_within_half_unit(n in -10_000_000i64..10_000_000, d in 1i64..100_000, digits in 1usize..25) {
            let r = q(n, d);
            let s = format_sci(&r, digits, DecimalRounding::Nearest);
            let back = parse_decimal(&s).unwrap();
            // Significant digits exactly as requested.
            let mant = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
            prop_assert_eq!(mant.len(), digits);
            if !r.is_zero() {
                let rel = ((back - &r) / &r).abs();
                prop_assert!(rel <= BigRational::new(5.into(), pow10(digits as u32)));
            }
        }

        #[test]
        fn upward_rounding_never_understates(n in 1i64..10_000_000, d in 1i64..100_000, digits in 1usize..12) {
            let r = q(n, d);
            let back = parse_decimal(&format_sci(&r, digits, DecimalRounding::Up)).unwrap();
            prop_assert!(back >= r);
        }
    }
}
