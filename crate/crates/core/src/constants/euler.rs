//! Secant Euler numbers and the odd-argument closed form of Dirichlet beta.
//!
//! `β(2k+1) = (-1)^k E_{2k} / (2·(2k)!) · (π/2)^(2k+1)`. This is a classical
//! fact used only as an independent oracle for the accelerated series.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::precision::{BoundedValue, PrecisionContext};
use crate::real::Real;

/// Largest `k` for which `E_{2k}` is served.
pub const EULER_INDEX_LIMIT: usize = 512;

static TABLE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// `E_{2k}` from `Σ_{j=0}^{k} C(2k, 2j) E_{2j} = 0`, `E_0 = 1`.
pub fn euler_number(k: usize) -> Result<BigInt> {
    if k > EULER_INDEX_LIMIT {
        return Err(Error::Capacity(format!(
            "Euler number E_{} beyond table limit E_{}",
            2 * k,
            2 * EULER_INDEX_LIMIT
        )));
    }
    let mut table = TABLE.lock().expect("euler table lock");
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= k {
        let kk = table.len();
        // Row of C(2kk, i) for i = 0..=2kk.
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for i in 0..2 * kk {
            if i % 2 == 0 {
                acc += &binom * &table[i / 2];
            }
            binom = binom * BigInt::from(2 * kk - i) / BigInt::from(i + 1);
        }
        table.push(-acc);
    }
    Ok(table[k].clone())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rational `r_m` with `β(m) = r_m · π^m` for odd `m`.
pub fn beta_odd_pi_coefficient(m: u32) -> Result<BigRational> {
    if m.is_multiple_of(2) {
        return Err(Error::Domain(format!("no π-power closed form for even argument {m}")));
    }
    let k = (m as usize - 1) / 2;
    let e = euler_number(k)?;
    let signed = if k.is_multiple_of(2) { e } else { -e };
    let den = BigInt::from(2) * factorial(2 * k) * (BigInt::one() << (2 * k + 1));
    Ok(BigRational::new(signed, den))
}

/// `β(m)` for odd `m` from the Euler-number closed form.
pub fn beta_odd_closed_form(m: u32, ctx: &PrecisionContext) -> Result<BoundedValue> {
    let coeff = beta_odd_pi_coefficient(m)?;
    let bits = ctx.working_bits();
    let pi = BoundedValue::new(Real::pi(bits), Real::pi(bits).ulp(), crate::Rigor::Rigorous);
    Ok(pi.powi(m).scale(&coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_euler_numbers() {
        let expected = [1i64, -1, 5, -61, 1385, -50521, 2702765, -199360981];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(euler_number(k).unwrap(), BigInt::from(*e), "E_{}", 2 * k);
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(euler_number(EULER_INDEX_LIMIT + 1), Err(Error::Capacity(_))));
    }

    #[test]
    fn tabulated_odd_beta_coefficients() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(beta_odd_pi_coefficient(1).unwrap(), q(1, 4));
        assert_eq!(beta_odd_pi_coefficient(3).unwrap(), q(1, 32));
        assert_eq!(beta_odd_pi_coefficient(5).unwrap(), q(5, 1536));
        assert_eq!(beta_odd_pi_coefficient(7).unwrap(), q(61, 184320));
        assert!(beta_odd_pi_coefficient(4).is_err());
    }
}
