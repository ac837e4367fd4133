//! Verification reports.
//!
//! Every numeric field is a decimal string in scientific notation with a
//! fixed number of significant digits. `abs_error` is rounded upward, and the
//! status is decided by comparing the two strings as exact decimals.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::{format_sci, parse_decimal, ten_to_minus, DecimalRounding};
use crate::error::{Error, Result};
use crate::precision::BoundedValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Amount of work behind a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Work {
    /// Series terms summed.
    Terms(u64),
    /// Integrand evaluations.
    Nodes(u64),
    /// Index tuples enumerated.
    Tuples(u64),
}

impl fmt::Display for Work {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Work::Terms(n) => write!(f, "{n} terms"),
            Work::Nodes(n) => write!(f, "{n} nodes"),
            Work::Tuples(n) => write!(f, "{n} tuples"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
    pub abs_error: String,
    pub tolerance: String,
    pub method: String,
    pub work: Work,
    pub elapsed_ms: u64,
    pub status: Status,
}

/// Both sides of an identity, exactly as computed.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub method: String,
    pub work: Work,
}

impl Comparison {
    pub fn new(lhs: &BoundedValue, rhs: &BoundedValue, method: impl Into<String>, work: Work) -> Self {
        Comparison { lhs: lhs.value.to_rational(), rhs: rhs.value.to_rational(), method: method.into(), work }
    }

    pub fn exact(lhs: BigRational, rhs: BigRational, method: impl Into<String>, work: Work) -> Self {
        Comparison { lhs, rhs, method: method.into(), work }
    }

    pub fn abs_error(&self) -> BigRational {
        (&self.lhs - &self.rhs).abs()
    }

    pub fn into_report(
        self,
        identity_id: &str,
        params: BTreeMap<String, i64>,
        tolerance: &BigRational,
        digits: u32,
    ) -> VerificationReport {
        let d = digits as usize;
        let mut r = VerificationReport {
            identity_id: identity_id.to_string(),
            params,
            lhs: format_sci(&self.lhs, d, DecimalRounding::Nearest),
            rhs: format_sci(&self.rhs, d, DecimalRounding::Nearest),
            abs_error: format_sci(&self.abs_error(), d, DecimalRounding::Up),
            tolerance: String::new(),
            method: self.method,
            work: self.work,
            elapsed_ms: 0,
            status: Status::Fail,
        };
        r.set_tolerance(tolerance, digits);
        r
    }
}

impl VerificationReport {
    /// A report for a check that could not reach a verdict.
    pub fn inconclusive(identity_id: &str, params: BTreeMap<String, i64>, tolerance: &BigRational, digits: u32, err: &Error) -> Self {
        VerificationReport {
            identity_id: identity_id.to_string(),
            params,
            lhs: "n/a".into(),
            rhs: "n/a".into(),
            abs_error: "n/a".into(),
            tolerance: format_sci(tolerance, digits as usize, DecimalRounding::Nearest),
            method: err.to_string(),
            work: Work::Terms(0),
            elapsed_ms: 0,
            status: Status::Inconclusive,
        }
    }

    /// Replaces the tolerance and recomputes the status.
    pub fn set_tolerance(&mut self, tolerance: &BigRational, digits: u32) {
        self.tolerance = format_sci(tolerance, digits as usize, DecimalRounding::Nearest);
        if self.status == Status::Inconclusive {
            return;
        }
        self.status = match (parse_decimal(&self.abs_error), parse_decimal(&self.tolerance)) {
            (Ok(e), Ok(t)) if e <= t => Status::Pass,
            _ => Status::Fail,
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("report JSON: {e}")))
    }

    /// One human-readable line.
    pub fn summary_line(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "{:<12} {:<5} {:<24} lhs={} rhs={} err={} tol={} [{}; {}]",
            self.status.to_string(),
            self.identity_id,
            params,
            self.lhs,
            self.rhs,
            self.abs_error,
            self.tolerance,
            self.method,
            self.work
        )
    }
}

/// Identities whose sides are compared in exact rational arithmetic.
pub fn is_exact_identity(identity_id: &str) -> bool {
    matches!(identity_id, "oracle-tstar" | "oracle-zetastar" | "poly-identities")
}

/// Tolerance from the acceptance table, independent of the digit target.
pub fn acceptance_tolerance(identity_id: &str) -> Result<BigRational> {
    let text = match identity_id {
        "theorem1" => "1e-15",
        "gencev" => "1e-12",
        "corollary" => "1e-18",
        "oracle-tstar" | "oracle-zetastar" | "poly-identities" => "0",
        "L1i" | "L1ii" | "L3" => "1e-12",
        "L2ii" | "L2iii" | "L2iv" | "R1" | "R2" | "R3" => "1e-10",
        "L2i" => "5e-3",
        "beta-table" => "1e-25",
        _ => return Err(Error::Domain(format!("unknown identity {identity_id:?}"))),
    };
    parse_decimal(text)
}

/// Acceptance tolerance, loosened to `10^-digits` when the digit target is
/// coarser. Exact identities keep tolerance zero.
pub fn default_tolerance(identity_id: &str, digits: u32) -> Result<BigRational> {
    let t = acceptance_tolerance(identity_id)?;
    if is_exact_identity(identity_id) || t.is_zero() {
        return Ok(t);
    }
    Ok(t.max(ten_to_minus(digits)))
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn status_follows_strings() {
        let c = Comparison::exact(q(1, 3), q(1, 3), "exact", Work::Tuples(1));
        let r = c.into_report("oracle-tstar", params(&[("n", 1)]), &BigRational::zero(), 5);
        assert_eq!(r.abs_error, "0.0000e+0");
        assert_eq!(r.tolerance, "0.0000e+0");
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.lhs, "3.3333e-1");

        let c = Comparison::exact(q(1, 3), q(1, 3) + q(1, 1_000_000), "x", Work::Terms(2));
        let mut r = c.into_report("theorem1", BTreeMap::new(), &q(1, 1_000_000), 3);
        assert_eq!(r.abs_error, "1.00e-6");
        assert_eq!(r.status, Status::Pass);
        r.set_tolerance(&q(1, 10_000_000), 3);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn default_tolerances() {
        assert_eq!(default_tolerance("theorem1", 20).unwrap(), q(1, 1_000_000_000_000_000));
        assert_eq!(default_tolerance("theorem1", 12).unwrap(), q(1, 1_000_000_000_000));
        assert!(default_tolerance("oracle-tstar", 5).unwrap().is_zero());
        assert_eq!(default_tolerance("L2i", 20).unwrap(), q(5, 1000));
        assert!(default_tolerance("nope", 20).is_err());
    }

    #[test]
    fn json_field_names() {
        let c = Comparison::exact(q(2, 1), q(2, 1), "m", Work::Nodes(7));
        let r = c.into_report("L3", params(&[("m", 0), ("n", 1)]), &q(1, 100), 4);
        let j = r.to_json();
        assert_eq!(
            j,
            r#"{"identity_id":"L3","params":{"m":0,"n":1},"lhs":"2.000e+0","rhs":"2.000e+0","abs_error":"0.000e+0","tolerance":"1.000e-2","method":"m","work":{"nodes":7},"elapsed_ms":0,"status":"PASS"}"#
        );
    }

    proptest! {
        #[test]
        fn json_round_trip_is_byte_identical(
            a in -1_000_000i64..1_000_000, b in 1i64..1000, c in -1_000_000i64..1_000_000,
            digits in 1u32..30, m in 0i64..10, tol_exp in 0u32..30,
        ) {
            let cmp = Comparison::exact(q(a, b), q(c, b), "method \"quoted\"", Work::Terms(m as u64));
            let r = cmp.into_report("R1", params(&[("m", m), ("n", 1)]), &ten_to_minus(tol_exp), digits);
            let s = r.to_json();
            let back = VerificationReport::from_json(&s).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(back.to_json(), s);
        }

        #[test]
        fn pass_iff_error_within_tolerance(a in -10_000i64..10_000, c in -10_000i64..10_000, tol in 0i64..20_000, digits in 1u32..12) {
            let cmp = Comparison::exact(q(a, 7), q(c, 7), "", Work::Terms(0));
            let r = cmp.into_report("L1i", BTreeMap::new(), &q(tol, 7), digits);
            let e = parse_decimal(&r.abs_error).unwrap();
            let t = parse_decimal(&r.tolerance).unwrap();
            prop_assert_eq!(r.status == Status::Pass, e <= t);
            // The reported error never understates the true difference.
            prop_assert!(e >= q((a - c).abs(), 7));
        }
    }
}
