//! Python module `apery`.

#[pyo3::pymodule]
mod apery {
    use apery_core::closed_form::{self, ClosedFormExpr};
    use apery_core::decimal::{format_sci, parse_decimal, DecimalRounding};
    use apery_core::harmonic;
    use apery_core::series::{self, FamilyKind, SeriesFamily, SeriesStream};
    use apery_core::suite::{self, ParamRanges, SuiteOptions};
    use apery_core::{constants, make_context, Error};
    use num_rational::BigRational;
    use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
    use pyo3::prelude::*;

    fn py_err(e: Error) -> PyErr {
        match e {
            Error::Capacity(_) => PyOverflowError::new_err(e.to_string()),
            Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
            _ => PyRuntimeError::new_err(e.to_string()),
        }
    }

    fn ratio_str(q: &BigRational) -> String {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    }

    /// A value with its error bound, both as decimal strings.
    #[pyclass(frozen, get_all)]
    struct Bounded {
        value: String,
        abs_error_bound: String,
        rigor: String,
    }

    #[pymethods]
    impl Bounded {
        fn __float__(&self) -> f64 {
            self.value.parse().unwrap_or(f64::NAN)
        }

        fn __repr__(&self) -> String {
            format!("Bounded({} ± {})", self.value, self.abs_error_bound)
        }
    }

    fn bounded(v: &apery_core::BoundedValue, digits: u32) -> Bounded {
        Bounded {
            value: v.value.to_sci_string(digits as usize, DecimalRounding::Nearest),
            abs_error_bound: v.abs_error_bound.to_sci_string(3, DecimalRounding::Up),
            rigor: format!("{:?}", v.rigor),
        }
    }

    /// Rational linear combination of products of pi, G, beta and eta values.
    #[pyclass(frozen, name = "ClosedForm")]
    struct PyClosedForm(ClosedFormExpr);

    #[pymethods]
    impl PyClosedForm {
        #[new]
        fn new(text: &str) -> PyResult<Self> {
            text.parse().map(PyClosedForm).map_err(py_err)
        }

        fn eval(&self, digits: u32) -> PyResult<Bounded> {
            let ctx = make_context(digits).map_err(py_err)?;
            self.0.eval(&ctx).map(|v| bounded(&v, digits)).map_err(py_err)
        }

        fn __add__(&self, other: &PyClosedForm) -> Self {
            PyClosedForm(self.0.add(&other.0))
        }

        fn __mul__(&self, other: &PyClosedForm) -> Self {
            PyClosedForm(self.0.mul(&other.0))
        }

        fn __eq__(&self, other: &PyClosedForm) -> bool {
            self.0 == other.0
        }

        fn __len__(&self) -> usize {
            self.0.len()
        }

        fn __str__(&self) -> String {
            self.0.to_string()
        }

        fn __repr__(&self) -> String {
            format!("ClosedForm('{}')", self.0)
        }
    }

    fn family(kind: &str, j: usize) -> PyResult<SeriesFamily> {
        let k: FamilyKind = kind.parse().map_err(py_err)?;
        SeriesFamily::new(k, j).map_err(py_err)
    }

    /// Right-hand side of a series family at depth `j`.
    #[pyfunction]
    fn series_rhs(kind: &str, j: u32) -> PyResult<PyClosedForm> {
        let k: FamilyKind = kind.parse().map_err(py_err)?;
        Ok(PyClosedForm(match k {
            FamilyKind::Theorem1 => closed_form::fold_symmetry(&closed_form::rhs_theorem1(j)),
            FamilyKind::Gencev => closed_form::rhs_gencev(j),
        }))
    }

    /// `S_N` for a family, as a decimal string.
    #[pyfunction]
    #[pyo3(signature = (kind, j, n, digits = 20))]
    fn partial_sum(kind: &str, j: usize, n: u64, digits: u32) -> PyResult<String> {
        let fam = family(kind, j)?;
        let ctx = series::series_context(&make_context(digits).map_err(py_err)?, n).map_err(py_err)?;
        let mut s = SeriesStream::new(fam, ctx.working_bits());
        s.advance_to(n);
        Ok(s.sum().to_sci_string(digits as usize, DecimalRounding::Nearest))
    }

    /// Extrapolated limit of a family at depth `j`.
    #[pyfunction]
    #[pyo3(signature = (kind, j, digits = 20))]
    fn evaluate_series(kind: &str, j: usize, digits: u32) -> PyResult<Bounded> {
        let ctx = make_context(digits).map_err(py_err)?;
        let ev = series::evaluate_series(family(kind, j)?, &ctx).map_err(py_err)?;
        Ok(bounded(&ev.value, digits))
    }

    #[pyfunction]
    #[pyo3(signature = (m, digits = 20))]
    fn beta(m: u32, digits: u32) -> PyResult<Bounded> {
        let ctx = make_context(digits).map_err(py_err)?;
        constants::beta(m, &ctx).map(|v| bounded(&v, digits)).map_err(py_err)
    }

    #[pyfunction]
    #[pyo3(signature = (s, digits = 20))]
    fn eta(s: u32, digits: u32) -> PyResult<Bounded> {
        let ctx = make_context(digits).map_err(py_err)?;
        constants::eta(s, &ctx).map(|v| bounded(&v, digits)).map_err(py_err)
    }

    /// Exact `t*_n({2}_j)` as a fraction string.
    #[pyfunction]
    fn t_star(n: u64, j: usize) -> PyResult<String> {
        let st = harmonic::exact_state(n, j, &[]).map_err(py_err)?;
        Ok(ratio_str(st.t_star(j).expect("depth tracked")))
    }

    /// Exact `zeta*_n({2}_j)` as a fraction string.
    #[pyfunction]
    fn zeta_star(n: u64, j: usize) -> PyResult<String> {
        let st = harmonic::exact_state(n, j, &[]).map_err(py_err)?;
        Ok(ratio_str(st.zeta_star(j).expect("depth tracked")))
    }

    #[pyfunction]
    fn identities() -> Vec<&'static str> {
        suite::IDENTITIES.to_vec()
    }

    /// Runs one identity suite and returns the reports as JSON strings.
    #[pyfunction]
    #[pyo3(signature = (identity, digits = 20, j = None, m = None, n = None, k = None, terms = None, tolerance = None))]
    #[allow(clippy::too_many_arguments)]
    fn verify(
        identity: &str,
        digits: u32,
        j: Option<&str>,
        m: Option<&str>,
        n: Option<&str>,
        k: Option<&str>,
        terms: Option<u64>,
        tolerance: Option<&str>,
    ) -> PyResult<Vec<String>> {
        let r = |s: Option<&str>| s.map(suite::parse_range).transpose().map_err(py_err);
        let opts = SuiteOptions {
            digits,
            tolerance: tolerance.map(parse_decimal).transpose().map_err(py_err)?,
            timing: false,
            ranges: ParamRanges { j: r(j)?, m: r(m)?, n: r(n)?, k: r(k)?, terms },
        };
        let reports = suite::run_suite(identity, &opts).map_err(py_err)?;
        Ok(reports.iter().map(|r| r.to_json()).collect())
    }

    /// Series weight `c_n` (theorem1) or `d_n` (gencev) as a fraction string.
    #[pyfunction]
    fn weight(kind: &str, n: u64) -> PyResult<String> {
        let k: FamilyKind = kind.parse().map_err(py_err)?;
        if n == 0 {
            return Err(PyValueError::new_err("weights start at n = 1"));
        }
        Ok(ratio_str(&match k {
            FamilyKind::Theorem1 => series::weight_theorem1(n),
            FamilyKind::Gencev => series::weight_gencev(n),
        }))
    }

    /// Formats a fraction `p/q` in scientific notation.
    #[pyfunction]
    fn format_fraction(p: i64, q: i64, digits: usize) -> PyResult<String> {
        if q == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        Ok(format_sci(&BigRational::new(p.into(), q.into()), digits, DecimalRounding::Nearest))
    }
}
