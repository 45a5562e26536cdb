//! Python bindings. Rationals cross the boundary as strings like `"-3/4"`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use polyrat_core::cli::{Kind, Representation};
use polyrat_core::ratmath::{format_rational, parse_rational, Polynomial, Rational};
use polyrat_core::{cra, formats, lrs, ratmath, seqexpr, wa};

create_exception!(polyrat, PolyratError, PyValueError);

fn err(e: polyrat_core::error::Error) -> PyErr {
    PyErr::new::<PolyratError, _>(e.to_string())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

/// A rational sequence expression.
#[pyclass(name = "SeqExpr", frozen)]
struct PySeqExpr(seqexpr::SeqExpr);

#[pymethods]
impl PySeqExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        seqexpr::parse(text).map(PySeqExpr).map_err(err)
    }

    fn terms(&self, n: usize) -> PyResult<Vec<String>> {
        self.0.eval(n).map(|v| strings(&v)).map_err(err)
    }

    fn fragments(&self) -> Vec<String> {
        self.0.fragments().iter().map(|f| f.to_string()).collect()
    }

    fn is_polyrat(&self) -> bool {
        self.0.is_polyrat()
    }

    fn to_wa(&self) -> PyResult<PyWa> {
        wa::compile_expr_to_wa(&self.0).map(PyWa).map_err(err)
    }

    fn to_cra(&self) -> PyResult<PyCra> {
        cra::compile_expr_to_ccra(&self.0).map(PyCra).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SeqExpr('{}')", self.0)
    }
}

#[pyclass(name = "WeightedAutomaton", frozen)]
struct PyWa(wa::WeightedAutomaton);

#[pymethods]
impl PyWa {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        formats::wa_from_json(text).map(PyWa).map_err(err)
    }

    fn to_json(&self) -> String {
        formats::wa_to_json(&self.0)
    }

    #[getter]
    fn n_states(&self) -> usize {
        self.0.n_states()
    }

    fn terms(&self, n: usize) -> Vec<String> {
        strings(&self.0.terms(n))
    }

    fn series(&self) -> PySeries {
        PySeries(self.0.series())
    }

    /// Ambiguity label, e.g. `"polynomially ambiguous, degree 1"`.
    fn ambiguity(&self) -> String {
        self.0.classify_ambiguity().class.label()
    }

    fn equiv(&self, other: &PyWa) -> bool {
        self.0.equiv(&other.0)
    }

    fn to_expr(&self) -> PyResult<PySeqExpr> {
        match Representation::Wa(self.0.clone()).convert(Kind::Expr, None) {
            Ok(Representation::Expr(e)) => Ok(PySeqExpr(e)),
            Ok(_) => unreachable!("conversion yields the requested kind"),
            Err(e) => Err(err(e)),
        }
    }
}

#[pyclass(name = "Cra", frozen)]
struct PyCra(cra::Cra);

#[pymethods]
impl PyCra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        formats::cra_from_json(text).map(PyCra).map_err(err)
    }

    fn to_json(&self) -> String {
        formats::cra_to_json(&self.0)
    }

    fn terms(&self, n: usize) -> PyResult<Vec<String>> {
        self.0.terms(n).map(|v| strings(&v)).map_err(err)
    }

    /// Name of a register read twice in some step, if any.
    fn copyless_witness(&self) -> Option<String> {
        self.0
            .check_copyless()
            .witness
            .map(|(_, r)| self.0.registers()[r].clone())
    }

    fn is_linear(&self) -> bool {
        self.0.check_linear()
    }

    fn to_expr(&self) -> PyResult<PySeqExpr> {
        self.0.to_expr().map(PySeqExpr).map_err(err)
    }
}

#[pyclass(name = "Lrs", frozen)]
struct PyLrs(lrs::Lrs);

#[pymethods]
impl PyLrs {
    #[new]
    fn new(coeffs: Vec<String>, init: Vec<String>) -> PyResult<Self> {
        lrs::Lrs::new(rationals(&coeffs)?, rationals(&init)?)
            .map(PyLrs)
            .map_err(err)
    }

    fn terms(&self, n: usize) -> Vec<String> {
        strings(&self.0.terms(n))
    }

    fn series(&self) -> PySeries {
        PySeries(self.0.to_series())
    }

    #[pyo3(signature = (max_ell=None))]
    fn is_polyrat(&self, max_ell: Option<usize>) -> bool {
        self.0.classify_polyrat(max_ell).is_polyrat
    }

    #[pyo3(signature = (max_ell=None))]
    fn to_expr(&self, max_ell: Option<usize>) -> PyResult<PySeqExpr> {
        self.0.to_expr(max_ell).map(PySeqExpr).map_err(err)
    }
}

/// Rational generating function; coefficient lists start at degree 0.
#[pyclass(name = "RationalFunction", frozen)]
struct PySeries(ratmath::RationalFunction);

#[pymethods]
impl PySeries {
    #[new]
    fn new(num: Vec<String>, den: Vec<String>) -> PyResult<Self> {
        ratmath::RationalFunction::new(
            Polynomial::new(rationals(&num)?),
            Polynomial::new(rationals(&den)?),
        )
        .map(PySeries)
        .map_err(err)
    }

    #[getter]
    fn num(&self) -> Vec<String> {
        strings(self.0.num().coeffs())
    }

    #[getter]
    fn den(&self) -> Vec<String> {
        strings(self.0.den().coeffs())
    }

    fn expand(&self, n: usize) -> Vec<String> {
        strings(&self.0.expand(n))
    }

    #[pyo3(signature = (max_ell=None))]
    fn to_expr(&self, max_ell: Option<usize>) -> PyResult<PySeqExpr> {
        lrs::series_to_expr(&self.0, max_ell)
            .map(PySeqExpr)
            .map_err(err)
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0.reduced() == other.0.reduced()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Runs the command-line front end; returns `(code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, stdin=""))]
fn run_cli(args: Vec<String>, stdin: &str) -> (i32, String, String) {
    let argv = std::iter::once("polyrat".to_string()).chain(args);
    let out = polyrat_core::cli::run(argv, &mut stdin.as_bytes());
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn polyrat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PolyratError", m.py().get_type::<PolyratError>())?;
    m.add_class::<PySeqExpr>()?;
    m.add_class::<PyWa>()?;
    m.add_class::<PyCra>()?;
    m.add_class::<PyLrs>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
