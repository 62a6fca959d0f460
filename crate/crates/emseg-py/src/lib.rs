//! Python bindings: multi-segments, class enumeration and Arthur-type decisions.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::emseg::arthur::{self, FixtureDerivatives, FixtureEval};
use ::emseg::multiseg::{parse_symbol, render_symbol};
use ::emseg::rewrite::{enumerate_class, strongly_equivalent, Bounds, Equivalence, RuleKernel};
use ::emseg::{Ems as CoreEms, LanglandsData as CoreLanglands};

fn err(e: ::emseg::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bounds(phantom_max: Option<u32>) -> Bounds {
    Bounds {
        phantom_l_max: phantom_max,
        ..Bounds::default()
    }
}

/// An extended multi-segment.
#[pyclass(name = "Ems", module = "emseg", eq, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ems {
    inner: CoreEms,
}

#[pymethods]
impl Ems {
    /// Reads the one-line form, the row form, JSON or a drawn symbol.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        ::emseg::cli::load_ems(text)
            .map(|inner| Ems { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn from_symbol(text: &str) -> PyResult<Self> {
        parse_symbol(text).map(|inner| Ems { inner }).map_err(err)
    }

    fn to_line(&self) -> String {
        self.inner.to_line()
    }

    fn to_rows(&self) -> String {
        self.inner.to_rows_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn symbol(&self) -> PyResult<String> {
        render_symbol(&self.inner).map_err(err)
    }

    /// Violated conditions as short ids; empty when valid.
    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .iter()
            .map(|v| v.id().to_string())
            .collect()
    }

    fn psi(&self) -> String {
        self.inner.psi_of().render()
    }

    fn diagonal_restriction(&self) -> String {
        self.inner.psi_of().diagonal_restriction().render()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.ctx.rank
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.ctx.family.to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.row_count()
    }

    fn __repr__(&self) -> String {
        format!("Ems('{}')", self.inner.to_line())
    }

    fn __str__(&self) -> String {
        self.inner.to_line()
    }
}

/// Langlands data in the `L( D[x,y], ... ; (x)^e ... )` notation.
#[pyclass(
    name = "LanglandsData",
    module = "emseg",
    eq,
    frozen,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq)]
pub struct LanglandsData {
    inner: CoreLanglands,
}

#[pymethods]
impl LanglandsData {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        CoreLanglands::parse(text)
            .map(|inner| LanglandsData { inner })
            .map_err(err)
    }

    fn validate(&self) -> Vec<String> {
        self.inner.validate()
    }

    /// The Step 2 parameter, or None when monotonicity fails.
    fn step2_candidate(&self) -> PyResult<Option<String>> {
        match arthur::step2_candidate(&self.inner).map_err(err)? {
            arthur::Step2::Candidate(p) => Ok(Some(p.render())),
            arthur::Step2::NotArthur { .. } => Ok(None),
        }
    }

    fn check_m_consistency(&self) -> bool {
        arthur::check_m_consistency(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("LanglandsData('{}')", self.inner.render())
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }
}

/// Members of the strong-equivalence class of `e` and whether the search was exhausted.
#[pyfunction]
#[pyo3(signature = (e, phantom_max=None))]
fn enumerate(e: &Ems, phantom_max: Option<u32>) -> (Vec<Ems>, bool) {
    let c = enumerate_class(&e.inner, &RuleKernel, &bounds(phantom_max));
    (
        c.members.into_iter().map(|inner| Ems { inner }).collect(),
        c.exhausted,
    )
}

/// Every psi with pi(e) in its packet.
#[pyfunction]
#[pyo3(signature = (e, phantom_max=None))]
fn list_all_psi(e: &Ems, phantom_max: Option<u32>) -> (Vec<String>, bool) {
    let (ps, done) = arthur::list_all_psi(&e.inner, &RuleKernel, &bounds(phantom_max));
    (ps.iter().map(|p| p.render()).collect(), done)
}

/// "yes", "no" or "unknown".
#[pyfunction]
fn equivalent(a: &Ems, b: &Ems) -> &'static str {
    match strongly_equivalent(&a.inner, &b.inner, &RuleKernel, &Bounds::default()) {
        Equivalence::Yes(_) => "yes",
        Equivalence::No(_) => "no",
        Equivalence::Unknown(_) => "unknown",
    }
}

#[pyfunction]
#[pyo3(signature = (e, x, counts, direction="+"))]
fn lift(e: &Ems, x: &str, counts: Vec<u32>, direction: &str) -> PyResult<Ems> {
    let x = x.parse().map_err(err)?;
    let rho = ::emseg::RhoLabel::trivial();
    let out = match direction {
        "+" => arthur::lift_plus(&e.inner, &rho, x, &counts),
        "-" => arthur::lift_minus(&e.inner, &rho, x, &counts),
        d => {
            return Err(PyValueError::new_err(format!(
                "direction must be + or -, got {d}"
            )))
        }
    };
    out.map(|inner| Ems { inner }).map_err(err)
}

/// Runs the decision with the shipped oracles; returns (status, witness lines, gaps).
#[pyfunction]
fn decide(l: &LanglandsData) -> PyResult<(String, Vec<String>, Vec<String>)> {
    let v = arthur::decide_arthur(
        &l.inner,
        &RuleKernel,
        &FixtureDerivatives::shipped(),
        &FixtureEval::shipped(),
        &Bounds::default(),
    )
    .map_err(err)?;
    let witnesses = v.witnesses().iter().map(|w| w.ems.to_line()).collect();
    let gaps = match &v {
        arthur::ArthurVerdict::Unknown { gaps, .. } => gaps.clone(),
        _ => Vec::new(),
    };
    Ok((v.status().to_string(), witnesses, gaps))
}

#[pymodule]
#[pyo3(name = "emseg")]
fn emseg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ems>()?;
    m.add_class::<LanglandsData>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(list_all_psi, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    Ok(())
}
