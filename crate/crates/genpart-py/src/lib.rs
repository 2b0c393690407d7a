//! Python bindings: the main genpart types and operations as plain functions
//! returning ints, lists, and dicts.
//!
//! Build the extension with
//! `cargo build --release -p genpart-py`
//! and import it after renaming/copying `libgenpart_py.so` to
//! `genpart_py.so` somewhere on `sys.path` (python/smoke_test.py does this
//! automatically against the workspace target directory).

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use genpart::asymptotics;
use genpart::congruence;
use genpart::corpus;
use genpart::partition;
use genpart::series::RingSpec;
use genpart::ExponentVector;

fn to_py_err(err: genpart::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn vector_from(entries: Vec<i64>) -> PyResult<ExponentVector> {
    let v = ExponentVector::new(entries);
    if v.is_zero() {
        return Err(PyValueError::new_err("exponent vector must be nonzero"));
    }
    Ok(v)
}

/// Coefficients of sum p(n)_e q^n for n < precision, exactly or mod `modulus`.
#[pyfunction]
#[pyo3(signature = (e, precision, modulus=None))]
fn expand(e: Vec<i64>, precision: usize, modulus: Option<u64>) -> PyResult<Vec<BigInt>> {
    let vector = vector_from(e)?;
    let ring = match modulus {
        None => RingSpec::Exact,
        Some(m) => RingSpec::modular(m).map_err(to_py_err)?,
    };
    let series = partition::expand_generalized(&vector, precision, ring).map_err(to_py_err)?;
    Ok((0..precision)
        .map(|i| series.coefficient(i).expect("within precision"))
        .collect())
}

/// The asymptotic constants d, beta, gamma, delta, lambda, A and the growth
/// rate 2 sqrt(A), as a dict. delta and A/pi^2 are exact (numerator, denominator) pairs.
#[pyfunction]
fn profile<'py>(py: Python<'py>, e: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
    let vector = vector_from(e)?;
    let p = asymptotics::profile(&vector).map_err(to_py_err)?;
    let rate = asymptotics::growth_rate(&vector).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("d", p.d)?;
    dict.set_item("beta", p.beta)?;
    dict.set_item("gamma", p.gamma)?;
    dict.set_item("delta", (*p.delta.numer(), *p.delta.denom()))?;
    dict.set_item("lambda_log", p.lambda_log)?;
    dict.set_item("a", p.a)?;
    dict.set_item("a_over_pi2", (*p.a_exact.numer(), *p.a_exact.denom()))?;
    dict.set_item("growth_rate", rate)?;
    Ok(dict)
}

/// Evaluate the asymptotic main term P(n) (p(dn)_e ~ P(n)) in log space.
#[pyfunction]
fn evaluate_p<'py>(py: Python<'py>, e: Vec<i64>, n: u64) -> PyResult<Bound<'py, PyDict>> {
    let vector = vector_from(e)?;
    let value = asymptotics::evaluate_p(&vector, n).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("ln", value.ln)?;
    dict.set_item("mantissa", value.mantissa)?;
    dict.set_item("exp10", value.exp10)?;
    dict.set_item("sci4", value.sci(4))?;
    Ok(dict)
}

/// Modified exponential growth rate 2 sqrt(A).
#[pyfunction]
fn growth_rate(e: Vec<i64>) -> PyResult<f64> {
    asymptotics::growth_rate(&vector_from(e)?).map_err(to_py_err)
}

/// Exact-vs-asymptotic comparison rows: [{n, p_exact, p_asym, ratio, ratio_str}].
#[pyfunction]
#[pyo3(signature = (e, ns, budget=asymptotics::DEFAULT_EXACT_BUDGET))]
fn ratio_table<'py>(
    py: Python<'py>,
    e: Vec<i64>,
    ns: Vec<u64>,
    budget: usize,
) -> PyResult<Bound<'py, PyList>> {
    let vector = vector_from(e)?;
    let rows = asymptotics::ratio_table_with_budget(&vector, &ns, budget).map_err(to_py_err)?;
    let list = PyList::empty(py);
    for row in rows {
        let dict = PyDict::new(py);
        dict.set_item("n", row.n)?;
        dict.set_item("p_exact", &row.p_exact)?;
        dict.set_item("p_asym", &row.p_asym)?;
        dict.set_item("ratio", row.ratio)?;
        dict.set_item("ratio_str", &row.ratio_str)?;
        list.append(dict)?;
    }
    Ok(list)
}

/// Coefficients of the alternating-group conjugacy growth series.
#[pyfunction]
fn alt_conjugacy_series(precision: usize) -> PyResult<Vec<BigInt>> {
    let series = asymptotics::alt_conjugacy_series(precision).map_err(to_py_err)?;
    Ok((0..precision)
        .map(|i| series.coefficient(i).expect("within precision"))
        .collect())
}

fn datum_dict<'py>(py: Python<'py>, datum: &congruence::EtaDatum) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("e_reduced", datum.e_reduced.entries())?;
    dict.set_item("alpha_reduced", datum.alpha_reduced)?;
    dict.set_item("delta_ell", datum.delta_ell)?;
    dict.set_item("beta_e", datum.beta_e)?;
    dict.set_item("c", &datum.c)?;
    dict.set_item("e_prime", datum.e_prime.entries())?;
    dict.set_item("w", datum.w)?;
    dict.set_item("omega", datum.omega)?;
    dict.set_item("n0", datum.n0)?;
    dict.set_item("level", datum.level)?;
    Ok(dict)
}

/// The eta datum and both Sturm-type bounds for a vector mod ell.
#[pyfunction]
fn sturm<'py>(py: Python<'py>, e: Vec<i64>, ell: u64) -> PyResult<Bound<'py, PyDict>> {
    let vector = vector_from(e)?;
    let reduced = congruence::reduce_mod_ell(&vector, ell).map_err(to_py_err)?;
    if reduced.is_zero() {
        return Err(PyValueError::new_err(format!(
            "vector vanishes mod {ell}; no eta datum exists"
        )));
    }
    let datum = congruence::build_c_vector(&reduced, ell).map_err(to_py_err)?;
    let dict = datum_dict(py, &datum)?;
    match congruence::bound_k(&datum, ell) {
        Ok(k) => dict.set_item("bound_k", k)?,
        Err(_) => dict.set_item("bound_k", py.None())?,
    }
    dict.set_item("bound_k_prime", congruence::bound_k_prime(&datum, ell).map_err(to_py_err)?)?;
    if let Ok((plus, minus)) = congruence::s_sets(&vector, ell) {
        dict.set_item("s_plus", plus.into_iter().collect::<Vec<_>>())?;
        dict.set_item("s_minus", minus.into_iter().collect::<Vec<_>>())?;
    }
    Ok(dict)
}

fn certificate_dict<'py>(
    py: Python<'py>,
    cert: &congruence::SturmCertificate,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("vector", cert.claim.vector.entries())?;
    dict.set_item("ell", cert.claim.ell)?;
    dict.set_item("residues", cert.claim.residues.iter().copied().collect::<Vec<_>>())?;
    dict.set_item("kind", cert.kind.to_string())?;
    dict.set_item("bound", cert.bound)?;
    dict.set_item("checked_max_index", cert.checked_max_index)?;
    dict.set_item("verdict", cert.verdict.to_string())?;
    match &cert.datum {
        Some(d) => dict.set_item("datum", datum_dict(py, d)?)?,
        None => dict.set_item("datum", py.None())?,
    }
    match &cert.counterexample {
        Some(ce) => {
            let sub = PyDict::new(py);
            sub.set_item("n", ce.n)?;
            sub.set_item("residue", ce.residue)?;
            sub.set_item("value", ce.value)?;
            dict.set_item("counterexample", sub)?;
        }
        None => dict.set_item("counterexample", py.None())?,
    }
    dict.set_item("note", cert.note.clone())?;
    Ok(dict)
}

/// Verify p(ell*n + B)_e == 0 (mod ell) for every B in residues; returns the
/// certificate as a dict.
#[pyfunction]
#[pyo3(signature = (e, ell, residues, depth=congruence::DEFAULT_NUMERIC_DEPTH))]
fn verify<'py>(
    py: Python<'py>,
    e: Vec<i64>,
    ell: u64,
    residues: Vec<u64>,
    depth: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let claim = congruence::CongruenceClaim::new(vector_from(e)?, ell, residues);
    claim.validate().map_err(to_py_err)?;
    let cert = congruence::verify_with(&claim, depth.max(1)).map_err(to_py_err)?;
    certificate_dict(py, &cert)
}

/// Verify every claim in a corpus file; returns {summary: {...}, outcomes: [...]}.
#[pyfunction]
#[pyo3(signature = (path, jobs=0, depth=congruence::DEFAULT_NUMERIC_DEPTH))]
fn run_corpus<'py>(
    py: Python<'py>,
    path: String,
    jobs: usize,
    depth: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let entries = corpus::parse_corpus(&path).map_err(to_py_err)?;
    let (claims, warnings) = corpus::group_claims(&entries).map_err(to_py_err)?;
    let report = corpus::run_corpus(&claims, jobs, depth.max(1)).map_err(to_py_err)?;

    let summary = PyDict::new(py);
    summary.set_item("claim_count", report.summary.claim_count)?;
    summary.set_item("verified", report.summary.verified)?;
    summary.set_item("refuted", report.summary.refuted)?;
    summary.set_item("inconclusive", report.summary.inconclusive)?;
    summary.set_item("errors", report.summary.errors)?;
    summary.set_item("failing", report.summary.failing)?;
    summary.set_item("corpus_checksum", &report.summary.corpus_checksum)?;
    summary.set_item("spot_checks", report.summary.spot_checks)?;
    summary.set_item(
        "by_kind",
        report.summary.by_kind.clone().into_iter().collect::<Vec<_>>(),
    )?;

    let outcomes = PyList::empty(py);
    for outcome in &report.outcomes {
        let dict = PyDict::new(py);
        dict.set_item("index", outcome.index)?;
        dict.set_item("millis", outcome.millis)?;
        match (&outcome.certificate, &outcome.error) {
            (Some(cert), _) => {
                dict.set_item("claim", cert.claim.to_string())?;
                dict.set_item("kind", cert.kind.to_string())?;
                dict.set_item("bound", cert.bound)?;
                dict.set_item("verdict", cert.verdict.to_string())?;
            }
            (None, Some(err)) => dict.set_item("error", err)?,
            (None, None) => {}
        }
        outcomes.append(dict)?;
    }

    let result = PyDict::new(py);
    result.set_item("summary", summary)?;
    result.set_item("outcomes", outcomes)?;
    result.set_item("warnings", warnings)?;
    Ok(result)
}

#[pymodule]
fn genpart_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_p, m)?)?;
    m.add_function(wrap_pyfunction!(growth_rate, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_table, m)?)?;
    m.add_function(wrap_pyfunction!(alt_conjugacy_series, m)?)?;
    m.add_function(wrap_pyfunction!(sturm, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    Ok(())
}