//! Python bindings for `boolstab-core`.

use boolstab_core::bounds::{self, PhiSpec};
use boolstab_core::certify::{self, VerifyOptions};
use boolstab_core::cube::{self, BooleanFunction};
use boolstab_core::sweep::{run_brute, BruteConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: boolstab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn phi_spec(phi: &str, q: f64) -> PyResult<PhiSpec> {
    match phi {
        "q-sym" => Ok(PhiSpec::QSym(q)),
        "q-asym" => Ok(PhiSpec::QAsym(q)),
        "one-sym" => Ok(PhiSpec::OneSym),
        "one-asym" => Ok(PhiSpec::OneAsym),
        other => Err(PyValueError::new_err(format!(
            "unknown phi `{other}` (expected q-sym, q-asym, one-sym or one-asym)"
        ))),
    }
}

/// ε*(ρ), the local-optimality threshold.
#[pyfunction]
fn eps_star(rho: f64) -> PyResult<f64> {
    bounds::eps_star(rho).map_err(err)
}

/// Γ(ε) for Φ in {"q-sym", "q-asym", "one-sym", "one-asym"}.
#[pyfunction]
#[pyo3(signature = (eps, rho, phi = "one-sym", q = 2.0))]
fn gamma_phi(eps: f64, rho: f64, phi: &str, q: f64) -> PyResult<f64> {
    bounds::gamma_phi(eps, rho, &phi_spec(phi, q)?).map_err(err)
}

#[pyfunction]
fn gamma_q(eps: f64, rho: f64, q: f64) -> PyResult<f64> {
    bounds::gamma_q(eps, rho, q).map_err(err)
}

#[pyfunction]
fn gamma_one(eps: f64, rho: f64) -> PyResult<f64> {
    bounds::gamma_one(eps, rho).map_err(err)
}

/// Θ(α, β) at correlation ρ.
#[pyfunction]
fn big_theta(alpha: f64, beta: f64, rho: f64) -> PyResult<f64> {
    bounds::big_theta(alpha, beta, rho).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, rho, phi = "one-sym", q = 2.0))]
fn borell_bound(alpha: f64, rho: f64, phi: &str, q: f64) -> PyResult<f64> {
    bounds::borell_bound(alpha, rho, &phi_spec(phi, q)?).map_err(err)
}

/// The intermediate quantities of θ(ρ) as a dict.
#[pyfunction]
fn ck_point<'py>(py: Python<'py>, rho: f64) -> PyResult<Bound<'py, PyDict>> {
    let p = certify::ck_point(rho).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("rho", p.rho)?;
    d.set_item("eps_star", p.eps_star)?;
    d.set_item("omega_max", p.omega_max)?;
    d.set_item("beta0", p.beta0)?;
    d.set_item("t_rho", p.t_rho)?;
    d.set_item("theta", p.theta)?;
    Ok(d)
}

#[pyfunction]
fn theta_rho(rho: f64) -> PyResult<f64> {
    certify::theta_rho(rho).map_err(err)
}

/// (Ῡ_ρ, maximizing t).
#[pyfunction]
fn upsilon_bar(rho: f64) -> PyResult<(f64, f64)> {
    certify::upsilon_bar(rho).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (beta, rho, resolution = 400))]
fn upsilon_2d(beta: f64, rho: f64, resolution: usize) -> PyResult<f64> {
    certify::upsilon_2d(beta, rho, resolution).map_err(err)
}

/// Runs the grid certificate and returns its JSON text.
#[pyfunction]
#[pyo3(signature = (
    rho_lo = certify::DEFAULT_RHO_LO,
    rho_hi = certify::DEFAULT_RHO_HI,
    delta = certify::DEFAULT_DELTA,
    lipschitz_m = certify::DEFAULT_LIPSCHITZ,
    step = None,
))]
fn verify_interval(rho_lo: f64, rho_hi: f64, delta: f64, lipschitz_m: f64, step: Option<f64>) -> PyResult<String> {
    let opts = VerifyOptions {
        step,
        parallel: true,
        ..VerifyOptions::default()
    };
    let cert = certify::verify_interval_with(rho_lo, rho_hi, delta, lipschitz_m, opts).map_err(err)?;
    Ok(cert.to_json())
}

/// Φ-stability of the Boolean function with the given support.
#[pyfunction]
#[pyo3(signature = (n, support, rho, phi = "one-sym", q = 2.0))]
fn stability(n: usize, support: Vec<usize>, rho: f64, phi: &str, q: f64) -> PyResult<f64> {
    let f = BooleanFunction::from_support(n, &support).map_err(err)?;
    cube::phi_stability(&f, rho, &phi_spec(phi, q)?).map_err(err)
}

/// d̃_i for every coordinate i.
#[pyfunction]
fn dictator_distances(n: usize, support: Vec<usize>) -> PyResult<Vec<f64>> {
    let f = BooleanFunction::from_support(n, &support).map_err(err)?;
    (0..n)
        .map(|i| cube::dictator_distance(&f, i).map(|(_, dt)| dt).map_err(err))
        .collect()
}

/// Runs the brute-force suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (n, rhos, sample = None, seed = 0))]
fn brute(n: usize, rhos: Vec<f64>, sample: Option<usize>, seed: u64) -> PyResult<String> {
    let mut cfg = BruteConfig::new(n, rhos);
    cfg.sample = sample;
    cfg.seed = seed;
    let report = run_brute(&cfg).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn boolstab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eps_star, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_phi, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_q, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_one, m)?)?;
    m.add_function(wrap_pyfunction!(big_theta, m)?)?;
    m.add_function(wrap_pyfunction!(borell_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ck_point, m)?)?;
    m.add_function(wrap_pyfunction!(theta_rho, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_bar, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_2d, m)?)?;
    m.add_function(wrap_pyfunction!(verify_interval, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(dictator_distances, m)?)?;
    m.add_function(wrap_pyfunction!(brute, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
