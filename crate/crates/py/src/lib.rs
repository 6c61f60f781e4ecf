//! Python module `saddle_towers`. Configurations cross the boundary as the
//! same JSON documents the command-line tool reads and writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use saddle_core::embed::{classify, deformed_graph, DEFAULT_PROBES};
use saddle_core::horizontal::{self, CERTIFICATE_SEED};
use saddle_core::report::analyze;
use saddle_core::vertical::{default_k, solve_phases, PHASE_SEED};
use saddle_core::{gallery, io, svg, Error};

type Result<T> = std::result::Result<T, Error>;

fn to_py(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn example_json(name: &str, k: Option<usize>) -> Result<String> {
    Ok(io::to_json_string(&gallery::build(name, k)?))
}

fn analyze_json(config: &str, certify: bool, seed: Option<u64>) -> Result<String> {
    let c = io::from_json_str(config)?;
    Ok(json(&analyze(&c, certify, seed.unwrap_or(CERTIFICATE_SEED))))
}

fn classify_json(config: &str) -> Result<String> {
    let c = io::from_json_str(config)?;
    Ok(json(&classify(&c, &DEFAULT_PROBES)?))
}

/// Edge values of every balanced phase function found.
fn phase_values(config: &str, seed: Option<u64>) -> Result<Vec<(Vec<f64>, bool)>> {
    let c = io::from_json_str(config)?;
    let (k, _) = default_k(&c);
    let s = solve_phases(&c, &k, seed.unwrap_or(PHASE_SEED))?;
    Ok(s.solutions.into_iter().map(|p| (p.phase.edge_values().to_vec(), p.trivial)).collect())
}

fn render_svg(config: &str, eps: f64) -> Result<String> {
    let c = io::from_json_str(config)?;
    if !horizontal::is_rigid(&c.graph) {
        return Ok(svg::render(&c.graph, None, Some("not rigid")));
    }
    let d = deformed_graph(&c, eps)?;
    Ok(svg::render(&c.graph, Some(&d), None))
}

/// Canonical JSON of a gallery example.
#[pyfunction]
#[pyo3(signature = (name, k=None))]
fn example(name: &str, k: Option<usize>) -> PyResult<String> {
    example_json(name, k).map_err(to_py)
}

#[pyfunction]
fn examples() -> Vec<&'static str> {
    gallery::names()
}

/// Parses and validates a configuration; raises `ValueError` if invalid.
#[pyfunction]
fn validate(config: &str) -> PyResult<()> {
    io::from_json_str(config).map(|_| ()).map_err(to_py)
}

/// Full analysis report as a JSON string.
#[pyfunction]
#[pyo3(signature = (config, certify=false, seed=None))]
fn report(config: &str, certify: bool, seed: Option<u64>) -> PyResult<String> {
    analyze_json(config, certify, seed).map_err(to_py)
}

/// Embeddedness verdict as a JSON string.
#[pyfunction]
fn embeddedness(config: &str) -> PyResult<String> {
    classify_json(config).map_err(to_py)
}

/// Balanced phase functions as `(edge values, trivial)` pairs.
#[pyfunction]
#[pyo3(signature = (config, seed=None))]
fn phases(config: &str, seed: Option<u64>) -> PyResult<Vec<(Vec<f64>, bool)>> {
    phase_values(config, seed).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (config, eps=0.0))]
fn render(config: &str, eps: f64) -> PyResult<String> {
    render_svg(config, eps).map_err(to_py)
}

#[pymodule]
fn saddle_towers(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(embeddedness, m)?)?;
    m.add_function(wrap_pyfunction!(phases, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree1_through_json() {
        let s = example_json("tree1", None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&classify_json(&s).unwrap()).unwrap();
        assert_eq!(v["outcome"], "Embedded");
        let mut p: Vec<f64> = phase_values(&s, None).unwrap().into_iter().map(|(v, _)| v[0]).collect();
        p.sort_by(f64::total_cmp);
        assert_eq!(p, [0.0, std::f64::consts::PI]);
        assert!(render_svg(&s, 0.0).unwrap().contains("<svg"));
    }

    #[test]
    fn errors_surface() {
        assert!(matches!(example_json("nope", None), Err(Error::UnknownExample(_))));
        assert!(analyze_json("{", false, None).is_err());
    }
}
