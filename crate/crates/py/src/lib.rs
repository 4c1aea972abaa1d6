// Copyright 2026 the lorentz-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Python bindings: potentials, trajectories, the action functional, the
//! witness certificates, the minimizer, and the Hamiltonian integrator.
//! Structured reports cross the boundary as plain dicts (via their JSON
//! form) so Python callers need no extra types.

use lorentz_orbits::catalog;
use lorentz_orbits::config::RunConfig;
use lorentz_orbits::error::Error;
use lorentz_orbits::optimizer::{self, MinimizeConfig};
use lorentz_orbits::potentials::PotentialPair;
use lorentz_orbits::trajectory::{DerivativeScheme, PeriodicTrajectory};
use lorentz_orbits::{action, dynamics, witness, Vec3};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Expr(_) | Error::Serialization(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn vec3(x: [f64; 3]) -> Vec3 {
    Vec3::new(x[0], x[1], x[2])
}

fn triple(v: Vec3) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

/// serde-serializable report -> Python dict, going through JSON once.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let json = py.import("json")?;
    json.call_method1("loads", (text,))
}

/// An electromagnetic potential pair (A, Φ) with period T.
#[pyclass(name = "Potential")]
struct PyPotential {
    inner: PotentialPair,
}

#[pymethods]
impl PyPotential {
    /// Builds a named catalog pair; `params` is an optional dict of
    /// overrides (e.g. {"amplitude": 2.0}).
    #[staticmethod]
    #[pyo3(signature = (name, period=1.0, params=None))]
    fn catalog(name: &str, period: f64, params: Option<Bound<'_, PyDict>>) -> PyResult<Self> {
        let map: catalog::Params = match params {
            None => catalog::Params::new(),
            Some(d) => {
                let py = d.py();
                let text: String = py
                    .import("json")?
                    .call_method1("dumps", (d,))?
                    .extract()?;
                serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?
            }
        };
        Ok(PyPotential { inner: catalog::build(name, &map, period).map_err(err)? })
    }

    /// Builds a pair from closed-form expressions in t, x1, x2, x3 for the
    /// three components of A and for Φ. `singular_balls` is a list of
    /// ((cx, cy, cz), radius).
    #[staticmethod]
    #[pyo3(signature = (a, phi, period=1.0, singular_balls=vec![]))]
    fn expression(
        a: [String; 3],
        phi: String,
        period: f64,
        singular_balls: Vec<([f64; 3], f64)>,
    ) -> PyResult<Self> {
        let config = RunConfig {
            potential: lorentz_orbits::config::PotentialSpec::Expression {
                a,
                phi,
                singular_balls: singular_balls
                    .into_iter()
                    .map(|(c, r)| lorentz_orbits::potentials::Ball::new(vec3(c), r))
                    .collect(),
            },
            period,
            grid_size: 256,
            sample_box: Default::default(),
            optimizer: Default::default(),
            seed: 0,
        };
        Ok(PyPotential { inner: config.build_pair().map_err(err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn period(&self) -> f64 {
        self.inner.period
    }

    /// (E, B) at the event (t, x).
    fn fields(&self, t: f64, x: [f64; 3]) -> PyResult<([f64; 3], [f64; 3])> {
        let s = self.inner.eval_fields(t, vec3(x)).map_err(err)?;
        Ok((triple(s.electric), triple(s.magnetic)))
    }

    /// Admissibility audit (decay profiles, electric-field check,
    /// Coulomb minorants) as a dict.
    #[pyo3(signature = (radii=vec![2.0, 4.0, 8.0, 16.0], samples_per_sphere=64, time_nodes=16))]
    fn admissibility<'py>(
        &self,
        py: Python<'py>,
        radii: Vec<f64>,
        samples_per_sphere: usize,
        time_nodes: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = self
            .inner
            .admissibility_report(&radii, samples_per_sphere, time_nodes)
            .map_err(err)?;
        to_py(py, &report)
    }
}

/// A T-periodic trajectory sampled at N uniform nodes.
#[pyclass(name = "Trajectory")]
struct PyTrajectory {
    inner: PeriodicTrajectory,
}

fn scheme_from_str(scheme: &str) -> PyResult<DerivativeScheme> {
    match scheme {
        "spectral" => Ok(DerivativeScheme::Spectral),
        "central2" => Ok(DerivativeScheme::Central2),
        other => Err(PyValueError::new_err(format!(
            "unknown derivative scheme `{other}` (use \"spectral\" or \"central2\")"
        ))),
    }
}

#[pymethods]
impl PyTrajectory {
    #[new]
    #[pyo3(signature = (samples, period, scheme="spectral"))]
    fn new(samples: Vec<[f64; 3]>, period: f64, scheme: &str) -> PyResult<Self> {
        let inner = PeriodicTrajectory::new(
            samples.into_iter().map(vec3).collect(),
            period,
            scheme_from_str(scheme)?,
        )
        .map_err(err)?;
        Ok(PyTrajectory { inner })
    }

    /// The constant trajectory q ≡ point.
    #[staticmethod]
    #[pyo3(signature = (point, n, period))]
    fn constant(point: [f64; 3], n: usize, period: f64) -> PyResult<Self> {
        let inner = PeriodicTrajectory::constant(vec3(point), n, period, DerivativeScheme::Spectral)
            .map_err(err)?;
        Ok(PyTrajectory { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyTrajectory { inner: PeriodicTrajectory::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn samples<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        PyList::new(py, self.inner.samples().iter().map(|s| triple(*s)))
    }

    #[getter]
    fn period(&self) -> f64 {
        self.inner.period()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn mean(&self) -> [f64; 3] {
        triple(self.inner.mean())
    }

    fn sup_speed(&self) -> f64 {
        self.inner.sup_speed()
    }

    /// sup over nodes of |q̃| for the mean-free part.
    fn oscillation_sup(&self) -> f64 {
        self.inner.decompose().oscillation.norms().sup_norm
    }

    fn translated(&self, offset: [f64; 3]) -> Self {
        PyTrajectory { inner: self.inner.translated(vec3(offset)) }
    }
}

/// Ψ, F, I = Ψ + F and the feasibility verdicts for one trajectory, plus
/// the Euler–Lagrange residual when the trajectory is feasible.
#[pyfunction]
fn action_report<'py>(
    py: Python<'py>,
    potential: &PyPotential,
    trajectory: &PyTrajectory,
) -> PyResult<Bound<'py, PyAny>> {
    let mut report = action::action(&trajectory.inner, &potential.inner);
    if report.in_k && report.in_lambda {
        if let Ok(el) =
            action::el_residual(&trajectory.inner, &potential.inner, action::RHO_CAP_DEFAULT)
        {
            report.el_residual_sup = Some(el);
        }
    }
    to_py(py, &report)
}

/// Negative-action witness certificate; `mode` is "phi_zero", "theorem2"
/// or "theorem3_flow".
#[pyfunction]
#[pyo3(signature = (potential, grid_size=256, mode="phi_zero"))]
fn witness_certificate<'py>(
    py: Python<'py>,
    potential: &PyPotential,
    grid_size: usize,
    mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let pair = &potential.inner;
    let cert = match mode {
        "phi_zero" => {
            witness::certify_lemma_negative(pair, grid_size, &witness::default_candidate_grid(5.0, 21))
                .map_err(err)?
        }
        "theorem2" => {
            let bases: Vec<Vec3> = (2..=6).map(|k| Vec3::new(k as f64, 0.0, 0.0)).collect();
            witness::certify_theorem2(pair, &bases, grid_size).map_err(err)?.1
        }
        "theorem3_flow" => {
            let b0 = witness::find_base_point(pair, &witness::default_candidate_grid(5.0, 21))
                .map_err(err)?;
            witness::certify_theorem3_flow(pair, b0, grid_size.min(64)).map_err(err)?.0
        }
        other => return Err(PyValueError::new_err(format!("unknown witness mode `{other}`"))),
    };
    to_py(py, &cert)
}

/// Direct action minimization over the admissible trajectory class.
/// Returns (Trajectory, report dict).
#[pyfunction]
#[pyo3(signature = (potential, grid_size=256, max_iters=2000, seed=1))]
fn minimize<'py>(
    py: Python<'py>,
    potential: &PyPotential,
    grid_size: usize,
    max_iters: usize,
    seed: u64,
) -> PyResult<(PyTrajectory, Bound<'py, PyAny>)> {
    let config = MinimizeConfig {
        grid_size,
        max_iters,
        multistart_seeds: vec![seed],
        ..MinimizeConfig::default()
    };
    let result = optimizer::minimize(&potential.inner, &config, None).map_err(err)?;
    let trajectory = PyTrajectory { inner: result.trajectory.clone() };
    Ok((trajectory, to_py(py, &result)?))
}

/// Integrates the Hamiltonian system from the trajectory's initial state
/// over one period and returns the periodicity residual.
#[pyfunction]
fn periodicity_residual(potential: &PyPotential, trajectory: &PyTrajectory) -> PyResult<f64> {
    dynamics::periodicity_residual(&potential.inner, &trajectory.inner).map_err(err)
}

#[pymodule]
fn lorentz_orbits_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPotential>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(action_report, m)?)?;
    m.add_function(wrap_pyfunction!(witness_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(periodicity_residual, m)?)?;
    Ok(())
}
