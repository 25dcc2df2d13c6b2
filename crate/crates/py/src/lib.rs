//! Python bindings for the estimate laboratory: frequency grids, spectral
//! fields, the split-step flow, Picard iteration, and the verifier entry
//! points. Reports come back as plain dicts so notebook code can poke at
//! them without extra wrapper types.

use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use nlslab_core::data::{generate_data, DataFamily};
use nlslab_core::evolution::{
    mass_energy, picard_iterate, splitstep_evolve, EvolutionConfig, Nonlinearity, PicardMonitor,
};
use nlslab_core::lab::{
    lab_young, verify_bilinear_inequality, verify_embeddings, verify_norm_persistence,
    verify_restriction_l4, verify_scaling_law, verify_strichartz, RestrictionData,
};
use nlslab_core::norms::{
    fourier_lebesgue_norm, lebesgue_norm, mixed_spacetime_norm, modulation_norm, sobolev_norm,
};
use nlslab_core::orlicz::{
    choose_correction_constant, luxemburg_norm, modulation_orlicz_norm, ConjugateTable,
    YoungFunction,
};
use nlslab_core::report::EstimateReport;
use nlslab_core::variation::{adapted_path, vp_norm};
use nlslab_core::{acceptance, FrequencyGrid, SpaceTimeField, SpectralField};

fn core_err(e: nlslab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_family(family: &str, param: f64) -> PyResult<DataFamily> {
    match family {
        "gaussian" => Ok(DataFamily::Gaussian { width: param }),
        "power_decay" => Ok(DataFamily::PowerDecay { beta: param }),
        "log_decay" => Ok(DataFamily::LogDecay { gamma: param }),
        other => Err(PyValueError::new_err(format!(
            "family must be gaussian, power_decay or log_decay, got `{other}` \
             (use Field.flat_band for indicator data)"
        ))),
    }
}

fn evolution_config(t_final: f64, steps: usize, stride: usize, nonlinearity: &str) -> PyResult<EvolutionConfig> {
    let nl = match nonlinearity {
        "defocusing" => Nonlinearity::Defocusing,
        "focusing" => Nonlinearity::Focusing,
        "off" => Nonlinearity::Off,
        other => {
            return Err(PyValueError::new_err(format!(
                "nonlinearity must be defocusing, focusing or off, got `{other}`"
            )))
        }
    };
    Ok(EvolutionConfig::new(t_final, steps)
        .map_err(core_err)?
        .with_stride(stride)
        .with_nonlinearity(nl))
}

/// Verifier outcome as a dict: id, law, verdict, sweep rows, fit.
fn report_dict<'py>(py: Python<'py>, report: &EstimateReport) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("estimate_id", &report.estimate_id)?;
    dict.set_item("predicted_law", &report.predicted_law)?;
    dict.set_item("verdict", format!("{}", report.verdict))?;
    dict.set_item("passed", report.verdict.passed())?;
    let sweep = PyList::empty(py);
    for row in &report.sweep {
        let entry = PyDict::new(py);
        entry.set_item("x", row.x)?;
        entry.set_item("measured", row.measured)?;
        entry.set_item("reference", row.reference)?;
        entry.set_item("ratio", row.ratio)?;
        sweep.append(entry)?;
    }
    dict.set_item("sweep", sweep)?;
    match &report.fitted {
        Some(fit) => {
            let fitted = PyDict::new(py);
            fitted.set_item("exponent", fit.exponent)?;
            fitted.set_item("amplitude", fit.amplitude)?;
            fitted.set_item("rms_log_residual", fit.rms_log_residual)?;
            dict.set_item("fitted", fitted)?;
        }
        None => dict.set_item("fitted", py.None())?,
    }
    let provenance = PyDict::new(py);
    provenance.set_item("n", report.provenance.n)?;
    provenance.set_item("m", report.provenance.m)?;
    provenance.set_item("seed", report.provenance.seed)?;
    for (key, value) in &report.provenance.extra {
        provenance.set_item(key, value)?;
    }
    dict.set_item("provenance", provenance)?;
    Ok(dict)
}

/// Uniform frequency lattice on the torus of circumference `2*pi*m`.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct Grid {
    inner: FrequencyGrid,
}

#[pymethods]
impl Grid {
    #[new]
    fn new(n: usize, m: usize) -> PyResult<Self> {
        Ok(Grid { inner: FrequencyGrid::new(n, m).map_err(core_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn dxi(&self) -> f64 {
        self.inner.dxi()
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.inner.dx()
    }

    fn __repr__(&self) -> String {
        format!("Grid(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// A function on the torus held as Fourier coefficients.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Field {
    inner: SpectralField,
}

#[pymethods]
impl Field {
    #[staticmethod]
    fn zero(grid: &Grid) -> Field {
        Field { inner: SpectralField::zero(grid.inner) }
    }

    #[staticmethod]
    fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>) -> PyResult<Field> {
        Ok(Field { inner: SpectralField::from_coeffs(grid.inner, coeffs).map_err(core_err)? })
    }

    /// Deterministic draw from a one-parameter modulus family; set
    /// `random_phase=True` for seed-driven phases.
    #[staticmethod]
    #[pyo3(signature = (grid, family, param, seed=0, random_phase=false))]
    fn from_family(
        grid: &Grid,
        family: &str,
        param: f64,
        seed: u64,
        random_phase: bool,
    ) -> PyResult<Field> {
        let mut fam = parse_family(family, param)?;
        if random_phase {
            fam = DataFamily::random_phase(fam);
        }
        Ok(Field { inner: generate_data(&fam, grid.inner, seed).map_err(core_err)? })
    }

    /// Indicator data on the frequency band `[lo, hi)`.
    #[staticmethod]
    fn flat_band(grid: &Grid, lo: f64, hi: f64) -> PyResult<Field> {
        let fam = DataFamily::FlatBand { lo, hi };
        Ok(Field { inner: generate_data(&fam, grid.inner, 0).map_err(core_err)? })
    }

    #[getter]
    fn grid(&self) -> Grid {
        Grid { inner: self.inner.grid() }
    }

    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs().to_vec()
    }

    fn coeff(&self, j: i64) -> Complex64 {
        self.inner.coeff(j)
    }

    fn l2_norm(&self) -> f64 {
        self.inner.l2_norm()
    }

    fn lebesgue_norm(&self, p: f64) -> PyResult<f64> {
        lebesgue_norm(&self.inner, p).map_err(core_err)
    }

    #[pyo3(signature = (s, homogeneous=false))]
    fn sobolev_norm(&self, s: f64, homogeneous: bool) -> PyResult<f64> {
        sobolev_norm(&self.inner, s, homogeneous).map_err(core_err)
    }

    fn modulation_norm(&self, p: f64) -> PyResult<f64> {
        modulation_norm(&self.inner, p).map_err(core_err)
    }

    fn fourier_lebesgue_norm(&self, r: f64) -> PyResult<f64> {
        fourier_lebesgue_norm(&self.inner, r).map_err(core_err)
    }

    /// Block-Orlicz norm with the lab profile at `gamma`.
    fn block_orlicz_norm(&self, gamma: f64) -> PyResult<f64> {
        let phi = lab_young(gamma).map_err(core_err)?;
        modulation_orlicz_norm(&phi, &self.inner).map_err(core_err)
    }

    fn mass_energy(&self) -> (f64, f64) {
        mass_energy(&self.inner)
    }

    fn free_evolve(&self, t: f64) -> Field {
        Field { inner: self.inner.free_evolve(t) }
    }

    fn project_band(&self, lo: f64, hi: f64) -> Field {
        Field { inner: self.inner.project_band(lo, hi) }
    }

    fn scale(&self, a: Complex64) -> Field {
        Field { inner: self.inner.scale(a) }
    }

    fn add(&self, other: &Field) -> PyResult<Field> {
        Ok(Field { inner: self.inner.add(&other.inner).map_err(core_err)? })
    }

    fn sub(&self, other: &Field) -> PyResult<Field> {
        Ok(Field { inner: self.inner.sub(&other.inner).map_err(core_err)? })
    }

    fn galilean_boost(&self, speed: f64) -> PyResult<Field> {
        Ok(Field {
            inner: nlslab_core::evolution::galilean_boost(&self.inner, speed).map_err(core_err)?,
        })
    }

    /// Dilation by an integer power of two dividing the period scale.
    fn rescale(&self, lam: u32) -> PyResult<Field> {
        Ok(Field { inner: nlslab_core::evolution::rescale(&self.inner, lam).map_err(core_err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(n={}, m={}, l2={:.6})",
            self.inner.grid().n(),
            self.inner.grid().m(),
            self.inner.l2_norm()
        )
    }
}

/// A time-sampled trajectory of fields.
#[pyclass]
struct Trajectory {
    inner: SpaceTimeField,
}

#[pymethods]
impl Trajectory {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn times(&self) -> Vec<f64> {
        (0..self.inner.len()).map(|k| self.inner.time(k)).collect()
    }

    fn frame(&self, k: usize) -> PyResult<Field> {
        if k >= self.inner.len() {
            return Err(PyIndexError::new_err(format!(
                "frame {k} out of range for {} frames",
                self.inner.len()
            )));
        }
        Ok(Field { inner: self.inner.frame(k).clone() })
    }

    /// `(mass, energy)` per recorded frame.
    fn mass_energy(&self) -> Vec<(f64, f64)> {
        self.inner.frames().iter().map(mass_energy).collect()
    }

    fn mixed_norm(&self, p: f64, q: f64) -> PyResult<f64> {
        mixed_spacetime_norm(&self.inner, p, q).map_err(core_err)
    }

    /// Exact p-variation of the adapted (free-flow-twisted) path.
    #[pyo3(signature = (p, tail_to_zero=false))]
    fn vp_norm(&self, p: f64, tail_to_zero: bool) -> PyResult<f64> {
        let path = adapted_path(&self.inner, tail_to_zero);
        Ok(vp_norm(&path, p).map_err(core_err)?.value)
    }

    fn __repr__(&self) -> String {
        format!("Trajectory(frames={}, span={:.4})", self.inner.len(), self.inner.span())
    }
}

/// Split-step evolution of the cubic equation.
#[pyfunction]
#[pyo3(signature = (u0, t_final, steps, stride=10, nonlinearity="defocusing"))]
fn evolve(
    u0: &Field,
    t_final: f64,
    steps: usize,
    stride: usize,
    nonlinearity: &str,
) -> PyResult<Trajectory> {
    let cfg = evolution_config(t_final, steps, stride, nonlinearity)?;
    Ok(Trajectory { inner: splitstep_evolve(&u0.inner, &cfg).map_err(core_err)? })
}

/// Picard iteration for the Duhamel fixed point, monitored in the
/// modulation norm with outer exponent `p`. Returns `(diagnostics,
/// final_trajectory)`.
#[pyfunction]
#[pyo3(signature = (u0, t_final, steps, iters=8, p=4.0))]
fn picard<'py>(
    py: Python<'py>,
    u0: &Field,
    t_final: f64,
    steps: usize,
    iters: usize,
    p: f64,
) -> PyResult<(Bound<'py, PyDict>, Trajectory)> {
    let cfg = EvolutionConfig::new(t_final, steps).map_err(core_err)?;
    let outcome = picard_iterate(&u0.inner, &cfg, iters, &PicardMonitor::Modulation { p })
        .map_err(core_err)?;
    let dict = PyDict::new(py);
    dict.set_item("iterate_norms", &outcome.report.iterate_norms)?;
    dict.set_item("differences", &outcome.report.differences)?;
    dict.set_item("ratios", &outcome.report.ratios)?;
    dict.set_item("a_of_t", outcome.report.a_of_t)?;
    dict.set_item("diverged", outcome.report.diverged)?;
    Ok((dict, Trajectory { inner: outcome.final_iterate }))
}

/// Luxemburg norm of a nonnegative sequence under the lab profile.
#[pyfunction]
fn luxemburg(gamma: f64, values: Vec<f64>) -> PyResult<f64> {
    let phi = lab_young(gamma).map_err(core_err)?;
    luxemburg_norm(&phi, &values).map_err(core_err)
}

/// Convex conjugate of the sqrt-composed profile, tabulated at `ts`.
#[pyfunction]
fn young_conjugate(gamma: f64, ts: Vec<f64>) -> PyResult<Vec<f64>> {
    if !(gamma >= 1.0) {
        return Err(PyValueError::new_err(format!("gamma must be at least 1, got {gamma}")));
    }
    let c = choose_correction_constant(1.0 / (2.0 * gamma), 0.5, 10.0).map_err(core_err)?;
    let phi = YoungFunction::sqrt_variant(gamma, c).map_err(core_err)?;
    let table = ConjugateTable::new(&phi);
    ts.iter().map(|&t| table.eval(t).map_err(core_err)).collect()
}

#[pyfunction]
#[pyo3(name = "verify_strichartz")]
#[pyo3(signature = (family, param, p, q, n=512, m=8, seed=0))]
fn verify_strichartz_py<'py>(
    py: Python<'py>,
    family: &str,
    param: f64,
    p: f64,
    q: f64,
    n: usize,
    m: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let fam = parse_family(family, param)?;
    let resolutions = [(n, m), (2 * n, m), (2 * n, 2 * m)];
    let report = verify_strichartz(&fam, p, q, &resolutions, seed).map_err(core_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(name = "verify_embeddings")]
#[pyo3(signature = (n=512, m=8, trials=50, seed=0))]
fn verify_embeddings_py<'py>(
    py: Python<'py>,
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let report = verify_embeddings(n, m, trials, seed).map_err(core_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(name = "verify_restriction")]
#[pyo3(signature = (data="flat", blocks=vec![4, 8, 16, 32, 64], m=8, seed=0))]
fn verify_restriction_py<'py>(
    py: Python<'py>,
    data: &str,
    blocks: Vec<usize>,
    m: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let data = match data {
        "flat" => RestrictionData::Flat,
        "random_phase" => RestrictionData::RandomPhase,
        other => {
            return Err(PyValueError::new_err(format!(
                "data must be flat or random_phase, got `{other}`"
            )))
        }
    };
    let report = verify_restriction_l4(data, &blocks, m, seed).map_err(core_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(name = "verify_scaling")]
fn verify_scaling_py<'py>(
    py: Python<'py>,
    u0: &Field,
    gamma: f64,
    lambdas: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = verify_scaling_law(&u0.inner, gamma, &lambdas).map_err(core_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(name = "verify_persistence")]
#[pyo3(signature = (u0, gamma=3.0, t_final=1.0, steps=1000, stride=100))]
fn verify_persistence_py<'py>(
    py: Python<'py>,
    u0: &Field,
    gamma: f64,
    t_final: f64,
    steps: usize,
    stride: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = EvolutionConfig::new(t_final, steps).map_err(core_err)?.with_stride(stride);
    let report = verify_norm_persistence(&u0.inner, gamma, &cfg).map_err(core_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(name = "verify_bilinear")]
#[pyo3(signature = (u0, v0, lambdas, window=0.5))]
fn verify_bilinear_py<'py>(
    py: Python<'py>,
    u0: &Field,
    v0: &Field,
    lambdas: Vec<f64>,
    window: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let report =
        verify_bilinear_inequality(&u0.inner, &v0.inner, &lambdas, window).map_err(core_err)?;
    report_dict(py, &report)
}

/// Run one acceptance criterion (1-based index); returns a dict with the
/// pass flag and the measured detail line.
#[pyfunction]
#[pyo3(signature = (index, seed=acceptance::DEFAULT_SEED))]
fn acceptance_criterion<'py>(
    py: Python<'py>,
    index: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    if index == 0 || index > acceptance::CRITERION_COUNT {
        return Err(PyValueError::new_err(format!(
            "criterion index must be in 1..={}, got {index}",
            acceptance::CRITERION_COUNT
        )));
    }
    let result = acceptance::run_criterion(index, seed);
    let dict = PyDict::new(py);
    dict.set_item("index", result.index)?;
    dict.set_item("name", result.name)?;
    dict.set_item("passed", result.passed)?;
    dict.set_item("detail", &result.detail)?;
    Ok(dict)
}

#[pymodule]
fn nlslab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Grid>()?;
    m.add_class::<Field>()?;
    m.add_class::<Trajectory>()?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(picard, m)?)?;
    m.add_function(wrap_pyfunction!(luxemburg, m)?)?;
    m.add_function(wrap_pyfunction!(young_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strichartz_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_embeddings_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_restriction_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_scaling_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_persistence_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bilinear_py, m)?)?;
    m.add_function(wrap_pyfunction!(acceptance_criterion, m)?)?;
    m.add("CRITERION_COUNT", acceptance::CRITERION_COUNT)?;
    m.add("DEFAULT_SEED", acceptance::DEFAULT_SEED)?;
    Ok(())
}
