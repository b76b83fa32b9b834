//! Python bindings: the synthesis chain, antenna spec analysis and the
//! two-antenna comparison, with millimetres/gigahertz at the boundary like
//! the CLI. Reports come back as JSON strings; cuts as parallel lists.
//!
//! Build with `cargo build -p patchkit-py --release` and import the
//! resulting shared library as `patchkit_py` (see `python/smoke_test.py`).

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use patchkit::farfield::{self, CutPlane};
use patchkit::metrics;
use patchkit::model::{self, AntennaSpec, Frequency};
use patchkit::radiometry;
use patchkit::synthesis;

fn to_py_err(e: patchkit::Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn ghz(freq_ghz: f64) -> PyResult<Frequency> {
    Frequency::from_gigahertz(freq_ghz).map_err(to_py_err)
}

fn mm(value_mm: f64) -> PyResult<f64> {
    model::normalize_quantity(value_mm, model::Unit::Millimetre).map_err(to_py_err)
}

fn parse_plane(plane: &str) -> PyResult<CutPlane> {
    match plane {
        "e" | "E" => Ok(CutPlane::E),
        "h" | "H" => Ok(CutPlane::H),
        other => Err(PyValueError::new_err(format!(
            "plane must be 'e' or 'h', got {other:?}"
        ))),
    }
}

/// Synthesized patch dimensions for one target frequency (millimetres).
#[pyclass(frozen)]
struct Design {
    #[pyo3(get)]
    width_mm: f64,
    #[pyo3(get)]
    effective_permittivity: f64,
    #[pyo3(get)]
    length_extension_mm: f64,
    #[pyo3(get)]
    length_mm: f64,
    #[pyo3(get)]
    target_frequency_ghz: f64,
}

#[pymethods]
impl Design {
    fn __repr__(&self) -> String {
        format!(
            "Design(width_mm={}, effective_permittivity={}, length_extension_mm={}, length_mm={}, target_frequency_ghz={})",
            self.width_mm,
            self.effective_permittivity,
            self.length_extension_mm,
            self.length_mm,
            self.target_frequency_ghz
        )
    }
}

/// Synthesize patch width and resonant length for a target frequency (GHz),
/// substrate permittivity and substrate height (mm).
#[pyfunction]
fn synthesize(freq_ghz: f64, er: f64, h_mm: f64) -> PyResult<Design> {
    let d = synthesis::patch_length(ghz(freq_ghz)?, er, mm(h_mm)?).map_err(to_py_err)?;
    Ok(Design {
        width_mm: d.width_m * 1e3,
        effective_permittivity: d.effective_permittivity,
        length_extension_mm: d.length_extension_m * 1e3,
        length_mm: d.length_m * 1e3,
        target_frequency_ghz: d.target_frequency.gigahertz(),
    })
}

/// Resonant frequency (GHz) of an as-built patch (dimensions in mm).
#[pyfunction]
fn resonant_frequency_ghz(length_mm: f64, width_mm: f64, h_mm: f64, er: f64) -> PyResult<f64> {
    synthesis::resonant_frequency(mm(length_mm)?, mm(width_mm)?, mm(h_mm)?, er)
        .map(Frequency::gigahertz)
        .map_err(to_py_err)
}

/// Substrate permittivity that would make an as-built patch resonate at the
/// target frequency (GHz); bisection over [1, 100].
#[pyfunction]
fn invert_permittivity(length_mm: f64, width_mm: f64, h_mm: f64, freq_ghz: f64) -> PyResult<f64> {
    synthesis::invert_permittivity(mm(length_mm)?, mm(width_mm)?, mm(h_mm)?, ghz(freq_ghz)?)
        .map_err(to_py_err)
}

/// One antenna spec, loaded from the JSON document format.
#[pyclass(frozen)]
struct Antenna {
    spec: AntennaSpec,
}

#[pymethods]
impl Antenna {
    /// Parse a spec from JSON text.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            spec: model::load_antenna_spec(text).map_err(to_py_err)?,
        })
    }

    /// Load a spec file from disk.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyIOError::new_err(format!("cannot read {path}: {e}")))?;
        Self::from_json(&text)
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name.clone()
    }

    #[getter]
    fn operating_frequency_ghz(&self) -> f64 {
        self.spec.operating_frequency.gigahertz()
    }

    /// Serialize back to the JSON document format.
    fn to_json(&self) -> String {
        model::save_antenna_spec(&self.spec)
    }

    /// Resonant frequency (GHz) of the as-built patch dimensions.
    fn resonant_frequency_ghz(&self) -> PyResult<f64> {
        synthesis::resonant_frequency(
            self.spec.patch.length_m,
            self.spec.patch.width_m,
            self.spec.substrate.height_m,
            self.spec.substrate.relative_permittivity,
        )
        .map(Frequency::gigahertz)
        .map_err(to_py_err)
    }

    /// Directivity (dBi) from the two-slot model on an `ntheta x nphi` grid.
    #[pyo3(signature = (ntheta=181, nphi=360))]
    fn directivity_dbi(&self, ntheta: usize, nphi: usize) -> PyResult<f64> {
        let pattern = farfield::sample_pattern(&self.spec, ntheta, nphi).map_err(to_py_err)?;
        let d = radiometry::directivity(&pattern).map_err(to_py_err)?;
        radiometry::to_dbi(d).map_err(to_py_err)
    }

    /// Full metrics report as a JSON string.
    #[pyo3(signature = (ntheta=181, nphi=360))]
    fn analyze_json(&self, ntheta: usize, nphi: usize) -> PyResult<String> {
        let report = metrics::analyze(&self.spec, ntheta, nphi).map_err(to_py_err)?;
        Ok(serde_json::to_string_pretty(&report.to_document()).expect("report serializes"))
    }

    /// Principal-plane cut: returns `(theta_deg, gain_dbi)` lists over
    /// [-90, 90] at 1 degree steps. `plane` is `"e"` or `"h"`.
    #[pyo3(signature = (plane, ntheta=181, nphi=360))]
    fn pattern_cut(&self, plane: &str, ntheta: usize, nphi: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let cut = farfield::pattern_cut(&self.spec, parse_plane(plane)?, ntheta, nphi)
            .map_err(to_py_err)?;
        Ok((cut.theta_deg, cut.gain_dbi))
    }

    fn __repr__(&self) -> String {
        format!(
            "Antenna(name={:?}, frequency_ghz={})",
            self.spec.name,
            self.spec.operating_frequency.gigahertz()
        )
    }
}

/// Compare two antennas; returns the comparison report as a JSON string.
#[pyfunction]
#[pyo3(signature = (antenna_a, antenna_b, ntheta=181, nphi=360))]
fn compare_json(
    antenna_a: &Antenna,
    antenna_b: &Antenna,
    ntheta: usize,
    nphi: usize,
) -> PyResult<String> {
    let report =
        metrics::compare(&antenna_a.spec, &antenna_b.spec, ntheta, nphi).map_err(to_py_err)?;
    Ok(serde_json::to_string_pretty(&report.to_document()).expect("report serializes"))
}

#[pymodule]
mod patchkit_py {
    #[pymodule_export]
    use super::{
        compare_json, invert_permittivity, resonant_frequency_ghz, synthesize, Antenna, Design,
    };
}
