//! Whole-antenna metrics and the two-antenna comparison report, plus their
//! document forms (millimetres / gigahertz / dB at the boundary).

use serde::Serialize;

use crate::error::Result;
use crate::farfield::{self, CutPlane, ModelGeometry};
use crate::model::{AntennaSpec, Frequency};
use crate::radiometry::{self, EfficiencyBreakdown};
use crate::synthesis::{self, DesignResult};

/// FEKO full-wave 30/90-degree deltas published for the two bundled
/// antennas; echoed in comparison reports as reference annotations. The
/// closed-form two-slot model is not expected to reproduce them.
pub const FEKO_REFERENCE_DELTA_GPS_L1_DBI: f64 = 3.791;
pub const FEKO_REFERENCE_DELTA_GPS_GLONASS_DBI: f64 = 0.85;

/// Everything the analysis pipeline computes for one spec.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaMetrics {
    pub spec_name: String,
    /// What the design equations would synthesize for the spec's frequency,
    /// permittivity and substrate height.
    pub design_echo: DesignResult,
    /// Resonant frequency of the as-built patch dimensions.
    pub resonant_frequency_asbuilt: Frequency,
    pub directivity_dbi: f64,
    pub efficiency: EfficiencyBreakdown,
    pub realized_gain_dbi: f64,
    pub gain_delta_30_90_eplane_db: f64,
    pub gain_delta_30_90_hplane_db: f64,
    /// Patch footprint L * W.
    pub footprint_area_m2: f64,
    pub substrate_volume_m3: f64,
}

/// Per-metric differences (a - b) between two metric blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsDelta {
    pub resonant_frequency_asbuilt_ghz: f64,
    pub directivity_dbi: f64,
    pub total_efficiency: f64,
    pub realized_gain_dbi: f64,
    pub gain_delta_30_90_eplane_db: f64,
    pub gain_delta_30_90_hplane_db: f64,
    pub footprint_area_mm2: f64,
    pub substrate_volume_mm3: f64,
}

/// Side-by-side comparison of two specs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub antenna_a: AntennaMetrics,
    pub antenna_b: AntennaMetrics,
    pub deltas: MetricsDelta,
    /// Name of the spec with the larger E-plane 30/90 delta
    /// (lexicographic tie-break).
    pub higher_gain_delta: String,
}

/// Run the full analysis pipeline for one spec.
pub fn analyze(spec: &AntennaSpec, n_theta: usize, n_phi: usize) -> Result<AntennaMetrics> {
    let sub = &spec.substrate;
    let design_echo = synthesis::patch_length(
        spec.operating_frequency,
        sub.relative_permittivity,
        sub.height_m,
    )?;
    let resonant_frequency_asbuilt = synthesis::resonant_frequency(
        spec.patch.length_m,
        spec.patch.width_m,
        sub.height_m,
        sub.relative_permittivity,
    )?;

    let pattern = farfield::sample_pattern(spec, n_theta, n_phi)?;
    let directivity = radiometry::directivity(&pattern)?;
    let efficiency = radiometry::spec_efficiency(spec)?;
    let geometry = ModelGeometry::from_spec(spec)?;
    let e_cut = farfield::scaled_cut(&geometry, CutPlane::E, directivity, efficiency.total_efficiency)?;
    let h_cut = farfield::scaled_cut(&geometry, CutPlane::H, directivity, efficiency.total_efficiency)?;

    Ok(AntennaMetrics {
        spec_name: spec.name.clone(),
        design_echo,
        resonant_frequency_asbuilt,
        directivity_dbi: radiometry::to_dbi(directivity)?,
        realized_gain_dbi: radiometry::to_dbi(radiometry::realized_gain(
            directivity,
            efficiency.total_efficiency,
        )?)?,
        efficiency,
        gain_delta_30_90_eplane_db: farfield::gain_delta(&e_cut, 30.0, 90.0)?,
        gain_delta_30_90_hplane_db: farfield::gain_delta(&h_cut, 30.0, 90.0)?,
        footprint_area_m2: spec.patch.length_m * spec.patch.width_m,
        substrate_volume_m3: sub.length_m * sub.width_m * sub.height_m,
    })
}

/// Analyze both specs and difference every metric (a - b).
pub fn compare(
    spec_a: &AntennaSpec,
    spec_b: &AntennaSpec,
    n_theta: usize,
    n_phi: usize,
) -> Result<ComparisonReport> {
    let a = analyze(spec_a, n_theta, n_phi)?;
    let b = analyze(spec_b, n_theta, n_phi)?;
    let deltas = MetricsDelta {
        resonant_frequency_asbuilt_ghz: a.resonant_frequency_asbuilt.gigahertz()
            - b.resonant_frequency_asbuilt.gigahertz(),
        directivity_dbi: a.directivity_dbi - b.directivity_dbi,
        total_efficiency: a.efficiency.total_efficiency - b.efficiency.total_efficiency,
        realized_gain_dbi: a.realized_gain_dbi - b.realized_gain_dbi,
        gain_delta_30_90_eplane_db: a.gain_delta_30_90_eplane_db - b.gain_delta_30_90_eplane_db,
        gain_delta_30_90_hplane_db: a.gain_delta_30_90_hplane_db - b.gain_delta_30_90_hplane_db,
        footprint_area_mm2: (a.footprint_area_m2 - b.footprint_area_m2) * 1e6,
        substrate_volume_mm3: (a.substrate_volume_m3 - b.substrate_volume_m3) * 1e9,
    };
    let higher_gain_delta = if a.gain_delta_30_90_eplane_db > b.gain_delta_30_90_eplane_db {
        a.spec_name.clone()
    } else if b.gain_delta_30_90_eplane_db > a.gain_delta_30_90_eplane_db {
        b.spec_name.clone()
    } else {
        // tie: lexicographically smaller name, deterministically
        a.spec_name.clone().min(b.spec_name.clone())
    };
    Ok(ComparisonReport {
        antenna_a: a,
        antenna_b: b,
        deltas,
        higher_gain_delta,
    })
}

// ---------------------------------------------------------------------------
// Document forms
// ---------------------------------------------------------------------------

/// Synthesis result in report units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignDocument {
    pub width_mm: f64,
    pub effective_permittivity: f64,
    pub length_extension_mm: f64,
    pub length_mm: f64,
    pub target_frequency_ghz: f64,
}

impl From<&DesignResult> for DesignDocument {
    fn from(d: &DesignResult) -> Self {
        Self {
            width_mm: d.width_m * 1e3,
            effective_permittivity: d.effective_permittivity,
            length_extension_mm: d.length_extension_m * 1e3,
            length_mm: d.length_m * 1e3,
            target_frequency_ghz: d.target_frequency.gigahertz(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyDocument {
    pub gamma_re: f64,
    pub gamma_im: f64,
    pub reflection_efficiency: f64,
    pub conduction_efficiency: f64,
    pub dielectric_efficiency: f64,
    pub total_efficiency: f64,
}

impl From<&EfficiencyBreakdown> for EfficiencyDocument {
    fn from(e: &EfficiencyBreakdown) -> Self {
        Self {
            gamma_re: e.gamma.re,
            gamma_im: e.gamma.im,
            reflection_efficiency: e.reflection_efficiency,
            conduction_efficiency: e.conduction_efficiency,
            dielectric_efficiency: e.dielectric_efficiency,
            total_efficiency: e.total_efficiency,
        }
    }
}

/// Metrics block in report units (mm, GHz, dB).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsDocument {
    pub spec_name: String,
    pub design_echo: DesignDocument,
    pub resonant_frequency_asbuilt_ghz: f64,
    pub directivity_dbi: f64,
    pub efficiency: EfficiencyDocument,
    pub realized_gain_dbi: f64,
    pub gain_delta_30_90_eplane_db: f64,
    pub gain_delta_30_90_hplane_db: f64,
    pub footprint_area_mm2: f64,
    pub substrate_volume_mm3: f64,
}

impl AntennaMetrics {
    pub fn to_document(&self) -> MetricsDocument {
        MetricsDocument {
            spec_name: self.spec_name.clone(),
            design_echo: DesignDocument::from(&self.design_echo),
            resonant_frequency_asbuilt_ghz: self.resonant_frequency_asbuilt.gigahertz(),
            directivity_dbi: self.directivity_dbi,
            efficiency: EfficiencyDocument::from(&self.efficiency),
            realized_gain_dbi: self.realized_gain_dbi,
            gain_delta_30_90_eplane_db: self.gain_delta_30_90_eplane_db,
            gain_delta_30_90_hplane_db: self.gain_delta_30_90_hplane_db,
            footprint_area_mm2: self.footprint_area_m2 * 1e6,
            substrate_volume_mm3: self.substrate_volume_m3 * 1e9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct FekoReference {
    gps_l1_delta_dbi: f64,
    gps_glonass_delta_dbi: f64,
    note: &'static str,
}

/// Comparison report in report units, including the published FEKO
/// full-wave reference deltas as annotations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonDocument {
    pub antenna_a: MetricsDocument,
    pub antenna_b: MetricsDocument,
    pub deltas: MetricsDelta,
    pub higher_gain_delta: String,
    feko_reference: FekoReference,
}

impl ComparisonReport {
    pub fn to_document(&self) -> ComparisonDocument {
        ComparisonDocument {
            antenna_a: self.antenna_a.to_document(),
            antenna_b: self.antenna_b.to_document(),
            deltas: self.deltas,
            higher_gain_delta: self.higher_gain_delta.clone(),
            feko_reference: FekoReference {
                gps_l1_delta_dbi: FEKO_REFERENCE_DELTA_GPS_L1_DBI,
                gps_glonass_delta_dbi: FEKO_REFERENCE_DELTA_GPS_GLONASS_DBI,
                note: "FEKO full-wave 30/90-degree reference deltas for the bundled \
                       antennas; the closed-form two-slot model is not expected to \
                       reproduce them",
            },
        }
    }
}
