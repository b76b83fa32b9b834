//! Domain types, unit normalization and antenna-spec document I/O.
//!
//! A spec document is a single JSON object in millimetres/gigahertz (the
//! units antenna data sheets use); [`load_antenna_spec`] normalizes
//! everything to SI and validates every invariant before returning. Unknown
//! keys (e.g. solver-specific mesh metadata) are accepted and ignored.

use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s (exact by definition).
pub const C0: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

/// Input units recognized at the document boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Millimetre,
    Metre,
    Gigahertz,
    Hertz,
    Ohm,
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mm" => Ok(Unit::Millimetre),
            "m" => Ok(Unit::Metre),
            "GHz" | "ghz" => Ok(Unit::Gigahertz),
            "Hz" | "hz" => Ok(Unit::Hertz),
            "ohm" | "Ohm" => Ok(Unit::Ohm),
            other => Err(Error::Validation {
                field: "unit".into(),
                reason: format!("unknown unit `{other}`"),
            }),
        }
    }
}

/// Scale `value` into base SI units (m, Hz, ohm).
///
/// mm scales by 1e-3, GHz by 1e9; m, Hz and ohm are identities. Millimetre
/// scaling divides by 1000 so that decimal inputs land on the same float the
/// equivalent decimal metre literal would (12.25 mm -> 0.01225 m exactly).
pub fn normalize_quantity(value: f64, unit: Unit) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Domain(format!("quantity must be finite, got {value}")));
    }
    Ok(match unit {
        Unit::Millimetre => value / 1e3,
        Unit::Gigahertz => value * 1e9,
        Unit::Metre | Unit::Hertz | Unit::Ohm => value,
    })
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A frequency in hertz; always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Frequency(f64);

impl Frequency {
    pub fn from_hertz(hertz: f64) -> Result<Self> {
        if !hertz.is_finite() || hertz <= 0.0 {
            return Err(Error::Validation {
                field: "frequency".into(),
                reason: format!("must be finite and > 0, got {hertz}"),
            });
        }
        Ok(Self(hertz))
    }

    pub fn from_gigahertz(gigahertz: f64) -> Result<Self> {
        Self::from_hertz(normalize_quantity(gigahertz, Unit::Gigahertz)?)
    }

    pub fn hertz(self) -> f64 {
        self.0
    }

    pub fn gigahertz(self) -> f64 {
        self.0 / 1e9
    }
}

/// Radiating element dimensions (metres).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchSpec {
    pub length_m: f64,
    pub width_m: f64,
}

/// Dielectric substrate block (metres, dimensionless permittivity).
///
/// `loss_tangent` is ingested for provenance only; no computation uses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateSpec {
    pub length_m: f64,
    pub width_m: f64,
    pub height_m: f64,
    pub relative_permittivity: f64,
    pub loss_tangent: Option<f64>,
}

/// Conducting ground plane (metres).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPlaneSpec {
    pub length_m: f64,
    pub width_m: f64,
}

/// Feed pin description: physical length plus the input-impedance
/// decomposition into radiation resistance, loss resistance and reactance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedSpec {
    pub length_m: f64,
    pub radiation_resistance_ohm: f64,
    pub loss_resistance_ohm: f64,
    pub reactance_ohm: f64,
}

/// Signal source / generator impedance and the reference impedance used for
/// reflection calculations (50 ohm unless the document overrides it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSpec {
    pub resistance_ohm: f64,
    pub reactance_ohm: f64,
    pub reference_impedance_ohm: f64,
}

/// Default reference impedance when a document omits `source.z0_ohm`.
pub const DEFAULT_REFERENCE_IMPEDANCE_OHM: f64 = 50.0;

/// Full physical description of one patch antenna, in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaSpec {
    pub name: String,
    pub operating_frequency: Frequency,
    pub patch: PatchSpec,
    pub substrate: SubstrateSpec,
    pub ground: GroundPlaneSpec,
    pub feed: FeedSpec,
    pub source: SourceSpec,
    /// Conduction efficiency e_c in [0, 1]; defaults to 1.
    pub conduction_efficiency: f64,
    /// Dielectric efficiency e_d in [0, 1]; defaults to 1.
    pub dielectric_efficiency: f64,
}

impl AntennaSpec {
    /// Check every invariant; error names the offending document field.
    pub fn validate(&self) -> Result<()> {
        require_positive(self.patch.length_m, "patch_mm.length")?;
        require_positive(self.patch.width_m, "patch_mm.width")?;
        require_positive(self.substrate.length_m, "substrate_mm.length")?;
        require_positive(self.substrate.width_m, "substrate_mm.width")?;
        require_positive(self.substrate.height_m, "substrate_mm.height")?;
        require(
            self.substrate.relative_permittivity.is_finite()
                && self.substrate.relative_permittivity >= 1.0,
            "relative_permittivity",
            "must be finite and >= 1",
        )?;
        if let Some(tand) = self.substrate.loss_tangent {
            require(
                tand.is_finite() && tand >= 0.0,
                "loss_tangent",
                "must be finite and >= 0",
            )?;
        }
        require_positive(self.ground.length_m, "ground_mm.length")?;
        require_positive(self.ground.width_m, "ground_mm.width")?;
        require(
            self.feed.length_m.is_finite() && self.feed.length_m >= 0.0,
            "feed.length_mm",
            "must be finite and >= 0",
        )?;
        require(
            self.feed.radiation_resistance_ohm.is_finite()
                && self.feed.radiation_resistance_ohm >= 0.0,
            "feed.rr_ohm",
            "must be finite and >= 0",
        )?;
        require(
            self.feed.loss_resistance_ohm.is_finite() && self.feed.loss_resistance_ohm >= 0.0,
            "feed.rl_ohm",
            "must be finite and >= 0",
        )?;
        require(self.feed.reactance_ohm.is_finite(), "feed.xa_ohm", "must be finite")?;
        require(
            self.source.resistance_ohm.is_finite() && self.source.resistance_ohm >= 0.0,
            "source.rg_ohm",
            "must be finite and >= 0",
        )?;
        require(self.source.reactance_ohm.is_finite(), "source.xg_ohm", "must be finite")?;
        require(
            self.source.reference_impedance_ohm.is_finite()
                && self.source.reference_impedance_ohm > 0.0,
            "source.z0_ohm",
            "must be finite and > 0",
        )?;
        require_unit_interval(self.conduction_efficiency, "ec")?;
        require_unit_interval(self.dielectric_efficiency, "ed")?;
        // Footprint nesting: patch inside substrate, substrate inside ground.
        require(
            self.patch.length_m <= self.substrate.length_m
                && self.patch.width_m <= self.substrate.width_m,
            "patch_mm",
            "patch must fit inside the substrate footprint",
        )?;
        require(
            self.substrate.length_m <= self.ground.length_m
                && self.substrate.width_m <= self.ground.width_m,
            "substrate_mm",
            "substrate must fit inside the ground-plane footprint",
        )?;
        Ok(())
    }
}

fn require(cond: bool, field: &str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation {
            field: field.into(),
            reason: reason.into(),
        })
    }
}

fn require_positive(value: f64, field: &str) -> Result<()> {
    require(value.is_finite() && value > 0.0, field, "must be finite and > 0")
}

fn require_unit_interval(value: f64, field: &str) -> Result<()> {
    require(
        value.is_finite() && (0.0..=1.0).contains(&value),
        field,
        "must lie in [0, 1]",
    )
}

// ---------------------------------------------------------------------------
// Document schema (millimetres / gigahertz at the boundary)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct RectMm {
    length: f64,
    width: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct BoxMm {
    length: f64,
    width: f64,
    height: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct FeedDoc {
    length_mm: f64,
    rr_ohm: f64,
    rl_ohm: f64,
    xa_ohm: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SourceDoc {
    rg_ohm: f64,
    xg_ohm: f64,
    #[serde(default)]
    z0_ohm: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SpecDocument {
    name: String,
    frequency_ghz: f64,
    patch_mm: RectMm,
    substrate_mm: BoxMm,
    relative_permittivity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loss_tangent: Option<f64>,
    ground_mm: RectMm,
    feed: FeedDoc,
    source: SourceDoc,
    #[serde(default)]
    ec: Option<f64>,
    #[serde(default)]
    ed: Option<f64>,
}

fn mm(value: f64, field: &str) -> Result<f64> {
    normalize_quantity(value, Unit::Millimetre).map_err(|_| Error::Validation {
        field: field.into(),
        reason: format!("must be finite, got {value}"),
    })
}

/// Parse a spec document, normalize all quantities to SI and validate every
/// invariant. No partially-constructed spec is ever returned.
pub fn load_antenna_spec(text: &str) -> Result<AntennaSpec> {
    let doc: SpecDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;

    if !doc.frequency_ghz.is_finite() || doc.frequency_ghz <= 0.0 {
        return Err(Error::Validation {
            field: "frequency_ghz".into(),
            reason: format!("must be finite and > 0, got {}", doc.frequency_ghz),
        });
    }
    let spec = AntennaSpec {
        name: doc.name,
        operating_frequency: Frequency::from_hertz(normalize_quantity(
            doc.frequency_ghz,
            Unit::Gigahertz,
        )?)?,
        patch: PatchSpec {
            length_m: mm(doc.patch_mm.length, "patch_mm.length")?,
            width_m: mm(doc.patch_mm.width, "patch_mm.width")?,
        },
        substrate: SubstrateSpec {
            length_m: mm(doc.substrate_mm.length, "substrate_mm.length")?,
            width_m: mm(doc.substrate_mm.width, "substrate_mm.width")?,
            height_m: mm(doc.substrate_mm.height, "substrate_mm.height")?,
            relative_permittivity: doc.relative_permittivity,
            loss_tangent: doc.loss_tangent,
        },
        ground: GroundPlaneSpec {
            length_m: mm(doc.ground_mm.length, "ground_mm.length")?,
            width_m: mm(doc.ground_mm.width, "ground_mm.width")?,
        },
        feed: FeedSpec {
            length_m: mm(doc.feed.length_mm, "feed.length_mm")?,
            radiation_resistance_ohm: doc.feed.rr_ohm,
            loss_resistance_ohm: doc.feed.rl_ohm,
            reactance_ohm: doc.feed.xa_ohm,
        },
        source: SourceSpec {
            resistance_ohm: doc.source.rg_ohm,
            reactance_ohm: doc.source.xg_ohm,
            reference_impedance_ohm: doc
                .source
                .z0_ohm
                .unwrap_or(DEFAULT_REFERENCE_IMPEDANCE_OHM),
        },
        conduction_efficiency: doc.ec.unwrap_or(1.0),
        dielectric_efficiency: doc.ed.unwrap_or(1.0),
    };
    spec.validate()?;
    Ok(spec)
}

/// Document-unit value whose load-side conversion reproduces `si` exactly.
///
/// A single multiply-then-divide by 1000 is not always an identity in binary
/// floating point (two roundings), but whenever `si` is reachable from some
/// document value, that witness lies within a couple of ulps of the naive
/// conversion; scan for it.
fn exact_boundary_value(si: f64, to_doc: impl Fn(f64) -> f64, to_si: impl Fn(f64) -> f64) -> f64 {
    let y = to_doc(si);
    if to_si(y) == si {
        return y;
    }
    let mut up = y;
    let mut down = y;
    for _ in 0..2 {
        up = up.next_up();
        if to_si(up) == si {
            return up;
        }
        down = down.next_down();
        if to_si(down) == si {
            return down;
        }
    }
    y
}

fn si_to_mm(si: f64) -> f64 {
    exact_boundary_value(si, |v| v * 1e3, |v| v / 1e3)
}

fn hz_to_ghz(hz: f64) -> f64 {
    exact_boundary_value(hz, |v| v / 1e9, |v| v * 1e9)
}

/// Serialize a spec back into document form. Defaulted efficiencies are
/// written explicitly; an absent loss tangent stays absent. The output
/// reparses to a field-for-field equal spec.
pub fn save_antenna_spec(spec: &AntennaSpec) -> String {
    let doc = SpecDocument {
        name: spec.name.clone(),
        frequency_ghz: hz_to_ghz(spec.operating_frequency.hertz()),
        patch_mm: RectMm {
            length: si_to_mm(spec.patch.length_m),
            width: si_to_mm(spec.patch.width_m),
        },
        substrate_mm: BoxMm {
            length: si_to_mm(spec.substrate.length_m),
            width: si_to_mm(spec.substrate.width_m),
            height: si_to_mm(spec.substrate.height_m),
        },
        relative_permittivity: spec.substrate.relative_permittivity,
        loss_tangent: spec.substrate.loss_tangent,
        ground_mm: RectMm {
            length: si_to_mm(spec.ground.length_m),
            width: si_to_mm(spec.ground.width_m),
        },
        feed: FeedDoc {
            length_mm: si_to_mm(spec.feed.length_m),
            rr_ohm: spec.feed.radiation_resistance_ohm,
            rl_ohm: spec.feed.loss_resistance_ohm,
            xa_ohm: spec.feed.reactance_ohm,
        },
        source: SourceDoc {
            rg_ohm: spec.source.resistance_ohm,
            xg_ohm: spec.source.reactance_ohm,
            z0_ohm: Some(spec.source.reference_impedance_ohm),
        },
        ec: Some(spec.conduction_efficiency),
        ed: Some(spec.dielectric_efficiency),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("spec document serializes");
    out.push('\n');
    out
}
