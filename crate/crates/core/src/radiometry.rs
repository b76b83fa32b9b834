//! Radiometric figures of merit: solid-angle quadrature, directivity, gain,
//! the efficiency chain (including impedance mismatch) and dBi conversion.
//!
//! The quadrature is a composite trapezoid rule in theta crossed with a
//! uniform midpoint rule in phi, plus the exact Euler-Maclaurin endpoint
//! terms in theta. Because `sin(theta)` vanishes at both poles, those terms
//! reduce to the boundary intensity samples themselves, which keeps the rule
//! fourth-order for smooth patterns (an uncorrected trapezoid stalls at
//! h^2/12 of the polar samples, three orders short of the isotropic-pattern
//! tolerance). Accumulation order is fixed (theta-major, ascending) so
//! results are bit-reproducible run to run.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{AntennaSpec, FeedSpec};

/// Default polar sample count for quadrature-grade grids.
pub const DEFAULT_N_THETA: usize = 361;
/// Default azimuthal sample count for quadrature-grade grids.
pub const DEFAULT_N_PHI: usize = 720;
/// Floor applied by [`to_dbi`] so zero intensity stays plottable.
pub const DBI_FLOOR: f64 = -120.0;

// ---------------------------------------------------------------------------
// Radiation pattern
// ---------------------------------------------------------------------------

/// Normalized radiation-intensity samples on a (theta, phi) product grid.
///
/// Theta spans [0, pi] with both endpoints present; phi is a uniform grid
/// covering one full turn. Intensities are normalized at construction so the
/// peak sample is exactly 1.
#[derive(Debug, Clone)]
pub struct RadiationPattern {
    theta_rad: Vec<f64>,
    phi_rad: Vec<f64>,
    /// Row-major `n_theta x n_phi`, peak exactly 1.
    intensity: Vec<f64>,
}

/// Uniform grids used by the sampling and test code: theta hits both poles,
/// phi samples sit at cell midpoints of one full turn.
pub fn uniform_grids(n_theta: usize, n_phi: usize) -> (Vec<f64>, Vec<f64>) {
    let theta = (0..n_theta)
        .map(|i| PI * (i as f64 / (n_theta - 1) as f64))
        .collect();
    let phi = (0..n_phi)
        .map(|j| 2.0 * PI * ((j as f64 + 0.5) / n_phi as f64))
        .collect();
    (theta, phi)
}

impl RadiationPattern {
    /// Build a pattern from raw (non-negative) intensity samples, normalizing
    /// by the peak. Rejects malformed grids and all-zero sample sets.
    pub fn from_samples(
        theta_rad: Vec<f64>,
        phi_rad: Vec<f64>,
        mut intensity: Vec<f64>,
    ) -> Result<Self> {
        if theta_rad.len() < 2 {
            return Err(Error::Domain("theta grid needs at least 2 samples".into()));
        }
        if phi_rad.is_empty() {
            return Err(Error::Domain("phi grid needs at least 1 sample".into()));
        }
        if theta_rad.iter().chain(phi_rad.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("grid samples must be finite".into()));
        }
        if (theta_rad[0]).abs() > 1e-12 || (theta_rad[theta_rad.len() - 1] - PI).abs() > 1e-12 {
            return Err(Error::Domain(
                "theta grid must include both endpoints 0 and pi".into(),
            ));
        }
        if theta_rad.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("theta grid must be strictly increasing".into()));
        }
        let n_phi = phi_rad.len();
        let dphi = 2.0 * PI / n_phi as f64;
        if phi_rad.iter().any(|&p| !(0.0..2.0 * PI).contains(&p)) {
            return Err(Error::Domain("phi samples must lie in [0, 2*pi)".into()));
        }
        if phi_rad
            .windows(2)
            .any(|w| w[1] <= w[0] || (w[1] - w[0] - dphi).abs() > 1e-9)
        {
            return Err(Error::Domain("phi grid must be uniform and increasing".into()));
        }
        if intensity.len() != theta_rad.len() * n_phi {
            return Err(Error::Domain(format!(
                "expected {} intensity samples, got {}",
                theta_rad.len() * n_phi,
                intensity.len()
            )));
        }
        let mut max = 0.0f64;
        for &u in &intensity {
            if !u.is_finite() || u < 0.0 {
                return Err(Error::Domain(format!(
                    "intensity samples must be finite and >= 0, got {u}"
                )));
            }
            max = max.max(u);
        }
        if max == 0.0 {
            return Err(Error::DegeneratePattern);
        }
        if max != 1.0 {
            for u in &mut intensity {
                *u /= max;
            }
        }
        Ok(Self {
            theta_rad,
            phi_rad,
            intensity,
        })
    }

    /// Convenience constructor: sample `f(theta, phi)` on the uniform grids.
    pub fn from_fn(
        n_theta: usize,
        n_phi: usize,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let (theta, phi) = uniform_grids(n_theta, n_phi);
        let mut intensity = Vec::with_capacity(n_theta * n_phi);
        for &t in &theta {
            for &p in &phi {
                intensity.push(f(t, p));
            }
        }
        Self::from_samples(theta, phi, intensity)
    }

    pub fn theta_samples(&self) -> &[f64] {
        &self.theta_rad
    }

    pub fn phi_samples(&self) -> &[f64] {
        &self.phi_rad
    }

    pub fn n_theta(&self) -> usize {
        self.theta_rad.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi_rad.len()
    }

    pub fn intensity_at(&self, theta_idx: usize, phi_idx: usize) -> f64 {
        self.intensity[theta_idx * self.phi_rad.len() + phi_idx]
    }
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Pattern solid angle `Omega_p = integral of F(theta, phi) dOmega` over the
/// sphere, `dOmega = sin(theta) dtheta dphi`.
pub fn pattern_solid_angle(pattern: &RadiationPattern) -> Result<f64> {
    let theta = &pattern.theta_rad;
    let n_theta = theta.len();
    let n_phi = pattern.phi_rad.len();
    let dphi = 2.0 * PI / n_phi as f64;

    // theta-major, ascending; single scalar accumulator.
    let mut sum = 0.0;
    for i in 0..n_theta {
        let w = if i == 0 {
            (theta[1] - theta[0]) / 2.0
        } else if i == n_theta - 1 {
            (theta[n_theta - 1] - theta[n_theta - 2]) / 2.0
        } else {
            (theta[i + 1] - theta[i - 1]) / 2.0
        };
        let row_scale = w * theta[i].sin() * dphi;
        for j in 0..n_phi {
            sum += row_scale * pattern.intensity_at(i, j);
        }
    }

    // Euler-Maclaurin endpoint terms: d/dtheta [F sin(theta)] reduces to
    // +/- F at the poles, so the h^2/12 correction needs only the boundary
    // samples.
    let h_first = theta[1] - theta[0];
    let h_last = theta[n_theta - 1] - theta[n_theta - 2];
    let mut first_row = 0.0;
    let mut last_row = 0.0;
    for j in 0..n_phi {
        first_row += pattern.intensity_at(0, j);
    }
    for j in 0..n_phi {
        last_row += pattern.intensity_at(n_theta - 1, j);
    }
    sum += h_first * h_first / 12.0 * first_row * dphi;
    sum += h_last * h_last / 12.0 * last_row * dphi;

    if sum <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    Ok(sum)
}

/// Directivity `D = 4 pi / Omega_p`.
pub fn directivity(pattern: &RadiationPattern) -> Result<f64> {
    Ok(4.0 * PI / pattern_solid_angle(pattern)?)
}

// ---------------------------------------------------------------------------
// Gain and efficiency
// ---------------------------------------------------------------------------

/// Gain from radiation intensity and accepted power:
/// `G = 4 pi U / P_in`.
pub fn gain_from_intensity(intensity_w_per_sr: f64, input_power_w: f64) -> Result<f64> {
    if !(input_power_w.is_finite() && input_power_w > 0.0) {
        return Err(Error::Domain(format!(
            "input power must be finite and > 0, got {input_power_w}"
        )));
    }
    if !(intensity_w_per_sr.is_finite() && intensity_w_per_sr >= 0.0) {
        return Err(Error::Domain(format!(
            "radiation intensity must be finite and >= 0, got {intensity_w_per_sr}"
        )));
    }
    Ok(4.0 * PI * intensity_w_per_sr / input_power_w)
}

/// Realized gain `G = e0 * D`.
pub fn realized_gain(directivity: f64, total_efficiency: f64) -> Result<f64> {
    if !(directivity.is_finite() && directivity >= 0.0) {
        return Err(Error::Domain(format!(
            "directivity must be finite and >= 0, got {directivity}"
        )));
    }
    if !(total_efficiency.is_finite() && (0.0..=1.0).contains(&total_efficiency)) {
        return Err(Error::Domain(format!(
            "total efficiency must lie in [0, 1], got {total_efficiency}"
        )));
    }
    Ok(total_efficiency * directivity)
}

/// Radiation efficiency `Prad / Pt`.
pub fn radiation_efficiency(radiated_power_w: f64, transmitter_power_w: f64) -> Result<f64> {
    if !(transmitter_power_w.is_finite() && transmitter_power_w > 0.0) {
        return Err(Error::Domain(format!(
            "transmitter power must be finite and > 0, got {transmitter_power_w}"
        )));
    }
    if !(radiated_power_w.is_finite() && radiated_power_w >= 0.0) {
        return Err(Error::Domain(format!(
            "radiated power must be finite and >= 0, got {radiated_power_w}"
        )));
    }
    if radiated_power_w > transmitter_power_w {
        return Err(Error::Domain(format!(
            "radiated power {radiated_power_w} exceeds transmitter power {transmitter_power_w}"
        )));
    }
    Ok(radiated_power_w / transmitter_power_w)
}

// ---------------------------------------------------------------------------
// Impedance and mismatch
// ---------------------------------------------------------------------------

/// Complex impedance split into resistance and reactance (ohms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impedance {
    pub resistance_ohm: f64,
    pub reactance_ohm: f64,
}

impl Impedance {
    pub fn new(resistance_ohm: f64, reactance_ohm: f64) -> Self {
        Self {
            resistance_ohm,
            reactance_ohm,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.resistance_ohm, self.reactance_ohm)
    }
}

/// Antenna input impedance from the feed decomposition:
/// `Z_A = (R_r + R_L) + j X_A`.
pub fn input_impedance(feed: &FeedSpec) -> Impedance {
    Impedance::new(
        feed.radiation_resistance_ohm + feed.loss_resistance_ohm,
        feed.reactance_ohm,
    )
}

/// Voltage reflection coefficient at the antenna terminals against a real
/// reference impedance: `Gamma = (Z_A - Z0) / (Z_A + Z0)`.
pub fn reflection_coefficient(antenna: Impedance, reference_ohm: f64) -> Result<Complex64> {
    if !(reference_ohm.is_finite() && reference_ohm > 0.0) {
        return Err(Error::Domain(format!(
            "reference impedance must be finite and > 0, got {reference_ohm}"
        )));
    }
    let za = antenna.as_complex();
    let denom = za + reference_ohm;
    if denom.norm_sqr() == 0.0 {
        return Err(Error::Singularity(format!(
            "reflection coefficient undefined for Z_A = -Z0 = -{reference_ohm} ohm"
        )));
    }
    Ok((za - reference_ohm) / denom)
}

/// Mismatch, conduction and dielectric efficiencies with their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyBreakdown {
    /// Voltage reflection coefficient the mismatch term derives from.
    pub gamma: Complex64,
    /// `e_r = 1 - |Gamma|^2`.
    pub reflection_efficiency: f64,
    pub conduction_efficiency: f64,
    pub dielectric_efficiency: f64,
    /// `e_0 = e_r * e_c * e_d`.
    pub total_efficiency: f64,
}

/// Compose the efficiency chain from a reflection coefficient and the
/// conduction/dielectric terms.
pub fn efficiency_chain(
    gamma: Complex64,
    conduction_efficiency: f64,
    dielectric_efficiency: f64,
) -> Result<EfficiencyBreakdown> {
    let norm_sqr = gamma.norm_sqr();
    // Allow a few ulps past unity: passive loads can land there after the
    // complex division. Anything larger is a genuine domain violation.
    if !norm_sqr.is_finite() || norm_sqr > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "|Gamma| must be <= 1, got |Gamma|^2 = {norm_sqr}"
        )));
    }
    for (value, name) in [
        (conduction_efficiency, "conduction efficiency"),
        (dielectric_efficiency, "dielectric efficiency"),
    ] {
        if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
            return Err(Error::Domain(format!(
                "{name} must lie in [0, 1], got {value}"
            )));
        }
    }
    let reflection_efficiency = (1.0 - norm_sqr).max(0.0);
    Ok(EfficiencyBreakdown {
        gamma,
        reflection_efficiency,
        conduction_efficiency,
        dielectric_efficiency,
        total_efficiency: reflection_efficiency * conduction_efficiency * dielectric_efficiency,
    })
}

/// Efficiency chain of a whole spec: mismatch from the feed impedance against
/// the source reference, times the spec's conduction/dielectric terms.
pub fn spec_efficiency(spec: &AntennaSpec) -> Result<EfficiencyBreakdown> {
    let gamma = reflection_coefficient(
        input_impedance(&spec.feed),
        spec.source.reference_impedance_ohm,
    )?;
    efficiency_chain(
        gamma,
        spec.conduction_efficiency,
        spec.dielectric_efficiency,
    )
}

/// Convert a linear power ratio to dBi, flooring at [`DBI_FLOOR`] so zero
/// intensity stays finite and plottable.
pub fn to_dbi(ratio: f64) -> Result<f64> {
    if !ratio.is_finite() || ratio < 0.0 {
        return Err(Error::Domain(format!(
            "dBi conversion needs a finite ratio >= 0, got {ratio}"
        )));
    }
    if ratio == 0.0 {
        return Ok(DBI_FLOOR);
    }
    Ok((10.0 * ratio.log10()).max(DBI_FLOOR))
}
