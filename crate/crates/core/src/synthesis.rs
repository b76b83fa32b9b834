//! Transmission-line design equations for rectangular patches: width,
//! effective permittivity, fringing length extension and resonant length,
//! plus the inverse problems (resonant frequency of an as-built patch and
//! numerical inversion in permittivity).
//!
//! `sqrt(eps0 * mu0)` is evaluated as `1 / C0` exactly, so the forward and
//! inverse chains are consistent to machine precision.

use crate::error::{Error, Result};
use crate::model::{Frequency, C0};

/// Synthesis output for one target frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignResult {
    pub width_m: f64,
    pub effective_permittivity: f64,
    pub length_extension_m: f64,
    pub length_m: f64,
    pub target_frequency: Frequency,
}

fn check_permittivity(er: f64) -> Result<()> {
    if !er.is_finite() || er < 1.0 {
        return Err(Error::Domain(format!(
            "relative permittivity must be finite and >= 1, got {er}"
        )));
    }
    Ok(())
}

fn check_height(h_m: f64) -> Result<()> {
    if !h_m.is_finite() || h_m < 0.0 {
        return Err(Error::Domain(format!(
            "substrate height must be finite and >= 0, got {h_m}"
        )));
    }
    Ok(())
}

fn check_width(w_m: f64) -> Result<()> {
    if !w_m.is_finite() || w_m <= 0.0 {
        return Err(Error::Domain(format!(
            "patch width must be finite and > 0, got {w_m}"
        )));
    }
    Ok(())
}

/// Patch width for an efficient radiator:
/// `W = (c0 / 2 fr) * sqrt(2 / (er + 1))`.
///
/// Strictly decreasing in both the frequency and the permittivity.
pub fn patch_width(fr: Frequency, er: f64) -> Result<f64> {
    check_permittivity(er)?;
    Ok(C0 / (2.0 * fr.hertz()) * (2.0 / (er + 1.0)).sqrt())
}

/// Effective dielectric constant of the partially-filled line:
/// `eps_eff = (er + 1)/2 + (er - 1)/2 * (1 + 12 h/W)^(-1/2)`.
///
/// Lies in `[1, er]`; tends to `er` as the substrate vanishes.
pub fn effective_permittivity(er: f64, h_m: f64, w_m: f64) -> Result<f64> {
    check_permittivity(er)?;
    check_height(h_m)?;
    check_width(w_m)?;
    if h_m == 0.0 {
        return Ok(er);
    }
    Ok((er + 1.0) / 2.0 + (er - 1.0) / 2.0 / (1.0 + 12.0 * h_m / w_m).sqrt())
}

/// Fringing-field length extension of one radiating edge:
/// `dL = 0.412 h (eps_eff + 0.3)(W/h + 0.264) / ((eps_eff - 0.258)(W/h + 0.8))`.
///
/// Zero exactly when the substrate height is zero.
pub fn length_extension(h_m: f64, w_m: f64, eff_permittivity: f64) -> Result<f64> {
    check_height(h_m)?;
    check_width(w_m)?;
    if !eff_permittivity.is_finite() || eff_permittivity <= 0.258 {
        return Err(Error::Singularity(format!(
            "length extension undefined for effective permittivity {eff_permittivity} <= 0.258"
        )));
    }
    if h_m == 0.0 {
        return Ok(0.0);
    }
    let ratio = w_m / h_m;
    Ok(0.412 * h_m * ((eff_permittivity + 0.3) * (ratio + 0.264))
        / ((eff_permittivity - 0.258) * (ratio + 0.8)))
}

/// Full synthesis chain: width, effective permittivity, length extension and
/// resonant length `L = c0 / (2 fr sqrt(eps_eff)) - 2 dL`.
///
/// A non-positive length is reported as an infeasible design together with
/// all intermediate values.
pub fn patch_length(fr: Frequency, er: f64, h_m: f64) -> Result<DesignResult> {
    let width_m = patch_width(fr, er)?;
    let eff = effective_permittivity(er, h_m, width_m)?;
    let ext_m = length_extension(h_m, width_m, eff)?;
    let length_m = C0 / (2.0 * fr.hertz() * eff.sqrt()) - 2.0 * ext_m;
    if length_m <= 0.0 {
        return Err(Error::InfeasibleDesign {
            width_mm: width_m * 1e3,
            effective_permittivity: eff,
            length_extension_mm: ext_m * 1e3,
            length_mm: length_m * 1e3,
        });
    }
    Ok(DesignResult {
        width_m,
        effective_permittivity: eff,
        length_extension_m: ext_m,
        length_m,
        target_frequency: fr,
    })
}

/// Resonant frequency of an as-built patch:
/// `fr = c0 / (2 (L + 2 dL) sqrt(eps_eff))`, with the effective permittivity
/// and length extension evaluated at the patch's actual width (which for the
/// physical parts on hand does not match the synthesized one).
pub fn resonant_frequency(length_m: f64, width_m: f64, h_m: f64, er: f64) -> Result<Frequency> {
    if !length_m.is_finite() || length_m <= 0.0 {
        return Err(Error::Domain(format!(
            "patch length must be finite and > 0, got {length_m}"
        )));
    }
    let eff = effective_permittivity(er, h_m, width_m)?;
    let ext_m = length_extension(h_m, width_m, eff)?;
    Frequency::from_hertz(C0 / (2.0 * (length_m + 2.0 * ext_m) * eff.sqrt()))
}

/// Bisection bracket for [`invert_permittivity`].
pub const PERMITTIVITY_BRACKET: (f64, f64) = (1.0, 100.0);
const BISECTION_MAX_ITER: usize = 200;
const BISECTION_REL_TOL: f64 = 1e-9;

/// Solve `resonant_frequency(L, W, h, er) = fr_target` for the permittivity.
///
/// The map is smooth and strictly decreasing in `er`, so plain bisection on
/// `[1, 100]` converges unconditionally; iteration stops once the frequency
/// residual drops below `1e-9 * fr_target`.
pub fn invert_permittivity(
    length_m: f64,
    width_m: f64,
    h_m: f64,
    fr_target: Frequency,
) -> Result<f64> {
    let (er_min, er_max) = PERMITTIVITY_BRACKET;
    let f_at_min = resonant_frequency(length_m, width_m, h_m, er_min)?.hertz();
    let f_at_max = resonant_frequency(length_m, width_m, h_m, er_max)?.hertz();
    let target = fr_target.hertz();
    if target > f_at_min || target < f_at_max {
        return Err(Error::NoSolution {
            target_hz: target,
            f_at_er_min_hz: f_at_min,
            f_at_er_max_hz: f_at_max,
            er_min,
            er_max,
        });
    }
    let tol = BISECTION_REL_TOL * target;
    let (mut lo, mut hi) = (er_min, er_max);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let f_mid = resonant_frequency(length_m, width_m, h_m, mid)?.hertz();
        if (f_mid - target).abs() <= tol {
            return Ok(mid);
        }
        if f_mid > target {
            lo = mid; // frequency too high -> need more permittivity
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(BISECTION_MAX_ITER))
}
