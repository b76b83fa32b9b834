//! Crate-wide error type and CLI exit-code mapping.

use thiserror::Error;

/// Errors produced by parsing, validation and the numerical operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The input document could not be parsed at all.
    #[error("malformed document: {0}")]
    MalformedDocument(String),

    /// A parsed value violates one of its invariants. `field` uses the
    /// document key path (e.g. `patch_mm.length`).
    #[error("invalid `{field}`: {reason}")]
    Validation { field: String, reason: String },

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The design chain produced a non-positive resonant length. Carries the
    /// intermediate values so the caller can see how far off the design is.
    #[error(
        "infeasible design: resonant length {length_mm:.4} mm <= 0 \
         (W = {width_mm:.4} mm, eff. permittivity = {effective_permittivity:.4}, \
         dL = {length_extension_mm:.4} mm)"
    )]
    InfeasibleDesign {
        width_mm: f64,
        effective_permittivity: f64,
        length_extension_mm: f64,
        length_mm: f64,
    },

    /// A denominator vanished (e.g. reflection against the negated reference
    /// impedance, or the fringing-extension pole).
    #[error("singularity: {0}")]
    Singularity(String),

    /// A root-finding target lies outside the search bracket. Reports the
    /// frequencies achievable at the bracket's endpoints.
    #[error(
        "no solution: target {target_hz} Hz outside achievable range \
         [{f_at_er_max_hz}, {f_at_er_min_hz}] Hz for permittivity in [{er_min}, {er_max}]"
    )]
    NoSolution {
        target_hz: f64,
        f_at_er_min_hz: f64,
        f_at_er_max_hz: f64,
        er_min: f64,
        er_max: f64,
    },

    /// The pattern carries no power anywhere.
    #[error("degenerate pattern: all intensity samples are zero")]
    DegeneratePattern,

    /// An iterative solver exhausted its iteration budget.
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
}

impl Error {
    /// Process exit code used by the CLI: 2 for input/validation problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MalformedDocument(_) | Error::Validation { .. } | Error::Domain(_) => 2,
            Error::InfeasibleDesign { .. }
            | Error::Singularity(_)
            | Error::NoSolution { .. }
            | Error::DegeneratePattern
            | Error::NoConvergence(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
