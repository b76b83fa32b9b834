//! Rectangular microstrip patch antenna synthesis and analysis.
//!
//! The crate covers the classic transmission-line design chain (patch width,
//! effective permittivity, fringing length extension, resonant length), the
//! radiometric figures of merit (directivity by solid-angle quadrature, the
//! efficiency chain including impedance mismatch, dBi conversion), and a
//! closed-form two-slot far-field model used to generate radiation patterns
//! and principal-plane gain cuts.
//!
//! All internal quantities are SI (metres, hertz, ohms); millimetres and
//! gigahertz appear only at I/O boundaries (spec documents, reports, CLI).
//!
//! Two antenna spec files for GNSS L1-band patches (`fixtures/gps_l1.json`,
//! `fixtures/gps_glonass.json`) ship with the repository and drive the
//! comparison workflow end to end.

pub mod error;
pub mod farfield;
pub mod metrics;
pub mod model;
pub mod radiometry;
pub mod synthesis;

pub use error::{Error, Result};
