//! `patchkit` command line: synthesize patch dimensions, analyze spec files,
//! export principal-plane pattern cuts as CSV and compare two antennas.
//!
//! Exit codes: 0 success, 2 input/validation error, 3 numerical error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use patchkit::farfield::{self, CutPlane};
use patchkit::metrics::{self, DesignDocument};
use patchkit::model::{self, AntennaSpec, Frequency};
use patchkit::synthesis;

#[derive(Parser)]
#[command(
    name = "patchkit",
    version,
    about = "Microstrip patch antenna synthesis and far-field analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize patch dimensions for a target frequency
    Synth {
        /// Target resonant frequency in GHz
        freq_ghz: f64,
        /// Substrate relative permittivity (>= 1)
        er: f64,
        /// Substrate height in mm
        h_mm: f64,
    },
    /// Compute the full metrics block for a spec file
    Analyze {
        /// Antenna spec file (JSON)
        spec: PathBuf,
        /// Polar samples for the directivity quadrature
        #[arg(long, default_value_t = farfield::DEFAULT_SAMPLE_N_THETA)]
        ntheta: usize,
        /// Azimuthal samples for the directivity quadrature
        #[arg(long, default_value_t = farfield::DEFAULT_SAMPLE_N_PHI)]
        nphi: usize,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a principal-plane gain cut as CSV
    Pattern {
        /// Antenna spec file (JSON)
        spec: PathBuf,
        /// Principal plane of the cut
        #[arg(long)]
        plane: PlaneArg,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two antenna spec files
    Compare {
        /// First antenna spec file
        spec_a: PathBuf,
        /// Second antenna spec file
        spec_b: PathBuf,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlaneArg {
    E,
    H,
}

impl From<PlaneArg> for CutPlane {
    fn from(p: PlaneArg) -> Self {
        match p {
            PlaneArg::E => CutPlane::E,
            PlaneArg::H => CutPlane::H,
        }
    }
}

enum CliError {
    /// Input problems: unreadable files, unwritable outputs -> exit 2.
    Input(String),
    Lib(patchkit::Error),
}

impl From<patchkit::Error> for CliError {
    fn from(e: patchkit::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Lib(e) => e.exit_code() as u8,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn read_spec(path: &Path) -> Result<AntennaSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(model::load_antenna_spec(&text)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Synth { freq_ghz, er, h_mm } => {
            let fr = Frequency::from_gigahertz(freq_ghz)?;
            let h = model::normalize_quantity(h_mm, model::Unit::Millimetre)?;
            if h < 0.0 {
                return Err(CliError::Input(format!(
                    "substrate height must be >= 0, got {h_mm} mm"
                )));
            }
            let design = synthesis::patch_length(fr, er, h)?;
            emit(&pretty(&DesignDocument::from(&design)), None)
        }
        Command::Analyze {
            spec,
            ntheta,
            nphi,
            out,
        } => {
            let spec = read_spec(&spec)?;
            let report = metrics::analyze(&spec, ntheta, nphi)?;
            emit(&pretty(&report.to_document()), out.as_deref())
        }
        Command::Pattern { spec, plane, out } => {
            let spec = read_spec(&spec)?;
            let cut = farfield::pattern_cut(
                &spec,
                plane.into(),
                farfield::DEFAULT_SAMPLE_N_THETA,
                farfield::DEFAULT_SAMPLE_N_PHI,
            )?;
            let mut csv = String::from("theta_deg,gain_dbi\n");
            for (t, g) in cut.theta_deg.iter().zip(&cut.gain_dbi) {
                csv.push_str(&format!("{t},{g}\n"));
            }
            emit(&csv, Some(&out))
        }
        Command::Compare { spec_a, spec_b, out } => {
            let a = read_spec(&spec_a)?;
            let b = read_spec(&spec_b)?;
            let report = metrics::compare(
                &a,
                &b,
                farfield::DEFAULT_SAMPLE_N_THETA,
                farfield::DEFAULT_SAMPLE_N_PHI,
            )?;
            emit(&pretty(&report.to_document()), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
