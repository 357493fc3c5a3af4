//! Command-line front end: scenario files in, CSV or JSON tables out.
#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod commands;
pub mod output;
pub mod scenario;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use output::{Cell, Format, Table};
pub use scenario::{load_scenario, parse_scenario, Scenario};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("numerical: {0}")]
    Numerical(String),
    #[error("io: {0}")]
    Io(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::Internal(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }

    /// The message on one line, for stderr.
    pub fn single_line(&self) -> String {
        format!("error: {self}").replace(['\n', '\r'], " ")
    }
}

impl From<cslbounds_core::Error> for CliError {
    fn from(e: cslbounds_core::Error) -> Self {
        use cslbounds_core::Error as E;
        match e {
            E::NonFinite(_) | E::OracleConvergence { .. } | E::Bistability { .. } => CliError::Numerical(e.to_string()),
            E::Domain(_)
            | E::UnsupportedOrder(_)
            | E::UnsupportedKind { .. }
            | E::InvalidGrid(_)
            | E::InvalidConfig(_) => CliError::Config(e.to_string()),
        }
    }
}

const AFTER_HELP: &str = "\
Scenario files are JSON. Keys starting with '_' are comments. Sections and defaults:
  csl       lambda [1/s] = 1, r_c [m] = 1e-7
  geometry  shape = cylinder | cube; radius_m, length_m, side_m, mass_kg | mass_ug,
            aspect (R/L, with a mass), density_kg_m3 = 2200
  gas       species (He-4, H2, N2, Ar) | mass_amu, temperature_K, pressure_mbar
  cavity    kappa [1/s], delta0 [rad/s], chi [rad/(s m)], g_phi [rad/s],
            input_power_W, wavelength_m, photon_number = intracavity | input_flux
  trap      omega_vib, omega_rot [rad/s]
  readout   delta_t_K = 0.1, mode = rot | vib_perp | vib_sym
  lisa      force_dns [N^2/Hz], torque_factor = 0.04, torque_dns [N^2 m^2/Hz],
            differential_factor = 0.5, sided_factor = 2, mass_separation_m = 0.376
  scan      r_c_min = 1e-9, r_c_max = 1e-3, r_c_points = 200, aspect_min = 1e-2,
            aspect_max = 1e4, aspect_points = 121, dns_points = 4001,
            dns_span_linewidths = 20, oracle_nodes = 32
  output    path, format = csv | json

Exit codes: 2 invalid configuration, 3 numerical failure, 4 I/O failure.
CSLBOUNDS_THREADS caps the number of worker threads used by scans.";

#[derive(Debug, Parser)]
#[command(name = "cslbounds", version, about = "CSL collapse-model bounds from mechanical noise", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Scenario file.
    #[arg(long)]
    pub config: PathBuf,
    /// Override a scenario value, e.g. `--set gas.pressure_mbar=1e-12`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diffusion constants of the configured body.
    Eta {
        #[command(flatten)]
        common: Common,
        /// Also evaluate the quadrature oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Gas damping coefficients.
    Damping(Common),
    /// Displacement and angle noise spectra around both resonances.
    Dns(Common),
    /// CSL excess temperature of each mode.
    Temperature(Common),
    /// Excess temperatures over R/L at fixed mass.
    ScanGeometry(Common),
    /// λ_max(r_C) for the configured scenario.
    Exclusion(Common),
    /// Torque noise, rotational and vibrational bounds of the cubic test mass.
    Lisa(Common),
    /// Closed forms against the quadrature oracle over a fixed grid.
    VerifyOracle(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Eta { common, .. } => common,
            Command::Damping(c)
            | Command::Dns(c)
            | Command::Temperature(c)
            | Command::ScanGeometry(c)
            | Command::Exclusion(c)
            | Command::Lisa(c)
            | Command::VerifyOracle(c) => c,
        }
    }
}

/// Loads the scenario, computes the table and writes it.
pub fn run(cmd: &Command) -> Result<(), CliError> {
    let common = cmd.common();
    let scn = load_scenario(&common.config, &common.overrides)?;
    let format = common.format.or(scn.output_format).unwrap_or(Format::Csv);
    let path = common.out.clone().or_else(|| scn.output_path.clone());
    let (table, verdict) = commands::execute(cmd, &scn)?;
    table.write(format, path.as_deref())?;
    verdict
}
