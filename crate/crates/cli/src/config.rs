//! Command-line surface and the validated run configuration.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use sjm_core::multiqubit::MAX_QUBITS;
use sjm_core::{Params64, SjmError};

/// Largest register `basis` will print in full.
pub const MAX_BASIS_OUTPUT_QUBITS: usize = 8;
pub const MAX_GRID_STEPS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "sjm", version, about = "Symmetric two-qubit joint measurement toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Amplitude table of the basis (two-qubit, or the n-qubit product construction).
    Basis,
    /// Run every invariant check at the given parameters.
    Verify,
    /// Discrimination circuit and the state-to-output mapping.
    Circuit,
    /// Triangle-network statistics.
    Network {
        #[command(subcommand)]
        mode: NetworkMode,
    },
    /// Concurrence versus θ for the symmetric basis and the reference family.
    Curve,
    /// n-qubit basis: Gram check and single-qubit reductions.
    Multiqubit,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkMode {
    /// The 64 joint outcome probabilities.
    Table,
    /// Same-outcome probability against the trilocal bound over θ ∈ [0, π/2].
    Scan,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Entanglement angle θ ∈ [0, π/2] in radians [default: π/2]
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "theta_frac")]
    pub theta: Option<f64>,
    /// Phase φ ∈ [−π, π] in radians [default: π/4]
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "phi_frac")]
    pub phi: Option<f64>,
    /// θ as a rational multiple of π, e.g. `1/2`
    #[arg(long, global = true, value_parser = parse_ratio)]
    pub theta_frac: Option<Ratio<i64>>,
    /// φ as a rational multiple of π, e.g. `-3/4`
    #[arg(long, global = true, value_parser = parse_ratio, allow_hyphen_values = true)]
    pub phi_frac: Option<Ratio<i64>>,
    /// Number of qubits (even, 2..=12)
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Grid intervals for `curve` and `network scan`
    #[arg(long, global = true, default_value_t = 64)]
    pub grid_steps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled checks [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>, String> {
    s.trim()
        .parse::<Ratio<i64>>()
        .map_err(|e| format!("expected a fraction such as 1/2: {e}"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub theta: f64,
    pub phi: f64,
    pub n: usize,
    pub grid_steps: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub enum ConfigError {
    Params(SjmError),
    GridSteps(usize),
    BasisTooWide(usize),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Params(e) => write!(f, "{e}"),
            ConfigError::GridSteps(s) => {
                write!(f, "grid steps must be within 1..={MAX_GRID_STEPS}, got {s}")
            }
            ConfigError::BasisTooWide(n) => write!(
                f,
                "basis output is limited to n <= {MAX_BASIS_OUTPUT_QUBITS}, got {n}; use `multiqubit` for wider registers"
            ),
        }
    }
}

fn pi_multiple(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64 * PI
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, ConfigError> {
        let o = cli.opts;
        let theta = o.theta.or(o.theta_frac.map(pi_multiple)).unwrap_or(FRAC_PI_2);
        let phi = o.phi.or(o.phi_frac.map(pi_multiple)).unwrap_or(FRAC_PI_4);
        let cfg = RunConfig {
            command: cli.command,
            theta,
            phi,
            n: o.n,
            grid_steps: o.grid_steps,
            format: o.format,
            output: o.output,
            seed: o.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        self.params()?;
        if !self.n.is_multiple_of(2) || self.n < 2 || self.n > MAX_QUBITS {
            return Err(ConfigError::Params(SjmError::InvalidQubitCount {
                n: self.n,
                max: MAX_QUBITS,
            }));
        }
        if self.grid_steps == 0 || self.grid_steps > MAX_GRID_STEPS {
            return Err(ConfigError::GridSteps(self.grid_steps));
        }
        if self.command == Command::Basis && self.n > MAX_BASIS_OUTPUT_QUBITS {
            return Err(ConfigError::BasisTooWide(self.n));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<Params64, ConfigError> {
        Params64::new(self.theta, self.phi).map_err(ConfigError::Params)
    }

    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let mut argv = vec!["sjm"];
        argv.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(argv).expect("parses"))
    }

    #[test]
    fn defaults() {
        let c = cfg(&["verify"]).unwrap();
        assert_eq!((c.theta, c.phi, c.n, c.grid_steps), (FRAC_PI_2, FRAC_PI_4, 2, 64));
        assert_eq!(c.format, Format::Json);
        assert!(c.output.is_none() && c.seed.is_none());
    }

    #[test]
    fn fractions_of_pi() {
        let c = cfg(&["basis", "--theta-frac", "1/4", "--phi-frac", "-1/3"]).unwrap();
        assert_eq!(c.theta, PI / 4.0);
        assert_eq!(c.phi, -PI / 3.0);
    }

    #[test]
    fn out_of_range_theta_is_reported() {
        let e = cfg(&["basis", "--theta", "2.0"]).unwrap_err();
        assert!(e.to_string().starts_with("theta out of range [0, π/2]"));
        assert!(cfg(&["basis", "--phi", "-3.2"]).is_err());
    }

    #[test]
    fn qubit_count_and_grid_limits() {
        assert!(cfg(&["multiqubit", "--n", "5"]).is_err());
        assert!(cfg(&["multiqubit", "--n", "14"]).is_err());
        assert!(cfg(&["basis", "--n", "10"]).is_err());
        assert!(cfg(&["multiqubit", "--n", "10"]).is_ok());
        assert!(cfg(&["curve", "--grid-steps", "0"]).is_err());
    }

    #[test]
    fn radians_and_fraction_conflict() {
        assert!(Cli::try_parse_from(["sjm", "basis", "--theta", "1", "--theta-frac", "1/2"]).is_err());
    }
}
