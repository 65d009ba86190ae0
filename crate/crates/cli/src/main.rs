//! `dirac-spin`: identity sweeps, kinematics reports, spin precession and
//! the position-space Parseval check.
//!
//! Exit status: 0 when every reported check passes, 1 when a check fails or
//! an integration diverges, 2 for usage and configuration errors.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dirac-spin", version, about = "Spin and Lorentz-group numerics for massive Dirac particles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Samples per identity.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Particle mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub mass: f64,
    /// Largest sampled |p|/m.
    #[arg(long, global = true, default_value_t = 10.0)]
    pub pmax: f64,
    /// Largest sampled boost speed.
    #[arg(long, global = true, default_value_t = 0.99)]
    pub vmax: f64,
    /// Output format; trajectories default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override a tolerance, NAME=VALUE. Repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tolerance)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep every algebraic identity over random kinematics.
    Verify,
    /// Wigner rotation of a pure boost acting on a momentum.
    Wigner(BoostMomentumArgs),
    /// Vector and bispinor matrices of a pure boost.
    Boost(BoostArgs),
    /// Bispinor amplitude v^ε(p) and its identity residuals.
    Amplitude(AmplitudeArgs),
    /// Closed-form transformation of the spin operator under a boost (ε = +1).
    SpinTransform(SpinTransformArgs),
    /// Integrate the polarization and momentum equations in a static field.
    Precess(PrecessArgs),
    /// Compare momentum- and position-space scalar products.
    FourierCheck(FourierArgs),
}

#[derive(Args, Debug)]
pub struct BoostMomentumArgs {
    /// Boost velocity vx,vy,vz.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub velocity: [f64; 3],
    /// Spatial momentum px,py,pz.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub momentum: [f64; 3],
}

#[derive(Args, Debug)]
pub struct BoostArgs {
    /// Boost velocity vx,vy,vz.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub velocity: [f64; 3],
    /// Optional spatial momentum to transform.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub momentum: Option<[f64; 3]>,
}

#[derive(Args, Debug)]
pub struct AmplitudeArgs {
    /// Energy sign, +1 or -1.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub sign: i32,
    /// Spatial momentum px,py,pz.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub momentum: [f64; 3],
}

#[derive(Args, Debug)]
pub struct SpinTransformArgs {
    #[command(flatten)]
    pub kinematics: BoostMomentumArgs,
    /// Optional Bloch vector to transform alongside.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub xi: Option<[f64; 3]>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    Uniform,
    Linear,
    Quadrupole,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    SternGerlach,
    Transposed,
}

#[derive(Args, Debug)]
pub struct PrecessArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub field: FieldKind,
    /// Field value (uniform) or field at the origin (linear).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,1")]
    pub b: [f64; 3],
    /// Gradient G_ij = dB_j/dx_i, nine values row-major (linear field).
    #[arg(long, value_parser = parse_matrix3, allow_hyphen_values = true)]
    pub gradient: Option<[f64; 9]>,
    /// Quadrupole strength g in B = g(y, x, 0).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    pub q: [f64; 3],
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "1,0,0")]
    pub xi: [f64; 3],
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    pub x: [f64; 3],
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub charge: f64,
    /// Final time; defaults to a quarter Larmor period of the initial field.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "stern-gerlach")]
    pub reading: Reading,
}

#[derive(Args, Debug)]
pub struct FourierArgs {
    /// TOML wavefunction description; defaults to a unit-width Gaussian at rest.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Skip the refined-grid comparison.
    #[arg(long)]
    pub no_refine: bool,
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| {
            let x: f64 = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("'{p}' is not finite"))
            }
        })
        .collect()
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let v = parse_floats(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

fn parse_matrix3(s: &str) -> Result<[f64; 9], String> {
    let v = parse_floats(s, 9)?;
    Ok(std::array::from_fn(|i| v[i]))
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let value: f64 = value.trim().parse().map_err(|_| format!("'{value}' is not a number"))?;
    Ok((name.trim().to_string(), value))
}

/// Failure categories mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numeric(String),
}

impl From<dirac_spin::Error> for Failure {
    fn from(e: dirac_spin::Error) -> Self {
        match e {
            dirac_spin::Error::NonFinite { .. } => Failure::Numeric(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

/// Finished command: the text to emit and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub fn tolerance_overrides(global: &GlobalArgs) -> Result<BTreeMap<String, f64>, Failure> {
    let mut map = BTreeMap::new();
    for (name, value) in &global.tol {
        if map.insert(name.clone(), *value).is_some() {
            return Err(Failure::Config(format!("tolerance '{name}' given twice")));
        }
    }
    Ok(map)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify => commands::verify(&cli.global),
        Command::Wigner(a) => commands::wigner(&cli.global, a),
        Command::Boost(a) => commands::boost(&cli.global, a),
        Command::Amplitude(a) => commands::amplitude(&cli.global, a),
        Command::SpinTransform(a) => commands::spin_transform(&cli.global, a),
        Command::Precess(a) => commands::precess(&cli.global, a),
        Command::FourierCheck(a) => commands::fourier_check(&cli.global, a),
    }
}

fn emit(global: &GlobalArgs, text: &str) -> std::io::Result<()> {
    match &global.out {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.global, &outcome.text) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(parse_vec3("-0.5, 0,1e-3").unwrap(), [-0.5, 0.0, 1e-3]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("1,2,nan").is_err());
        assert!(parse_vec3("1,x,2").is_err());
        assert_eq!(parse_matrix3("1,2,3,4,5,6,7,8,9").unwrap()[8], 9.0);
    }

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("weinberg=1e-30").unwrap(), ("weinberg".to_string(), 1e-30));
        assert!(parse_tolerance("weinberg").is_err());
        assert!(parse_tolerance("weinberg=abc").is_err());
    }

    #[test]
    fn negative_values_are_accepted() {
        let cli = Cli::try_parse_from(["dirac-spin", "amplitude", "--sign", "-1", "--momentum", "-1,0,2"]).unwrap();
        match cli.command {
            Command::Amplitude(a) => {
                assert_eq!(a.sign, -1);
                assert_eq!(a.momentum, [-1.0, 0.0, 2.0]);
            }
            other => panic!("{other:?}"),
        }
    }
}
