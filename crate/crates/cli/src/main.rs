//! `atheta`: runs the verification suites and writes spectra.
//!
//! Exit status is 0 when every check passes, 1 when some check fails and 2
//! for configuration or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atheta::verify::{emit_spectrum, run_suite, RunConfig, SpectrumTarget, Suite};
use atheta::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "atheta", version, about = "Verification suites for the rotation-algebra self-duality constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check suite and write its report.
    Verify {
        /// algebra, oscillator, groupoids, bimodules, duality, ktheory or all
        suite: Suite,
        #[command(flatten)]
        opts: Options,
    },
    /// Write the sorted spectrum of an operator on its truncation.
    Spectrum {
        /// d_lambda, d_dolbeault or d_squared
        target: SpectrumTarget,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Options {
    /// TOML file with any of the run configuration's fields; flags win.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Rotation number.
    #[arg(long)]
    theta: Option<f64>,
    /// Shear of g = [[1, b], [0, 1]].
    #[arg(long)]
    b: Option<i64>,
    /// Slope of the Dirac–Schrödinger operator.
    #[arg(long)]
    lambda: Option<f64>,
    /// Hermite truncation.
    #[arg(long = "L", value_name = "L")]
    l: Option<usize>,
    /// Lattice half-width for the torus.
    #[arg(long = "K", value_name = "K")]
    k: Option<usize>,
    /// Node count of the finite-difference oracle.
    #[arg(long)]
    grid: Option<usize>,
    /// Radius of the real-line quadrature.
    #[arg(long = "R", value_name = "R")]
    radius: Option<f64>,
    #[arg(long = "tol-exact")]
    tol_exact: Option<f64>,
    #[arg(long = "tol-quad")]
    tol_quad: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

impl Options {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        apply(&mut cfg.theta, self.theta);
        apply(&mut cfg.b, self.b);
        apply(&mut cfg.lambda, self.lambda);
        apply(&mut cfg.trunc.l, self.l);
        apply(&mut cfg.trunc.k, self.k);
        apply(&mut cfg.trunc.grid_nodes, self.grid);
        apply(&mut cfg.trunc.radius, self.radius);
        apply(&mut cfg.tol.exact, self.tol_exact);
        apply(&mut cfg.tol.quadrature, self.tol_quad);
        apply(&mut cfg.seed, self.seed);
        Ok(cfg)
    }

    fn write(&self, text: &str) -> Result<(), Error> {
        match &self.output {
            Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn apply<T: Copy>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

fn load_config(path: &Path) -> Result<RunConfig, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify { suite, opts } => {
            let report = run_suite(suite, &opts.resolve()?)?;
            opts.write(&match opts.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            })?;
            let failed: Vec<&str> = report.failures().map(|c| c.check_id.as_str()).collect();
            eprintln!("{}: {}/{} checks passed", report.suite, report.checks.len() - failed.len(), report.checks.len());
            for id in &failed {
                eprintln!("  FAIL {id}");
            }
            Ok(failed.is_empty())
        }
        Command::Spectrum { target, opts } => {
            let spectrum = emit_spectrum(target, &opts.resolve()?)?;
            opts.write(&match opts.format {
                Format::Json => spectrum.to_json(),
                Format::Csv => spectrum.to_csv(),
            })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("atheta: {e}");
            ExitCode::from(2)
        }
    }
}
