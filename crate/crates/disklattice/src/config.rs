//! Run configuration.
//!
//! Values are resolved per field with the precedence command-line flag, then
//! JSON config file (`--config`), then the `DISKLATTICE_SEED` environment
//! variable (seed only), then the built-in default. The two lattice inputs
//! (`t` + `gamma_deg`, or `a` + `b`) are resolved as a group: any lattice flag
//! on the command line hides the lattice given in the config file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use disklattice_core::geometry::{
    lattice_from_params, reduce_basis, LatticeBasis, ReducedBasis, Vec2,
};
use disklattice_core::optimizer::Domain;
use serde::Deserialize;

use crate::AppError;

pub const SEED_ENV: &str = "DISKLATTICE_SEED";
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_GRID: usize = 101;
pub const DEFAULT_RESOLUTION: u32 = 1024;

#[derive(Parser, Debug)]
#[command(
    name = "disklattice",
    version,
    about = "Exactly-one coverage of equal disks centred on a planar lattice",
    after_help = "Seed: decimal or 0x-prefixed hex. DISKLATTICE_SEED overrides the default seed \
                  when neither --seed nor the config file sets one."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Reduced basis, radii, Voronoi cell and the equilibrium of one lattice
    Analyze,
    /// Equilibrium probability over a (t, gamma) grid
    Sweep,
    /// Best lattice shape by grid search and refinement
    Optimize,
    /// Compare the analytic probability with Monte Carlo and grid quadrature
    Verify,
    /// Exactly-one area as a function of the radius for one lattice
    Profile,
}

impl Command {
    pub fn needs_lattice(self) -> bool {
        matches!(self, Command::Analyze | Command::Verify | Command::Profile)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Restrict {
    #[default]
    Full,
    Case1,
    Case2,
    Case3,
    Rectangular,
}

impl Restrict {
    pub fn domain(self) -> Domain {
        match self {
            Restrict::Full => Domain::Full,
            Restrict::Case1 => Domain::Case1,
            Restrict::Case2 => Domain::Case2,
            Restrict::Case3 => Domain::Case3,
            Restrict::Rectangular => Domain::Rectangular,
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct Options {
    /// Length ratio |a|/|b| of the lattice, with --gamma-deg
    #[arg(long, global = true)]
    pub t: Option<f64>,
    /// Angle between a and b in degrees, with --t
    #[arg(long = "gamma-deg", global = true)]
    pub gamma_deg: Option<f64>,
    /// First generator "x,y", with --b
    #[arg(long, global = true, value_parser = parse_vec2, allow_hyphen_values = true)]
    pub a: Option<Vec2>,
    /// Second generator "x,y", with --a
    #[arg(long, global = true, value_parser = parse_vec2, allow_hyphen_values = true)]
    pub b: Option<Vec2>,
    /// Disk radius (verify defaults to the equilibrium radius)
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Monte Carlo sample count [default: 1000000]
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// Monte Carlo seed [default: 0x5EED]
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Grid nodes per axis for sweep, optimize and profile [default: 101]
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Quadrature resolution for verify [default: 1024]
    #[arg(long, global = true)]
    pub resolution: Option<u32>,
    /// Output file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shape sub-domain for optimize [default: full]
    #[arg(long, global = true, value_enum)]
    pub restrict: Option<Restrict>,
    /// JSON file with any of the options above (snake_case keys)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub t: Option<f64>,
    pub gamma_deg: Option<f64>,
    pub a: Option<[f64; 2]>,
    pub b: Option<[f64; 2]>,
    pub rho: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<SeedValue>,
    pub grid: Option<usize>,
    pub resolution: Option<u32>,
    #[serde(alias = "out")]
    pub out_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub restrict: Option<Restrict>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeedValue {
    Number(u64),
    Text(String),
}

impl SeedValue {
    fn resolve(&self) -> Result<u64, String> {
        match self {
            SeedValue::Number(n) => Ok(*n),
            SeedValue::Text(s) => parse_seed(s),
        }
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| AppError::invalid(format!("config file {}: {e}", path.display())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LatticeInput {
    Params { t: f64, gamma_deg: f64 },
    Generators { a: Vec2, b: Vec2 },
}

impl LatticeInput {
    pub fn reduce(&self) -> Result<ReducedBasis, AppError> {
        Ok(match *self {
            LatticeInput::Params { t, gamma_deg } => {
                lattice_from_params(t, gamma_deg.to_radians())?
            }
            LatticeInput::Generators { a, b } => reduce_basis(&LatticeBasis::new(a, b)?)?,
        })
    }
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub lattice: Option<LatticeInput>,
    pub rho: Option<f64>,
    pub samples: u64,
    pub seed: u64,
    pub grid: usize,
    pub resolution: u32,
    pub out_path: Option<PathBuf>,
    pub format: Format,
    pub restrict: Restrict,
}

impl RunConfig {
    /// Resolves flags, config file and `env_seed` (the value of
    /// [`SEED_ENV`], if set) into a validated configuration.
    pub fn resolve(cli: &Cli, env_seed: Option<&str>) -> Result<Self, AppError> {
        let o = &cli.opts;
        let file = match &o.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };

        let flag_lattice = o.t.is_some() || o.gamma_deg.is_some() || o.a.is_some() || o.b.is_some();
        let lattice = if flag_lattice {
            lattice_input(o.t, o.gamma_deg, o.a, o.b)?
        } else {
            let v = |p: Option<[f64; 2]>| p.map(|[x, y]| Vec2::new(x, y));
            lattice_input(file.t, file.gamma_deg, v(file.a), v(file.b))?
        };

        let seed = match (o.seed, &file.seed, env_seed) {
            (Some(s), _, _) => s,
            (None, Some(s), _) => s.resolve().map_err(AppError::invalid)?,
            (None, None, Some(s)) => {
                parse_seed(s).map_err(|e| AppError::invalid(format!("{SEED_ENV}: {e}")))?
            }
            (None, None, None) => DEFAULT_SEED,
        };

        let cfg = RunConfig {
            command: cli.command,
            lattice,
            rho: o.rho.or(file.rho),
            samples: o.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            seed,
            grid: o.grid.or(file.grid).unwrap_or(DEFAULT_GRID),
            resolution: o
                .resolution
                .or(file.resolution)
                .unwrap_or(DEFAULT_RESOLUTION),
            out_path: o.out.clone().or(file.out_path),
            format: o.format.or(file.format).unwrap_or_default(),
            restrict: o.restrict.or(file.restrict).unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), AppError> {
        if self.command.needs_lattice() && self.lattice.is_none() {
            return Err(AppError::invalid(
                "a lattice is required: give --t with --gamma-deg, or --a with --b",
            ));
        }
        if let Some(rho) = self.rho {
            if !(rho > 0.0 && rho.is_finite()) {
                return Err(AppError::invalid(format!(
                    "--rho must be positive and finite, got {rho}"
                )));
            }
        }
        if self.samples == 0 {
            return Err(AppError::invalid("--samples must be at least 1"));
        }
        if self.grid < 2 {
            return Err(AppError::invalid(format!(
                "--grid must be at least 2, got {}",
                self.grid
            )));
        }
        if self.resolution < 16 {
            return Err(AppError::invalid(format!(
                "--resolution must be at least 16, got {}",
                self.resolution
            )));
        }
        Ok(())
    }

    pub fn reduced_lattice(&self) -> Result<ReducedBasis, AppError> {
        self.lattice
            .ok_or_else(|| AppError::invalid("no lattice given"))?
            .reduce()
    }
}

fn lattice_input(
    t: Option<f64>,
    gamma_deg: Option<f64>,
    a: Option<Vec2>,
    b: Option<Vec2>,
) -> Result<Option<LatticeInput>, AppError> {
    let params = t.is_some() || gamma_deg.is_some();
    let gens = a.is_some() || b.is_some();
    if params && gens {
        return Err(AppError::invalid(
            "give either --t/--gamma-deg or --a/--b, not both",
        ));
    }
    match (t, gamma_deg, a, b) {
        (Some(t), Some(gamma_deg), None, None) => Ok(Some(LatticeInput::Params { t, gamma_deg })),
        (None, None, Some(a), Some(b)) => Ok(Some(LatticeInput::Generators { a, b })),
        (None, None, None, None) => Ok(None),
        _ if params => Err(AppError::invalid(
            "--t and --gamma-deg must be given together",
        )),
        _ => Err(AppError::invalid("--a and --b must be given together")),
    }
}

/// Parses `"x,y"`.
pub fn parse_vec2(s: &str) -> Result<Vec2, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok(Vec2::new(num(x)?, num(y)?))
}

/// Parses a decimal or `0x`-prefixed hexadecimal 64-bit seed.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse::<u64>(),
    };
    parsed.map_err(|e| format!("seed {s:?}: {e}"))
}
