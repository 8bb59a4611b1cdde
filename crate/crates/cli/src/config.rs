//! Run configuration: built-in defaults, an optional `key = value` file, and
//! command-line flags, in increasing order of precedence.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nspot_core::rng::DEFAULT_SEED;

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    /// Raw values with `ℓ = 1`.
    Lattice,
    /// Lattice and discrete phase space values divided by `ℓ`.
    Physical,
}

impl FromStr for ScaleMode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "lattice" | "lattice_units" => Ok(ScaleMode::Lattice),
            "physical" => Ok(ScaleMode::Physical),
            other => usage(format!("unknown scale mode '{other}' (expected lattice or physical)")),
        }
    }
}

impl fmt::Display for ScaleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleMode::Lattice => "lattice",
            ScaleMode::Physical => "physical",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ell: f64,
    pub nmax: u64,
    pub quad_points: usize,
    pub seed: u64,
    pub scale: ScaleMode,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn figure1_defaults() -> Self {
        Self { ell: 0.1, nmax: 40, quad_points: 16, seed: DEFAULT_SEED, scale: ScaleMode::Lattice, output: None }
    }

    pub fn figure2_defaults() -> Self {
        Self { scale: ScaleMode::Physical, ..Self::figure1_defaults() }
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.ell > 0.0 && self.ell.is_finite()) {
            return usage(format!("--ell must be a positive number, got {}", self.ell));
        }
        if self.quad_points < 8 {
            return usage(format!("--quad-points must be at least 8, got {}", self.quad_points));
        }
        Ok(())
    }
}

/// Values that may or may not have been given; later layers win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub ell: Option<f64>,
    pub nmax: Option<u64>,
    pub quad_points: Option<usize>,
    pub seed: Option<u64>,
    pub scale: Option<ScaleMode>,
    pub output: Option<PathBuf>,
}

impl ConfigLayer {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return usage(format!("config line {}: expected key = value", lineno + 1));
            };
            let value = value.trim();
            let bad = |what: &str| CliError::Usage(format!("config line {}: bad {what} '{value}'", lineno + 1));
            match key.trim().replace('-', "_").as_str() {
                "ell" => out.ell = Some(value.parse().map_err(|_| bad("ell"))?),
                "nmax" => out.nmax = Some(value.parse().map_err(|_| bad("nmax"))?),
                "quad_points" => out.quad_points = Some(value.parse().map_err(|_| bad("quad_points"))?),
                "seed" => out.seed = Some(parse_seed(value).map_err(|_| bad("seed"))?),
                "scale" => out.scale = Some(value.parse()?),
                "output" => out.output = Some(PathBuf::from(value)),
                other => return usage(format!("config line {}: unknown key '{other}'", lineno + 1)),
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn over(self, base: Self) -> Self {
        Self {
            ell: self.ell.or(base.ell),
            nmax: self.nmax.or(base.nmax),
            quad_points: self.quad_points.or(base.quad_points),
            seed: self.seed.or(base.seed),
            scale: self.scale.or(base.scale),
            output: self.output.or(base.output),
        }
    }

    pub fn resolve(self, defaults: RunConfig) -> CliResult<RunConfig> {
        let cfg = RunConfig {
            ell: self.ell.unwrap_or(defaults.ell),
            nmax: self.nmax.unwrap_or(defaults.nmax),
            quad_points: self.quad_points.unwrap_or(defaults.quad_points),
            seed: self.seed.unwrap_or(defaults.seed),
            scale: self.scale.unwrap_or(defaults.scale),
            output: self.output.or(defaults.output),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}
