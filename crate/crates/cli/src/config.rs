//! Run configuration: defaults, `key = value` files and command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use fermat_osc::IsoscelesSystem;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub a: f64,
    pub phi0_deg: f64,
    pub w2: f64,
    pub m0: f64,
    pub dt: f64,
    pub t_max: f64,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: 5.0,
            phi0_deg: 40.0,
            w2: 1.0,
            m0: 1.0,
            dt: 1e-3,
            t_max: 30.0,
            out: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Equal side length |A1A2| = |A1A3|
    #[arg(long)]
    pub a: Option<f64>,
    /// Half apex angle A4-A1-A3 in degrees
    #[arg(long = "phi0-deg")]
    pub phi0_deg: Option<f64>,
    /// Weight at each base vertex (the apex weight is 1)
    #[arg(long)]
    pub w2: Option<f64>,
    /// Knot mass
    #[arg(long)]
    pub m0: Option<f64>,
    /// Integrator step
    #[arg(long)]
    pub dt: Option<f64>,
    /// Simulated time span
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file with `key = value` lines; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &ConfigArgs) -> Result<Self> {
        let mut cfg = match &args.config {
            Some(path) => Self::from_file(path)?,
            None => Self::default(),
        };
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = args.$f.clone() { cfg.$f = v; })* };
        }
        take!(a, phi0_deg, w2, m0, dt, t_max, out);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected `key = value`, got {raw:?}", n + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<f64>()
                    .with_context(|| format!("line {}: `{key}` is not a number: {value:?}", n + 1))
            };
            match key.replace('-', "_").as_str() {
                "a" => cfg.a = num()?,
                "phi0_deg" => cfg.phi0_deg = num()?,
                "w2" => cfg.w2 = num()?,
                "m0" => cfg.m0 = num()?,
                "dt" => cfg.dt = num()?,
                "t_max" => cfg.t_max = num()?,
                "out" => cfg.out = PathBuf::from(value),
                _ => bail!("line {}: unknown key `{key}`", n + 1),
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("w2", self.w2),
            ("m0", self.m0),
            ("dt", self.dt),
            ("t_max", self.t_max),
        ] {
            if !(v.is_finite() && v > 0.0) {
                bail!("{name} must be a positive number, got {v}");
            }
        }
        if !(self.phi0_deg > 0.0 && self.phi0_deg < 90.0) {
            bail!("phi0_deg must lie in (0, 90), got {}", self.phi0_deg);
        }
        Ok(())
    }

    pub fn system(&self) -> Result<IsoscelesSystem> {
        Ok(IsoscelesSystem::new(
            self.a,
            self.phi0_deg.to_radians(),
            self.w2,
            self.m0,
        )?)
    }
}
