mod config;
mod files;
mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use fermat_osc::analysis::{
    deviation_series, estimate_period_crossings, estimate_period_quadrature, far_turning_point,
    fit_sinusoid, speed_at_ft,
};
use fermat_osc::dynamics::simulate;
use fermat_osc::fermat::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use fermat_osc::{weiszfeld, Point2, WeightedTriangle};

use crate::config::{ConfigArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "fermat-osc",
    version,
    about = "Weighted Fermat-Torricelli points and the oscillating knot"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted Fermat-Torricelli point of a triangle (isosceles shorthand by default)
    FtPoint {
        #[command(flatten)]
        config: ConfigArgs,
        /// Explicit vertices `x1,y1,x2,y2,x3,y3` instead of the isosceles shorthand
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vertices: Option<Vec<f64>>,
        /// Weights `w1,w2,w3` for explicit vertices (default 1,1,1)
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
    /// Release the knot from A1 and write trajectory.csv and events.csv
    Simulate {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Fit a sinusoid to a trajectory file and write fit.csv and deviation.csv
    Analyze {
        /// trajectory.csv produced by `simulate`
        trajectory: PathBuf,
        /// Output directory (defaults to the trajectory's directory)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the worked example end to end and check it against the expected values
    ReproduceExample1 {
        #[command(flatten)]
        config: ConfigArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::FtPoint {
            config,
            vertices,
            weights,
        } => ft_point(&config, vertices, weights),
        Command::Simulate { config } => RunConfig::resolve(&config).and_then(|c| cmd_simulate(&c)),
        Command::Analyze { trajectory, out } => cmd_analyze(&trajectory, out.as_deref()),
        Command::ReproduceExample1 { config } => RunConfig::resolve(&config)
            .and_then(|c| reproduce::run(&c))
            .map(|ok| {
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn ft_point(
    config: &ConfigArgs,
    vertices: Option<Vec<f64>>,
    weights: Option<Vec<f64>>,
) -> Result<ExitCode> {
    let (tri, axis) = match vertices {
        Some(v) => {
            let w = weights.unwrap_or_else(|| vec![1.0; 3]);
            if v.len() != 6 || w.len() != 3 {
                bail!(
                    "--vertices takes six numbers and --weights three, got {} and {}",
                    v.len(),
                    w.len()
                );
            }
            let pts = [
                Point2::new(v[0], v[1]),
                Point2::new(v[2], v[3]),
                Point2::new(v[4], v[5]),
            ];
            (WeightedTriangle::new(pts, [w[0], w[1], w[2]])?, None)
        }
        None => {
            if weights.is_some() {
                bail!("--weights needs --vertices; use --w2 with the isosceles shorthand");
            }
            let sys = RunConfig::resolve(config)?.system()?;
            (sys.triangle(), Some(sys.altitude()))
        }
    };
    let r = weiszfeld(&tri, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!("case:       {}", r.case);
    println!("point:      ({:.10}, {:.10})", r.point.x, r.point.y);
    if let Some(h) = axis {
        println!("|A1O|:      {:.10}", h - r.point.y);
    }
    println!("residual:   {:.3e}", r.residual);
    println!("iterations: {}", r.iterations);
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(cfg: &RunConfig) -> Result<ExitCode> {
    let sys = cfg.system()?;
    let traj = simulate(&sys, cfg.dt, cfg.t_max)?;
    std::fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    files::write_trajectory(&cfg.out.join("trajectory.csv"), &traj)?;
    files::write_events(&cfg.out.join("events.csv"), &traj.events)?;

    let alpha = sys.ft_angle()?;
    println!("x_O (|A1O|):         {:.10}", traj.x_ft);
    println!("alpha (A4-O-A3):     {:.6} deg", alpha.to_degrees());
    println!("x_max (turning):     {:.10}", far_turning_point(&sys)?);
    println!("speed at O (closed): {:.10}", speed_at_ft(&sys)?);
    match traj.events.o_crossings.first() {
        Some(c) => println!(
            "speed at O (sim):    {:.10}  (t = {:.6})",
            c.xdot.abs(),
            c.t
        ),
        None => println!("speed at O (sim):    no crossing before t_max"),
    }
    println!(
        "period (quadrature): {:.10}",
        estimate_period_quadrature(&sys)?.period
    );
    match estimate_period_crossings(&traj) {
        Ok(p) => println!("period (crossings):  {:.10}", p.period),
        Err(e) => println!("period (crossings):  n/a ({e})"),
    }
    println!("max energy drift:    {:.3e}", traj.max_energy_drift);
    println!(
        "wrote {} and {}",
        cfg.out.join("trajectory.csv").display(),
        cfg.out.join("events.csv").display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let samples = files::read_trajectory(path)?;
    let fit = fit_sinusoid(&samples)?;
    let dev = deviation_series(&samples, &fit);
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    if !dir.as_os_str().is_empty() {
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    files::write_fit(&dir.join("fit.csv"), &fit)?;
    files::write_deviation(&dir.join("deviation.csv"), &dev)?;
    let worst =
        |f: fn(&fermat_osc::analysis::Deviation) -> f64| dev.iter().map(f).fold(0.0, f64::max);
    println!(
        "x(t) ~ {:.5} + {:.5} sin({:.5} (t - {:.5}))",
        fit.offset, fit.amplitude, fit.omega, fit.t0
    );
    println!(
        "d = {:.10}, A = {:.10}, omega = {:.10}, t0 = {:.10}",
        fit.offset, fit.amplitude, fit.omega, fit.t0
    );
    println!(
        "rmse = {:.3e}, max |dx| = {:.3e}, max |dv| = {:.3e}",
        fit.rmse,
        worst(|d| d.dx.abs()),
        worst(|d| d.dv.abs())
    );
    println!(
        "wrote {} and {}",
        dir.join("fit.csv").display(),
        dir.join("deviation.csv").display()
    );
    Ok(ExitCode::SUCCESS)
}
