//! End-to-end check of the worked example with a pass/fail table.

use anyhow::Result;
use fermat_osc::analysis::{
    estimate_period_crossings, estimate_period_quadrature, fit_sinusoid, speed_at_ft,
    work_along_axis,
};
use fermat_osc::dynamics::{phi_ode_residual_series, simulate};

use crate::config::RunConfig;
use crate::files;

// Coefficients of the fitted curve quoted with the worked example.
const FIT_OFFSET: f64 = 1.77363;
const FIT_OMEGA: f64 = 0.61133;
const TURNING_POINT: f64 = 3.5473;

struct Check {
    name: &'static str,
    value: String,
    target: String,
    pass: bool,
}

fn check(name: &'static str, value: f64, target: f64, tol: f64, relative: bool) -> Check {
    let err = if relative {
        (value - target).abs() / target.abs()
    } else {
        (value - target).abs()
    };
    let tol_s = if relative {
        format!("{:.0e} rel", tol)
    } else {
        format!("{:.0e}", tol)
    };
    Check {
        name,
        value: format!("{value:.9}"),
        target: format!("{target:.9} ± {tol_s}"),
        pass: err <= tol,
    }
}

fn bound(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        value: format!("{value:.3e}"),
        target: format!("< {limit:.0e}"),
        pass: value < limit,
    }
}

fn failed(name: &'static str, e: impl std::fmt::Display) -> Check {
    Check {
        name,
        value: format!("error: {e}"),
        target: String::new(),
        pass: false,
    }
}

/// Returns whether every check passed.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    let sys = cfg.system()?;
    let traj = simulate(&sys, cfg.dt, cfg.t_max)?;
    std::fs::create_dir_all(&cfg.out)?;
    files::write_trajectory(&cfg.out.join("trajectory.csv"), &traj)?;
    files::write_events(&cfg.out.join("events.csv"), &traj.events)?;

    let mut checks = Vec::new();
    let alpha = sys.ft_angle()?;
    checks.push(Check {
        name: "equilibrium angle alpha [deg]",
        value: format!("{:.6}", alpha.to_degrees()),
        target: "60.000000 ± 1e-12 rad".into(),
        pass: (alpha - std::f64::consts::PI / 3.0).abs() <= 1e-12,
    });

    let x_max = traj
        .events
        .turning_points
        .iter()
        .map(|t| t.x)
        .fold(f64::MIN, f64::max);
    checks.push(check(
        "simulated turning point x_max",
        x_max,
        TURNING_POINT,
        5e-3,
        false,
    ));

    let mut fit_peak = None;
    match fit_sinusoid(&traj.samples) {
        Ok(fit) => {
            fit_peak = Some(fit.amplitude * fit.omega);
            files::write_fit(&cfg.out.join("fit.csv"), &fit)?;
            files::write_deviation(
                &cfg.out.join("deviation.csv"),
                &fermat_osc::analysis::deviation_series(&traj.samples, &fit),
            )?;
            checks.push(check(
                "fit offset + amplitude",
                fit.offset + fit.amplitude,
                TURNING_POINT,
                5e-3,
                false,
            ));
            checks.push(check("fit offset d", fit.offset, FIT_OFFSET, 0.01, true));
            checks.push(check(
                "fit amplitude A",
                fit.amplitude,
                FIT_OFFSET,
                0.01,
                true,
            ));
            checks.push(check(
                "fit angular frequency omega",
                fit.omega,
                FIT_OMEGA,
                0.02,
                true,
            ));
        }
        Err(e) => checks.push(failed("sinusoid fit", e)),
    }

    let quad = estimate_period_quadrature(&sys)?;
    match estimate_period_crossings(&traj) {
        Ok(p) => checks.push(check(
            "period: crossings vs quadrature",
            p.period,
            quad.period,
            1e-4,
            true,
        )),
        Err(e) => checks.push(failed("period: crossings vs quadrature", e)),
    }

    let speed = speed_at_ft(&sys)?;
    match traj.events.o_crossings.first() {
        Some(c) => {
            checks.push(check(
                "simulated speed at O",
                c.xdot.abs(),
                speed,
                1e-6,
                false,
            ));
            let work = work_along_axis(&sys, traj.x_ft)?;
            checks.push(check(
                "work along A1O vs m0 v^2/2",
                work,
                0.5 * sys.m0 * c.xdot * c.xdot,
                1e-6,
                false,
            ));
        }
        None => checks.push(failed("simulated speed at O", "no crossing before t_max")),
    }
    if let Some(peak) = fit_peak {
        checks.push(check(
            "fitted peak speed A*omega",
            peak,
            speed,
            0.03,
            true,
        ));
    }
    checks.push(bound(
        "max energy drift |E(t)|",
        traj.max_energy_drift,
        1e-8,
    ));

    match phi_ode_residual_series(&traj) {
        Ok(r) => checks.push(bound(
            "phi-form ODE residual",
            r.iter().map(|v| v.1.abs()).fold(0.0, f64::max),
            1e-6,
        )),
        Err(e) => checks.push(failed("phi-form ODE residual", e)),
    }

    println!("{:<36} {:<22} {:<28} result", "check", "value", "target");
    for c in &checks {
        println!(
            "{:<36} {:<22} {:<28} {}",
            c.name,
            c.value,
            c.target,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} checks passed", checks.len());
    Ok(passed == checks.len())
}
