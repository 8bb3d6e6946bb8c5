//! Frictionless motion of the knot along the symmetry axis.
//!
//! The two base strings pull with `w₂` each along `SA2` and `SA3`, the apex
//! string pulls back with 1, so the axial equation of motion is
//! `m₀ ẍ = 2 w₂ cos φ − 1` with `φ = phi_of_x(x)`. The system is conservative
//! with potential `V(x) = x + 2 w₂ (|SA2| − a)`, normalized to `V(0) = 0`.

use std::fmt;

use crate::fermat::{classify_case, FtCase};
use crate::interp::Hermite;
use crate::isosceles::{isosceles_ft_angle, phi_of_x, IsoscelesSystem};
use crate::{Error, Result};

pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KnotState {
    pub t: f64,
    pub x: f64,
    pub xdot: f64,
}

impl KnotState {
    pub const RELEASE: KnotState = KnotState {
        t: 0.0,
        x: 0.0,
        xdot: 0.0,
    };

    pub fn new(t: f64, x: f64, xdot: f64) -> Self {
        Self { t, x, xdot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub xdot: f64,
    pub phi: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Moving away from the apex.
    Forward,
    /// Moving back towards the apex.
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "+",
            Direction::Backward => "-",
        })
    }
}

/// Passage through the Fermat-Torricelli point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub t: f64,
    /// Interpolated position; equals `x_O` up to the root-finding tolerance.
    pub x: f64,
    pub xdot: f64,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint {
    pub t: f64,
    pub x: f64,
    /// Interpolated velocity at `t`, zero up to the root-finding tolerance.
    pub xdot: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventLog {
    pub o_crossings: Vec<Crossing>,
    pub turning_points: Vec<TurningPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub system: IsoscelesSystem,
    pub dt: f64,
    pub samples: Vec<TrajectorySample>,
    pub events: EventLog,
    /// Position of the Fermat-Torricelli point on the axis.
    pub x_ft: f64,
    /// `max |E(t) − E(0)|` over the samples.
    pub max_energy_drift: f64,
}

/// `2 w₂ cos φ(x) − 1`.
pub fn axial_force(sys: &IsoscelesSystem, x: f64) -> f64 {
    2.0 * sys.w2 * phi_of_x(sys, x).cos() - 1.0
}

/// `V(x) = x + 2 w₂ (d(x) − a)`, `d(x) = |SA2| = |SA3|`; the weighted distance
/// objective on the axis minus its value at the apex.
pub fn potential(sys: &IsoscelesSystem, x: f64) -> f64 {
    x + 2.0 * sys.w2 * (sys.base_distance(x) - sys.a)
}

pub fn energy(sys: &IsoscelesSystem, s: &KnotState) -> f64 {
    0.5 * sys.m0 * s.xdot * s.xdot + potential(sys, s.x)
}

/// `(ẋ, ẍ)`.
pub fn rhs(sys: &IsoscelesSystem, s: &KnotState) -> (f64, f64) {
    (s.xdot, axial_force(sys, s.x) / sys.m0)
}

/// One classical fourth order Runge-Kutta step.
pub fn step_rk4(sys: &IsoscelesSystem, s: &KnotState, dt: f64) -> KnotState {
    let at = |dt_frac: f64, dx: f64, dv: f64| KnotState::new(s.t + dt_frac, s.x + dx, s.xdot + dv);
    let k1 = rhs(sys, s);
    let k2 = rhs(sys, &at(0.5 * dt, 0.5 * dt * k1.0, 0.5 * dt * k1.1));
    let k3 = rhs(sys, &at(0.5 * dt, 0.5 * dt * k2.0, 0.5 * dt * k2.1));
    let k4 = rhs(sys, &at(dt, dt * k3.0, dt * k3.1));
    KnotState::new(
        s.t + dt,
        s.x + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        s.xdot + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// `n` RK4 steps of size `dt` from `s`.
pub fn propagate(sys: &IsoscelesSystem, s: &KnotState, dt: f64, n: usize) -> KnotState {
    (0..n).fold(*s, |acc, _| step_rk4(sys, &acc, dt))
}

/// Checks that the knot actually oscillates: floating configuration and
/// `φ₀ < α`. Returns `(x_O, α)`.
pub fn check_regime(sys: &IsoscelesSystem) -> Result<(f64, f64)> {
    if let FtCase::AbsorbedAt(i) = classify_case(&sys.triangle())? {
        return Err(Error::Absorbed(i));
    }
    let alpha = isosceles_ft_angle(sys.w2)?;
    if sys.phi0 >= alpha {
        return Err(Error::OutOfRegime {
            phi0: sys.phi0,
            alpha,
        });
    }
    Ok((sys.ft_x()?, alpha))
}

fn sample(sys: &IsoscelesSystem, s: &KnotState) -> TrajectorySample {
    TrajectorySample {
        t: s.t,
        x: s.x,
        xdot: s.xdot,
        phi: phi_of_x(sys, s.x),
        energy: energy(sys, s),
    }
}

/// Releases the knot from the apex at rest and integrates with fixed-step RK4
/// up to `t_max`, recording every step and the O-crossings and turning points
/// found between steps.
pub fn simulate(sys: &IsoscelesSystem, dt: f64, t_max: f64) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "must be finite and positive",
        });
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t_max",
            value: t_max,
            reason: "must be finite and positive",
        });
    }
    let (x_ft, _) = check_regime(sys)?;
    let n = (t_max / dt * (1.0 + 1e-12)).floor() as usize;

    let mut samples = Vec::with_capacity(n + 1);
    let mut events = EventLog::default();
    let mut state = KnotState::RELEASE;
    samples.push(sample(sys, &state));
    for i in 1..=n {
        let mut next = step_rk4(sys, &state, dt);
        // keep the grid exactly uniform instead of accumulating t += dt
        next.t = i as f64 * dt;
        detect_events(sys, x_ft, &state, &next, &mut events);
        samples.push(sample(sys, &next));
        state = next;
    }
    let e0 = samples[0].energy;
    let max_energy_drift = samples
        .iter()
        .map(|s| (s.energy - e0).abs())
        .fold(0.0, f64::max);
    Ok(Trajectory {
        system: *sys,
        dt,
        samples,
        events,
        x_ft,
        max_energy_drift,
    })
}

fn sign_change(a: f64, b: f64) -> Option<Direction> {
    if a < 0.0 && b >= 0.0 {
        Some(Direction::Forward)
    } else if a > 0.0 && b <= 0.0 {
        Some(Direction::Backward)
    } else {
        None
    }
}

fn detect_events(
    sys: &IsoscelesSystem,
    x_ft: f64,
    s0: &KnotState,
    s1: &KnotState,
    log: &mut EventLog,
) {
    let acc0 = axial_force(sys, s0.x) / sys.m0;
    let acc1 = axial_force(sys, s1.x) / sys.m0;
    let pos = Hermite {
        t0: s0.t,
        t1: s1.t,
        y0: s0.x,
        y1: s1.x,
        d0: s0.xdot,
        d1: s1.xdot,
    };
    let vel = Hermite {
        t0: s0.t,
        t1: s1.t,
        y0: s0.xdot,
        y1: s1.xdot,
        d0: acc0,
        d1: acc1,
    };

    if let Some(direction) = sign_change(s0.x - x_ft, s1.x - x_ft) {
        let t = pos.solve(x_ft);
        log.o_crossings.push(Crossing {
            t,
            x: pos.value(t),
            xdot: vel.value(t),
            direction,
        });
    }
    if sign_change(s0.xdot, s1.xdot).is_some() {
        let t = vel.solve(0.0);
        log.turning_points.push(TurningPoint {
            t,
            x: pos.value(t),
            xdot: vel.value(t),
        });
    }
}

/// Residual of the equation of motion written in the angle coordinate,
/// `m₀ (a sin φ₀ / sin²φ · φ̈ − 2a sin φ₀ cos φ / sin³φ · φ̇²) − (2 w₂ cos φ − 1)`.
pub fn phi_ode_residual(sys: &IsoscelesSystem, phi: f64, phidot: f64, phiddot: f64) -> Result<f64> {
    let s = phi.sin();
    if !(phi > 0.0 && phi < std::f64::consts::PI) || s == 0.0 {
        return Err(Error::Singular(phi));
    }
    let k = sys.a * sys.phi0.sin();
    let lhs =
        sys.m0 * (k / (s * s) * phiddot - 2.0 * k * phi.cos() / (s * s * s) * phidot * phidot);
    Ok(lhs - (2.0 * sys.w2 * phi.cos() - 1.0))
}

/// `φ̇ = ẋ sin²φ / (a sin φ₀)`, from differentiating `x = a cos φ₀ − a sin φ₀ cot φ`.
pub fn phi_rate(sys: &IsoscelesSystem, phi: f64, xdot: f64) -> f64 {
    xdot * phi.sin().powi(2) / (sys.a * sys.phi0.sin())
}

/// Evaluates [`phi_ode_residual`] along a trajectory. `φ` and `φ̇` come from
/// the sampled `x`, `ẋ`; `φ̈` is a five-point central difference of `φ̇`
/// over the sample grid, so the force law is not used on the angle side.
/// The first and last two samples are skipped.
pub fn phi_ode_residual_series(traj: &Trajectory) -> Result<Vec<(f64, f64)>> {
    let sys = &traj.system;
    let rates: Vec<f64> = traj
        .samples
        .iter()
        .map(|s| phi_rate(sys, s.phi, s.xdot))
        .collect();
    let h = traj.dt;
    let mut out = Vec::with_capacity(rates.len().saturating_sub(4));
    for i in 2..rates.len().saturating_sub(2) {
        let acc =
            (-rates[i + 2] + 8.0 * rates[i + 1] - 8.0 * rates[i - 1] + rates[i - 2]) / (12.0 * h);
        let s = &traj.samples[i];
        out.push((s.t, phi_ode_residual(sys, s.phi, rates[i], acc)?));
    }
    Ok(out)
}
