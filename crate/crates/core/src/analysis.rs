//! Quantities derived from the oscillating knot: crossing speed, work along
//! the axis, turning point and period.

use std::fmt;

use crate::dynamics::{check_regime, potential, Direction, Trajectory};
use crate::isosceles::IsoscelesSystem;
use crate::quadrature::oscillation_period;
use crate::{Error, Result};

pub use crate::fit::{
    deviation_series, fit_sinusoid, fit_sinusoid_least_squares, Deviation, SinusoidFit,
};

const QUAD_TOL: f64 = 1e-12;

/// Speed of the knot as it passes the Fermat-Torricelli point after release
/// from the apex at rest: `√(−2 V(x_O) / m₀)`. In terms of the geometry this is
/// `√((2/m₀)(2 a w₂ − x_O − 2 a w₂ sin φ₀ / sin α))`.
pub fn speed_at_ft(sys: &IsoscelesSystem) -> Result<f64> {
    let (x_o, _) = check_regime(sys)?;
    Ok((-2.0 * potential(sys, x_o) / sys.m0).sqrt())
}

/// Work `∫₀^x (2 w₂ cos φ − 1) dx' = 2 w₂ (a − |SA2|) − x` done on the knot
/// between the apex and `x_end`.
pub fn work_along_axis(sys: &IsoscelesSystem, x_end: f64) -> Result<f64> {
    if x_end.is_nan() || x_end < 0.0 {
        return Err(Error::InvalidParameter {
            name: "x_end",
            value: x_end,
            reason: "must be non-negative",
        });
    }
    Ok(2.0 * sys.w2 * (sys.a - sys.base_distance(x_end)) - x_end)
}

/// Far turning point: the root of `V` beyond the Fermat-Torricelli point, by
/// bisection down to adjacent floats.
pub fn far_turning_point(sys: &IsoscelesSystem) -> Result<f64> {
    let (x_o, _) = check_regime(sys)?;
    let v = |x| potential(sys, x);
    let mut lo = x_o;
    let mut step = sys.altitude();
    let mut hi = x_o + step;
    // V grows at least linearly beyond A4, so doubling brackets the root quickly
    for _ in 0..200 {
        if v(hi) > 0.0 {
            break;
        }
        lo = hi;
        step *= 2.0;
        hi += step;
    }
    if !(v(lo) < 0.0 && v(hi) > 0.0) {
        return Err(Error::Internal("turning point not bracketed"));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if v(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodMethod {
    Crossings,
    Quadrature,
}

impl fmt::Display for PeriodMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodMethod::Crossings => "crossings",
            PeriodMethod::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    pub period: f64,
    pub method: PeriodMethod,
    pub uncertainty: f64,
}

/// Mean spacing of consecutive same-direction O-crossings. Requires at least
/// three crossings in one direction; the uncertainty is the largest deviation
/// of a single gap from the mean.
pub fn estimate_period_crossings(traj: &Trajectory) -> Result<PeriodEstimate> {
    let mut gaps = Vec::new();
    let mut enough = false;
    for dir in [Direction::Forward, Direction::Backward] {
        let times: Vec<f64> = traj
            .events
            .o_crossings
            .iter()
            .filter(|c| c.direction == dir)
            .map(|c| c.t)
            .collect();
        enough |= times.len() >= 3;
        gaps.extend(times.windows(2).map(|w| w[1] - w[0]));
    }
    if !enough {
        return Err(Error::InsufficientData(format!(
            "need three same-direction crossings, trajectory has {} crossings in total",
            traj.events.o_crossings.len()
        )));
    }
    let period = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let uncertainty = gaps.iter().map(|g| (g - period).abs()).fold(0.0, f64::max);
    Ok(PeriodEstimate {
        period,
        method: PeriodMethod::Crossings,
        uncertainty,
    })
}

/// `T = 2 ∫₀^{x_max} dx / √(−2 V(x) / m₀)`, independent of any simulation.
pub fn estimate_period_quadrature(sys: &IsoscelesSystem) -> Result<PeriodEstimate> {
    let x_max = far_turning_point(sys)?;
    let period = oscillation_period(|x| -potential(sys, x), 0.0, x_max, sys.m0, QUAD_TOL);
    Ok(PeriodEstimate {
        period,
        method: PeriodMethod::Quadrature,
        uncertainty: QUAD_TOL * period.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::simulate;
    use approx::assert_abs_diff_eq;

    // Independent 30-digit evaluation (x_O, V(x_O), root of V, period).
    const X_O: f64 = 1.974_654_218_173_492_3;
    const SPEED: f64 = 1.098_247_505_930_167;
    const WORK: f64 = 0.603_073_792_140_916_2;
    const X_MAX: f64 = 3.547_259_241_586_374;
    const PERIOD: f64 = 10.277_890_186_841_966;

    #[test]
    fn closed_form_values() {
        let sys = IsoscelesSystem::example1();
        assert_abs_diff_eq!(speed_at_ft(&sys).unwrap(), SPEED, epsilon = 1e-12);
        assert_abs_diff_eq!(work_along_axis(&sys, X_O).unwrap(), WORK, epsilon = 1e-12);
        assert_abs_diff_eq!(work_along_axis(&sys, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(work_along_axis(&sys, 3.5473).unwrap(), 0.0, epsilon = 1e-3);
        assert!(work_along_axis(&sys, -1.0).is_err());
        assert_abs_diff_eq!(far_turning_point(&sys).unwrap(), X_MAX, epsilon = 1e-11);
    }

    #[test]
    fn geometric_speed_formula_agrees() {
        let sys = IsoscelesSystem::example1();
        let (a, w2, x_o) = (sys.a, sys.w2, sys.ft_x().unwrap());
        let alpha = sys.ft_angle().unwrap();
        let v2 = 2.0 / sys.m0 * (2.0 * a * w2 - x_o - 2.0 * a * w2 * sys.phi0.sin() / alpha.sin());
        assert_abs_diff_eq!(v2.sqrt(), speed_at_ft(&sys).unwrap(), epsilon = 1e-13);
    }

    #[test]
    fn speed_vanishes_at_equilibrium_release() {
        let sys = IsoscelesSystem {
            phi0: 59.999f64.to_radians(),
            ..IsoscelesSystem::example1()
        };
        let v = speed_at_ft(&sys).unwrap();
        assert!(v > 0.0 && v < 1e-3, "{v}");
        let sys = IsoscelesSystem {
            phi0: 60.5f64.to_radians(),
            ..sys
        };
        assert!(speed_at_ft(&sys).is_err());
    }

    #[test]
    fn quadrature_period() {
        let sys = IsoscelesSystem::example1();
        let p = estimate_period_quadrature(&sys).unwrap();
        assert_eq!(p.method, PeriodMethod::Quadrature);
        assert_abs_diff_eq!(p.period, PERIOD, epsilon = 1e-9);

        let right = IsoscelesSystem {
            w2: 0.5f64.sqrt(),
            phi0: 30f64.to_radians(),
            ..sys
        };
        let p = estimate_period_quadrature(&right).unwrap();
        assert!(p.period.is_finite() && p.period > 0.0);
    }

    #[test]
    fn crossing_period_needs_enough_crossings() {
        let sys = IsoscelesSystem::example1();
        let short = simulate(&sys, 1e-3, 12.0).unwrap();
        assert!(matches!(
            estimate_period_crossings(&short),
            Err(Error::InsufficientData(_))
        ));
        let long = simulate(&sys, 1e-3, 30.0).unwrap();
        let p = estimate_period_crossings(&long).unwrap();
        assert!(((p.period - PERIOD) / PERIOD).abs() < 1e-8);
        assert!(p.uncertainty < 1e-6);
    }

    #[test]
    fn speed_increases_with_base_weight() {
        let mut last = (0.0, 0.0);
        for w2 in [0.8, 1.0, 1.5, 2.0, 3.0] {
            let sys = IsoscelesSystem {
                w2,
                ..IsoscelesSystem::example1()
            };
            let now = (sys.ft_angle().unwrap(), speed_at_ft(&sys).unwrap());
            assert!(now.0 > last.0 && now.1 > last.1);
            last = now;
        }
    }
}
