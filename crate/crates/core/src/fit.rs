//! Single-sinusoid fits `x(t) ≈ d + A sin(ω (t − t₀))` of sampled motion.
//!
//! Extrema are located between samples with the cubic Hermite interpolant
//! built from `(x, ẋ)`, which seeds both fits:
//! `d = (max + min)/2`, `A = (max − min)/2`, `ω = π / (mean gap between
//! successive extrema)`, `t₀` a quarter period before the first maximum.
//! Parameters are then refined by Levenberg-Marquardt damped Gauss-Newton.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector, SMatrix, SVector};

use crate::dynamics::TrajectorySample;
use crate::interp::Hermite;
use crate::{Error, Result};

const REL_STEP_TOL: f64 = 1e-10;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidFit {
    pub offset: f64,
    pub amplitude: f64,
    pub omega: f64,
    /// Time shift, normalized into `[0, 2π/ω)`.
    pub t0: f64,
    pub rmse: f64,
}

impl SinusoidFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.offset + self.amplitude * (self.omega * (t - self.t0)).sin()
    }

    pub fn rate(&self, t: f64) -> f64 {
        self.amplitude * self.omega * (self.omega * (t - self.t0)).cos()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub x: f64,
    pub is_max: bool,
}

/// Interior extrema of the sampled motion, located where `ẋ` changes sign.
pub fn extrema(samples: &[TrajectorySample]) -> Vec<Extremum> {
    samples
        .windows(2)
        .filter_map(|w| {
            let (s0, s1) = (w[0], w[1]);
            let is_max = if s0.xdot > 0.0 && s1.xdot <= 0.0 {
                true
            } else if s0.xdot < 0.0 && s1.xdot >= 0.0 {
                false
            } else {
                return None;
            };
            let pos = Hermite {
                t0: s0.t,
                t1: s1.t,
                y0: s0.x,
                y1: s1.x,
                d0: s0.xdot,
                d1: s1.xdot,
            };
            // the slope of the interpolant is ẋ at both ends, so bisect on it
            let t = bisect(|t| pos.derivative(t), s0.t, s1.t);
            Some(Extremum {
                t,
                x: pos.value(t),
                is_max,
            })
        })
        .collect()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy)]
struct Seed {
    offset: f64,
    amplitude: f64,
    omega: f64,
    t0: f64,
}

fn seed(samples: &[TrajectorySample]) -> Result<Seed> {
    let ext = extrema(samples);
    let maxima: Vec<f64> = ext.iter().filter(|e| e.is_max).map(|e| e.x).collect();
    let minima: Vec<f64> = ext.iter().filter(|e| !e.is_max).map(|e| e.x).collect();
    if ext.len() < 3 || maxima.is_empty() || minima.is_empty() {
        return Err(Error::InsufficientData(format!(
            "need at least three interior extrema including a maximum and a minimum, found {}",
            ext.len()
        )));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (hi, lo) = (mean(&maxima), mean(&minima));
    let half_period = (ext.last().unwrap().t - ext[0].t) / (ext.len() - 1) as f64;
    let omega = PI / half_period;
    let span = samples.last().unwrap().t - samples[0].t;
    if span < 2.0 * (2.0 * half_period) * (1.0 - 1e-9) {
        return Err(Error::InsufficientData(format!(
            "samples span {span} but two periods need {}",
            4.0 * half_period
        )));
    }
    let first_max = ext.iter().find(|e| e.is_max).unwrap().t;
    Ok(Seed {
        offset: 0.5 * (hi + lo),
        amplitude: 0.5 * (hi - lo),
        omega,
        t0: first_max - FRAC_PI_2 / omega,
    })
}

/// Per-sample residual and its gradient with respect to the parameters.
type Model<const N: usize> = dyn Fn(&SVector<f64, N>, f64, f64) -> (f64, SVector<f64, N>);

/// `(JᵀJ, Jᵀr, Σr²)` at `p`.
fn normal_equations<const N: usize>(
    samples: &[TrajectorySample],
    p: &SVector<f64, N>,
    model: &Model<N>,
) -> (SMatrix<f64, N, N>, SVector<f64, N>, f64) {
    let mut jtj = SMatrix::<f64, N, N>::zeros();
    let mut jtr = SVector::<f64, N>::zeros();
    let mut cost = 0.0;
    for s in samples {
        let (r, g) = model(p, s.t, s.x);
        jtj += g * g.transpose();
        jtr += g * r;
        cost += r * r;
    }
    (jtj, jtr, cost)
}

fn cost<const N: usize>(
    samples: &[TrajectorySample],
    p: &SVector<f64, N>,
    model: &Model<N>,
) -> f64 {
    samples.iter().map(|s| model(p, s.t, s.x).0.powi(2)).sum()
}

fn levenberg_marquardt<const N: usize>(
    samples: &[TrajectorySample],
    mut p: SVector<f64, N>,
    model: &Model<N>,
) -> Result<(SVector<f64, N>, f64)> {
    let mut lambda = 1e-3;
    let (mut jtj, mut jtr, mut c) = normal_equations(samples, &p, model);
    for _ in 0..MAX_ITER {
        let mut damped = jtj;
        for i in 0..N {
            damped[(i, i)] += lambda * jtj[(i, i)].max(f64::MIN_POSITIVE);
        }
        let lu = DMatrix::from_column_slice(N, N, damped.as_slice()).lu();
        let Some(step) = lu.solve(&DVector::from_column_slice((-jtr).as_slice())) else {
            lambda *= 10.0;
            continue;
        };
        let step = SVector::<f64, N>::from_column_slice(step.as_slice());
        let trial = p + step;
        let c_trial = cost(samples, &trial, model);
        let small = step.norm() <= REL_STEP_TOL * p.norm().max(f64::MIN_POSITIVE);
        if c_trial <= c {
            p = trial;
            lambda = (lambda / 10.0).max(1e-12);
            if small {
                return Ok((p, c_trial));
            }
            (jtj, jtr, c) = normal_equations(samples, &p, model);
        } else {
            if small {
                return Ok((p, c));
            }
            lambda *= 10.0;
        }
    }
    Err(Error::FitNoConvergence {
        iterations: MAX_ITER,
        rmse: (c / samples.len() as f64).sqrt(),
    })
}

fn finish(
    samples: &[TrajectorySample],
    offset: f64,
    mut amplitude: f64,
    mut omega: f64,
    mut t0: f64,
) -> SinusoidFit {
    if omega < 0.0 {
        omega = -omega;
        amplitude = -amplitude;
    }
    if amplitude < 0.0 {
        amplitude = -amplitude;
        t0 += PI / omega;
    }
    let period = 2.0 * PI / omega;
    t0 = t0.rem_euclid(period);
    let mut fit = SinusoidFit {
        offset,
        amplitude,
        omega,
        t0,
        rmse: 0.0,
    };
    let sse: f64 = samples.iter().map(|s| (fit.eval(s.t) - s.x).powi(2)).sum();
    fit.rmse = (sse / samples.len() as f64).sqrt();
    fit
}

/// Sinusoid whose offset and amplitude are pinned to the interpolated turning
/// points (`d ± A` equal the mean maximum and minimum), with `ω` and `t₀`
/// fitted by least squares. Its crests and troughs touch the orbit's turning
/// points exactly.
pub fn fit_sinusoid(samples: &[TrajectorySample]) -> Result<SinusoidFit> {
    let sd = seed(samples)?;
    let (d, a) = (sd.offset, sd.amplitude);
    let model = move |p: &SVector<f64, 2>, t: f64, x: f64| {
        let (omega, t0) = (p[0], p[1]);
        let th = omega * (t - t0);
        let (sn, cs) = th.sin_cos();
        let r = d + a * sn - x;
        (
            r,
            SVector::<f64, 2>::new(a * cs * (t - t0), -a * omega * cs),
        )
    };
    let (p, _) = levenberg_marquardt(samples, SVector::<f64, 2>::new(sd.omega, sd.t0), &model)?;
    Ok(finish(samples, d, a, p[0], p[1]))
}

/// All four parameters free. Minimizes the squared residual over the
/// samples; with a free offset the residuals have zero mean.
pub fn fit_sinusoid_least_squares(samples: &[TrajectorySample]) -> Result<SinusoidFit> {
    let sd = seed(samples)?;
    let model = |p: &SVector<f64, 4>, t: f64, x: f64| {
        let (d, a, omega, t0) = (p[0], p[1], p[2], p[3]);
        let th = omega * (t - t0);
        let (sn, cs) = th.sin_cos();
        let r = d + a * sn - x;
        (
            r,
            SVector::<f64, 4>::new(1.0, sn, a * cs * (t - t0), -a * omega * cs),
        )
    };
    let p0 = SVector::<f64, 4>::new(sd.offset, sd.amplitude, sd.omega, sd.t0);
    let (p, _) = levenberg_marquardt(samples, p0, &model)?;
    Ok(finish(samples, p[0], p[1], p[2], p[3]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub t: f64,
    /// `x(t) − fit(t)`.
    pub dx: f64,
    /// `|ẋ(t)| − |fit'(t)|`.
    pub dv: f64,
}

pub fn deviation_series(samples: &[TrajectorySample], fit: &SinusoidFit) -> Vec<Deviation> {
    samples
        .iter()
        .map(|s| Deviation {
            t: s.t,
            dx: s.x - fit.eval(s.t),
            dv: s.xdot.abs() - fit.rate(s.t).abs(),
        })
        .collect()
}
