//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic can
//! be tested natively; only the wrappers touch `JsError`.

use fermat_osc::analysis::{
    estimate_period_quadrature, far_turning_point, fit_sinusoid, speed_at_ft,
};
use fermat_osc::dynamics::{potential, simulate};
use fermat_osc::fermat::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use fermat_osc::{weiszfeld, FtCase, IsoscelesSystem, Point2, WeightedTriangle};
use wasm_bindgen::prelude::*;

/// Longest series handed to the page; the trajectory is decimated to fit.
const MAX_POINTS: usize = 2000;

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Oscillation {
    t: Vec<f64>,
    x: Vec<f64>,
    xdot: Vec<f64>,
    fit_x: Vec<f64>,
    /// `|A1O|`
    pub x_ft: f64,
    pub x_max: f64,
    pub alpha_deg: f64,
    pub speed_at_ft: f64,
    pub period: f64,
    pub energy_drift: f64,
    pub fit_offset: f64,
    pub fit_amplitude: f64,
    pub fit_omega: f64,
    pub fit_t0: f64,
}

#[wasm_bindgen]
impl Oscillation {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn xdot(&self) -> Vec<f64> {
        self.xdot.clone()
    }

    /// Fitted sinusoid on the same time grid, empty if the run is too short to fit.
    #[wasm_bindgen(getter)]
    pub fn fit_x(&self) -> Vec<f64> {
        self.fit_x.clone()
    }
}

pub fn run_oscillation(
    a: f64,
    phi0_deg: f64,
    w2: f64,
    m0: f64,
    t_max: f64,
) -> fermat_osc::Result<Oscillation> {
    let sys = IsoscelesSystem::new(a, phi0_deg.to_radians(), w2, m0)?;
    let traj = simulate(&sys, 1e-3, t_max)?;
    let fit = fit_sinusoid(&traj.samples).ok();
    let stride = traj.samples.len().div_ceil(MAX_POINTS).max(1);
    let kept: Vec<_> = traj.samples.iter().step_by(stride).collect();
    let nan = f64::NAN;
    Ok(Oscillation {
        t: kept.iter().map(|s| s.t).collect(),
        x: kept.iter().map(|s| s.x).collect(),
        xdot: kept.iter().map(|s| s.xdot).collect(),
        fit_x: fit
            .map(|f| kept.iter().map(|s| f.eval(s.t)).collect())
            .unwrap_or_default(),
        x_ft: traj.x_ft,
        x_max: far_turning_point(&sys)?,
        alpha_deg: sys.ft_angle()?.to_degrees(),
        speed_at_ft: speed_at_ft(&sys)?,
        period: estimate_period_quadrature(&sys)?.period,
        energy_drift: traj.max_energy_drift,
        fit_offset: fit.map_or(nan, |f| f.offset),
        fit_amplitude: fit.map_or(nan, |f| f.amplitude),
        fit_omega: fit.map_or(nan, |f| f.omega),
        fit_t0: fit.map_or(nan, |f| f.t0),
    })
}

/// `[x, y, case, residual, iterations]` where `case` is 0 for floating and
/// the 1-based vertex label when absorbed.
pub fn locate_ft_point(coords: &[f64], weights: &[f64]) -> fermat_osc::Result<Vec<f64>> {
    if coords.len() != 6 || weights.len() != 3 {
        return Err(fermat_osc::Error::Degenerate(
            "expected six coordinates and three weights",
        ));
    }
    let pts = [
        Point2::new(coords[0], coords[1]),
        Point2::new(coords[2], coords[3]),
        Point2::new(coords[4], coords[5]),
    ];
    let tri = WeightedTriangle::new(pts, [weights[0], weights[1], weights[2]])?;
    let r = weiszfeld(&tri, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let case = match r.case {
        FtCase::Floating => 0.0,
        FtCase::AbsorbedAt(i) => i as f64,
    };
    Ok(vec![
        r.point.x,
        r.point.y,
        case,
        r.residual,
        r.iterations as f64,
    ])
}

/// `[x₀, V(x₀), x₁, V(x₁), …]` on `n` points of `[0, 1.5 h]`.
pub fn potential_samples(a: f64, phi0_deg: f64, w2: f64, n: usize) -> fermat_osc::Result<Vec<f64>> {
    let sys = IsoscelesSystem::new(a, phi0_deg.to_radians(), w2, 1.0)?;
    let n = n.max(2);
    let end = 1.5 * sys.altitude();
    Ok((0..n)
        .flat_map(|i| {
            let x = end * i as f64 / (n - 1) as f64;
            [x, potential(&sys, x)]
        })
        .collect())
}

fn js(e: fermat_osc::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn oscillate(
    a: f64,
    phi0_deg: f64,
    w2: f64,
    m0: f64,
    t_max: f64,
) -> Result<Oscillation, JsError> {
    run_oscillation(a, phi0_deg, w2, m0, t_max).map_err(js)
}

#[wasm_bindgen]
pub fn ft_point(coords: &[f64], weights: &[f64]) -> Result<Vec<f64>, JsError> {
    locate_ft_point(coords, weights).map_err(js)
}

#[wasm_bindgen]
pub fn potential_curve(a: f64, phi0_deg: f64, w2: f64, n: usize) -> Result<Vec<f64>, JsError> {
    potential_samples(a, phi0_deg, w2, n).map_err(js)
}
