//! Weighted Fermat-Torricelli point of three weighted terminals.
//!
//! The minimizer of `f(p) = Σ wᵢ |p − Aᵢ|` either floats strictly inside the
//! triangle, where the weighted unit vectors towards the terminals balance, or
//! is absorbed at a vertex whose weight dominates the pull of the other two.

use std::fmt;

use crate::geometry::{Point2, WeightedTriangle};
use crate::{Error, Result};

/// Default displacement tolerance for [`weiszfeld`], relative to the triangle diameter.
pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_ITER: usize = 200_000;

/// Which regime the minimizer is in. Vertex labels are 1-based (`A1..A3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtCase {
    Floating,
    AbsorbedAt(usize),
}

impl fmt::Display for FtCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FtCase::Floating => f.write_str("floating"),
            FtCase::AbsorbedAt(i) => write!(f, "absorbed at A{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtResult {
    pub point: Point2,
    pub case: FtCase,
    pub residual: f64,
    pub iterations: usize,
}

/// Weighted objective `Σ wᵢ |p − Aᵢ|`.
pub fn objective(tri: &WeightedTriangle, p: Point2) -> f64 {
    tri.vertices()
        .iter()
        .zip(tri.weights())
        .map(|(a, w)| w * p.distance(*a))
        .sum()
}

/// Norm of the pull exerted at vertex `i` by the other two terminals.
fn pull_at_vertex(tri: &WeightedTriangle, i: usize) -> f64 {
    let p = tri.vertex(i);
    let mut s = Point2::ORIGIN;
    for j in (0..3).filter(|&j| j != i) {
        // distinct vertices are guaranteed by WeightedTriangle::new
        s = s + p.unit_towards(tri.vertex(j)).unwrap() * tri.weight(j);
    }
    s.norm()
}

/// Absorbed at vertex `i` iff `‖Σ_{j≠i} w_j u(Aᵢ, A_j)‖ ≤ wᵢ`; the boundary counts as absorbed.
pub fn classify_case(tri: &WeightedTriangle) -> Result<FtCase> {
    let mut absorbed = (0..3).filter(|&i| pull_at_vertex(tri, i) <= tri.weight(i));
    match (absorbed.next(), absorbed.next()) {
        (None, _) => Ok(FtCase::Floating),
        (Some(i), None) => Ok(FtCase::AbsorbedAt(i + 1)),
        (Some(_), Some(_)) => Err(Error::Internal(
            "more than one vertex satisfies the absorbed inequality",
        )),
    }
}

/// `‖Σᵢ wᵢ u(p, Aᵢ)‖`, zero exactly at a floating Fermat-Torricelli point.
pub fn balance_residual(tri: &WeightedTriangle, p: Point2) -> Result<f64> {
    let mut s = Point2::ORIGIN;
    for (i, (a, w)) in tri.vertices().iter().zip(tri.weights()).enumerate() {
        let u = p.unit_towards(*a).ok_or(Error::UndefinedDirection(i + 1))?;
        s = s + u * *w;
    }
    Ok(s.norm())
}

/// Weiszfeld's weighted-average fixed point iteration.
///
/// Absorbed configurations return the absorbing vertex directly. Otherwise the
/// iteration starts at the weighted centroid and stops once two successive
/// iterates are closer than `tol · diameter`. If an iterate lands exactly on a vertex
/// (where the update is undefined) the iteration restarts from the previous
/// seed shifted by `1e-9 · diameter`.
pub fn weiszfeld(tri: &WeightedTriangle, tol: f64, max_iter: usize) -> Result<FtResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    if let FtCase::AbsorbedAt(i) = classify_case(tri)? {
        let residual = (pull_at_vertex(tri, i - 1) - tri.weight(i - 1)).max(0.0);
        return Ok(FtResult {
            point: tri.vertex(i - 1),
            case: FtCase::AbsorbedAt(i),
            residual,
            iterations: 0,
        });
    }

    let scale = tri.diameter();
    let shift = 1e-9 * scale;
    let mut seed = tri.weighted_centroid();
    let mut p = seed;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        match weiszfeld_update(tri, p) {
            Some(next) => {
                let step = next.distance(p);
                p = next;
                if step < tol * scale {
                    let residual = balance_residual(tri, p)?;
                    return Ok(FtResult {
                        point: p,
                        case: FtCase::Floating,
                        residual,
                        iterations,
                    });
                }
            }
            None => {
                let k = iterations as f64;
                seed = seed + Point2::new(k.cos(), k.sin()) * shift;
                p = seed;
            }
        }
    }
    Err(Error::NoConvergence {
        iterations,
        last: p,
    })
}

fn weiszfeld_update(tri: &WeightedTriangle, p: Point2) -> Option<Point2> {
    let mut num = Point2::ORIGIN;
    let mut den = 0.0;
    for (a, w) in tri.vertices().iter().zip(tri.weights()) {
        let d = p.distance(*a);
        if d == 0.0 {
            return None;
        }
        num = num + *a * (w / d);
        den += w / d;
    }
    Some(num * (1.0 / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn isosceles(apex_deg: f64, weights: [f64; 3]) -> WeightedTriangle {
        let half = (apex_deg / 2.0).to_radians();
        WeightedTriangle::new(
            [
                Point2::new(0.0, half.cos()),
                Point2::new(-half.sin(), 0.0),
                Point2::new(half.sin(), 0.0),
            ],
            weights,
        )
        .unwrap()
    }

    fn equilateral() -> WeightedTriangle {
        WeightedTriangle::new(
            [
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.5, 3f64.sqrt() / 2.0),
            ],
            [1.0; 3],
        )
        .unwrap()
    }

    #[test]
    fn obtuse_equal_weights_absorbed_at_apex() {
        assert_eq!(
            classify_case(&isosceles(130.0, [1.0; 3])).unwrap(),
            FtCase::AbsorbedAt(1)
        );
    }

    #[test]
    fn acute_equal_weights_floating() {
        assert_eq!(
            classify_case(&isosceles(80.0, [1.0; 3])).unwrap(),
            FtCase::Floating
        );
    }

    #[test]
    fn heavy_first_weight_absorbs() {
        assert_eq!(
            classify_case(&isosceles(80.0, [10.0, 1.0, 1.0])).unwrap(),
            FtCase::AbsorbedAt(1)
        );
        let r = weiszfeld(
            &isosceles(80.0, [10.0, 1.0, 1.0]),
            DEFAULT_TOL,
            DEFAULT_MAX_ITER,
        )
        .unwrap();
        assert_eq!(r.case, FtCase::AbsorbedAt(1));
        assert_eq!(r.point, isosceles(80.0, [1.0; 3]).vertex(0));
        assert_eq!(r.iterations, 0);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn exact_120_is_absorbed() {
        // Right at the boundary the pull at the apex is 2cos60° = 1 up to rounding;
        // build it so that the computed norm is exactly ≤ 1.
        let tri = WeightedTriangle::new(
            [
                Point2::new(0.0, 0.0),
                Point2::new(-1.0, 0.0),
                Point2::new(0.5, 3f64.sqrt() / 2.0),
            ],
            [1.0; 3],
        )
        .unwrap();
        let pull = pull_at_vertex(&tri, 0);
        let expected = if pull <= 1.0 {
            FtCase::AbsorbedAt(1)
        } else {
            FtCase::Floating
        };
        assert_eq!(classify_case(&tri).unwrap(), expected);
        assert!((pull - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_zero_at_equilateral_center() {
        let r = balance_residual(&equilateral(), Point2::new(0.5, 3f64.sqrt() / 6.0)).unwrap();
        assert!(r < 1e-12);
        let off = balance_residual(&equilateral(), Point2::new(0.5, 0.1)).unwrap();
        assert!(off > 0.1);
    }

    #[test]
    fn residual_undefined_at_vertex() {
        assert_eq!(
            balance_residual(&equilateral(), Point2::new(1.0, 0.0)),
            Err(Error::UndefinedDirection(2))
        );
    }

    #[test]
    fn weiszfeld_equilateral_center() {
        let r = weiszfeld(&equilateral(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(r.case, FtCase::Floating);
        assert_abs_diff_eq!(r.point.x, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.point.y, 3f64.sqrt() / 6.0, epsilon = 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn update_undefined_on_vertex() {
        let tri = equilateral();
        assert!(weiszfeld_update(&tri, tri.vertex(1)).is_none());
        assert!(weiszfeld_update(&tri, Point2::new(0.4, 0.2)).is_some());
    }

    #[test]
    fn weiszfeld_reports_non_convergence() {
        let err = weiszfeld(&isosceles(80.0, [1.0; 3]), 1e-300, 3).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { iterations: 3, .. }));
    }
}
