//! The isosceles configuration: apex `A1`, base `A2A3`, foot of the altitude `A4`.
//!
//! Coordinates along the symmetry axis are measured from the apex, `x = |A1S|`.
//! The angle `φ` at an axis point `S` is `∠A4SA3`, so `tan φ = b / (h − x)`
//! with altitude `h = a cos φ₀` and half-base `b = a sin φ₀`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::geometry::{Point2, WeightedTriangle};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesSystem {
    /// Equal side `|A1A2| = |A1A3|`.
    pub a: f64,
    /// Half apex angle `∠A4A1A3`, radians.
    pub phi0: f64,
    /// Weight hung at both base vertices; the apex weight is 1.
    pub w2: f64,
    /// Mass of the knot.
    pub m0: f64,
}

impl IsoscelesSystem {
    pub fn new(a: f64, phi0: f64, w2: f64, m0: f64) -> Result<Self> {
        let positive = |name, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and positive",
                })
            }
        };
        positive("a", a)?;
        positive("w2", w2)?;
        positive("m0", m0)?;
        if !(phi0 > 0.0 && phi0 < FRAC_PI_2) {
            return Err(Error::InvalidParameter {
                name: "phi0",
                value: phi0,
                reason: "must lie in (0, pi/2)",
            });
        }
        Ok(Self { a, phi0, w2, m0 })
    }

    /// The worked scenario used throughout: `a = 5`, `φ₀ = 40°`, unit weights and mass.
    pub fn example1() -> Self {
        Self {
            a: 5.0,
            phi0: 40f64.to_radians(),
            w2: 1.0,
            m0: 1.0,
        }
    }

    /// Altitude `|A1A4| = a cos φ₀`.
    pub fn altitude(&self) -> f64 {
        self.a * self.phi0.cos()
    }

    /// Half-base `|A4A3| = a sin φ₀`.
    pub fn half_base(&self) -> f64 {
        self.a * self.phi0.sin()
    }

    /// `A1 = (0, h)`, `A2 = (−b, 0)`, `A3 = (b, 0)`.
    pub fn vertices(&self) -> [Point2; 3] {
        let (h, b) = (self.altitude(), self.half_base());
        [
            Point2::new(0.0, h),
            Point2::new(-b, 0.0),
            Point2::new(b, 0.0),
        ]
    }

    pub fn triangle(&self) -> WeightedTriangle {
        WeightedTriangle::new(self.vertices(), [1.0, self.w2, self.w2])
            .expect("validated isosceles parameters always form a proper triangle")
    }

    /// Plane coordinates of the axis point at distance `x` from the apex.
    pub fn axis_point(&self, x: f64) -> Point2 {
        Point2::new(0.0, self.altitude() - x)
    }

    /// Distance from the axis point `x` to either base vertex.
    pub fn base_distance(&self, x: f64) -> f64 {
        (self.altitude() - x).hypot(self.half_base())
    }

    pub fn ft_angle(&self) -> Result<f64> {
        isosceles_ft_angle(self.w2)
    }

    pub fn ft_x(&self) -> Result<f64> {
        isosceles_ft_x(self)
    }
}

/// Equilibrium angle `α = ∠A4OA3 = arccos(1/(2w₂²) − 1) / 2`, i.e. `2 w₂ cos α = 1`.
pub fn isosceles_ft_angle(w2: f64) -> Result<f64> {
    if !w2.is_finite() || w2 < 0.5 {
        return Err(Error::AngleDomain(w2));
    }
    let c = (1.0 / (2.0 * w2 * w2) - 1.0).clamp(-1.0, 1.0);
    let alpha = c.acos() / 2.0;
    debug_assert!(((2.0 * alpha).cos() - (2.0 * alpha.cos().powi(2) - 1.0)).abs() < 1e-12);
    Ok(alpha)
}

/// Distance `|A1O|` from the apex to the Fermat-Torricelli point on the axis.
pub fn isosceles_ft_x(sys: &IsoscelesSystem) -> Result<f64> {
    let alpha = isosceles_ft_angle(sys.w2)?;
    if sys.phi0 >= alpha {
        return Err(Error::OutOfRegime {
            phi0: sys.phi0,
            alpha,
        });
    }
    Ok(sys.altitude() - sys.half_base() / alpha.tan())
}

/// `φ = ∠A4SA3` at the axis point `|A1S| = x`, in `(0, π)`.
pub fn phi_of_x(sys: &IsoscelesSystem, x: f64) -> f64 {
    sys.half_base().atan2(sys.altitude() - x)
}

/// `x = a cos φ₀ − a sin φ₀ cot φ`.
pub fn x_of_phi(sys: &IsoscelesSystem, phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::Singular(phi));
    }
    let s = phi.sin();
    if s == 0.0 {
        return Err(Error::Singular(phi));
    }
    Ok(sys.altitude() - sys.half_base() * phi.cos() / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    // 30-digit evaluation of a cos φ₀ − a sin φ₀ cot 60° for a = 5, φ₀ = 40°.
    const X_O: f64 = 1.974_654_218_173_492_3;

    #[test]
    fn equilibrium_angles() {
        assert_abs_diff_eq!(isosceles_ft_angle(1.0).unwrap(), PI / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            isosceles_ft_angle(0.5f64.sqrt()).unwrap(),
            PI / 4.0,
            epsilon = 1e-12
        );
        assert_eq!(isosceles_ft_angle(0.5).unwrap(), 0.0);
        assert_eq!(isosceles_ft_angle(0.4), Err(Error::AngleDomain(0.4)));
        assert!(isosceles_ft_angle(f64::NAN).is_err());
    }

    #[test]
    fn ft_x_values() {
        let sys = IsoscelesSystem::example1();
        assert_abs_diff_eq!(sys.ft_x().unwrap(), X_O, epsilon = 1e-13);

        let needle = IsoscelesSystem::new(5.0, 1e-6, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            needle.ft_x().unwrap(),
            4.999_997_113_246_154,
            epsilon = 1e-12
        );

        let right = IsoscelesSystem {
            w2: 0.5f64.sqrt(),
            ..sys
        };
        assert_abs_diff_eq!(
            right.ft_x().unwrap(),
            0.616_284_167_162_193_5,
            epsilon = 1e-13
        );
    }

    #[test]
    fn ft_x_rejects_lemma_violation() {
        let sys = IsoscelesSystem {
            phi0: 61f64.to_radians(),
            ..IsoscelesSystem::example1()
        };
        assert!(matches!(sys.ft_x(), Err(Error::OutOfRegime { .. })));
        let sys = IsoscelesSystem {
            phi0: isosceles_ft_angle(1.0).unwrap(),
            ..IsoscelesSystem::example1()
        };
        assert!(matches!(sys.ft_x(), Err(Error::OutOfRegime { .. })));
    }

    #[test]
    fn phi_map_landmarks() {
        let sys = IsoscelesSystem::example1();
        assert_abs_diff_eq!(phi_of_x(&sys, 0.0), sys.phi0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi_of_x(&sys, sys.altitude()), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(phi_of_x(&sys, X_O), PI / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x_of_phi(&sys, sys.phi0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            x_of_phi(&sys, FRAC_PI_2).unwrap(),
            sys.altitude(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(x_of_phi(&sys, PI / 3.0).unwrap(), X_O, epsilon = 1e-14);
        assert!(x_of_phi(&sys, 0.0).is_err());
        assert!(x_of_phi(&sys, PI).is_err());
    }

    #[test]
    fn force_balance_at_ft_point() {
        for w2 in [0.6, 0.8, 1.0, 1.5, 3.0, 10.0] {
            let sys = IsoscelesSystem {
                w2,
                phi0: 0.2,
                ..IsoscelesSystem::example1()
            };
            let phi = phi_of_x(&sys, sys.ft_x().unwrap());
            assert_abs_diff_eq!(2.0 * w2 * phi.cos() - 1.0, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(IsoscelesSystem::new(0.0, 0.5, 1.0, 1.0).is_err());
        assert!(IsoscelesSystem::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(IsoscelesSystem::new(1.0, FRAC_PI_2, 1.0, 1.0).is_err());
        assert!(IsoscelesSystem::new(1.0, 0.5, -1.0, 1.0).is_err());
        assert!(IsoscelesSystem::new(1.0, 0.5, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn altitude_and_half_base_are_pythagorean(a in 0.01f64..100.0, phi0 in 0.001f64..1.57) {
            let sys = IsoscelesSystem::new(a, phi0, 1.0, 1.0).unwrap();
            let (h, b) = (sys.altitude(), sys.half_base());
            prop_assert!(((h * h + b * b) - a * a).abs() <= 4.0 * f64::EPSILON * a * a);
        }

        #[test]
        fn x_phi_round_trip(a in 0.1f64..20.0, phi0 in 0.01f64..1.56, t in 0.0f64..=2.0) {
            let sys = IsoscelesSystem::new(a, phi0, 1.0, 1.0).unwrap();
            let x = t * sys.altitude();
            let phi = phi_of_x(&sys, x);
            prop_assume!((phi - FRAC_PI_2).abs() > 1e-9);
            let back = x_of_phi(&sys, phi).unwrap();
            prop_assert!((back - x).abs() < 1e-12 * a.max(1.0), "x = {x}, back = {back}");
        }
    }
}
