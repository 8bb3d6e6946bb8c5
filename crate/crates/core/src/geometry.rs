//! Planar vectors and weighted triangles.

use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    /// Unit vector pointing from `self` towards `to`, `None` if the points coincide.
    pub fn unit_towards(self, to: Point2) -> Option<Point2> {
        let d = to - self;
        let n = d.norm();
        if n == 0.0 {
            None
        } else {
            Some(d * (1.0 / n))
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Relative tolerance of the non-collinearity test: `|2·area| ≥ COLLINEAR_TOL · diameter²`.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Three terminals `A1, A2, A3` with positive weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedTriangle {
    vertices: [Point2; 3],
    weights: [f64; 3],
}

impl WeightedTriangle {
    /// Validates finiteness, positive weights, distinct vertices and non-collinearity.
    pub fn new(vertices: [Point2; 3], weights: [f64; 3]) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "weight",
                value: *w,
                reason: "weights must be finite and strictly positive",
            });
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Degenerate("non-finite vertex coordinate"));
        }
        let tri = Self { vertices, weights };
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if vertices[i] == vertices[j] {
                return Err(Error::Degenerate("coincident vertices"));
            }
        }
        let d = tri.diameter();
        if tri.twice_signed_area().abs() < COLLINEAR_TOL * d * d {
            return Err(Error::Degenerate("collinear vertices"));
        }
        Ok(tri)
    }

    pub fn vertices(&self) -> &[Point2; 3] {
        &self.vertices
    }

    pub fn weights(&self) -> &[f64; 3] {
        &self.weights
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn twice_signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        (b - a).cross(c - a)
    }

    /// Longest side.
    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.vertices;
        a.distance(b).max(b.distance(c)).max(a.distance(c))
    }

    /// Interior angle at vertex `i`, radians.
    pub fn angle_at(&self, i: usize) -> f64 {
        let p = self.vertices[i];
        let u = self.vertices[(i + 1) % 3] - p;
        let v = self.vertices[(i + 2) % 3] - p;
        u.cross(v).abs().atan2(u.dot(v))
    }

    pub fn weighted_centroid(&self) -> Point2 {
        let total: f64 = self.weights.iter().sum();
        self.vertices
            .iter()
            .zip(self.weights)
            .fold(Point2::ORIGIN, |acc, (p, w)| acc + *p * w)
            * (1.0 / total)
    }
}
