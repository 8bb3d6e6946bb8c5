//! Weighted Fermat-Torricelli points of planar triangles and the frictionless
//! knot that oscillates through the Fermat-Torricelli point of an isosceles
//! triangle when released from the apex.
//!
//! Lengths, forces and times are in consistent units with the gravitational
//! constant set to 1, so a string carrying weight `w` pulls with tension `w`.
//! Angles are radians everywhere in this crate.

pub mod analysis;
pub mod dynamics;
mod error;
pub mod fermat;
pub mod fit;
pub mod geometry;
pub mod interp;
pub mod isosceles;
pub mod quadrature;

pub use error::{Error, Result};
pub use fermat::{balance_residual, classify_case, objective, weiszfeld, FtCase, FtResult};
pub use geometry::{Point2, WeightedTriangle};
pub use isosceles::{isosceles_ft_angle, isosceles_ft_x, phi_of_x, x_of_phi, IsoscelesSystem};
