//! Curve arithmetic over exact and truncated rings, division polynomials,
//! torsion constructions, and the formal group.

pub mod divpoly;
pub mod formal;
mod point;
pub mod scalar;
pub mod torsion;

pub use divpoly::{division_polynomial, division_polynomial_numeric, DivisionPolynomial, ZaxPoly};
pub use formal::{formal_parameter, FormalPoint};
pub use point::{has_exact_order, Curve, Point};
pub use scalar::{LocalValuation, Scalar};
