//! Exact computation of the envelope of lines meeting two skew lines and
//! tangent to a quadric, classification of the resulting (2,2)-curves, and
//! common tangents to two lines and two spheres.

pub mod classify22;
pub mod configurations;
pub mod envelope;
pub mod error;
pub mod fiberfamilies;
pub mod input;
pub mod linalg;
pub mod plot;
pub mod poly;
pub mod projgeom;
pub mod quadrics;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{parse_rational, Rational, Scalar};
