//! Piecewise-linear approximation of Bézier curves with certified ambient isotopy.
//!
//! The library subdivides a composite Bézier curve a precomputed number of times,
//! checks that every sub-control polygon stays inside a nonsingular pipe around its
//! sub-curve and turns by less than a right angle (total curvature plus derivative
//! deviation), and builds the explicit disc-by-disc isotopy carrying the curve onto
//! the polygon.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, which is what the command-line tool and certificates use.

// `!(x > 0)` is used on purpose throughout: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod curve;
pub mod geometry;
pub mod io;
pub mod isotopy;
pub mod pipeline;
pub mod verify;
mod error;
mod numeric;
mod scalar;
mod vector;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use vector::{Point3, Vec3};

/// `f64` point.
pub type Point3d = Point3<f64>;
/// `f64` Bézier segment.
pub type Bezier = curve::BezierSegment<f64>;
/// `f64` composite curve.
pub type Composite = curve::CompositeBezier<f64>;
/// `f64` polyline.
pub type Poly = curve::Polyline<f64>;
