//! Angles between vectors, exterior angles and total curvature of polylines.

use crate::curve::Polyline;
use crate::{Error, Point3, Result, Scalar, Vec3};

/// Angle in `[0, pi]` between two nonzero vectors, computed as `atan2(|u x v|, u . v)`.
pub fn angle_between<T: Scalar>(u: Vec3<T>, v: Vec3<T>) -> Result<T> {
    if u.max_abs() == T::zero() || v.max_abs() == T::zero() {
        return Err(Error::Domain("angle with a zero vector".into()));
    }
    // normalising first keeps the cross and dot products on the same scale
    let u = u / u.norm();
    let v = v / v.norm();
    Ok(u.cross(v).norm().atan2(u.dot(v)))
}

/// Exterior angles of a polyline and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineCurvature<T> {
    pub exterior_angles: Vec<T>,
    pub total: T,
}

/// Total curvature (sum of exterior angles) of the chain through `points`.
pub fn total_curvature_of_points<T: Scalar>(points: &[Point3<T>]) -> Result<PolylineCurvature<T>> {
    if points.len() < 2 {
        return Err(Error::Domain("total curvature needs at least 2 vertices".into()));
    }
    if let Some(j) = points.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::Domain(format!("vertices {j} and {} coincide", j + 1)));
    }
    let exterior_angles = points
        .windows(3)
        .map(|w| angle_between(w[1] - w[0], w[2] - w[1]))
        .collect::<Result<Vec<T>>>()?;
    let total = exterior_angles.iter().fold(T::zero(), |a, &b| a + b);
    Ok(PolylineCurvature {
        exterior_angles,
        total,
    })
}

/// Total curvature of a polyline.
pub fn total_curvature<T: Scalar>(polyline: &Polyline<T>) -> PolylineCurvature<T> {
    total_curvature_of_points(polyline.vertices()).expect("polyline vertices are distinct")
}

/// `sum eta(v_i, v_{i+1}) - eta(v_1, v_m)`, nonnegative by the spherical triangle inequality.
pub fn spherical_chain_slack<T: Scalar>(vectors: &[Vec3<T>]) -> Result<T> {
    if vectors.len() < 3 {
        return Err(Error::Domain("a chain needs at least 3 vectors".into()));
    }
    let mut sum = T::zero();
    for w in vectors.windows(2) {
        sum = sum + angle_between(w[0], w[1])?;
    }
    Ok(sum - angle_between(vectors[0], vectors[vectors.len() - 1])?)
}
