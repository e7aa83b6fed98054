//! Curvature extremum search and curvature reports.

use crate::curve::{BezierSegment, CompositeBezier, Polyline};
use crate::geometry::{total_curvature, PolylineCurvature};
use crate::numeric::{golden_max, uniform_grid};
use crate::{Error, Result, Scalar};

/// Default number of coarse samples for the curvature search.
pub const CURVATURE_SAMPLES: usize = 1024;

/// Factor applied to the sampled curvature maximum before it enters the pipe radius.
pub const KAPPA_SAFETY_FACTOR: f64 = 1.02;

/// `|C' x C''| / |C'|^3` at local parameter `t`.
pub fn curvature_at<T: Scalar>(seg: &BezierSegment<T>, t: T) -> Option<T> {
    let d1 = seg.derivative(t);
    let n = d1.norm();
    if n == T::zero() {
        return None;
    }
    Some(d1.cross(seg.second_derivative(t)).norm() / (n * n * n))
}

/// Sampled-and-refined curvature maximum of one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureMax<T> {
    pub kappa_max: T,
    /// Local parameter of the maximiser.
    pub argmax_t: T,
}

/// Maximises curvature by dense sampling followed by golden-section refinement to 1e-10 in t.
///
/// The value is not inflated; see [`KAPPA_SAFETY_FACTOR`].
pub fn max_curvature<T: Scalar>(seg: &BezierSegment<T>) -> Result<CurvatureMax<T>> {
    max_curvature_with(seg, CURVATURE_SAMPLES)
}

pub fn max_curvature_with<T: Scalar>(seg: &BezierSegment<T>, samples: usize) -> Result<CurvatureMax<T>> {
    if seg.degree() < 2 {
        return Ok(CurvatureMax {
            kappa_max: T::zero(),
            argmax_t: T::zero(),
        });
    }
    let grid = uniform_grid::<T>(samples.max(2));
    let scale = seg.control_points().iter().fold(T::zero(), |m, p| m.max(p.max_abs()));
    let floor = T::tol(1e-14) * (T::one() + scale);
    let mut values = Vec::with_capacity(grid.len());
    for &t in &grid {
        if seg.derivative(t).norm() <= floor {
            return Err(Error::Regularity { t: seg.global_param(t).as_f64() });
        }
        values.push(curvature_at(seg, t).unwrap_or(T::zero()));
    }
    let (k, best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, T::neg_infinity()), |b, c| if c.1 > b.1 { c } else { b });
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    let (tr, vr) = golden_max(|t| curvature_at(seg, t).unwrap_or(T::zero()), lo, hi, T::tol(1e-10), 200);
    Ok(if vr > best {
        CurvatureMax { kappa_max: vr, argmax_t: tr }
    } else {
        CurvatureMax { kappa_max: best, argmax_t: grid[k] }
    })
}

/// Curvature maximum over all segments; `argmax_t` is a global parameter.
pub fn max_curvature_composite<T: Scalar>(curve: &CompositeBezier<T>) -> Result<CurvatureMax<T>> {
    let mut best = CurvatureMax {
        kappa_max: T::zero(),
        argmax_t: T::zero(),
    };
    for seg in curve.segments() {
        let m = max_curvature(seg)?;
        if m.kappa_max > best.kappa_max {
            best = CurvatureMax {
                kappa_max: m.kappa_max,
                argmax_t: seg.global_param(m.argmax_t),
            };
        }
    }
    Ok(best)
}

/// Curvature of a segment paired with the exterior angles of a polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport<T> {
    pub kappa_max: T,
    pub argmax_t: T,
    pub total_curvature_polyline: T,
    pub exterior_angles: Vec<T>,
}

pub fn curvature_report<T: Scalar>(seg: &BezierSegment<T>, polyline: &Polyline<T>) -> Result<CurvatureReport<T>> {
    let m = max_curvature(seg)?;
    let PolylineCurvature { exterior_angles, total } = total_curvature(polyline);
    Ok(CurvatureReport {
        kappa_max: m.kappa_max,
        argmax_t: m.argmax_t,
        total_curvature_polyline: total,
        exterior_angles,
    })
}
