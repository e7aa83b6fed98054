//! The pipe radius and the three limits it is the minimum of.

use serde::Serialize;

use crate::curve::CompositeBezier;
use crate::geometry::{end_radius, max_curvature_composite, min_separation_distance, KAPPA_SAFETY_FACTOR};
use crate::{Error, Result, Scalar};

/// Radius of a nonsingular pipe around a curve and the quantities it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipeSpec<T> {
    /// `radius_scale * min(1 / kappa_max, d_min, r_end)`, or a user override.
    pub r: T,
    /// Safety-inflated curvature maximum actually used for `r`.
    pub kappa_max: T,
    /// Curvature maximum before inflation.
    pub kappa_sampled: T,
    /// Global parameter of the curvature maximiser.
    pub kappa_argmax_t: T,
    pub d_min: T,
    pub r_end: T,
    pub radius_scale: T,
    /// True when `r` was supplied by the caller rather than computed.
    pub user_radius: bool,
}

impl<T: Scalar> PipeSpec<T> {
    pub fn is_bounded(&self) -> bool {
        self.r.is_finite()
    }

    /// Replaces the radius with a caller-chosen finite value.
    pub fn with_radius(mut self, r: T) -> Result<Self> {
        if !(r > T::zero() && r.is_finite()) {
            return Err(Error::Domain(format!("radius must be finite and positive, got {}", r.as_f64())));
        }
        self.r = r;
        self.user_radius = true;
        Ok(self)
    }

    /// Finite radius or an error asking for one.
    pub fn finite_radius(&self) -> Result<T> {
        if self.is_bounded() {
            Ok(self.r)
        } else {
            Err(Error::Domain(
                "pipe radius is unbounded for this curve; supply an explicit radius".into(),
            ))
        }
    }

    pub fn to_f64(&self) -> PipeSpec<f64> {
        PipeSpec {
            r: self.r.as_f64(),
            kappa_max: self.kappa_max.as_f64(),
            kappa_sampled: self.kappa_sampled.as_f64(),
            kappa_argmax_t: self.kappa_argmax_t.as_f64(),
            d_min: self.d_min.as_f64(),
            r_end: self.r_end.as_f64(),
            radius_scale: self.radius_scale.as_f64(),
            user_radius: self.user_radius,
        }
    }
}

/// Sampling settings recorded alongside a pipe radius.
pub const PIPE_PROVENANCE: &str = concat!(
    "kappa_max: 1024 samples + golden refinement, inflated by 1.02; ",
    "d_min: 256 global samples, adjacency band = growing-chord run (>= 4 steps), alternating golden refinement; ",
    "r_end: same sampling, first return of the endpoint distance"
);

/// Computes the pipe radius `radius_scale * min(1 / kappa_max, d_min, r_end)`.
pub fn pipe_radius<T: Scalar>(curve: &CompositeBezier<T>, radius_scale: T) -> Result<PipeSpec<T>> {
    if !(radius_scale > T::zero() && radius_scale.is_finite()) {
        return Err(Error::Domain(format!(
            "radius scale must be finite and positive, got {}",
            radius_scale.as_f64()
        )));
    }
    let kappa = max_curvature_composite(curve)?;
    let kappa_max = kappa.kappa_max * T::lit(KAPPA_SAFETY_FACTOR);
    let inv = if kappa_max > T::zero() { T::one() / kappa_max } else { T::infinity() };
    let d_min = min_separation_distance(curve)?.distance;
    let r_end = end_radius(curve)?;
    let r = inv.min(d_min).min(r_end) * radius_scale;
    Ok(PipeSpec {
        r,
        kappa_max,
        kappa_sampled: kappa.kappa_max,
        kappa_argmax_t: kappa.argmax_t,
        d_min,
        r_end,
        radius_scale,
        user_radius: false,
    })
}
