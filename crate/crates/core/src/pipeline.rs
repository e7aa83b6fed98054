//! Subdivision with verification, retrying one level deeper on failure.

use crate::bounds::{composite_bounds, CompositeBounds};
use crate::curve::{CompositeBezier, SubdivisionResult, DEFAULT_SEGMENT_CAP};
use crate::geometry::{pipe_radius, PipeSpec};
use crate::verify::{verify_composite, IsotopyCertificate, Verdict, VerifyConfig};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationOptions {
    /// Replaces the computed pipe radius.
    pub radius: Option<f64>,
    pub radius_scale: f64,
    /// Starting subdivision count instead of `N*`.
    pub iterations: Option<u32>,
    /// Extra subdivisions allowed after a failed verification.
    pub retry_cap: u32,
    /// Largest number of sub-curves that may be produced.
    pub segment_cap: usize,
    pub verify: VerifyConfig,
}

impl Default for ApproximationOptions {
    fn default() -> Self {
        Self {
            radius: None,
            radius_scale: 1.0,
            iterations: None,
            retry_cap: 3,
            segment_cap: DEFAULT_SEGMENT_CAP,
            verify: VerifyConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Approximation<T> {
    pub pipe: PipeSpec<T>,
    pub bounds: CompositeBounds<T>,
    /// Subdivision count the run started from.
    pub start_iterations: u32,
    /// Retries spent beyond the starting count.
    pub retries: u32,
    pub result: SubdivisionResult<T>,
    pub certificate: IsotopyCertificate,
}

impl<T: Scalar> Approximation<T> {
    pub fn passed(&self) -> bool {
        self.certificate.verdict == Verdict::Pass
    }
}

/// The pipe used for approximation: the computed one, a user radius, or for a straight
/// curve (unbounded pipe) the diameter of its control points.
pub fn working_pipe<T: Scalar>(curve: &CompositeBezier<T>, radius: Option<f64>, radius_scale: f64) -> Result<PipeSpec<T>> {
    let pipe = pipe_radius(curve, T::lit(radius_scale))?;
    match radius {
        Some(r) => pipe.with_radius(T::lit(r)),
        None if !pipe.is_bounded() => {
            let d = curve.control_diameter();
            let mut p = pipe.with_radius(d * T::lit(radius_scale))?;
            p.user_radius = false;
            Ok(p)
        }
        None => Ok(pipe),
    }
}

/// Runs the full approximation: pipe radius, `N*`, subdivision and verification with retries.
pub fn approximate<T: Scalar>(curve: &CompositeBezier<T>, options: &ApproximationOptions) -> Result<Approximation<T>> {
    let pipe = working_pipe(curve, options.radius, options.radius_scale)?;
    let r = pipe.finite_radius()?;
    let bounds = composite_bounds(curve, r)?;
    let start = options.iterations.unwrap_or(bounds.n_star);
    let mut retries = 0;
    loop {
        let iterations = start + retries;
        let result = curve.subdivide(iterations, options.segment_cap)?;
        let mut certificate = verify_composite(curve, &result, &pipe, &options.verify)?;
        certificate.bounds = Some(bounds.to_f64());
        if certificate.verdict == Verdict::Pass || retries >= options.retry_cap {
            return Ok(Approximation {
                pipe,
                bounds,
                start_iterations: start,
                retries,
                result,
                certificate,
            });
        }
        retries += 1;
        if start.checked_add(retries).is_none() {
            return Err(Error::Domain("iteration count overflow".into()));
        }
    }
}
