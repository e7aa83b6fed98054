//! The two sufficient conditions, checked directly on a sub-curve and its polygon.

use serde::Serialize;

use crate::curve::{BezierSegment, Polyline, SampledSegment};
use crate::geometry::{derivative_angle_profile, total_curvature};
use crate::{Error, Result, Scalar};

/// Relative tolerance on the tangential residual of a projection.
pub const TOL_ORTH: f64 = 1e-7;
/// Safety margin on the right-angle comparison.
pub const TOL_MARGIN: f64 = 1e-9;

/// Polygon containment in the open pipe section (endpoints exempt).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition1 {
    pub passed: bool,
    /// `r` minus the largest distance of a sampled polygon point to its foot on the curve.
    pub clearance: f64,
    /// Largest tangential residual divided by its tolerance (`< 1` inside).
    pub worst_residual: f64,
    /// Global parameter of the worst polygon sample's foot point.
    pub worst_t: f64,
    pub samples: usize,
}

/// Turning bound `T_kappa(L) + max theta < pi/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition2 {
    pub passed: bool,
    pub total_curvature: f64,
    pub max_theta: f64,
    /// `total_curvature + max_theta`.
    pub value: f64,
    /// `pi/2 - tol_margin - value`; positive exactly when the condition holds.
    pub margin: f64,
}

/// Both conditions on one sub-interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub sub_interval: (f64, f64),
    pub condition1: Condition1,
    pub condition2: Condition2,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.condition1.passed && self.condition2.passed
    }
}

fn check_endpoints<T: Scalar>(polyline: &Polyline<T>, seg: &BezierSegment<T>) -> Result<()> {
    if polyline.start() != seg.start() || polyline.end() != seg.end() {
        return Err(Error::Domain("polygon endpoints must coincide with the curve endpoints".into()));
    }
    Ok(())
}

/// Samples every polygon vertex and `edge_samples` interior points per edge, projects each
/// onto the curve (`coarse` scan samples), and requires distance `< r` with an orthogonal foot.
pub fn check_condition1<T: Scalar>(
    polyline: &Polyline<T>,
    seg: &BezierSegment<T>,
    r: T,
    edge_samples: usize,
    coarse: usize,
) -> Result<Condition1> {
    if !(r > T::zero() && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be finite and positive, got {}", r.as_f64())));
    }
    check_endpoints(polyline, seg)?;
    let sampled = SampledSegment::new(seg, coarse);
    let m = polyline.edge_count();
    let mut worst_dist = T::zero();
    let mut worst_t = seg.global_param(T::zero());
    let mut worst_residual = T::zero();
    let mut samples = 0usize;
    let mut inside = true;
    let steps = edge_samples + 1;
    for j in 0..m {
        let (a, b) = polyline.edge(j);
        for k in 0..steps {
            // the polygon start is exempt; every other vertex is the k = 0 sample of its edge
            if j == 0 && k == 0 {
                continue;
            }
            let q = if k == 0 { a } else { a.lerp(b, T::from_count(k) / T::from_count(steps)) };
            samples += 1;
            let proj = sampled.project(q);
            let tol = T::lit(TOL_ORTH) * (T::one() + q.norm());
            let residual = proj.tangential_residual(seg, q) / tol;
            if proj.distance > worst_dist {
                worst_dist = proj.distance;
                worst_t = seg.global_param(proj.t);
            }
            worst_residual = worst_residual.max(residual);
            if !(proj.distance < r && residual < T::one()) {
                inside = false;
            }
        }
    }
    Ok(Condition1 {
        passed: inside,
        clearance: (r - worst_dist).as_f64(),
        worst_residual: worst_residual.as_f64(),
        worst_t: worst_t.as_f64(),
        samples,
    })
}

/// Computes `T_kappa(L) + max theta` with the angle profile sampled on `grid_size` parameters.
pub fn check_condition2<T: Scalar>(polyline: &Polyline<T>, seg: &BezierSegment<T>, grid_size: usize) -> Result<Condition2> {
    check_endpoints(polyline, seg)?;
    let tk = total_curvature(polyline).total;
    let profile = derivative_angle_profile(seg, polyline, grid_size)?;
    let value = tk + profile.max_theta;
    let margin = T::FRAC_PI_2() - T::lit(TOL_MARGIN) - value;
    Ok(Condition2 {
        passed: margin > T::zero(),
        total_curvature: tk.as_f64(),
        max_theta: profile.max_theta.as_f64(),
        value: value.as_f64(),
        margin: margin.as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::DEFAULT_COARSE_SAMPLES;
    use crate::Vec3;
    use std::f64::consts::PI;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    fn quadratic() -> BezierSegment<f64> {
        BezierSegment::new(vec![v(0., 0., 0.), v(1., 1., 0.), v(2., 0., 0.)]).unwrap()
    }

    #[test]
    fn line_passes_both() {
        let seg = BezierSegment::new(vec![v(0., 0., 0.), v(1., 2., 3.)]).unwrap();
        let poly = seg.control_polygon().unwrap();
        let c1 = check_condition1(&poly, &seg, 0.25, 32, DEFAULT_COARSE_SAMPLES).unwrap();
        assert!(c1.passed);
        assert!((c1.clearance - 0.25).abs() < 1e-12);
        let c2 = check_condition2(&poly, &seg, 65).unwrap();
        assert!(c2.passed);
        assert_eq!(c2.value, 0.0);
    }

    #[test]
    fn raw_quadratic_fails_both() {
        let seg = quadratic();
        let poly = seg.control_polygon().unwrap();
        let c1 = check_condition1(&poly, &seg, 0.4, 32, DEFAULT_COARSE_SAMPLES).unwrap();
        assert!(!c1.passed);
        // apex (1,1) sits 0.5 above the curve apex (1, 0.5)
        assert!((c1.clearance + 0.1).abs() < 1e-6, "{}", c1.clearance);
        let c2 = check_condition2(&poly, &seg, 257).unwrap();
        assert!(!c2.passed);
        assert!((c2.value - 3.0 * PI / 4.0).abs() < 1e-9);
        assert!((c2.total_curvature - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_passes_after_two_subdivisions() {
        let res = quadratic().subdivide(2, 1 << 10).unwrap();
        for (seg, poly) in res.pairs() {
            let c1 = check_condition1(poly, seg, 0.4, 32, DEFAULT_COARSE_SAMPLES).unwrap();
            assert!(c1.passed, "{c1:?}");
            assert!(c1.clearance > 0.35);
            let c2 = check_condition2(poly, seg, 257).unwrap();
            assert!(c2.passed, "{c2:?}");
        }
    }

    #[test]
    fn mismatched_endpoints_are_rejected() {
        let seg = quadratic();
        let poly = Polyline::new(vec![v(0., 0., 0.), v(1., 1., 0.), v(2., 0.1, 0.)]).unwrap();
        assert!(check_condition1(&poly, &seg, 0.4, 8, 64).is_err());
        assert!(check_condition2(&poly, &seg, 9).is_err());
    }
}
