//! The derivative-angle profile: the angle between C'(t) and the polyline
//! derivative L'(t) under the uniform parameterisation.

use crate::curve::{BezierSegment, Polyline};
use crate::geometry::angle_between;
use crate::numeric::golden_max;
use crate::{Error, Result, Scalar};

/// Sampled derivative angles with their supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleProfile<T> {
    /// `(t, theta(t))` at the grid parameters, breakpoints taking the larger one-sided angle.
    pub samples: Vec<(T, T)>,
    /// Largest angle found, after refinement between samples.
    pub max_theta: T,
    pub argmax_t: T,
}

fn theta_on_edge<T: Scalar>(seg: &BezierSegment<T>, polyline: &Polyline<T>, edge: usize, t: T) -> Result<T> {
    let d = seg.derivative(t);
    let scale = seg.control_points().iter().fold(T::zero(), |m, p| m.max(p.max_abs()));
    if d.norm() <= T::tol(1e-14) * (T::one() + scale) {
        return Err(Error::Regularity { t: seg.global_param(t).as_f64() });
    }
    angle_between(d, polyline.edge_derivative(edge))
}

/// Samples `theta(t)` on `grid_size` uniform parameters plus every polyline breakpoint
/// (evaluated one-sidedly on both adjacent edges) and refines the largest value on each edge.
pub fn derivative_angle_profile<T: Scalar>(
    seg: &BezierSegment<T>,
    polyline: &Polyline<T>,
    grid_size: usize,
) -> Result<AngleProfile<T>> {
    if grid_size < 2 {
        return Err(Error::Domain(format!("grid size must be at least 2, got {grid_size}")));
    }
    let m = polyline.edge_count();
    let mm = T::from_count(m);
    let last = grid_size - 1;
    let grid: Vec<T> = (0..grid_size)
        .map(|k| if k == last { T::one() } else { T::from_count(k) / T::from_count(last) })
        .collect();

    let mut samples = Vec::with_capacity(grid_size);
    for &t in &grid {
        let scaled = t * mm;
        let j = scaled.floor().to_usize().unwrap_or(0);
        let at_break = scaled == scaled.floor() && j > 0 && j < m;
        let theta = if at_break {
            theta_on_edge(seg, polyline, j - 1, t)?.max(theta_on_edge(seg, polyline, j, t)?)
        } else {
            theta_on_edge(seg, polyline, polyline.edge_at(t), t)?
        };
        samples.push((t, theta));
    }

    let mut max_theta = T::zero();
    let mut argmax_t = T::zero();
    for edge in 0..m {
        let lo = T::from_count(edge) / mm;
        let hi = if edge + 1 == m { T::one() } else { T::from_count(edge + 1) / mm };
        let mut params: Vec<T> = vec![lo];
        params.extend(grid.iter().copied().filter(|&t| t > lo && t < hi));
        params.push(hi);
        let values = params
            .iter()
            .map(|&t| theta_on_edge(seg, polyline, edge, t))
            .collect::<Result<Vec<T>>>()?;
        let (k, best) = values
            .iter()
            .copied()
            .enumerate()
            .fold((0, T::neg_infinity()), |b, c| if c.1 > b.1 { c } else { b });
        let a = params[k.saturating_sub(1)];
        let b = params[(k + 1).min(params.len() - 1)];
        let (tr, vr) = golden_max(
            |t| theta_on_edge(seg, polyline, edge, t).unwrap_or(T::zero()),
            a,
            b,
            T::tol(1e-12),
            120,
        );
        let (t_best, v_best) = if vr > best { (tr, vr) } else { (params[k], best) };
        if v_best > max_theta {
            max_theta = v_best;
            argmax_t = t_best;
        }
    }
    Ok(AngleProfile {
        samples,
        max_theta,
        argmax_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec3;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn line_has_zero_profile() {
        let l = BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(2., 1., 3.)]).unwrap();
        let prof = derivative_angle_profile(&l, &l.control_polygon().unwrap(), 33).unwrap();
        assert_eq!(prof.max_theta, 0.0);
    }

    #[test]
    fn quadratic_profile() {
        let q = BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(1., 1., 0.), Vec3::new(2., 0., 0.)]).unwrap();
        let prof = derivative_angle_profile(&q, &q.control_polygon().unwrap(), 33).unwrap();
        assert_eq!(prof.samples[0], (0.0, 0.0));
        let (t_mid, th_mid) = prof.samples[16];
        assert_eq!(t_mid, 0.5);
        assert!((th_mid - FRAC_PI_4).abs() < 1e-15);
        assert!((prof.max_theta - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn rejects_tiny_grid() {
        let q = BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(1., 1., 0.)]).unwrap();
        assert!(derivative_angle_profile(&q, &q.control_polygon().unwrap(), 1).is_err());
    }

    #[test]
    fn cusp_is_a_regularity_error() {
        // C'(1/2) = 0 for this symmetric cubic
        let c = BezierSegment::new(vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(1., 1., 0.),
            Vec3::new(0., 1., 0.),
            Vec3::new(1., 0., 0.),
        ])
        .unwrap();
        assert!(c.derivative(0.5).norm() < 1e-15);
        let poly = c.control_polygon().unwrap();
        assert!(matches!(derivative_angle_profile(&c, &poly, 33), Err(Error::Regularity { .. })));
    }
}
