//! Sampled symmetric Hausdorff distance between a polyline and a Bézier segment.

use crate::curve::{BezierSegment, Polyline, SampledSegment, SubdivisionResult, DEFAULT_COARSE_SAMPLES};
use crate::numeric::{golden_max, uniform_grid};
use crate::Scalar;

fn refine_max<T: Scalar, F: FnMut(T) -> T>(grid: &[T], values: &[T], mut f: F) -> T {
    let (k, mut best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, T::neg_infinity()), |b, c| if c.1 > b.1 { c } else { b });
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    let (_, v) = golden_max(&mut f, lo, hi, T::tol(1e-12), 120);
    if v > best {
        best = v;
    }
    best
}

/// Symmetric sampled Hausdorff distance between `polyline` and `seg`.
///
/// Both one-sided distances are sampled at `samples + 1` parameters and the
/// largest sample is refined by golden-section search.
pub fn hausdorff_estimate<T: Scalar>(polyline: &Polyline<T>, seg: &BezierSegment<T>, samples: usize) -> T {
    let grid = uniform_grid::<T>(samples.max(2));

    let curve_to_poly = |t: T| polyline.distance_to(seg.at(t));
    let values: Vec<T> = grid.iter().map(|&t| curve_to_poly(t)).collect();
    let h1 = refine_max(&grid, &values, curve_to_poly);

    let sampled = SampledSegment::new(seg, DEFAULT_COARSE_SAMPLES);
    let poly_to_curve = |u: T| sampled.project(polyline.point_at(u)).distance;
    let values: Vec<T> = grid.iter().map(|&u| poly_to_curve(u)).collect();
    let mut h2 = refine_max(&grid, &values, poly_to_curve);
    for &v in polyline.vertices() {
        h2 = h2.max(sampled.project(v).distance);
    }
    h1.max(h2)
}

/// Largest per-piece Hausdorff estimate over a subdivision.
pub fn subdivision_hausdorff<T: Scalar>(result: &SubdivisionResult<T>, samples: usize) -> T {
    result
        .pairs()
        .map(|(s, p)| hausdorff_estimate(p, s, samples))
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec3;

    #[test]
    fn line_matches_its_polygon() {
        let line = BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(2., 1., 0.)]).unwrap();
        let poly = line.control_polygon().unwrap();
        assert!(hausdorff_estimate(&poly, &line, 32) < 1e-12);
    }

    #[test]
    fn quadratic_apex_gap() {
        let q = BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(1., 1., 0.), Vec3::new(2., 0., 0.)]).unwrap();
        let poly = q.control_polygon().unwrap();
        let h: f64 = hausdorff_estimate(&poly, &q, 64);
        assert!((h - 0.5).abs() < 0.01, "h = {h}");
    }

    #[test]
    fn decreases_under_subdivision() {
        let c = BezierSegment::new(vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(1., 2., 0.5),
            Vec3::new(2., -1., 1.),
            Vec3::new(3., 0.5, 0.),
        ])
        .unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..5 {
            let h = subdivision_hausdorff(&c.subdivide(i, 1 << 22).unwrap(), 32);
            assert!(h < prev);
            prev = h;
        }
    }
}
