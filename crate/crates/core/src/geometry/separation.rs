//! Minimum separation distance and end radius of a composite curve.
//!
//! Both searches work on a uniform sample of the global parameter. Near pairs are
//! excluded by walking away from a sample while the chord length still grows: the
//! excluded run ends at the first local maximum of the distance, and never covers
//! fewer than [`MIN_EXCLUDED_STEPS`] samples.

use crate::curve::CompositeBezier;
use crate::numeric::{golden_min, uniform_grid};
use crate::{Error, Point3, Result, Scalar};

/// Default number of global parameter samples.
pub const SEPARATION_SAMPLES: usize = 256;

/// The adjacency band always spans at least this many sampling steps.
pub const MIN_EXCLUDED_STEPS: usize = 4;

/// Distances below this are reported as self-intersections.
pub const SELF_INTERSECTION_TOLERANCE: f64 = 1e-9;

/// Separation result with the pair that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation<T> {
    pub distance: T,
    pub s: T,
    pub t: T,
}

struct Samples<T> {
    params: Vec<T>,
    points: Vec<Point3<T>>,
}

impl<T: Scalar> Samples<T> {
    fn new(curve: &CompositeBezier<T>, count: usize) -> Self {
        let params = uniform_grid::<T>(count.max(2 * MIN_EXCLUDED_STEPS + 2));
        let points = params.iter().map(|&t| curve.at(t)).collect();
        Self { params, points }
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    /// First index past the growing run of distances from sample `i` in direction `step`.
    fn end_of_band(&self, i: usize, forward: bool) -> Option<usize> {
        let n = self.len();
        let at = |k: usize| self.points[i].distance(self.points[k]);
        let mut k = i;
        loop {
            let next = if forward {
                if k + 1 >= n {
                    return None;
                }
                k + 1
            } else {
                if k == 0 {
                    return None;
                }
                k - 1
            };
            let grown = if forward { next - i } else { i - next };
            if at(next) < at(k) && grown > MIN_EXCLUDED_STEPS {
                return Some(k);
            }
            k = next;
        }
    }
}

/// Minimum distance between non-adjacent parts of the curve, `+inf` when none exist.
///
/// Candidates are local minima of `|C(s) - C(t)|` in `t` beyond the adjacency band
/// of `s`, refined by alternating golden-section searches in `s` and `t`.
/// Pairs that end at a curve endpoint are left to [`end_radius`].
pub fn min_separation_distance<T: Scalar>(curve: &CompositeBezier<T>) -> Result<Separation<T>> {
    min_separation_distance_with(curve, SEPARATION_SAMPLES)
}

pub fn min_separation_distance_with<T: Scalar>(curve: &CompositeBezier<T>, samples: usize) -> Result<Separation<T>> {
    let s = Samples::new(curve, samples);
    let n = s.len();
    let mut candidates: Vec<(T, usize, usize)> = Vec::new();
    for i in 1..n - 1 {
        let Some(band) = s.end_of_band(i, true) else { continue };
        let f = |k: usize| s.points[i].distance(s.points[k]);
        for j in band + 1..n - 1 {
            let fj = f(j);
            if fj <= f(j - 1) && fj <= f(j + 1) {
                candidates.push((fj, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut best = Separation {
        distance: T::infinity(),
        s: T::zero(),
        t: T::zero(),
    };
    for &(_, i, j) in candidates.iter().take(16) {
        let (s_lo, s_hi) = (s.params[i - 1], s.params[i + 1]);
        let (t_lo, t_hi) = (s.params[j - 1], s.params[j + 1]);
        let (mut ps, mut pt) = (s.params[i], s.params[j]);
        let mut d = curve.at(ps).distance(curve.at(pt));
        // alternating minimisation converges linearly at a transversal crossing
        for _ in 0..200 {
            let cs = curve.at(ps);
            let (nt, _) = golden_min(|t| cs.distance(curve.at(t)), t_lo, t_hi, T::tol(1e-13), 200);
            pt = nt;
            let ct = curve.at(pt);
            let (ns, nd) = golden_min(|x| curve.at(x).distance(ct), s_lo, s_hi, T::tol(1e-13), 200);
            ps = ns;
            let improved = d - nd;
            d = nd;
            if d < T::lit(SELF_INTERSECTION_TOLERANCE) * T::lit(1e-3) || improved <= T::tol(1e-15) * (T::one() + d) {
                break;
            }
        }
        if d < best.distance {
            best = Separation { distance: d, s: ps, t: pt };
        }
    }
    if best.distance < T::lit(SELF_INTERSECTION_TOLERANCE) {
        return Err(Error::SelfIntersection {
            s: best.s.as_f64(),
            t: best.t.as_f64(),
            distance: best.distance.as_f64(),
        });
    }
    Ok(best)
}

/// Largest radius around each endpoint whose ball meets the curve only in the
/// piece attached to that endpoint; the smaller of the two, `+inf` when the
/// curve never comes back.
pub fn end_radius<T: Scalar>(curve: &CompositeBezier<T>) -> Result<T> {
    end_radius_with(curve, SEPARATION_SAMPLES)
}

pub fn end_radius_with<T: Scalar>(curve: &CompositeBezier<T>, samples: usize) -> Result<T> {
    let s = Samples::new(curve, samples);
    let n = s.len();
    let mut radius = T::infinity();
    for (e, forward) in [(0usize, true), (n - 1, false)] {
        let Some(band) = s.end_of_band(e, forward) else { continue };
        let origin = s.points[e];
        let f = |k: usize| origin.distance(s.points[k]);
        let range: Vec<usize> = if forward { (band + 1..n).collect() } else { (0..band).rev().collect() };
        for &k in &range {
            let fk = f(k);
            let prev = if forward { k - 1 } else { k + 1 };
            let next = if forward { k + 1 } else { k.wrapping_sub(1) };
            let is_min = fk <= f(prev) && (next >= n || fk <= f(next));
            if !is_min {
                continue;
            }
            let lo = s.params[k.saturating_sub(1)];
            let hi = s.params[(k + 1).min(n - 1)];
            let (_, d) = golden_min(|t| origin.distance(curve.at(t)), lo, hi, T::tol(1e-13), 200);
            radius = radius.min(d.min(fk));
        }
    }
    if radius < T::lit(SELF_INTERSECTION_TOLERANCE) {
        return Err(Error::SelfIntersection {
            s: 0.0,
            t: 1.0,
            distance: radius.as_f64(),
        });
    }
    Ok(radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::BezierSegment;
    use crate::Vec3;

    fn seg(pts: &[[f64; 3]]) -> BezierSegment<f64> {
        BezierSegment::new(pts.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect()).unwrap()
    }

    /// Two parallel lines `gap` apart joined by a cubic U-turn.
    pub(crate) fn u_shape(gap: f64) -> CompositeBezier<f64> {
        let k = 4.0 / 3.0 * gap / 2.0;
        CompositeBezier::new(vec![
            seg(&[[0., 0., 0.], [2., 0., 0.]]),
            seg(&[[2., 0., 0.], [2. + k, 0., 0.], [2. + k, gap, 0.], [2., gap, 0.]]),
            seg(&[[2., gap, 0.], [0., gap, 0.]]),
        ])
        .unwrap()
    }

    #[test]
    fn line_is_unbounded() {
        let c = CompositeBezier::single(seg(&[[0., 0., 0.], [1., 1., 0.]])).unwrap();
        assert_eq!(min_separation_distance(&c).unwrap().distance, f64::INFINITY);
        assert_eq!(end_radius(&c).unwrap(), f64::INFINITY);
    }

    #[test]
    fn u_shape_gap() {
        let d = min_separation_distance(&u_shape(1.0)).unwrap();
        assert!((d.distance - 1.0).abs() < 1e-6, "{d:?}");
        let half = min_separation_distance(&u_shape(0.5)).unwrap();
        assert!((half.distance - 0.5).abs() < 1e-6);
    }

    #[test]
    fn hook_end_radius() {
        let hook = CompositeBezier::single(seg(&[[0., 0., 0.], [2., 0., 0.], [1., 0.2, 0.], [0., 0.2, 0.]])).unwrap();
        let r = end_radius(&hook).unwrap();
        assert!((r - 0.2).abs() < 0.01, "r_end = {r}");
    }

    #[test]
    fn crossing_is_detected() {
        // planar loop whose middle passes back over its own track
        let c = CompositeBezier::single(seg(&[[0., 0., 0.], [3., 3., 0.], [-1., 3., 0.], [2., 0., 0.]])).unwrap();
        assert!(matches!(min_separation_distance(&c), Err(Error::SelfIntersection { .. })));
    }
}
