//! Nearest-parameter search on a Bézier segment: coarse scan plus golden-section
//! refinement, finished with a safeguarded Newton step on the orthogonality residual.

use crate::curve::BezierSegment;
use crate::numeric::{golden_min, local_minima, uniform_grid};
use crate::{Point3, Scalar, Vec3};

/// Default number of coarse samples per query.
pub const DEFAULT_COARSE_SAMPLES: usize = 256;

/// Result of projecting a point onto a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection<T> {
    /// Local parameter of the foot point.
    pub t: T,
    pub point: Point3<T>,
    pub distance: T,
}

impl<T: Scalar> Projection<T> {
    /// `|(q - C(t)) . C'(t)| / |C'(t)|`: zero when `q` lies in the normal plane at `t`.
    pub fn tangential_residual(&self, seg: &BezierSegment<T>, q: Point3<T>) -> T {
        let d = seg.derivative(self.t);
        let n = d.norm();
        if n == T::zero() {
            return T::infinity();
        }
        ((q - self.point).dot(d) / n).abs()
    }
}

/// A segment with cached coarse samples, reused across many projection queries.
#[derive(Debug, Clone)]
pub struct SampledSegment<T> {
    seg: BezierSegment<T>,
    params: Vec<T>,
    points: Vec<Point3<T>>,
    /// Half the largest parameter gap times a speed bound: every curve point is this close to a sample.
    reach: T,
}

impl<T: Scalar> SampledSegment<T> {
    pub fn new(seg: &BezierSegment<T>, coarse: usize) -> Self {
        let params = uniform_grid::<T>(coarse.max(2));
        let points = match power_basis(seg) {
            Some(coef) => params.iter().map(|&t| horner(&coef, t)).collect(),
            None => params.iter().map(|&t| seg.at(t)).collect(),
        };
        let speed = seg
            .hodograph()
            .control_points()
            .iter()
            .fold(T::zero(), |m, p| m.max(p.norm()));
        let gap = params.windows(2).fold(T::zero(), |m, w| m.max(w[1] - w[0]));
        Self {
            seg: seg.clone(),
            params,
            points,
            reach: speed * gap * T::lit(0.5),
        }
    }

    /// Certified lower bound on the distance from `q` to the segment.
    pub fn distance_lower_bound(&self, q: Point3<T>) -> T {
        let nearest = self.points.iter().map(|p| p.distance(q)).fold(T::infinity(), T::min);
        (nearest - self.reach).max(T::zero())
    }

    pub fn segment(&self) -> &BezierSegment<T> {
        &self.seg
    }

    pub fn samples(&self) -> impl Iterator<Item = (T, Point3<T>)> + '_ {
        self.params.iter().copied().zip(self.points.iter().copied())
    }

    /// Global nearest point of the segment to `q`.
    pub fn project(&self, q: Point3<T>) -> Projection<T> {
        let k = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, (*p - q).norm_sq()))
            .fold((0, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best })
            .0;
        self.refine(q, k)
    }

    /// Every refined local minimum of the distance from `q`, nearest first.
    pub fn local_projections(&self, q: Point3<T>) -> Vec<Projection<T>> {
        let dists: Vec<T> = self.points.iter().map(|p| p.distance(q)).collect();
        let mut out: Vec<Projection<T>> = local_minima(&dists)
            .into_iter()
            .map(|k| self.refine(q, k))
            .collect();
        out.sort_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap_or(std::cmp::Ordering::Equal));
        out
    }

    fn refine(&self, q: Point3<T>, k: usize) -> Projection<T> {
        let last = self.params.len() - 1;
        let lo = self.params[k.saturating_sub(1)];
        let hi = self.params[(k + 1).min(last)];
        let seg = &self.seg;
        let d0 = self.points[k].distance(q);
        // a minimum on the boundary with the distance growing inwards is exact
        if k == 0 || k == last {
            let (t, point, sign) = if k == 0 {
                (T::zero(), seg.start(), T::one())
            } else {
                (T::one(), seg.end(), -T::one())
            };
            if (point - q).dot(seg.derivative(t)) * sign >= T::zero() {
                return Projection {
                    t,
                    point,
                    distance: point.distance(q),
                };
            }
        }
        let ends = self.points[k.saturating_sub(1)]
            .distance(q)
            .min(self.points[(k + 1).min(last)].distance(q));
        if let Some(p) = newton_foot(seg, q, self.params[k], lo, hi, d0.min(ends)) {
            return p;
        }
        let (mut t, mut dist) = golden_min(|t| seg.at(t).distance(q), lo, hi, T::tol(1e-12), 200);
        for _ in 0..3 {
            match newton_step(seg, q, t, lo, hi) {
                Some((cand, cd)) if cd <= dist => {
                    t = cand;
                    dist = cd;
                }
                _ => break,
            }
        }
        Projection {
            t,
            point: seg.at(t),
            distance: dist,
        }
    }
}

/// One Newton step on `g(t) = (C(t) - q) . C'(t)`, kept inside `[lo, hi]`.
fn newton_step<T: Scalar>(seg: &BezierSegment<T>, q: Point3<T>, t: T, lo: T, hi: T) -> Option<(T, T)> {
    let cand = newton_target(seg, q, t, lo, hi)?;
    Some((cand, seg.at(cand).distance(q)))
}

fn newton_target<T: Scalar>(seg: &BezierSegment<T>, q: Point3<T>, t: T, lo: T, hi: T) -> Option<T> {
    newton_move(seg, q, t, lo, hi).map(|(cand, _)| cand)
}

/// Newton target together with the length of the step in space, `|dt| |C'|`.
fn newton_move<T: Scalar>(seg: &BezierSegment<T>, q: Point3<T>, t: T, lo: T, hi: T) -> Option<(T, T)> {
    let (c, d1, d2) = seg.jet(t);
    let g = (c - q).dot(d1);
    let dg = d1.norm_sq() + (c - q).dot(d2);
    if !(dg > T::zero()) {
        return None;
    }
    let cand = t - g / dg;
    (cand >= lo && cand <= hi).then(|| (cand, (cand - t).abs() * d1.norm()))
}

/// Power-basis coefficients for Horner evaluation of the coarse samples (low degree only,
/// where the conversion loses a few ulps at most).
fn power_basis<T: Scalar>(seg: &BezierSegment<T>) -> Option<Vec<Point3<T>>> {
    let p = seg.control_points();
    let n = p.len() - 1;
    if n > 10 {
        return None;
    }
    let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
    Some(
        (0..=n)
            .map(|k| {
                let mut acc = Vec3::zero();
                for (i, pi) in p.iter().enumerate().take(k + 1) {
                    let c = T::from_count(binom(k, i));
                    acc = if (k - i) % 2 == 0 { acc + *pi * c } else { acc - *pi * c };
                }
                acc * T::from_count(binom(n, k))
            })
            .collect(),
    )
}

fn horner<T: Scalar>(coef: &[Point3<T>], t: T) -> Point3<T> {
    coef.iter().rev().fold(Vec3::zero(), |acc, c| acc * t + *c)
}

/// Newton iteration from the best coarse sample; `None` unless it converges to a point
/// no farther than `bound` (the best of the starting sample and the bracket ends).
fn newton_foot<T: Scalar>(seg: &BezierSegment<T>, q: Point3<T>, t0: T, lo: T, hi: T, bound: T) -> Option<Projection<T>> {
    let step_tol = T::tol(1e-13);
    // on short sub-curves rounding in g keeps |dt| above step_tol; a step that moves
    // the foot by a rounding-sized distance is converged as well
    let space_tol = T::lit(16.0) * T::epsilon() * (T::one() + q.max_abs());
    let mut t = t0;
    for _ in 0..12 {
        let (cand, moved) = newton_move(seg, q, t, lo, hi)?;
        let done = (cand - t).abs() <= step_tol || moved <= space_tol;
        t = cand;
        if done {
            let point = seg.at(t);
            let distance = point.distance(q);
            return (distance <= bound).then_some(Projection { t, point, distance });
        }
    }
    None
}

/// Nearest parameter of `seg` to `q` using `coarse` initial samples.
pub fn closest_parameter<T: Scalar>(seg: &BezierSegment<T>, q: Point3<T>, coarse: usize) -> Projection<T> {
    SampledSegment::new(seg, coarse).project(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec3;

    fn quadratic() -> BezierSegment<f64> {
        BezierSegment::new(vec![Vec3::new(0., 0., 0.), Vec3::new(1., 1., 0.), Vec3::new(2., 0., 0.)]).unwrap()
    }

    #[test]
    fn apex_projection() {
        let q = quadratic();
        let pr = closest_parameter(&q, Vec3::new(1., 1., 0.), DEFAULT_COARSE_SAMPLES);
        assert!((pr.t - 0.5).abs() < 1e-9);
        assert!((pr.distance - 0.5).abs() < 1e-12);
        assert!(pr.tangential_residual(&q, Vec3::new(1., 1., 0.)) < 1e-9);
    }

    #[test]
    fn on_curve_points_project_to_themselves() {
        let q = quadratic();
        let s = SampledSegment::new(&q, 256);
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let pr = s.project(q.at(t));
            assert!((pr.t - t).abs() < 1e-10, "t={t} got {}", pr.t);
            assert!(pr.distance < 1e-12);
        }
    }

    #[test]
    fn endpoint_clamping() {
        let q = quadratic();
        let pr = closest_parameter(&q, Vec3::new(-1., -0.5, 0.), 256);
        assert_eq!(pr.t, 0.0);
    }

    #[test]
    fn lower_bound_is_below_the_distance() {
        let q = quadratic();
        let s = SampledSegment::new(&q, 16);
        for p in [Vec3::new(1., 0.2, 0.), Vec3::new(3., 1., 2.), Vec3::new(0.4, 0.3, -0.1)] {
            let exact = SampledSegment::new(&q, 4096).project(p).distance;
            let lb = s.distance_lower_bound(p);
            assert!(lb <= exact && lb > exact - 0.2, "{lb} vs {exact}");
        }
    }

    #[test]
    fn two_equal_minima_are_both_found() {
        // a point far below the symmetric arch is equally near both ends
        let q = quadratic();
        let s = SampledSegment::new(&q, 256);
        let mins = s.local_projections(Vec3::new(1., -5., 0.));
        assert!(mins.len() >= 2);
        assert!((mins[0].distance - mins[1].distance).abs() < 1e-9);
    }
}
