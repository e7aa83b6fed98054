//! Certified lower bound on min |C'(t)| from the convex hulls of hodograph pieces.

use crate::curve::BezierSegment;
use crate::{Error, Point3, Result, Scalar, Vec3};

/// Closest point to the origin on segment `[a, b]`.
fn closest_on_segment<T: Scalar>(a: Point3<T>, b: Point3<T>) -> Point3<T> {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 == T::zero() {
        return a;
    }
    let u = (-a.dot(d) / len2).max(T::zero()).min(T::one());
    a + d * u
}

/// Closest point to the origin on triangle `abc` (Voronoi-region walk).
fn closest_on_triangle<T: Scalar>(a: Point3<T>, b: Point3<T>, c: Point3<T>) -> Point3<T> {
    let zero = T::zero();
    let ab = b - a;
    let ac = c - a;
    if ab.cross(ac).norm_sq() <= T::epsilon() * ab.norm_sq() * ac.norm_sq() {
        // degenerate: the nearest point lies on one of the edges
        let cands = [closest_on_segment(a, b), closest_on_segment(b, c), closest_on_segment(a, c)];
        return cands
            .into_iter()
            .fold(a, |best, p| if p.norm_sq() < best.norm_sq() { p } else { best });
    }
    let ap = -a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= zero && d2 <= zero {
        return a;
    }
    let bp = -b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= zero && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= zero && d1 >= zero && d3 <= zero {
        return a + ab * (d1 / (d1 - d3));
    }
    let cp = -c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= zero && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= zero && d2 >= zero && d6 <= zero {
        return a + ac * (d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= zero && (d4 - d3) >= zero && (d5 - d6) >= zero {
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = T::one() / (va + vb + vc);
    a + ab * (vb * denom) + ac * (vc * denom)
}

/// Lower bound on the distance from the origin to the convex hull of `points`.
///
/// The nearest hull point is found by enumerating point triples; the returned value is
/// the separating-plane bound `min_j <P_j, x/|x|>`, clamped at zero, which certifies it.
pub fn hull_distance_lower_bound<T: Scalar>(points: &[Point3<T>]) -> T {
    let n = points.len();
    let mut best = points[0];
    let mut consider = |p: Point3<T>| {
        if p.norm_sq() < best.norm_sq() {
            best = p;
        }
    };
    for i in 0..n {
        consider(points[i]);
        for j in i + 1..n {
            consider(closest_on_segment(points[i], points[j]));
            for k in j + 1..n {
                consider(closest_on_triangle(points[i], points[j], points[k]));
            }
        }
    }
    let Some(dir) = best.normalized() else {
        return T::zero();
    };
    points
        .iter()
        .map(|p| p.dot(dir))
        .fold(T::infinity(), T::min)
        .max(T::zero())
}

/// Subdivision depth limit for [`min_derivative_norm`].
pub const SIGMA_MAX_DEPTH: usize = 12;

/// Certified lower bound `sigma` on `min_t |C'(t)|` (local parameter).
///
/// The hodograph is bisected until the bound changes by less than 1e-6 relatively or
/// [`SIGMA_MAX_DEPTH`] levels are reached. Pieces whose bound already exceeds a sampled
/// value of `|C'|` cannot hold the minimum and are dropped.
pub fn min_derivative_norm<T: Scalar>(seg: &BezierSegment<T>) -> Result<T> {
    let hodo = seg.hodograph();
    let mut pieces = vec![hodo];
    let mut upper = T::infinity();
    let mut prev: Option<T> = None;
    let mut bound = T::zero();
    for depth in 0..=SIGMA_MAX_DEPTH {
        let bounds: Vec<T> = pieces.iter().map(|p| hull_distance_lower_bound(p.control_points())).collect();
        for p in &pieces {
            upper = upper.min(p.start().norm()).min(p.end().norm()).min(p.at(T::lit(0.5)).norm());
        }
        bound = bounds.iter().copied().fold(T::infinity(), T::min);
        if bound >= upper {
            // the bound has met an attained value: nothing left to refine
            bound = upper;
            break;
        }
        if let Some(pv) = prev {
            if pv > T::zero() && (bound - pv).abs() <= T::lit(1e-6) * pv {
                break;
            }
        }
        prev = Some(bound);
        if depth == SIGMA_MAX_DEPTH {
            break;
        }
        let mut next = Vec::with_capacity(pieces.len() * 2);
        for (p, b) in pieces.iter().zip(&bounds) {
            if *b <= upper {
                let (l, r) = p.subdivide_once();
                next.push(l);
                next.push(r);
            }
        }
        pieces = next;
    }
    if bound <= T::zero() {
        let worst = pieces
            .iter()
            .map(|p| (p, hull_distance_lower_bound(p.control_points())))
            .fold(None, |acc: Option<(&BezierSegment<T>, T)>, cur| match acc {
                Some(a) if a.1 <= cur.1 => Some(a),
                _ => Some(cur),
            });
        let t = worst.map_or(T::zero(), |(p, _)| {
            let (a, b) = p.interval();
            (a + b) * T::lit(0.5)
        });
        return Err(Error::Regularity { t: t.as_f64() });
    }
    Ok(bound)
}

/// Largest hodograph control-point norm, an upper bound on `max_t |C'(t)|`.
pub fn max_derivative_bound<T: Scalar>(seg: &BezierSegment<T>) -> T {
    seg.hodograph()
        .control_points()
        .iter()
        .map(|p: &Vec3<T>| p.norm())
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3<f64> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn hull_distance_cases() {
        assert_eq!(hull_distance_lower_bound(&[p(2., 0., 0.)]), 2.0);
        assert_eq!(hull_distance_lower_bound(&[p(2., 2., 0.), p(2., -2., 0.)]), 2.0);
        // triangle facing the origin
        let d = hull_distance_lower_bound(&[p(1., -1., -1.), p(1., 2., -1.), p(1., -1., 2.)]);
        assert!((d - 1.0).abs() < 1e-15);
        // origin strictly inside a tetrahedron
        let inside = hull_distance_lower_bound(&[p(1., 0., 0.), p(-1., 1., 0.), p(-1., -1., 1.), p(-1., -1., -1.)]);
        assert_eq!(inside, 0.0);
    }

    #[test]
    fn sigma_examples() {
        let l = BezierSegment::new(vec![p(0., 0., 0.), p(2., 0., 0.)]).unwrap();
        assert_eq!(min_derivative_norm(&l).unwrap(), 2.0);
        let skew = BezierSegment::new(vec![p(0., 0., 0.), p(1., 1., 1.)]).unwrap();
        assert!((min_derivative_norm(&skew).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        let q = BezierSegment::new(vec![p(0., 0., 0.), p(1., 1., 0.), p(2., 0., 0.)]).unwrap();
        assert!((min_derivative_norm(&q).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sigma_never_exceeds_samples() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 2., 1.), p(3., -1., 0.5), p(4., 0., 2.)]).unwrap();
        let sigma = min_derivative_norm(&c).unwrap();
        let sampled = (0..=10_000)
            .map(|i| c.derivative(i as f64 / 10_000.0).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(sigma <= sampled);
        assert!(sigma > 0.9 * sampled);
    }

    #[test]
    fn cusp_fails() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 1., 0.), p(0., 1., 0.), p(1., 0., 0.)]).unwrap();
        assert!(matches!(min_derivative_norm(&c), Err(Error::Regularity { .. })));
    }
}
