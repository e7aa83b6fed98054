//! Normal-disc incidence: where the disc `D_r(t)` meets the polygon and the curve.

use serde::Serialize;

use crate::curve::{BezierSegment, Polyline};
use crate::numeric::uniform_grid;
use crate::{Error, Point3, Result, Scalar, Vec3};

/// A polygon point cut out by a normal disc, with its position along the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscHit<T> {
    pub edge: usize,
    /// Fraction of the edge, in `[0, 1]`.
    pub along: T,
    pub point: Point3<T>,
}

fn unit_normal<T: Scalar>(seg: &BezierSegment<T>, t: T) -> Result<Vec3<T>> {
    seg.derivative(t)
        .normalized()
        .ok_or_else(|| Error::Regularity { t: seg.global_param(t).as_f64() })
}

/// Plane/edge intersections with edges taken half-open `[a, b)` (the last edge closed),
/// so a vertex lying in the plane is reported once.
pub fn disc_hits<T: Scalar>(seg: &BezierSegment<T>, t: T, r: T, polyline: &Polyline<T>) -> Result<Vec<DiscHit<T>>> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("disc radius must be positive, got {}", r.as_f64())));
    }
    let c = seg.at(t);
    let n = unit_normal(seg, t)?;
    let scale = polyline.vertices().iter().fold(T::one(), |m, v| m.max(v.max_abs()));
    let flat = T::tol(1e-14) * scale;
    let side: Vec<T> = polyline.vertices().iter().map(|v| (*v - c).dot(n)).collect();
    let m = polyline.edge_count();
    let mut hits = Vec::new();
    for j in 0..m {
        let (sa, sb) = (side[j], side[j + 1]);
        let (a, b) = polyline.edge(j);
        if sa.abs() <= flat && sb.abs() <= flat && a.distance(b) > flat {
            return Err(Error::DegenerateIncidence {
                edge: j,
                t: seg.global_param(t).as_f64(),
            });
        }
        let hit = if sa == T::zero() {
            Some((T::zero(), a))
        } else if sb == T::zero() {
            (j + 1 == m).then_some((T::one(), b))
        } else if (sa < T::zero()) != (sb < T::zero()) {
            let u = sa / (sa - sb);
            Some((u, a.lerp(b, u)))
        } else {
            None
        };
        if let Some((along, point)) = hit {
            if point.distance(c) <= r {
                hits.push(DiscHit { edge: j, along, point });
            }
        }
    }
    Ok(hits)
}

/// Points of `D_r(t)` on the polygon, in polygon order.
pub fn disc_polyline_intersections<T: Scalar>(
    seg: &BezierSegment<T>,
    t: T,
    r: T,
    polyline: &Polyline<T>,
) -> Result<Vec<Point3<T>>> {
    Ok(disc_hits(seg, t, r, polyline)?.into_iter().map(|h| h.point).collect())
}

/// Parameters where the curve crosses the normal plane at `t` inside the disc,
/// found from sign changes on `samples` uniform parameters and bisection.
///
/// When the plane-distance coefficients of the pieces on `[0, t]` and `[t, 1]` each keep
/// one strict sign (apart from the shared zero at `t`), the crossing at `t` is certified
/// to be the only one and no sampling is done.
pub fn disc_curve_intersections<T: Scalar>(seg: &BezierSegment<T>, t: T, r: T, samples: usize) -> Result<Vec<T>> {
    let c = seg.at(t);
    let n = unit_normal(seg, t)?;
    let (left, right) = seg.split_points(t);
    let strict = |pts: &[Point3<T>]| {
        let signs: Vec<T> = pts.iter().map(|p| (*p - c).dot(n)).collect();
        signs.iter().all(|&x| x > T::zero()) || signs.iter().all(|&x| x < T::zero())
    };
    let k = left.len() - 1;
    let left_ok = t == T::zero() || strict(&left[..k]);
    let right_ok = t == T::one() || strict(&right[1..]);
    if left_ok && right_ok {
        return Ok(vec![t]);
    }
    let f = |s: T| (seg.at(s) - c).dot(n);
    // the crossing at t itself is exact; keep it off the sampling grid
    let mut params = uniform_grid::<T>(samples.max(2));
    params.push(t);
    params.sort_by(|a, b| a.partial_cmp(b).expect("finite parameters"));
    params.dedup();
    let values: Vec<T> = params.iter().map(|&s| if s == t { T::zero() } else { f(s) }).collect();
    let last = params.len() - 1;
    let mut roots = Vec::new();
    for k in 0..=last {
        if values[k] == T::zero() {
            roots.push(params[k]);
            continue;
        }
        if k == last || values[k + 1] == T::zero() || (values[k] < T::zero()) == (values[k + 1] < T::zero()) {
            continue;
        }
        let (mut lo, mut hi) = (params[k], params[k + 1]);
        let neg_lo = values[k] < T::zero();
        for _ in 0..80 {
            let mid = lo + (hi - lo) * T::lit(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            if (f(mid) < T::zero()) == neg_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(lo + (hi - lo) * T::lit(0.5));
    }
    Ok(roots.into_iter().filter(|&s| seg.at(s).distance(c) <= r).collect())
}

/// Disc-count violation at one grid parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscViolation {
    pub t: f64,
    pub polyline_hits: usize,
    pub curve_hits: usize,
}

/// Outcome of the disc uniqueness sweep on one pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub grid_size: usize,
    pub violations: Vec<DiscViolation>,
    /// Set when an edge lay in a normal plane; counts are then not meaningful.
    pub degenerate: Option<String>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.degenerate.is_none()
    }
}

/// Checks that `D_r(t)` meets the polygon and the curve exactly once at each of `grid_size` parameters.
pub fn verify_unique_disc_intersections<T: Scalar>(
    seg: &BezierSegment<T>,
    polyline: &Polyline<T>,
    r: T,
    grid_size: usize,
    curve_samples: usize,
) -> Result<UniquenessReport> {
    Ok(disc_sweep(seg, polyline, r, grid_size, curve_samples)?.0)
}

/// The uniqueness sweep, also returning the correspondence table when every count is one.
pub fn disc_sweep<T: Scalar>(
    seg: &BezierSegment<T>,
    polyline: &Polyline<T>,
    r: T,
    grid_size: usize,
    curve_samples: usize,
) -> Result<(UniquenessReport, Option<CorrespondenceTable<T>>)> {
    if grid_size < 2 {
        return Err(Error::Domain(format!("grid size must be at least 2, got {grid_size}")));
    }
    let mut report = UniquenessReport {
        grid_size,
        violations: Vec::new(),
        degenerate: None,
    };
    let cumulative = polyline.cumulative_lengths();
    let mut rows = Vec::with_capacity(grid_size);
    for t in uniform_grid::<T>(grid_size - 1) {
        let hits = match disc_hits(seg, t, r, polyline) {
            Ok(h) => h,
            Err(e @ Error::DegenerateIncidence { .. }) => {
                report.degenerate = Some(e.to_string());
                return Ok((report, None));
            }
            Err(e) => return Err(e),
        };
        let curve_hits = disc_curve_intersections(seg, t, r, curve_samples)?.len();
        if hits.len() != 1 || curve_hits != 1 {
            report.violations.push(DiscViolation {
                t: seg.global_param(t).as_f64(),
                polyline_hits: hits.len(),
                curve_hits,
            });
        } else {
            let hit = hits[0];
            rows.push(CorrespondenceRow {
                t,
                curve: seg.at(t),
                polyline: hit.point,
                arclength: polyline.arclength_at(&cumulative, hit.edge, hit.along),
            });
        }
    }
    let table = report.passed().then_some(CorrespondenceTable { rows, grid_size });
    Ok((report, table))
}

/// One row of `h`: a curve point and its disc partner on the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceRow<T> {
    pub t: T,
    pub curve: Point3<T>,
    pub polyline: Point3<T>,
    /// Arclength of the partner along the polygon.
    pub arclength: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceTable<T> {
    pub rows: Vec<CorrespondenceRow<T>>,
    pub grid_size: usize,
}

impl<T: Scalar> CorrespondenceTable<T> {
    /// Partners strictly increase in arclength along the polygon.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].arclength < w[1].arclength)
    }

    /// Largest `|C(t) - L~(t)|` in the table.
    pub fn max_displacement(&self) -> T {
        self.rows
            .iter()
            .fold(T::zero(), |m, row| m.max(row.curve.distance(row.polyline)))
    }
}

/// Tabulates `L~(t)` (the unique point of `D_r(t)` on the polygon) on `grid_size` parameters.
pub fn correspondence_h<T: Scalar>(
    seg: &BezierSegment<T>,
    polyline: &Polyline<T>,
    r: T,
    grid_size: usize,
) -> Result<CorrespondenceTable<T>> {
    if grid_size < 2 {
        return Err(Error::Domain(format!("grid size must be at least 2, got {grid_size}")));
    }
    let cumulative = polyline.cumulative_lengths();
    let rows = uniform_grid::<T>(grid_size - 1)
        .into_iter()
        .map(|t| {
            let hits = disc_hits(seg, t, r, polyline)?;
            if hits.len() != 1 {
                return Err(Error::Inconsistency {
                    t: seg.global_param(t).as_f64(),
                    count: hits.len(),
                });
            }
            let hit = hits[0];
            Ok(CorrespondenceRow {
                t,
                curve: seg.at(t),
                polyline: hit.point,
                arclength: polyline.arclength_at(&cumulative, hit.edge, hit.along),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrespondenceTable { rows, grid_size })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    fn line() -> BezierSegment<f64> {
        BezierSegment::new(vec![v(0., 0., 0.), v(2., 0., 0.)]).unwrap()
    }

    fn quadratic() -> BezierSegment<f64> {
        BezierSegment::new(vec![v(0., 0., 0.), v(1., 1., 0.), v(2., 0., 0.)]).unwrap()
    }

    #[test]
    fn line_disc_hits_its_own_polygon_once() {
        let seg = line();
        let poly = seg.control_polygon().unwrap();
        assert_eq!(disc_polyline_intersections(&seg, 0.5, 1.0, &poly).unwrap(), vec![v(1., 0., 0.)]);
        assert_eq!(disc_polyline_intersections(&seg, 0.0, 1.0, &poly).unwrap(), vec![v(0., 0., 0.)]);
        assert_eq!(disc_polyline_intersections(&seg, 1.0, 1.0, &poly).unwrap(), vec![v(2., 0., 0.)]);
    }

    #[test]
    fn vertex_in_plane_counts_once() {
        let seg = line();
        let poly = Polyline::new(vec![v(0., 0., 0.), v(1., 0.5, 0.), v(2., 0., 0.)]).unwrap();
        let hits = disc_polyline_intersections(&seg, 0.5, 1.0, &poly).unwrap();
        assert_eq!(hits, vec![v(1., 0.5, 0.)]);
    }

    #[test]
    fn radius_filters_far_crossings() {
        let seg = line();
        let poly = Polyline::new(vec![v(0., 0., 0.), v(1., 3., 0.), v(2., 0., 0.)]).unwrap();
        assert!(disc_polyline_intersections(&seg, 0.5, 1.0, &poly).unwrap().is_empty());
        assert_eq!(disc_polyline_intersections(&seg, 0.5, 3.0, &poly).unwrap().len(), 1);
    }

    #[test]
    fn edge_in_plane_is_degenerate() {
        let seg = line();
        let poly = Polyline::new(vec![v(0., 0., 0.), v(1., 0., 0.), v(1., 1., 0.), v(2., 0., 0.)]).unwrap();
        assert!(matches!(
            disc_polyline_intersections(&seg, 0.5, 2.0, &poly),
            Err(Error::DegenerateIncidence { edge: 1, .. })
        ));
    }

    #[test]
    fn quadratic_after_two_subdivisions_is_unique() {
        let res = quadratic().subdivide(2, 1 << 10).unwrap();
        for (seg, poly) in res.pairs() {
            let rep = verify_unique_disc_intersections(seg, poly, 0.4, 33, 64).unwrap();
            assert!(rep.passed(), "{rep:?}");
            for t in uniform_grid::<f64>(32) {
                assert_eq!(disc_polyline_intersections(seg, t, 0.4, poly).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn oversized_disc_on_hook_is_flagged() {
        let hook = BezierSegment::new(vec![v(0., 0., 0.), v(2., 0., 0.), v(1., 0.2, 0.), v(0., 0.2, 0.)]).unwrap();
        let poly = hook.control_polygon().unwrap();
        let rep = verify_unique_disc_intersections(&hook, &poly, 2.0, 65, 128).unwrap();
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|x| x.polyline_hits > 1 || x.curve_hits > 1));
    }

    #[test]
    fn correspondence_on_line_is_identity() {
        let seg = line();
        let poly = seg.control_polygon().unwrap();
        let table = correspondence_h(&seg, &poly, 1.0, 17).unwrap();
        for row in &table.rows {
            assert!(row.curve.distance(row.polyline) < 1e-15);
        }
        assert!(table.is_monotone());
    }

    #[test]
    fn correspondence_endpoints_and_order() {
        let res = quadratic().subdivide(2, 1 << 10).unwrap();
        for (seg, poly) in res.pairs() {
            let table = correspondence_h(seg, poly, 0.4, 33).unwrap();
            let first = table.rows.first().unwrap();
            let last = table.rows.last().unwrap();
            assert_eq!(first.polyline, seg.start());
            assert_eq!(first.curve, seg.start());
            assert_eq!(last.polyline, seg.end());
            assert_eq!(last.curve, seg.end());
            assert!(table.is_monotone());
        }
    }

    #[test]
    fn certified_and_sampled_counts_agree() {
        let s = BezierSegment::new(vec![v(0., 0., 0.), v(1., 2., 0.), v(3., -1., 1.), v(4., 0., 0.)]).unwrap();
        for t in uniform_grid::<f64>(40) {
            let fast = disc_curve_intersections(&s, t, 0.5, 64).unwrap();
            assert_eq!(fast.len(), 1);
            assert_eq!(fast[0], t);
        }
        // a hook whose far arm returns through the disc: certification fails, sampling finds two
        let hook = BezierSegment::new(vec![v(0., 0., 0.), v(2., 0., 0.), v(1., 0.2, 0.), v(0., 0.2, 0.)]).unwrap();
        let hits = disc_curve_intersections(&hook, 0.05, 2.0, 128).unwrap();
        assert!(hits.len() >= 2, "{hits:?}");
    }

    #[test]
    fn curve_meets_its_own_disc_once() {
        let q = quadratic();
        for t in uniform_grid::<f64>(16) {
            assert_eq!(disc_curve_intersections(&q, t, 0.9, 64).unwrap().len(), 1, "t = {t}");
        }
    }
}
