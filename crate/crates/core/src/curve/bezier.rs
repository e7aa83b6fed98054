//! Bézier segments with de Casteljau evaluation and midpoint subdivision.

use crate::curve::Polyline;
use crate::{Error, Point3, Result, Scalar, Vec3};

const STACK_POINTS: usize = 32;

/// Runs de Casteljau on `points` at `t`, left to right, without heap use for small degrees.
fn de_casteljau<T: Scalar>(points: &[Point3<T>], t: T) -> Point3<T> {
    let n = points.len();
    if n == 0 {
        return Vec3::zero();
    }
    if n <= STACK_POINTS {
        let mut buf = [Vec3::zero(); STACK_POINTS];
        buf[..n].copy_from_slice(points);
        reduce(&mut buf[..n], t)
    } else {
        let mut buf = points.to_vec();
        reduce(&mut buf, t)
    }
}

fn reduce<T: Scalar>(buf: &mut [Point3<T>], t: T) -> Point3<T> {
    let n = buf.len();
    for level in 1..n {
        for j in 0..n - level {
            buf[j] = buf[j].lerp(buf[j + 1], t);
        }
    }
    buf[0]
}

/// Derivative control points `scale * (P_{j+1} - P_j)` evaluated by de Casteljau.
fn difference_eval<T: Scalar>(points: &[Point3<T>], scale: T, t: T) -> Vec3<T> {
    let n = points.len();
    if n < 2 {
        return Vec3::zero();
    }
    if n - 1 <= STACK_POINTS {
        let mut buf = [Vec3::zero(); STACK_POINTS];
        for j in 0..n - 1 {
            buf[j] = (points[j + 1] - points[j]) * scale;
        }
        reduce(&mut buf[..n - 1], t)
    } else {
        let mut buf: Vec<_> = points.windows(2).map(|w| (w[1] - w[0]) * scale).collect();
        reduce(&mut buf, t)
    }
}

/// A Bézier segment of degree `n` with `n + 1` control points.
///
/// `interval` records where the segment sits in the parameter domain of the
/// curve it was cut from; evaluation always uses the local parameter in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierSegment<T> {
    control_points: Vec<Point3<T>>,
    interval: (T, T),
}

impl<T: Scalar> BezierSegment<T> {
    /// Segment on the unit interval. Requires at least two finite control points.
    pub fn new(control_points: Vec<Point3<T>>) -> Result<Self> {
        Self::with_interval(control_points, T::zero(), T::one())
    }

    pub fn with_interval(control_points: Vec<Point3<T>>, a: T, b: T) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::Domain(format!(
                "a Bézier segment needs at least 2 control points, got {}",
                control_points.len()
            )));
        }
        if control_points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("control points"));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "parameter interval [{}, {}] is empty",
                a.as_f64(),
                b.as_f64()
            )));
        }
        Ok(Self {
            control_points,
            interval: (a, b),
        })
    }

    /// Degree-0 segments only arise as hodographs of lines.
    fn raw(control_points: Vec<Point3<T>>, interval: (T, T)) -> Self {
        Self {
            control_points,
            interval,
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.control_points.len().saturating_sub(1)
    }

    #[inline]
    pub fn control_points(&self) -> &[Point3<T>] {
        &self.control_points
    }

    #[inline]
    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    #[inline]
    pub fn start(&self) -> Point3<T> {
        self.control_points[0]
    }

    #[inline]
    pub fn end(&self) -> Point3<T> {
        *self.control_points.last().expect("non-empty control points")
    }

    /// Maps a local parameter to the parent curve's parameter.
    #[inline]
    pub fn global_param(&self, t: T) -> T {
        let (a, b) = self.interval;
        if t == T::one() {
            b
        } else {
            a + (b - a) * t
        }
    }

    /// Checked de Casteljau evaluation at local parameter `t`.
    pub fn eval(&self, t: T) -> Result<Point3<T>> {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::Domain(format!(
                "parameter {} outside [0, 1]",
                t.as_f64()
            )));
        }
        Ok(self.at(t))
    }

    /// Unchecked evaluation; callers guarantee `t` is in `[0, 1]`.
    #[inline]
    pub fn at(&self, t: T) -> Point3<T> {
        de_casteljau(&self.control_points, t)
    }

    /// First derivative with respect to the local parameter.
    #[inline]
    pub fn derivative(&self, t: T) -> Vec3<T> {
        difference_eval(&self.control_points, T::from_count(self.degree()), t)
    }

    /// Second derivative with respect to the local parameter.
    pub fn second_derivative(&self, t: T) -> Vec3<T> {
        self.jet(t).2
    }

    /// Point, first and second derivative from one de Casteljau triangle.
    /// The point equals [`at`](Self::at) bitwise.
    pub fn jet(&self, t: T) -> (Point3<T>, Vec3<T>, Vec3<T>) {
        let pts = &self.control_points;
        let n = pts.len() - 1;
        if n == 1 {
            return (pts[0].lerp(pts[1], t), pts[1] - pts[0], Vec3::zero());
        }
        let mut stack = [Vec3::zero(); STACK_POINTS];
        let mut heap;
        let buf: &mut [Point3<T>] = if pts.len() <= STACK_POINTS {
            stack[..pts.len()].copy_from_slice(pts);
            &mut stack[..pts.len()]
        } else {
            heap = pts.clone();
            &mut heap
        };
        for level in 1..n - 1 {
            for j in 0..=n - level {
                buf[j] = buf[j].lerp(buf[j + 1], t);
            }
        }
        let (a, b, c) = (buf[0], buf[1], buf[2]);
        let (ab, bc) = (a.lerp(b, t), b.lerp(c, t));
        let nn = T::from_count(n);
        let d2 = (c - b * T::lit(2.0) + a) * (nn * T::from_count(n - 1));
        (ab.lerp(bc, t), (bc - ab) * nn, d2)
    }

    /// Derivative curve, with control points `n (P_{j+1} - P_j)`.
    pub fn hodograph(&self) -> BezierSegment<T> {
        let n = self.degree();
        if n == 0 {
            return Self::raw(vec![Vec3::zero()], self.interval);
        }
        let scale = T::from_count(n);
        let pts = self
            .control_points
            .windows(2)
            .map(|w| (w[1] - w[0]) * scale)
            .collect();
        Self::raw(pts, self.interval)
    }

    /// Control points of the pieces on `[0, t]` and `[t, 1]`; the shared point equals `at(t)` bitwise.
    pub fn split_points(&self, t: T) -> (Vec<Point3<T>>, Vec<Point3<T>>) {
        let n = self.control_points.len();
        let mut tri = self.control_points.clone();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        left.push(tri[0]);
        right.push(tri[n - 1]);
        for level in 1..n {
            for j in 0..n - level {
                tri[j] = tri[j].lerp(tri[j + 1], t);
            }
            left.push(tri[0]);
            right.push(tri[n - 1 - level]);
        }
        right.reverse();
        (left, right)
    }

    /// Splits at local `t = 1/2` with the de Casteljau triangle.
    pub fn subdivide_once(&self) -> (BezierSegment<T>, BezierSegment<T>) {
        let half = T::lit(0.5);
        let (left, right) = self.split_points(half);
        let (a, b) = self.interval;
        let mid = a + (b - a) * half;
        (Self::raw(left, (a, mid)), Self::raw(right, (mid, b)))
    }

    /// Subdivides `iterations` times, yielding `2^iterations` pieces in parameter order.
    pub fn subdivide(&self, iterations: u32, cap: usize) -> Result<SubdivisionResult<T>> {
        let requested = 1u128.checked_shl(iterations).unwrap_or(u128::MAX);
        if requested > cap as u128 {
            return Err(Error::ResourceCap { requested, cap });
        }
        let mut pieces = vec![self.clone()];
        for _ in 0..iterations {
            let mut next = Vec::with_capacity(pieces.len() * 2);
            for p in &pieces {
                let (l, r) = p.subdivide_once();
                next.push(l);
                next.push(r);
            }
            pieces = next;
        }
        SubdivisionResult::from_segments(pieces, iterations)
    }

    /// The control polygon under the uniform parameterisation of this segment's interval.
    pub fn control_polygon(&self) -> Result<Polyline<T>> {
        let (a, b) = self.interval;
        Polyline::with_interval(self.control_points.clone(), a, b)
    }

    /// Converts the segment to another scalar type.
    pub fn cast<U: Scalar>(&self) -> BezierSegment<U> {
        BezierSegment::raw(
            self.control_points.iter().map(|p| p.cast()).collect(),
            (U::lit(self.interval.0.as_f64()), U::lit(self.interval.1.as_f64())),
        )
    }
}

/// Sub-segments and their control polygons after `iterations` midpoint subdivisions.
#[derive(Debug, Clone)]
pub struct SubdivisionResult<T> {
    pub sub_segments: Vec<BezierSegment<T>>,
    pub sub_polygons: Vec<Polyline<T>>,
    pub iterations: u32,
}

impl<T: Scalar> SubdivisionResult<T> {
    pub(crate) fn from_segments(sub_segments: Vec<BezierSegment<T>>, iterations: u32) -> Result<Self> {
        let sub_polygons = sub_segments
            .iter()
            .map(BezierSegment::control_polygon)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sub_segments,
            sub_polygons,
            iterations,
        })
    }

    pub fn len(&self) -> usize {
        self.sub_segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub_segments.is_empty()
    }

    /// Sub-segment/sub-polygon pairs in parameter order.
    pub fn pairs(&self) -> impl Iterator<Item = (&BezierSegment<T>, &Polyline<T>)> {
        self.sub_segments.iter().zip(self.sub_polygons.iter())
    }

    /// The whole approximation as one polyline (junction vertices listed once).
    pub fn joined_polyline(&self) -> Result<Polyline<T>> {
        let mut verts: Vec<Point3<T>> = Vec::new();
        for poly in &self.sub_polygons {
            let vs = poly.vertices();
            if verts.last() == vs.first() {
                verts.extend_from_slice(&vs[1..]);
            } else {
                verts.extend_from_slice(vs);
            }
        }
        let a = self.sub_segments.first().map(|s| s.interval().0).unwrap_or(T::zero());
        let b = self.sub_segments.last().map(|s| s.interval().1).unwrap_or(T::one());
        Polyline::with_interval(verts, a, b)
    }
}

/// Max over `j` of the Euclidean norm of `P_{j+2} - 2 P_{j+1} + P_j`.
pub fn second_difference_norm<T: Scalar>(points: &[Point3<T>]) -> Result<T> {
    if points.len() < 3 {
        return Err(Error::Domain(format!(
            "second differences need at least 3 points, got {}",
            points.len()
        )));
    }
    Ok(points
        .windows(3)
        .map(|w| (w[2] - w[1] * T::lit(2.0) + w[0]).norm())
        .fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3<f64> {
        Vec3::new(x, y, z)
    }

    fn quadratic() -> BezierSegment<f64> {
        BezierSegment::new(vec![p(0., 0., 0.), p(1., 1., 0.), p(2., 0., 0.)]).unwrap()
    }

    /// Direct Bernstein sum, independent of de Casteljau.
    fn bernstein(points: &[Point3<f64>], t: f64) -> Point3<f64> {
        let n = points.len() - 1;
        let mut acc = Vec3::zero();
        let mut binom = 1.0;
        for (k, q) in points.iter().enumerate() {
            if k > 0 {
                binom = binom * (n - k + 1) as f64 / k as f64;
            }
            let w = binom * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32);
            acc += *q * w;
        }
        acc
    }

    #[test]
    fn eval_examples() {
        let q = quadratic();
        assert_eq!(q.eval(0.0).unwrap(), p(0., 0., 0.));
        let mid = q.eval(0.5).unwrap();
        let oracle = bernstein(q.control_points(), 0.5);
        assert_eq!(oracle, p(1.0, 0.5, 0.0));
        assert!(mid.distance(oracle) < 1e-15);
        let line = BezierSegment::new(vec![p(0., 0., 0.), p(2., 0., 0.)]).unwrap();
        assert_eq!(line.eval(0.25).unwrap(), p(0.5, 0., 0.));
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let q = quadratic();
        assert!(matches!(q.eval(1.5), Err(Error::Domain(_))));
        assert!(matches!(q.eval(-1e-9), Err(Error::Domain(_))));
        assert!(q.eval(f64::NAN).is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(BezierSegment::<f64>::new(vec![p(0., 0., 0.)]).is_err());
        assert!(matches!(
            BezierSegment::new(vec![p(0., 0., 0.), p(f64::NAN, 0., 0.)]),
            Err(Error::NonFinite(_))
        ));
        assert!(BezierSegment::with_interval(vec![p(0., 0., 0.), p(1., 0., 0.)], 0.5, 0.5).is_err());
    }

    #[test]
    fn subdivide_once_quadratic() {
        let (l, r) = quadratic().subdivide_once();
        assert_eq!(l.control_points(), &[p(0., 0., 0.), p(0.5, 0.5, 0.), p(1., 0.5, 0.)]);
        assert_eq!(r.control_points(), &[p(1., 0.5, 0.), p(1.5, 0.5, 0.), p(2., 0., 0.)]);
        assert_eq!(l.interval(), (0.0, 0.5));
        assert_eq!(r.interval(), (0.5, 1.0));
    }

    #[test]
    fn subdivide_once_line_inserts_midpoint() {
        let line = BezierSegment::new(vec![p(0., 0., 0.), p(2., 0., 0.)]).unwrap();
        let (l, r) = line.subdivide_once();
        assert_eq!(l.control_points(), &[p(0., 0., 0.), p(1., 0., 0.)]);
        assert_eq!(r.control_points(), &[p(1., 0., 0.), p(2., 0., 0.)]);
    }

    #[test]
    fn double_subdivision_matches_parent() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 2., 1.), p(3., -1., 0.5), p(4., 0., 2.)]).unwrap();
        let (l, _) = c.subdivide_once();
        let (ll, lr) = l.subdivide_once();
        for (sub, local, global) in [(&ll, 0.0, 0.0), (&ll, 1.0, 0.25), (&lr, 1.0, 0.5)] {
            assert!(sub.at(local).distance(c.at(global)) < 1e-12);
        }
    }

    #[test]
    fn subdivide_iter_bookkeeping() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 2., 1.), p(3., -1., 0.5), p(4., 0., 2.)]).unwrap();
        let r0 = c.subdivide(0, 1 << 22).unwrap();
        assert_eq!(r0.len(), 1);
        assert_eq!(r0.sub_segments[0], c);
        let r2 = c.subdivide(2, 1 << 22).unwrap();
        let ivs: Vec<_> = r2.sub_segments.iter().map(|s| s.interval()).collect();
        assert_eq!(ivs, vec![(0.0, 0.25), (0.25, 0.5), (0.5, 0.75), (0.75, 1.0)]);
        for w in r2.sub_polygons.windows(2) {
            assert_eq!(w[0].vertices().last(), w[1].vertices().first());
        }
    }

    #[test]
    fn subdivide_cap_is_enforced() {
        let c = quadratic();
        match c.subdivide(5, 16) {
            Err(Error::ResourceCap { requested, cap }) => {
                assert_eq!(requested, 32);
                assert_eq!(cap, 16);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn hodograph_examples() {
        let h = quadratic().hodograph();
        assert_eq!(h.degree(), 1);
        assert_eq!(h.control_points(), &[p(2., 2., 0.), p(2., -2., 0.)]);
        let line = BezierSegment::new(vec![p(0., 0., 0.), p(2., 0., 0.)]).unwrap();
        let hl = line.hodograph();
        assert_eq!(hl.degree(), 0);
        assert_eq!(hl.control_points(), &[p(2., 0., 0.)]);
        assert_eq!(line.derivative(0.7), p(2., 0., 0.));
    }

    #[test]
    fn hodograph_matches_central_difference() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 2., 1.), p(3., -1., 0.5), p(4., 0., 2.)]).unwrap();
        let h = 1e-5;
        let t = 0.3;
        let fd = (c.at(t + h) - c.at(t - h)) / (2.0 * h);
        assert!(fd.distance(c.hodograph().at(t)) < 1e-7);
        assert!(fd.distance(c.derivative(t)) < 1e-7);
    }

    #[test]
    fn second_derivative_matches_hodograph_of_hodograph() {
        let c = BezierSegment::new(vec![p(0., 0., 0.), p(1., 2., 1.), p(3., -1., 0.5), p(4., 0., 2.), p(5., 1., 1.)]).unwrap();
        for &t in &[0.0, 0.2, 0.75, 1.0] {
            let a = c.second_derivative(t);
            let b = c.hodograph().derivative(t);
            assert!(a.distance(b) < 1e-12);
        }
    }

    #[test]
    fn second_difference_examples() {
        let collinear = [p(0., 0., 0.), p(1., 0., 0.), p(2., 0., 0.), p(3., 0., 0.)];
        assert_eq!(second_difference_norm(&collinear).unwrap(), 0.0);
        let q = [p(0., 0., 0.), p(1., 1., 0.), p(2., 0., 0.)];
        assert_eq!(second_difference_norm(&q).unwrap(), 2.0);
        let shifted: Vec<_> = q.iter().map(|v| *v + p(5., -3., 7.)).collect();
        assert_eq!(second_difference_norm(&shifted).unwrap(), 2.0);
        assert!(second_difference_norm(&q[..2]).is_err());
    }

    #[test]
    fn f32_evaluation() {
        let q = BezierSegment::<f32>::new(vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(1., 1., 0.),
            Vec3::new(2., 0., 0.),
        ])
        .unwrap();
        assert_eq!(q.eval(0.5).unwrap(), Vec3::new(1.0f32, 0.5, 0.0));
    }
}
