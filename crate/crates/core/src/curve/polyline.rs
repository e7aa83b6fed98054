//! Piecewise-linear curves with the uniform vertex parameterisation.

use crate::{Error, Point3, Result, Scalar, Vec3};

/// A polyline whose vertex `j` sits at parameter `a + (b - a) j / (len - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T> {
    vertices: Vec<Point3<T>>,
    interval: (T, T),
}

/// Closest point on a polyline to a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylineFoot<T> {
    pub edge: usize,
    /// Position along the edge in `[0, 1]`.
    pub along: T,
    pub point: Point3<T>,
    pub distance: T,
}

/// Parameter of the closest point of segment `[a, b]` to `q`, clamped to `[0, 1]`.
pub fn segment_foot<T: Scalar>(a: Point3<T>, b: Point3<T>, q: Point3<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 == T::zero() {
        return T::zero();
    }
    ((q - a).dot(d) / len2).max(T::zero()).min(T::one())
}

/// Distance between segments `[p0, p1]` and `[q0, q1]`.
pub fn segment_segment_distance<T: Scalar>(
    p0: Point3<T>,
    p1: Point3<T>,
    q0: Point3<T>,
    q1: Point3<T>,
) -> T {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.norm_sq();
    let e = d2.norm_sq();
    let f = d2.dot(r);
    let zero = T::zero();
    let one = T::one();
    let (s, t);
    if a == zero && e == zero {
        return r.norm();
    }
    if a == zero {
        s = zero;
        t = (f / e).max(zero).min(one);
    } else {
        let c = d1.dot(r);
        if e == zero {
            t = zero;
            s = (-c / a).max(zero).min(one);
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > zero {
                ((b * f - c * e) / denom).max(zero).min(one)
            } else {
                zero
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < zero {
                t0 = zero;
                s0 = (-c / a).max(zero).min(one);
            } else if t0 > one {
                t0 = one;
                s0 = ((b - c) / a).max(zero).min(one);
            }
            s = s0;
            t = t0;
        }
    }
    ((p0 + d1 * s) - (q0 + d2 * t)).norm()
}

impl<T: Scalar> Polyline<T> {
    pub fn new(vertices: Vec<Point3<T>>) -> Result<Self> {
        Self::with_interval(vertices, T::zero(), T::one())
    }

    /// Requires at least two finite vertices with no repeated consecutive vertex.
    pub fn with_interval(vertices: Vec<Point3<T>>, a: T, b: T) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Domain(format!(
                "a polyline needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("polyline vertices"));
        }
        if let Some(j) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!(
                "polyline vertices {j} and {} coincide",
                j + 1
            )));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "parameter interval [{}, {}] is empty",
                a.as_f64(),
                b.as_f64()
            )));
        }
        Ok(Self {
            vertices,
            interval: (a, b),
        })
    }

    #[inline]
    pub fn vertices(&self) -> &[Point3<T>] {
        &self.vertices
    }

    #[inline]
    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    #[inline]
    pub fn start(&self) -> Point3<T> {
        self.vertices[0]
    }

    #[inline]
    pub fn end(&self) -> Point3<T> {
        self.vertices[self.vertices.len() - 1]
    }

    #[inline]
    pub fn edge(&self, j: usize) -> (Point3<T>, Point3<T>) {
        (self.vertices[j], self.vertices[j + 1])
    }

    /// Direction `v_{j+1} - v_j` of edge `j`.
    #[inline]
    pub fn edge_vector(&self, j: usize) -> Vec3<T> {
        self.vertices[j + 1] - self.vertices[j]
    }

    /// Local parameter of vertex `j`.
    #[inline]
    pub fn vertex_param(&self, j: usize) -> T {
        if j == self.edge_count() {
            T::one()
        } else {
            T::from_count(j) / T::from_count(self.edge_count())
        }
    }

    /// Edge containing local parameter `t` (the right-hand edge at interior vertices).
    pub fn edge_at(&self, t: T) -> usize {
        let m = self.edge_count();
        let scaled = (t * T::from_count(m)).floor().to_usize().unwrap_or(0);
        scaled.min(m - 1)
    }

    /// Point at local parameter `t` in `[0, 1]`.
    pub fn point_at(&self, t: T) -> Point3<T> {
        let m = self.edge_count();
        let j = self.edge_at(t);
        let u = t * T::from_count(m) - T::from_count(j);
        let (a, b) = self.edge(j);
        a.lerp(b, u.max(T::zero()).min(T::one()))
    }

    /// Derivative with respect to the local parameter on edge `j`: `m (v_{j+1} - v_j)`.
    pub fn edge_derivative(&self, j: usize) -> Vec3<T> {
        self.edge_vector(j) * T::from_count(self.edge_count())
    }

    /// Cumulative arclength at each vertex.
    pub fn cumulative_lengths(&self) -> Vec<T> {
        let mut acc = T::zero();
        let mut out = Vec::with_capacity(self.vertices.len());
        out.push(acc);
        for w in self.vertices.windows(2) {
            acc = acc + w[0].distance(w[1]);
            out.push(acc);
        }
        out
    }

    pub fn length(&self) -> T {
        *self.cumulative_lengths().last().expect("non-empty")
    }

    /// Nearest point of the polyline to `q` (first edge wins ties).
    pub fn closest_point(&self, q: Point3<T>) -> PolylineFoot<T> {
        let mut best: Option<PolylineFoot<T>> = None;
        for j in 0..self.edge_count() {
            let (a, b) = self.edge(j);
            let u = segment_foot(a, b, q);
            let point = a.lerp(b, u);
            let distance = point.distance(q);
            if best.is_none_or(|f| distance < f.distance) {
                best = Some(PolylineFoot {
                    edge: j,
                    along: u,
                    point,
                    distance,
                });
            }
        }
        best.expect("at least one edge")
    }

    #[inline]
    pub fn distance_to(&self, q: Point3<T>) -> T {
        self.closest_point(q).distance
    }

    /// Arclength coordinate of a point lying on edge `j` at fraction `along`.
    pub fn arclength_at(&self, cumulative: &[T], edge: usize, along: T) -> T {
        cumulative[edge] + (cumulative[edge + 1] - cumulative[edge]) * along
    }

    /// Minimum distance between non-adjacent edges, `None` when fewer than three edges.
    pub fn min_nonadjacent_distance(&self) -> Option<T> {
        let m = self.edge_count();
        let mut best: Option<T> = None;
        for i in 0..m {
            for j in i + 2..m {
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                let dist = segment_segment_distance(a, b, c, d);
                best = Some(best.map_or(dist, |x: T| x.min(dist)));
            }
        }
        best
    }

    /// True when no two non-adjacent edges come within `tol` and adjacent edges do not fold back.
    pub fn is_simple(&self, tol: T) -> bool {
        if let Some(d) = self.min_nonadjacent_distance() {
            if d <= tol {
                return false;
            }
        }
        // adjacent edges overlap only when they are antiparallel
        self.vertices.windows(3).all(|w| {
            let u = w[1] - w[0];
            let v = w[2] - w[1];
            let cos = u.dot(v);
            let sin = u.cross(v).norm();
            !(cos < T::zero() && sin <= tol * u.norm() * v.norm())
        })
    }

    pub fn cast<U: Scalar>(&self) -> Polyline<U> {
        Polyline {
            vertices: self.vertices.iter().map(|v| v.cast()).collect(),
            interval: (U::lit(self.interval.0.as_f64()), U::lit(self.interval.1.as_f64())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3<f64> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn rejects_repeated_vertices() {
        assert!(Polyline::new(vec![p(0., 0., 0.), p(0., 0., 0.), p(1., 0., 0.)]).is_err());
        assert!(Polyline::new(vec![p(0., 0., 0.)]).is_err());
    }

    #[test]
    fn uniform_parameterisation() {
        let l = Polyline::new(vec![p(0., 0., 0.), p(1., 0., 0.), p(1., 2., 0.)]).unwrap();
        assert_eq!(l.point_at(0.0), p(0., 0., 0.));
        assert_eq!(l.point_at(0.25), p(0.5, 0., 0.));
        assert_eq!(l.point_at(0.75), p(1., 1., 0.));
        assert_eq!(l.point_at(1.0), p(1., 2., 0.));
        assert_eq!(l.edge_at(0.5), 1);
        assert_eq!(l.edge_derivative(1), p(0., 4., 0.));
    }

    #[test]
    fn closest_point_on_corner() {
        let l = Polyline::new(vec![p(0., 0., 0.), p(1., 0., 0.), p(1., 1., 0.)]).unwrap();
        let f = l.closest_point(p(0.5, 0.3, 0.));
        assert_eq!(f.edge, 0);
        assert!((f.distance - 0.3).abs() < 1e-15);
    }

    #[test]
    fn segment_distance_cases() {
        let d = segment_segment_distance(p(0., 0., 0.), p(1., 0., 0.), p(0., 1., 1.), p(1., 1., 1.));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let crossing = segment_segment_distance(p(-1., 0., 0.), p(1., 0., 0.), p(0., -1., 0.), p(0., 1., 0.));
        assert_eq!(crossing, 0.0);
        let skew = segment_segment_distance(p(-1., 0., 0.), p(1., 0., 0.), p(0., -1., 0.5), p(0., 1., 0.5));
        assert!((skew - 0.5).abs() < 1e-15);
    }

    #[test]
    fn simplicity() {
        let zig = Polyline::new(vec![p(0., 0., 0.), p(1., 0., 0.), p(1., 1., 0.), p(2., 1., 0.)]).unwrap();
        assert!(zig.is_simple(1e-12));
        let bow = Polyline::new(vec![p(0., 0., 0.), p(1., 1., 0.), p(1., 0., 0.), p(0., 1., 0.)]).unwrap();
        assert!(!bow.is_simple(1e-12));
        let fold = Polyline::new(vec![p(0., 0., 0.), p(2., 0., 0.), p(1., 0., 0.)]).unwrap();
        assert!(!fold.is_simple(1e-12));
    }
}
