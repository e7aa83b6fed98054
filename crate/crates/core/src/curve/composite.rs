use crate::curve::{BezierSegment, SubdivisionResult};
use crate::geometry::angle_between;
use crate::{Error, Point3, Result, Scalar, Vec3};

/// Junction tangents must agree to within this many radians.
pub const C1_ANGLE_TOLERANCE: f64 = 1e-6;

/// A C1 chain of Bézier segments sharing endpoints.
///
/// Segment `j` of `k` owns the global parameter interval `[j/k, (j+1)/k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeBezier<T> {
    segments: Vec<BezierSegment<T>>,
}

impl<T: Scalar> CompositeBezier<T> {
    /// Validates C0 and C1 continuity and stamps each segment with its global interval.
    pub fn new(segments: Vec<BezierSegment<T>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Domain("a composite curve needs at least one segment".into()));
        }
        let k = segments.len();
        for (j, w) in segments.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            let scale = T::one() + a.end().max_abs();
            if a.end().distance(b.start()) > T::tol(1e-12) * scale {
                return Err(Error::Invariant(format!(
                    "segments {j} and {} do not share an endpoint",
                    j + 1
                )));
            }
            let ta = a.derivative(T::one());
            let tb = b.derivative(T::zero());
            let angle = angle_between(ta, tb).map_err(|_| Error::Regularity {
                t: T::from_count(j + 1).as_f64() / k as f64,
            })?;
            if angle > T::lit(C1_ANGLE_TOLERANCE) {
                return Err(Error::NotC1 {
                    junction: j,
                    angle: angle.as_f64(),
                });
            }
        }
        let kk = T::from_count(k);
        let mut stamped: Vec<BezierSegment<T>> = Vec::with_capacity(k);
        for (j, s) in segments.into_iter().enumerate() {
            let a = T::from_count(j) / kk;
            let b = if j + 1 == k { T::one() } else { T::from_count(j + 1) / kk };
            let mut pts = s.control_points().to_vec();
            // junctions are shared bit-exactly
            if let Some(prev) = stamped.last() {
                pts[0] = prev.end();
            }
            stamped.push(BezierSegment::with_interval(pts, a, b)?);
        }
        let segments = stamped;
        Ok(Self { segments })
    }

    /// A single segment viewed as a composite on `[0, 1]`.
    pub fn single(seg: BezierSegment<T>) -> Result<Self> {
        Self::new(vec![seg])
    }

    pub fn segments(&self) -> &[BezierSegment<T>] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.segments.iter().map(BezierSegment::degree).max().unwrap_or(0)
    }

    pub fn start(&self) -> Point3<T> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Point3<T> {
        self.segments[self.segments.len() - 1].end()
    }

    /// Segment index and local parameter for a global parameter in `[0, 1]`.
    pub fn locate(&self, t: T) -> (usize, T) {
        let k = self.segments.len();
        let scaled = t.max(T::zero()).min(T::one()) * T::from_count(k);
        let j = scaled.floor().to_usize().unwrap_or(0).min(k - 1);
        let local = (scaled - T::from_count(j)).max(T::zero()).min(T::one());
        (j, local)
    }

    /// Point at global parameter `t`.
    pub fn at(&self, t: T) -> Point3<T> {
        let (j, u) = self.locate(t);
        self.segments[j].at(u)
    }

    /// Derivative with respect to the global parameter.
    pub fn derivative(&self, t: T) -> Vec3<T> {
        let (j, u) = self.locate(t);
        self.segments[j].derivative(u) * T::from_count(self.segments.len())
    }

    /// Subdivides every segment `iterations` times; pieces are concatenated in order.
    pub fn subdivide(&self, iterations: u32, cap: usize) -> Result<SubdivisionResult<T>> {
        let per = 1u128.checked_shl(iterations).unwrap_or(u128::MAX);
        let requested = per.saturating_mul(self.segments.len() as u128);
        if requested > cap as u128 {
            return Err(Error::ResourceCap { requested, cap });
        }
        let mut all = Vec::with_capacity(requested as usize);
        for s in &self.segments {
            all.extend(s.subdivide(iterations, cap)?.sub_segments);
        }
        SubdivisionResult::from_segments(all, iterations)
    }

    /// Largest distance between control points; bounds the curve's diameter.
    pub fn control_diameter(&self) -> T {
        let pts: Vec<_> = self.segments.iter().flat_map(|s| s.control_points().iter().copied()).collect();
        let mut d = T::zero();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                d = d.max(pts[i].distance(pts[j]));
            }
        }
        d
    }

    pub fn cast<U: Scalar>(&self) -> CompositeBezier<U> {
        CompositeBezier {
            segments: self.segments.iter().map(BezierSegment::cast).collect(),
        }
    }
}
