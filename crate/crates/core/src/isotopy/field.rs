//! The ambient isotopy assembled from the normal-disc family of each sub-curve.

use crate::curve::{BezierSegment, CompositeBezier, Polyline, Projection, SampledSegment, SubdivisionResult};
use crate::isotopy::{disc_isotopy, NormalDisc};
use crate::numeric::uniform_grid;
use crate::verify::{disc_hits, IsotopyCertificate, Verdict, TOL_ORTH};
use crate::{Error, Point3, Result, Scalar};

/// Two foot points closer than this in distance count as a tie.
const AMBIGUITY_DISTANCE: f64 = 1e-9;
/// Tied foot points further apart than this in parameter are reported as ambiguous.
const AMBIGUITY_PARAMETER: f64 = 1e-6;

/// The disc-wise isotopy carrying one sub-curve onto its polygon inside the pipe section of radius `r`.
#[derive(Debug, Clone)]
pub struct IsotopyField<T> {
    sampled: SampledSegment<T>,
    polyline: Polyline<T>,
    r: T,
    centre: Point3<T>,
    extent: T,
}

/// A point inside a field's pipe section together with its foot on the sub-curve.
#[derive(Debug, Clone, Copy)]
pub struct Claim<T> {
    pub foot: Projection<T>,
    pub residual: T,
}

impl<T: Scalar> IsotopyField<T> {
    /// Builds a field without checking the conditions; use [`build_fields`] for certified input.
    pub fn new(seg: &BezierSegment<T>, polyline: &Polyline<T>, r: T, coarse: usize) -> Result<Self> {
        if !(r > T::zero() && r.is_finite()) {
            return Err(Error::Domain(format!("radius must be finite and positive, got {}", r.as_f64())));
        }
        let pts = seg.control_points();
        let centre = pts.iter().fold(Point3::zero(), |acc, p| acc + *p) / T::from_count(pts.len());
        let extent = pts.iter().chain(polyline.vertices()).fold(T::zero(), |m, p| m.max(p.distance(centre)));
        Ok(Self {
            sampled: SampledSegment::new(seg, coarse),
            polyline: polyline.clone(),
            r,
            centre,
            extent,
        })
    }

    pub fn segment(&self) -> &BezierSegment<T> {
        self.sampled.segment()
    }

    pub fn polyline(&self) -> &Polyline<T> {
        &self.polyline
    }

    pub fn radius(&self) -> T {
        self.r
    }

    /// The foot of `v` when `v` lies in the open pipe section: nearer than `r` with an orthogonal foot.
    pub fn claim(&self, v: Point3<T>) -> Result<Option<Claim<T>>> {
        if v.distance(self.centre) >= self.extent + self.r || self.sampled.distance_lower_bound(v) >= self.r {
            return Ok(None);
        }
        let seg = self.segment();
        let feet = self.sampled.local_projections(v);
        let Some(&foot) = feet.first() else {
            return Ok(None);
        };
        if foot.distance >= self.r {
            return Ok(None);
        }
        let tol = T::lit(TOL_ORTH) * (T::one() + v.norm());
        let residual = foot.tangential_residual(seg, v);
        if residual >= tol {
            return Ok(None);
        }
        for other in &feet[1..] {
            if other.distance - foot.distance > T::lit(AMBIGUITY_DISTANCE) {
                break;
            }
            if (other.t - foot.t).abs() > T::lit(AMBIGUITY_PARAMETER) && other.tangential_residual(seg, v) < tol {
                return Err(Error::Ambiguity {
                    t1: seg.global_param(foot.t).as_f64(),
                    t2: seg.global_param(other.t).as_f64(),
                });
            }
        }
        Ok(Some(Claim { foot, residual }))
    }

    /// `L~(t)`: the unique polygon point in the normal disc at local parameter `t`.
    pub fn partner(&self, t: T) -> Result<Point3<T>> {
        let hits = disc_hits(self.segment(), t, self.r, &self.polyline)?;
        if hits.len() != 1 {
            return Err(Error::Inconsistency {
                t: self.segment().global_param(t).as_f64(),
                count: hits.len(),
            });
        }
        Ok(hits[0].point)
    }

    /// Applies the disc isotopy of the claimed disc; the off-plane rounding component of `v` is carried along.
    pub fn apply(&self, claim: &Claim<T>, v: Point3<T>, s: T) -> Result<Point3<T>> {
        if s == T::zero() {
            return Ok(v);
        }
        let t = claim.foot.t;
        let p = claim.foot.point;
        let q = self.partner(t)?;
        let disc = NormalDisc::new(p, self.segment().derivative(t), self.r)?;
        let off = (v - p).dot(disc.normal);
        let in_plane = v - disc.normal * off;
        let moved = disc_isotopy(p, q, &disc, in_plane, s)?;
        Ok(if off == T::zero() { moved } else { moved + disc.normal * off })
    }
}

fn check_time<T: Scalar>(s: T) -> Result<()> {
    if s >= T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time {} outside [0, 1]", s.as_f64())))
    }
}

/// `T(v, s)` for one field: the identity outside its pipe section.
pub fn ambient_map<T: Scalar>(field: &IsotopyField<T>, v: Point3<T>, s: T) -> Result<Point3<T>> {
    check_time(s)?;
    match field.claim(v)? {
        Some(claim) => field.apply(&claim, v, s),
        None => Ok(v),
    }
}

/// The composite isotopy: applies the single field whose section contains `v`.
///
/// Adjacent fields may both claim points of their shared junction disc, where both
/// act as the identity up to rounding; the one with the more orthogonal foot is used.
pub fn compose_isotopy<T: Scalar>(fields: &[IsotopyField<T>], v: Point3<T>, s: T) -> Result<Point3<T>> {
    check_time(s)?;
    let mut claims: Vec<(usize, Claim<T>)> = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        if let Some(c) = f.claim(v)? {
            claims.push((i, c));
        }
    }
    let chosen = match claims.as_slice() {
        [] => return Ok(v),
        [only] => *only,
        [first, rest @ ..] => {
            for other in rest {
                if other.0 != first.0 + 1 || rest.len() > 1 {
                    return Err(Error::DisjointnessViolation {
                        first: first.0,
                        second: other.0,
                    });
                }
            }
            if rest[0].1.residual < first.1.residual {
                rest[0]
            } else {
                *first
            }
        }
    };
    fields[chosen.0].apply(&chosen.1, v, s)
}

/// Fields for every pair of a subdivision, refused unless `certificate` passed for the same pairs.
pub fn build_fields<T: Scalar>(
    result: &SubdivisionResult<T>,
    certificate: &IsotopyCertificate,
    coarse: usize,
) -> Result<Vec<IsotopyField<T>>> {
    if certificate.verdict != Verdict::Pass || certificate.pairs.len() != result.len() {
        return Err(Error::Domain("isotopy fields need a passed certificate for this subdivision".into()));
    }
    let r = T::lit(certificate.radius);
    result
        .pairs()
        .map(|(seg, poly)| IsotopyField::new(seg, poly, r, coarse))
        .collect()
}

/// The point of the subdivided curve at global parameter `t`.
pub fn curve_point<T: Scalar>(fields: &[IsotopyField<T>], t: T) -> Result<Point3<T>> {
    let k = fields.partition_point(|f| f.segment().interval().1 < t);
    let f = fields
        .get(k)
        .ok_or_else(|| Error::Domain(format!("parameter {} outside the curve", t.as_f64())))?;
    let (a, b) = f.segment().interval();
    let local = ((t - a) / (b - a)).max(T::zero()).min(T::one());
    Ok(f.segment().at(local))
}

/// Frames `Psi(C(t_k), s)` for `steps` equally spaced times, `curve_samples` parameters each.
pub fn sample_frames<T: Scalar>(fields: &[IsotopyField<T>], steps: usize, curve_samples: usize) -> Result<Vec<Polyline<T>>> {
    if steps < 2 || curve_samples < 2 {
        return Err(Error::Domain("frames need at least 2 steps and 2 curve samples".into()));
    }
    if fields.is_empty() {
        return Err(Error::Domain("no isotopy fields".into()));
    }
    let lo = fields[0].segment().interval().0;
    let hi = fields[fields.len() - 1].segment().interval().1;
    let base = uniform_grid::<T>(curve_samples - 1)
        .into_iter()
        .map(|u| curve_point(fields, lo + (hi - lo) * u))
        .collect::<Result<Vec<_>>>()?;
    uniform_grid::<T>(steps - 1)
        .into_iter()
        .map(|s| {
            let verts = base
                .iter()
                .map(|&v| compose_isotopy(fields, v, s))
                .collect::<Result<Vec<_>>>()?;
            Polyline::new(verts)
        })
        .collect()
}

/// Convenience: the subdivided curve's fields for a verified approximation of `curve`.
pub fn fields_for<T: Scalar>(
    curve: &CompositeBezier<T>,
    result: &SubdivisionResult<T>,
    certificate: &IsotopyCertificate,
    coarse: usize,
) -> Result<Vec<IsotopyField<T>>> {
    if !result.len().is_multiple_of(curve.len().max(1)) {
        return Err(Error::Domain("subdivision does not match the curve".into()));
    }
    build_fields(result, certificate, coarse)
}
