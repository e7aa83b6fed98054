//! Pairing a supplied polyline with the segments (or dyadic sub-segments) of a curve.

use crate::curve::{CompositeBezier, Polyline};
use crate::verify::SegmentPair;
use crate::{Error, Point3, Result, Scalar};

/// Pairs produced from a supplied polyline, with the subdivision depth when every
/// segment's piece turned out to be a dyadic control polygon.
#[derive(Debug, Clone)]
pub struct ExternalPairing<T> {
    pub pairs: Vec<SegmentPair<T>>,
    pub iterations: Option<u32>,
}

fn close<T: Scalar>(a: Point3<T>, b: Point3<T>, tol: T) -> bool {
    a.distance(b) <= tol
}

/// Splits `poly` at the curve's segment junctions and pairs each piece with its segment.
///
/// A piece with `n 2^i` edges whose every `n`-th vertex and control points match the
/// `i`-fold subdivision (to `1e-9` of the curve's size) is paired sub-segment by sub-segment;
/// any other piece is paired with the whole segment. Vertices within `1e-12` of a curve
/// endpoint or junction are snapped onto it.
pub fn external_pairs<T: Scalar>(curve: &CompositeBezier<T>, poly: &Polyline<T>) -> Result<ExternalPairing<T>> {
    let scale = T::one() + curve.control_diameter();
    let snap = T::lit(1e-12) * scale;
    let verts = poly.vertices();
    if !close(verts[0], curve.start(), snap) || !close(verts[verts.len() - 1], curve.end(), snap) {
        return Err(Error::Domain("polyline endpoints must coincide with the curve endpoints".into()));
    }
    let mut cuts = vec![0usize];
    for seg in &curve.segments()[..curve.len() - 1] {
        let from = cuts[cuts.len() - 1] + 1;
        let k = (from..verts.len() - 1)
            .find(|&k| close(verts[k], seg.end(), snap))
            .ok_or_else(|| Error::Domain("polyline does not pass through a segment junction".into()))?;
        cuts.push(k);
    }
    cuts.push(verts.len() - 1);

    let match_tol = T::lit(1e-9) * scale;
    let mut pairs = Vec::new();
    let mut depths = Vec::new();
    for (s, seg) in curve.segments().iter().enumerate() {
        let mut piece: Vec<Point3<T>> = verts[cuts[s]..=cuts[s + 1]].to_vec();
        let last = piece.len() - 1;
        piece[0] = seg.start();
        piece[last] = seg.end();
        let n = seg.degree();
        let m = piece.len() - 1;
        let dyadic = (m.is_multiple_of(n) && (m / n).is_power_of_two()).then(|| (m / n).trailing_zeros());
        let matched = dyadic.and_then(|i| {
            let res = seg.subdivide(i, m / n).ok()?;
            let ok = res.sub_segments.iter().enumerate().all(|(k, sub)| {
                sub.control_points()
                    .iter()
                    .zip(&piece[k * n..=(k + 1) * n])
                    .all(|(a, b)| close(*a, *b, match_tol))
            });
            ok.then_some((i, res))
        });
        match matched {
            Some((i, res)) => {
                depths.push(Some(i));
                for (k, sub) in res.sub_segments.into_iter().enumerate() {
                    let mut vs = piece[k * n..=(k + 1) * n].to_vec();
                    vs[0] = sub.start();
                    vs[n] = sub.end();
                    let (a, b) = sub.interval();
                    pairs.push((s, sub, Polyline::with_interval(vs, a, b)?));
                }
            }
            None => {
                depths.push(None);
                let (a, b) = seg.interval();
                pairs.push((s, seg.clone(), Polyline::with_interval(piece, a, b)?));
            }
        }
    }
    let iterations = match depths.first() {
        Some(Some(i)) if depths.iter().all(|d| *d == Some(*i)) => Some(*i),
        _ => None,
    };
    Ok(ExternalPairing { pairs, iterations })
}
