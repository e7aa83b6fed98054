//! Whole-curve verification and the resulting certificate.

use serde::Serialize;

use crate::bounds::CompositeBounds;
use crate::curve::{BezierSegment, CompositeBezier, Polyline, SubdivisionResult, DEFAULT_COARSE_SAMPLES};
use crate::geometry::PipeSpec;
use crate::verify::{
    check_condition1, check_condition2, disc_sweep, ConditionReport, UniquenessReport, TOL_MARGIN, TOL_ORTH,
};
use crate::{Error, Result, Scalar};

/// Sampling densities used by verification; recorded verbatim in the certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Parameters per sub-pair for the angle profile, disc sweep and correspondence.
    pub grid_size: usize,
    /// Interior samples per polygon edge for pipe containment.
    pub edge_samples: usize,
    /// Coarse samples per nearest-parameter search.
    pub coarse_samples: usize,
    /// Curve samples when counting curve/disc crossings.
    pub curve_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_size: 257,
            edge_samples: 32,
            coarse_samples: DEFAULT_COARSE_SAMPLES,
            curve_samples: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Everything verified on one sub-curve/sub-polygon pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub index: usize,
    pub segment: usize,
    pub degree: usize,
    pub conditions: ConditionReport,
    /// Present when both conditions held.
    pub uniqueness: Option<UniquenessReport>,
    /// Whether the disc correspondence is strictly monotone along the polygon.
    pub monotone: Option<bool>,
    /// Largest `|C(t) - L~(t)|` on the grid.
    pub max_displacement: Option<f64>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.conditions.passed()
            && self.uniqueness.as_ref().is_some_and(UniquenessReport::passed)
            && self.monotone == Some(true)
    }
}

/// Worst values over all pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateSummary {
    pub pairs: usize,
    pub passed_pairs: usize,
    pub min_clearance: f64,
    pub min_condition2_margin: f64,
    pub max_condition2_value: f64,
    pub max_displacement: f64,
    pub disc_violations: usize,
}

/// Verification record for one polygonal approximation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotopyCertificate {
    pub tool_version: String,
    pub verdict: Verdict,
    pub iterations: Option<u32>,
    pub radius: f64,
    pub pipe: Option<PipeSpec<f64>>,
    pub bounds: Option<CompositeBounds<f64>>,
    pub config: VerifyConfig,
    pub tolerances: Tolerances,
    pub summary: CertificateSummary,
    pub pairs: Vec<PairReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub tol_orth_relative: f64,
    pub tol_margin: f64,
}

/// Fixed modelling choices echoed into every certificate.
pub const CERTIFICATE_NOTES: &[&str] = &[
    "log base 2 in all iteration counts",
    "M = largest hodograph control-point norm (upper bound of max |C'|)",
    "N_inf(k) = floor(k/2) ceil(k/2) / (2k)",
    "B'_dist evaluated at ceil(N_1) in f(nu)",
    "derivative-angle requirement uses 1 - cos(theta) <= 2 B'_dist / sigma < 1/2",
    "one common pipe radius r for every sub-curve",
    "pipe interior: distance to the sub-curve < r with an orthogonal foot (tangential residual < tol_orth (1 + |q|))",
    "adjacent sub-curves share their junction disc, where the isotopy is the identity",
];

/// A sub-curve and its polygon, tagged with the index of the segment it came from.
pub type SegmentPair<T> = (usize, BezierSegment<T>, Polyline<T>);

/// Checks one pair: both conditions, then disc uniqueness and the correspondence when they hold.
pub fn verify_pair<T: Scalar>(
    index: usize,
    segment: usize,
    seg: &BezierSegment<T>,
    polyline: &Polyline<T>,
    r: T,
    config: &VerifyConfig,
) -> Result<PairReport> {
    let condition1 = check_condition1(polyline, seg, r, config.edge_samples, config.coarse_samples)?;
    let condition2 = check_condition2(polyline, seg, config.grid_size)?;
    let (a, b) = seg.interval();
    let conditions = ConditionReport {
        sub_interval: (a.as_f64(), b.as_f64()),
        condition1,
        condition2,
    };
    let mut report = PairReport {
        index,
        segment,
        degree: seg.degree(),
        conditions,
        uniqueness: None,
        monotone: None,
        max_displacement: None,
    };
    if !conditions.passed() {
        return Ok(report);
    }
    let (uniqueness, table) = disc_sweep(seg, polyline, r, config.grid_size, config.curve_samples)?;
    if let Some(table) = table {
        report.monotone = Some(table.is_monotone());
        report.max_displacement = Some(table.max_displacement().as_f64());
    }
    report.uniqueness = Some(uniqueness);
    Ok(report)
}

/// Verifies `(segment index, sub-curve, polygon)` triples against a common radius.
pub fn verify_pairs<T: Scalar>(
    pairs: &[SegmentPair<T>],
    r: T,
    config: &VerifyConfig,
) -> Result<IsotopyCertificate> {
    if config.grid_size < 2 {
        return Err(Error::Domain(format!("grid size must be at least 2, got {}", config.grid_size)));
    }
    let reports = pairs
        .iter()
        .enumerate()
        .map(|(i, (segment, seg, poly))| verify_pair(i, *segment, seg, poly, r, config))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = CertificateSummary {
        pairs: reports.len(),
        passed_pairs: 0,
        min_clearance: f64::INFINITY,
        min_condition2_margin: f64::INFINITY,
        max_condition2_value: 0.0,
        max_displacement: 0.0,
        disc_violations: 0,
    };
    for rep in &reports {
        summary.passed_pairs += usize::from(rep.passed());
        summary.min_clearance = summary.min_clearance.min(rep.conditions.condition1.clearance);
        summary.min_condition2_margin = summary.min_condition2_margin.min(rep.conditions.condition2.margin);
        summary.max_condition2_value = summary.max_condition2_value.max(rep.conditions.condition2.value);
        summary.max_displacement = summary.max_displacement.max(rep.max_displacement.unwrap_or(0.0));
        summary.disc_violations += rep.uniqueness.as_ref().map_or(0, |u| u.violations.len());
    }
    let verdict = if !reports.is_empty() && summary.passed_pairs == reports.len() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(IsotopyCertificate {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        verdict,
        iterations: None,
        radius: r.as_f64(),
        pipe: None,
        bounds: None,
        config: *config,
        tolerances: Tolerances {
            tol_orth_relative: TOL_ORTH,
            tol_margin: TOL_MARGIN,
        },
        summary,
        pairs: reports,
        notes: CERTIFICATE_NOTES.iter().map(|s| s.to_string()).collect(),
    })
}

/// Pairs each sub-curve of a subdivision with its control polygon, tagged by source segment.
pub fn subdivision_pairs<T: Scalar>(
    curve: &CompositeBezier<T>,
    result: &SubdivisionResult<T>,
) -> Result<Vec<SegmentPair<T>>> {
    let per = 1usize
        .checked_shl(result.iterations)
        .ok_or(Error::ResourceCap {
            requested: u128::MAX,
            cap: usize::MAX,
        })?;
    if result.len() != per * curve.len() {
        return Err(Error::Domain(format!(
            "subdivision has {} pieces, expected {} for {} segment(s)",
            result.len(),
            per * curve.len(),
            curve.len()
        )));
    }
    Ok(result
        .pairs()
        .enumerate()
        .map(|(i, (s, p))| (i / per, s.clone(), p.clone()))
        .collect())
}

/// Verifies a subdivision of `curve` against the pipe radius in `pipe`.
pub fn verify_composite<T: Scalar>(
    curve: &CompositeBezier<T>,
    result: &SubdivisionResult<T>,
    pipe: &PipeSpec<T>,
    config: &VerifyConfig,
) -> Result<IsotopyCertificate> {
    let r = pipe.finite_radius()?;
    let mut cert = verify_pairs(&subdivision_pairs(curve, result)?, r, config)?;
    cert.iterations = Some(result.iterations);
    cert.pipe = Some(pipe.to_f64());
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pipe_radius;
    use crate::Vec3;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn collinear_lines_pass() {
        let a = BezierSegment::new(vec![v(0., 0., 0.), v(1., 0., 0.)]).unwrap();
        let b = BezierSegment::new(vec![v(1., 0., 0.), v(3., 0., 0.)]).unwrap();
        let c = CompositeBezier::new(vec![a, b]).unwrap();
        let pipe = pipe_radius(&c, 1.0).unwrap().with_radius(0.5).unwrap();
        let res = c.subdivide(0, 16).unwrap();
        let cert = verify_composite(&c, &res, &pipe, &VerifyConfig::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.summary.pairs, 2);
        assert_eq!(cert.pairs[1].segment, 1);
    }

    #[test]
    fn quadratic_fails_raw_and_passes_at_two() {
        let q = BezierSegment::new(vec![v(0., 0., 0.), v(1., 1., 0.), v(2., 0., 0.)]).unwrap();
        let c = CompositeBezier::single(q).unwrap();
        let pipe = pipe_radius(&c, 1.0).unwrap();
        let cfg = VerifyConfig::default();
        let raw = verify_composite(&c, &c.subdivide(0, 16).unwrap(), &pipe, &cfg).unwrap();
        assert_eq!(raw.verdict, Verdict::Fail);
        assert!(!raw.pairs[0].conditions.condition2.passed);
        let two = verify_composite(&c, &c.subdivide(2, 16).unwrap(), &pipe, &cfg).unwrap();
        assert_eq!(two.verdict, Verdict::Pass, "{:?}", two.summary);
        assert_eq!(two.iterations, Some(2));
        assert!(two.summary.min_clearance > 0.0);
    }

    #[test]
    fn mismatched_subdivision_is_rejected() {
        let q = BezierSegment::new(vec![v(0., 0., 0.), v(1., 1., 0.), v(2., 0., 0.)]).unwrap();
        let c = CompositeBezier::single(q.clone()).unwrap();
        let two = CompositeBezier::new(vec![
            q.clone(),
            BezierSegment::new(vec![v(2., 0., 0.), v(3., -1., 0.), v(4., 0., 0.)]).unwrap(),
        ])
        .unwrap();
        let res = two.subdivide(1, 16).unwrap();
        assert!(subdivision_pairs(&c, &res).is_err());
    }
}
