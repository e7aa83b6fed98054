//! Direct geometric verification of the two conditions, disc uniqueness and the
//! curve-to-polygon correspondence.

mod certificate;
mod conditions;
mod disc;
mod external;

pub use certificate::{
    subdivision_pairs, verify_composite, verify_pair, verify_pairs, CertificateSummary, IsotopyCertificate, PairReport, SegmentPair,
    Tolerances, Verdict, VerifyConfig, CERTIFICATE_NOTES,
};
pub use conditions::{check_condition1, check_condition2, Condition1, Condition2, ConditionReport, TOL_MARGIN, TOL_ORTH};
pub use disc::{
    correspondence_h, disc_curve_intersections, disc_hits, disc_sweep, disc_polyline_intersections,
    verify_unique_disc_intersections, CorrespondenceRow, CorrespondenceTable, DiscHit, DiscViolation,
    UniquenessReport,
};
pub use external::{external_pairs, ExternalPairing};
