//! Differential and global geometry of curves and polylines.

mod angle;
mod curvature;
mod hull;
mod pipe;
mod profile;
mod separation;

pub use angle::{angle_between, spherical_chain_slack, total_curvature, total_curvature_of_points, PolylineCurvature};
pub use curvature::{
    curvature_at, curvature_report, max_curvature, max_curvature_composite, max_curvature_with, CurvatureMax,
    CurvatureReport, CURVATURE_SAMPLES, KAPPA_SAFETY_FACTOR,
};
pub use hull::{hull_distance_lower_bound, max_derivative_bound, min_derivative_norm, SIGMA_MAX_DEPTH};
pub use pipe::{pipe_radius, PipeSpec, PIPE_PROVENANCE};
pub use profile::{derivative_angle_profile, AngleProfile};
pub use separation::{
    end_radius, end_radius_with, min_separation_distance, min_separation_distance_with, Separation,
    MIN_EXCLUDED_STEPS, SELF_INTERSECTION_TOLERANCE, SEPARATION_SAMPLES,
};
