//! Bézier segments, composite curves and polylines.

mod bezier;
mod composite;
mod hausdorff;
mod polyline;
mod projection;

pub use bezier::{second_difference_norm, BezierSegment, SubdivisionResult};
pub use composite::{CompositeBezier, C1_ANGLE_TOLERANCE};
pub use hausdorff::{hausdorff_estimate, subdivision_hausdorff};
pub use polyline::{segment_foot, segment_segment_distance, Polyline, PolylineFoot};
pub use projection::{closest_parameter, Projection, SampledSegment, DEFAULT_COARSE_SAMPLES};

/// Default cap on the number of sub-segments a subdivision may produce.
pub const DEFAULT_SEGMENT_CAP: usize = 1 << 22;
