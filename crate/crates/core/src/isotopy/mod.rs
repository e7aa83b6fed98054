//! The explicit isotopy: linear pushes on normal discs, extended through the pipe section
//! and composed over sub-curves.

mod disc;
mod field;

pub use disc::{disc_isotopy, push_map, NormalDisc};
pub use field::{
    ambient_map, build_fields, compose_isotopy, curve_point, fields_for, sample_frames, Claim, IsotopyField,
};
