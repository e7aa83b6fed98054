//! Text formats read and written by the command-line tool.

mod curve_file;
mod polyline_file;
mod report;

pub use curve_file::{parse_curve, write_curve, CurveDocument, CURVE_FORMAT_VERSION};
pub use polyline_file::{read_polyline_csv, read_polyline_obj, write_polyline_csv, write_polyline_obj};
pub use report::{
    to_json, write_bounds_text, write_certificate_text, write_pipe_text, CERTIFICATE_FORMAT_VERSION,
};

/// 17 significant digits, enough for an exact `f64` round trip.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}
