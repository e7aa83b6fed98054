use thiserror::Error;

/// Errors raised by the geometric, bounding, verification and I/O layers.
///
/// Values are widened to `f64` so the error type is independent of the scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("curve is not regular: derivative vanishes near t = {t}")]
    Regularity { t: f64 },

    #[error("curve is not simple: points at s = {s} and t = {t} are {distance} apart")]
    SelfIntersection { s: f64, t: f64, distance: f64 },

    #[error("resource cap exceeded: {requested} segments requested, cap is {cap}")]
    ResourceCap { requested: u128, cap: usize },

    #[error("bound infeasible: sigma = {sigma} does not exceed B'_dist = {b_prime_dist}")]
    BoundInfeasible { sigma: f64, b_prime_dist: f64 },

    #[error("degenerate incidence: polyline edge {edge} lies in the normal plane at t = {t}")]
    DegenerateIncidence { edge: usize, t: f64 },

    #[error("inconsistent correspondence at t = {t}: {count} disc intersections")]
    Inconsistency { t: f64, count: usize },

    #[error("ambiguous projection: parameters {t1} and {t2} are equally near")]
    Ambiguity { t1: f64, t2: f64 },

    #[error("sections {first} and {second} both claim the point")]
    DisjointnessViolation { first: usize, second: usize },

    #[error("composite curve is not C1 at junction {junction}: tangent angle {angle} rad")]
    NotC1 { junction: usize, angle: f64 },

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("segment {segment}: degree {degree} needs {expected} control points, found {found}")]
    Arity {
        segment: usize,
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
