//! Random curve generators shared by the integration suites.
#![allow(dead_code)]

use knotcert_core::curve::{BezierSegment, CompositeBezier};
use knotcert_core::geometry::{min_derivative_norm, pipe_radius};
use knotcert_core::Vec3;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
    Vec3::new(x, y, z)
}

pub fn unit_vector(rng: &mut ChaCha8Rng) -> Vec3<f64> {
    loop {
        let p = v(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = p.norm();
        if n > 0.1 && n <= 1.0 {
            return p / n;
        }
    }
}

/// Control points of a forward-biased random walk: each step turns by a bounded random amount.
fn walk(rng: &mut ChaCha8Rng, start: Vec3<f64>, dir: Vec3<f64>, points: usize, turn: f64) -> Vec<Vec3<f64>> {
    let mut out = vec![start];
    let mut d = dir;
    let mut p = start;
    for _ in 1..points {
        d = (d + unit_vector(rng) * turn).normalized().unwrap();
        p += d * rng.gen_range(0.6..1.4);
        out.push(p);
    }
    out
}

/// A random single segment of `degree` with the walk turn `turn`.
pub fn random_segment(rng: &mut ChaCha8Rng, degree: usize, turn: f64) -> BezierSegment<f64> {
    let dir = unit_vector(rng);
    BezierSegment::new(walk(rng, v(0., 0., 0.), dir, degree + 1, turn)).unwrap()
}

/// A random composite of `segments` pieces with tangent-continuous junctions.
pub fn random_composite(rng: &mut ChaCha8Rng, segments: usize, degrees: (usize, usize), turn: f64) -> CompositeBezier<f64> {
    let mut segs: Vec<BezierSegment<f64>> = Vec::new();
    let mut start = v(0., 0., 0.);
    let mut dir = unit_vector(rng);
    for k in 0..segments {
        let n = rng.gen_range(degrees.0..=degrees.1);
        let pts = if k == 0 {
            walk(rng, start, dir, n + 1, turn)
        } else {
            let first = start + dir * rng.gen_range(0.6..1.4);
            let mut rest = walk(rng, first, dir, n, turn);
            rest.insert(0, start);
            rest
        };
        let last = pts[pts.len() - 1];
        dir = (last - pts[pts.len() - 2]).normalized().unwrap();
        start = last;
        segs.push(BezierSegment::new(pts).unwrap());
    }
    CompositeBezier::new(segs).unwrap()
}

/// Accepts regular composites with a usable pipe.
pub fn admissible(c: &CompositeBezier<f64>) -> bool {
    c.segments().iter().all(|s| min_derivative_norm(s).is_ok_and(|x| x > 0.05))
        && pipe_radius(c, 1.0).is_ok_and(|p| p.r.is_finite() && p.r > 0.02)
}

/// `count` admissible composites (degrees 3..8, 1..3 segments) from `seed`.
pub fn corpus(seed: u64, count: usize) -> Vec<CompositeBezier<f64>> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let segments = rng.gen_range(1..=3);
        let c = random_composite(&mut rng, segments, (3, 8), 0.7);
        if admissible(&c) {
            out.push(c);
        }
    }
    out
}
