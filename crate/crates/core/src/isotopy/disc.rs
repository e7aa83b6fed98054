//! The linear push of a disc: rays from `p` go linearly onto rays from `q`, boundary fixed.

use crate::{Error, Point3, Result, Scalar, Vec3};

/// Closed disc of radius `r` centred at `center` in the plane with unit normal `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalDisc<T> {
    pub center: Point3<T>,
    pub normal: Vec3<T>,
    pub r: T,
}

impl<T: Scalar> NormalDisc<T> {
    /// Normalises `normal`; fails for a zero normal or non-positive radius.
    pub fn new(center: Point3<T>, normal: Vec3<T>, r: T) -> Result<Self> {
        let normal = normal
            .normalized()
            .ok_or_else(|| Error::Domain("disc normal must be nonzero".into()))?;
        if !(r > T::zero() && r.is_finite()) {
            return Err(Error::Domain(format!("disc radius must be finite and positive, got {}", r.as_f64())));
        }
        Ok(Self { center, normal, r })
    }

    fn slack(&self) -> T {
        T::tol(1e-12) * (T::one() + self.r + self.center.max_abs())
    }

    /// Whether `v` lies in the closed disc, up to rounding.
    pub fn contains(&self, v: Point3<T>) -> bool {
        let d = v - self.center;
        d.dot(self.normal).abs() <= self.slack() && d.norm() <= self.r + self.slack()
    }

    fn interior(&self, v: Point3<T>) -> bool {
        let d = v - self.center;
        d.dot(self.normal).abs() <= self.slack() && d.norm() < self.r
    }
}

/// `F_{p,q}(v)`: writes `v = (1 - l) p + l b` with `b` on the boundary ray from `p`
/// through `v` and returns `(1 - l) q + l b`.
pub fn push_map<T: Scalar>(p: Point3<T>, q: Point3<T>, disc: &NormalDisc<T>, v: Point3<T>) -> Result<Point3<T>> {
    if !disc.interior(p) || !disc.interior(q) {
        return Err(Error::Domain("push centres must lie in the open disc".into()));
    }
    if !disc.contains(v) {
        return Err(Error::Domain("point outside the disc".into()));
    }
    if p == q {
        return Ok(v);
    }
    if v == p {
        return Ok(q);
    }
    let d = v - p;
    let w = p - disc.center;
    let a = d.norm_sq();
    let b = T::lit(2.0) * d.dot(w);
    let c = w.norm_sq() - disc.r * disc.r;
    let disc_sq = (b * b - T::lit(4.0) * a * c).max(T::zero());
    // c < 0, so the roots have opposite signs; take the positive one in a cancellation-free form
    let mu = if b <= T::zero() {
        (-b + disc_sq.sqrt()) / (T::lit(2.0) * a)
    } else {
        (T::lit(-2.0) * c) / (b + disc_sq.sqrt())
    };
    let lambda = T::one() / mu;
    if lambda >= T::one() {
        return Ok(v);
    }
    let boundary = p + d * mu;
    Ok(q * (T::one() - lambda) + boundary * lambda)
}

/// `H(v, s) = F_{p, (1-s) p + s q}(v)`; the identity at `s = 0` and `F_{p,q}` at `s = 1`.
pub fn disc_isotopy<T: Scalar>(p: Point3<T>, q: Point3<T>, disc: &NormalDisc<T>, v: Point3<T>, s: T) -> Result<Point3<T>> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(Error::Domain(format!("time {} outside [0, 1]", s.as_f64())));
    }
    push_map(p, p.lerp(q, s), disc, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    fn unit() -> NormalDisc<f64> {
        NormalDisc::new(v(0., 0., 0.), v(0., 0., 2.), 1.0).unwrap()
    }

    #[test]
    fn worked_push() {
        let out = push_map(v(0., 0., 0.), v(0.5, 0., 0.), &unit(), v(-0.5, 0., 0.)).unwrap();
        assert!(out.distance(v(-0.25, 0., 0.)) < 1e-15);
        let half = disc_isotopy(v(0., 0., 0.), v(0.5, 0., 0.), &unit(), v(-0.5, 0., 0.), 0.5).unwrap();
        assert!(half.distance(v(-0.375, 0., 0.)) < 1e-15);
    }

    #[test]
    fn identity_cases() {
        let d = unit();
        let p = v(0.1, 0.2, 0.);
        let x = v(-0.3, 0.4, 0.);
        assert_eq!(push_map(p, p, &d, x).unwrap(), x);
        assert_eq!(disc_isotopy(p, v(0.5, 0., 0.), &d, x, 0.0).unwrap(), x);
        let rim = v(0.6, 0.8, 0.);
        assert_eq!(push_map(p, v(-0.5, 0.1, 0.), &d, rim).unwrap(), rim);
        assert_eq!(push_map(p, v(-0.5, 0.1, 0.), &d, p).unwrap(), v(-0.5, 0.1, 0.));
    }

    #[test]
    fn endpoint_time_matches_push() {
        let d = unit();
        let (p, q, x) = (v(0.1, 0.2, 0.), v(-0.2, 0.3, 0.), v(0.7, -0.1, 0.));
        assert_eq!(disc_isotopy(p, q, &d, x, 1.0).unwrap(), push_map(p, q, &d, x).unwrap());
    }

    #[test]
    fn inverse_push_restores() {
        let d = unit();
        let (p, q) = (v(0.3, -0.2, 0.), v(-0.4, 0.1, 0.));
        for k in 0..50 {
            let a = k as f64 * 0.37;
            let rad = 0.95 * ((k * 7 % 13) as f64 / 13.0);
            let x = v(rad * a.cos(), rad * a.sin(), 0.);
            let y = push_map(p, q, &d, x).unwrap();
            let back = push_map(q, p, &d, y).unwrap();
            assert!(back.distance(x) < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = unit();
        assert!(push_map(v(1., 0., 0.), v(0., 0., 0.), &d, v(0., 0., 0.)).is_err());
        assert!(push_map(v(0., 0., 0.), v(0.1, 0., 0.), &d, v(2., 0., 0.)).is_err());
        assert!(push_map(v(0., 0., 0.), v(0.1, 0., 0.), &d, v(0., 0., 0.5)).is_err());
        assert!(disc_isotopy(v(0., 0., 0.), v(0.1, 0., 0.), &d, v(0., 0., 0.), 1.5).is_err());
        assert!(NormalDisc::new(v(0., 0., 0.), v(0., 0., 0.), 1.0).is_err());
    }
}
