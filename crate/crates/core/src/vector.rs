//! Three-component vectors and points.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// A vector (or point) in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Points and vectors share a representation.
pub type Point3<T> = Vec3<T>;

impl<T: Scalar> Vec3<T> {
    #[inline]
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Builds a vector from `f64` components.
    #[inline]
    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        Self::new(T::lit(x), T::lit(y), T::lit(z))
    }

    #[inline]
    pub fn to_f64(self) -> [f64; 3] {
        [self.x.as_f64(), self.y.as_f64(), self.z.as_f64()]
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        let s = self.norm_sq();
        if s.is_finite() && s > T::min_positive_value() / T::epsilon() {
            return s.sqrt();
        }
        // hypot-style scaling keeps tiny and huge vectors accurate
        let m = self.x.abs().max(self.y.abs()).max(self.z.abs());
        if m == T::zero() || !m.is_finite() {
            return m;
        }
        let (x, y, z) = (self.x / m, self.y / m, self.z / m);
        m * (x * x + y * y + z * z).sqrt()
    }

    #[inline]
    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    #[inline]
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    /// `(1 - t) * self + t * o`, exact at both ends.
    #[inline]
    pub fn lerp(self, o: Self, t: T) -> Self {
        let s = T::one() - t;
        Self::new(
            s * self.x + t * o.x,
            s * self.y + t * o.y,
            s * self.z + t * o.z,
        )
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component.
    #[inline]
    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Converts to another scalar type.
    pub fn cast<U: Scalar>(self) -> Vec3<U> {
        Vec3::new(
            U::lit(self.x.as_f64()),
            U::lit(self.y.as_f64()),
            U::lit(self.z.as_f64()),
        )
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_is_orthogonal() {
        let a = Vec3::<f64>::new(1.0, 2.0, 3.0);
        let b = Vec3::new(-2.0, 0.5, 4.0);
        let c = a.cross(b);
        assert!(c.dot(a).abs() < 1e-12);
        assert!(c.dot(b).abs() < 1e-12);
    }

    #[test]
    fn norm_handles_extreme_scales() {
        let v = Vec3::<f64>::new(3e-200, 4e-200, 0.0);
        assert!((v.norm() / 5e-200 - 1.0).abs() < 1e-15);
        let w = Vec3::<f64>::new(3e200, 4e200, 0.0);
        assert!((w.norm() / 5e200 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lerp_is_exact_at_ends() {
        let a = Vec3::<f64>::new(0.1, 0.7, -0.3);
        let b = Vec3::new(1.9, -2.2, 0.4);
        assert_eq!(a.lerp(b, 0.0), a);
        assert_eq!(a.lerp(b, 1.0), b);
    }
}
