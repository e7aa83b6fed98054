//! A-priori subdivision counts.
//!
//! All logarithms are base 2: the derivative distance bound decays by a factor 4
//! per subdivision, and the counts below invert exactly that decay.

use serde::Serialize;

use crate::curve::{second_difference_norm, BezierSegment, CompositeBezier};
use crate::geometry::{max_derivative_bound, min_derivative_norm};
use crate::{Error, Result, Scalar};

/// Control-polygon distance constant `floor(k/2) ceil(k/2) / (2k)`.
pub fn n_infinity<T: Scalar>(k: usize) -> Result<T> {
    if k < 1 {
        return Err(Error::Domain("N_inf needs degree >= 1".into()));
    }
    let lo = k / 2;
    let hi = k - lo;
    Ok(T::from_count(lo * hi) / T::from_count(2 * k))
}

/// Constants of one segment that feed every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInputs<T> {
    /// Degree `n` of the curve.
    pub n: usize,
    /// `N_inf(n - 1)` (zero when the hodograph is constant).
    pub n_inf_hodo: T,
    /// `N_inf(n)`.
    pub n_inf_curve: T,
    /// Second-difference norm of the hodograph control points.
    pub d2p_prime: T,
    /// Second-difference norm of the curve control points.
    pub d2p: T,
    /// Lower bound on `min |C'|`.
    pub sigma: T,
    /// Stand-in for `M`: largest hodograph control-point norm.
    pub m_const: T,
}

impl<T: Scalar> BoundInputs<T> {
    /// Gathers the constants of `seg`; fails if the segment is not regular.
    pub fn from_segment(seg: &BezierSegment<T>) -> Result<Self> {
        let n = seg.degree();
        let hodo = seg.hodograph();
        let n_inf_hodo = if n >= 2 { n_infinity(n - 1)? } else { T::zero() };
        let d2p_prime = if hodo.control_points().len() >= 3 {
            second_difference_norm(hodo.control_points())?
        } else {
            T::zero()
        };
        let d2p = if n >= 2 { second_difference_norm(seg.control_points())? } else { T::zero() };
        let inputs = Self {
            n,
            n_inf_hodo,
            n_inf_curve: n_infinity(n.max(1))?,
            d2p_prime,
            d2p,
            sigma: min_derivative_norm(seg)?,
            m_const: max_derivative_bound(seg),
        };
        inputs.validate()?;
        Ok(inputs)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.n_inf_hodo, self.n_inf_curve, self.d2p_prime, self.d2p, self.sigma, self.m_const];
        if vals.iter().any(|v| !v.is_finite() || *v < T::zero()) {
            return Err(Error::Domain("bound inputs must be finite and nonnegative".into()));
        }
        if !(self.sigma > T::zero()) {
            return Err(Error::Domain("sigma must be positive".into()));
        }
        if self.n < 1 {
            return Err(Error::Domain("degree must be at least 1".into()));
        }
        Ok(())
    }

    /// `N_inf(n-1) (n-1) |D2 P'|`, the numerator of `B'_dist`.
    pub fn hodograph_constant(&self) -> T {
        self.n_inf_hodo * T::from_count(self.n.saturating_sub(1)) * self.d2p_prime
    }

    pub fn to_f64(&self) -> BoundInputs<f64> {
        BoundInputs {
            n: self.n,
            n_inf_hodo: self.n_inf_hodo.as_f64(),
            n_inf_curve: self.n_inf_curve.as_f64(),
            d2p_prime: self.d2p_prime.as_f64(),
            d2p: self.d2p.as_f64(),
            sigma: self.sigma.as_f64(),
            m_const: self.m_const.as_f64(),
        }
    }

    /// `N_1 = 1/2 log2(N_inf(n-1) (n-1) |D2 P'| / sigma)`; `-inf` when the numerator vanishes.
    pub fn n1(&self) -> T {
        let k = self.hodograph_constant();
        if k == T::zero() {
            return T::neg_infinity();
        }
        T::lit(0.5) * (k / self.sigma).log2()
    }

    /// The exterior-angle threshold `pi / (2 (n - 1))` that keeps the total turn below a right angle.
    pub fn angle_threshold(&self) -> T {
        if self.n < 2 {
            return T::FRAC_PI_2();
        }
        T::PI() / T::from_count(2 * (self.n - 1))
    }
}

/// `B'_dist(i) = 4^-i N_inf(n-1) (n-1) |D2 P'|`.
pub fn b_prime_dist<T: Scalar>(i: u32, inputs: &BoundInputs<T>) -> T {
    inputs.hodograph_constant() / T::lit(4.0).powi(i as i32)
}

/// Ceiling that absorbs a few ulps of rounding, so `log2 4.0000000000000009` counts as 2.
fn ceil_count<T: Scalar>(x: T) -> u32 {
    if !(x > T::zero()) {
        return 0;
    }
    let slack = T::lit(64.0) * T::epsilon() * x.max(T::one());
    (x - slack).ceil().max(T::zero()).to_u32().unwrap_or(u32::MAX)
}

/// Plain ceiling clamped at 0, used where rounding down would be unsafe.
fn ceil_index<T: Scalar>(x: T) -> u32 {
    if !(x > T::zero()) {
        return 0;
    }
    x.ceil().to_u32().unwrap_or(u32::MAX)
}

/// `N(nu) = ceil(max(N_1, log2 f(nu)))` with
/// `f(nu) = 2M / ((1 - cos nu)(sigma - B'_dist(ceil N_1)))`.
///
/// `nu` may equal `pi/2`, which is the threshold for quadratics.
pub fn iterations_for_angle<T: Scalar>(nu: T, inputs: &BoundInputs<T>) -> Result<u32> {
    inputs.validate()?;
    if !(nu > T::zero() && nu <= T::FRAC_PI_2()) {
        return Err(Error::Domain(format!("angle {} outside (0, pi/2]", nu.as_f64())));
    }
    let n1 = inputs.n1();
    let b = b_prime_dist(ceil_index(n1), inputs);
    let gap = inputs.sigma - b;
    let denom = (T::one() - nu.cos()) * gap;
    if !(gap > T::zero() && denom > T::zero()) {
        return Err(Error::BoundInfeasible {
            sigma: inputs.sigma.as_f64(),
            b_prime_dist: b.as_f64(),
        });
    }
    let f = T::lit(2.0) * inputs.m_const / denom;
    Ok(ceil_count(n1.max(f.log2())))
}

/// Count from the derivative-angle inequality `1 - cos theta <= 2 B'_dist(i) / sigma < 1/2`:
/// `i >= 1/2 log2(N_inf(n-1) (n-1) |D2 P'| / sigma) + 1`. `None` when the constant vanishes.
pub fn derivative_angle_iterations<T: Scalar>(inputs: &BoundInputs<T>) -> Option<u32> {
    let n1 = inputs.n1();
    if n1 == T::neg_infinity() {
        None
    } else {
        Some(ceil_count(n1 + T::one()))
    }
}

/// Subdivisions sufficient for total curvature plus derivative angle below `pi/2`:
/// one more than `N(pi / (2(n-1)))`, and never less than the derivative-angle count.
/// A line needs none.
pub fn iterations_for_condition2<T: Scalar>(inputs: &BoundInputs<T>) -> Result<u32> {
    if inputs.n < 2 {
        inputs.validate()?;
        return Ok(0);
    }
    let base = iterations_for_angle(inputs.angle_threshold(), inputs)? + 1;
    Ok(derivative_angle_iterations(inputs).map_or(base, |d| base.max(d)))
}

/// Smallest `i` with `4^-i N_inf(n) |D2 P| <= r / 2`.
pub fn iterations_for_radius<T: Scalar>(r: T, inputs: &BoundInputs<T>) -> Result<u32> {
    if !(r > T::zero() && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be finite and positive, got {}", r.as_f64())));
    }
    let c = inputs.n_inf_curve * inputs.d2p;
    let half = r * T::lit(0.5);
    let mut i = 0u32;
    let mut v = c;
    while v > half {
        i += 1;
        v = c / T::lit(4.0).powi(i as i32);
        if i > 256 {
            return Err(Error::Domain("radius bound does not converge".into()));
        }
    }
    Ok(i)
}

/// All subdivision counts for one segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub inputs: BoundInputs<T>,
    pub r: T,
    pub n1: T,
    /// Angle threshold `pi / (2(n-1))`.
    pub nu: T,
    /// `N(nu)` at the threshold (zero for lines).
    pub n_of_nu: u32,
    /// Derivative-angle branch, when defined.
    pub derivative_branch: Option<u32>,
    /// Count for the angle condition: `N(nu) + 1` combined with the derivative branch.
    pub n_condition2: u32,
    /// `N'(r)`.
    pub n_prime: u32,
    /// `max(N(nu) + 1, N'(r))`.
    pub n_star: u32,
    /// Earlier bound `max(N(nu), N'(r)) + 2`.
    pub old_bound: u32,
}

impl<T: Scalar> BoundReport<T> {
    /// True when the angle term is the larger one in the earlier bound. Lines have no angle term.
    pub fn angle_dominates(&self) -> bool {
        self.inputs.n >= 2 && self.n_of_nu >= self.n_prime
    }

    pub fn to_f64(&self) -> BoundReport<f64> {
        BoundReport {
            inputs: self.inputs.to_f64(),
            r: self.r.as_f64(),
            n1: self.n1.as_f64(),
            nu: self.nu.as_f64(),
            n_of_nu: self.n_of_nu,
            derivative_branch: self.derivative_branch,
            n_condition2: self.n_condition2,
            n_prime: self.n_prime,
            n_star: self.n_star,
            old_bound: self.old_bound,
        }
    }
}

/// `N* = max(N(pi/(2(n-1))) + 1, N'(r))` together with the earlier bound it improves on.
pub fn n_star<T: Scalar>(r: T, inputs: &BoundInputs<T>) -> Result<BoundReport<T>> {
    let nu = inputs.angle_threshold();
    let n_of_nu = if inputs.n < 2 { 0 } else { iterations_for_angle(nu, inputs)? };
    let n_condition2 = iterations_for_condition2(inputs)?;
    let n_prime = iterations_for_radius(r, inputs)?;
    let n_star = n_condition2.max(n_prime);
    let old_bound = n_of_nu.max(n_prime) + 2;
    if n_star > old_bound {
        return Err(Error::Invariant(format!("N* = {n_star} exceeds the earlier bound {old_bound}")));
    }
    Ok(BoundReport {
        inputs: *inputs,
        r,
        n1: inputs.n1(),
        nu,
        n_of_nu,
        derivative_branch: derivative_angle_iterations(inputs),
        n_condition2,
        n_prime,
        n_star,
        old_bound,
    })
}

/// Per-segment reports for a composite curve; every segment is subdivided the same number of times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeBounds<T> {
    pub segments: Vec<BoundReport<T>>,
    pub n_star: u32,
    pub old_bound: u32,
}

impl<T: Scalar> CompositeBounds<T> {
    pub fn to_f64(&self) -> CompositeBounds<f64> {
        CompositeBounds {
            segments: self.segments.iter().map(BoundReport::to_f64).collect(),
            n_star: self.n_star,
            old_bound: self.old_bound,
        }
    }
}

pub fn composite_bounds<T: Scalar>(curve: &CompositeBezier<T>, r: T) -> Result<CompositeBounds<T>> {
    let segments = curve
        .segments()
        .iter()
        .map(|s| n_star(r, &BoundInputs::from_segment(s)?))
        .collect::<Result<Vec<_>>>()?;
    let n_star = segments.iter().map(|b| b.n_star).max().unwrap_or(0);
    let old_bound = segments.iter().map(|b| b.old_bound).max().unwrap_or(2);
    Ok(CompositeBounds {
        segments,
        n_star,
        old_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn inputs(n: usize, d2p_prime: f64, sigma: f64, m: f64) -> BoundInputs<f64> {
        BoundInputs {
            n,
            n_inf_hodo: n_infinity(n - 1).unwrap_or(0.0),
            n_inf_curve: n_infinity(n).unwrap(),
            d2p_prime,
            d2p: 0.0,
            sigma,
            m_const: m,
        }
    }

    #[test]
    fn n_infinity_values() {
        assert_eq!(n_infinity::<f64>(1).unwrap(), 0.0);
        assert_eq!(n_infinity::<f64>(2).unwrap(), 0.25);
        assert!((n_infinity::<f64>(3).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!(n_infinity::<f64>(0).is_err());
    }

    #[test]
    fn b_prime_examples() {
        let inp = inputs(3, 2.0, 1.0, 1.0);
        assert_eq!(b_prime_dist(0, &inp), 1.0);
        for i in 0..6 {
            assert_eq!(b_prime_dist(i, &inp) / b_prime_dist(i + 1, &inp), 4.0);
        }
        let flat = inputs(3, 0.0, 1.0, 1.0);
        assert_eq!(b_prime_dist(3, &flat), 0.0);
    }

    #[test]
    fn angle_count_examples() {
        // f = 2 / ((1 - 1/2) 1) = 4, log2 4 = 2
        let flat = inputs(3, 0.0, 1.0, 1.0);
        assert_eq!(flat.n1(), f64::NEG_INFINITY);
        assert_eq!(iterations_for_angle(PI / 3.0, &flat).unwrap(), 2);
        // N_1 = 0 and B'_dist(0) = sigma: zero denominator
        let tight = inputs(3, 2.0, 1.0, 1.0);
        assert_eq!(tight.n1(), 0.0);
        assert!(matches!(
            iterations_for_angle(PI / 4.0, &tight),
            Err(Error::BoundInfeasible { sigma, b_prime_dist }) if sigma == 1.0 && b_prime_dist == 1.0
        ));
        assert!(iterations_for_angle(0.0, &flat).is_err());
        assert!(iterations_for_angle(2.0, &flat).is_err());
    }

    #[test]
    fn angle_count_is_monotone() {
        let inp = inputs(4, 1.0, 0.5, 1.0);
        let mut prev = u32::MAX;
        for k in 1..=50 {
            let nu = k as f64 / 50.0 * PI / 2.0;
            let n = iterations_for_angle(nu, &inp).unwrap();
            assert!(n <= prev);
            prev = n;
        }
    }

    #[test]
    fn condition2_examples() {
        let flat = inputs(3, 0.0, 1.0, 1.0);
        let base = iterations_for_angle(PI / 4.0, &flat).unwrap();
        assert_eq!(iterations_for_condition2(&flat).unwrap(), base + 1);

        // n = 4, K = N_inf(3) * 3 * 1 = 1, sigma = 0.5: N_1 = 0.5, derivative branch = ceil(1.5) = 2
        let inp = inputs(4, 1.0, 0.5, 1.0);
        assert!((inp.n1() - 0.5).abs() < 1e-15);
        assert_eq!(derivative_angle_iterations(&inp), Some(2));
        // f(pi/6) = 2 / ((1 - cos(pi/6)) (0.5 - 1/4)) = 59.71..., log2 = 5.9 -> N = 6
        let f = 2.0 / ((1.0 - (PI / 6.0).cos()) * 0.25);
        assert_eq!(iterations_for_angle(PI / 6.0, &inp).unwrap(), f.log2().ceil() as u32);
        assert_eq!(iterations_for_condition2(&inp).unwrap(), 7);
    }

    #[test]
    fn radius_count_examples() {
        let mut inp = inputs(3, 0.0, 1.0, 1.0);
        assert_eq!(iterations_for_radius(0.1, &inp).unwrap(), 0);
        inp.d2p = 2.0;
        // (1/3) * 2 * 4^-i <= 1/6  <=>  i >= 1
        assert_eq!(iterations_for_radius(1.0 / 3.0, &inp).unwrap(), 1);
        for k in 1..40 {
            let r = k as f64 * 0.01;
            let a = iterations_for_radius(r, &inp).unwrap();
            let b = iterations_for_radius(2.0 * r, &inp).unwrap();
            assert!(a >= b && a - b <= 1);
        }
        assert!(iterations_for_radius(0.0, &inp).is_err());
        assert!(iterations_for_radius(f64::INFINITY, &inp).is_err());
    }

    #[test]
    fn n_star_examples() {
        let flat = inputs(3, 0.0, 1.0, 1.0);
        let rep = n_star(10.0, &flat).unwrap();
        let n_pi4 = iterations_for_angle(PI / 4.0, &flat).unwrap();
        assert_eq!(rep.n_of_nu, n_pi4);
        assert_eq!(rep.n_star, n_pi4 + 1);
        assert_eq!(rep.old_bound, n_pi4 + 2);

        let mut radius_heavy = flat;
        radius_heavy.d2p = 1e6;
        let rep = n_star(1e-3, &radius_heavy).unwrap();
        assert!(rep.n_prime > rep.n_condition2);
        assert_eq!(rep.n_star, rep.n_prime);
        assert_eq!(rep.old_bound, rep.n_prime + 2);
    }

    #[test]
    fn line_needs_no_subdivision() {
        let seg = BezierSegment::new(vec![crate::Vec3::new(0., 0., 0.), crate::Vec3::new(2., 0., 0.)]).unwrap();
        let inp = BoundInputs::from_segment(&seg).unwrap();
        assert_eq!(inp.sigma, 2.0);
        let rep = n_star(1.0, &inp).unwrap();
        assert_eq!(rep.n_star, 0);
    }
}
