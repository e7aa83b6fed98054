//! One-dimensional search helpers used by the extremum and projection routines.

use crate::Scalar;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimisation of a unimodal `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol` or after `max_iter` steps.
/// Returns the best abscissa seen together with its value.
pub fn golden_min<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    mut lo: T,
    mut hi: T,
    tol: T,
    max_iter: usize,
) -> (T, T) {
    let r = T::lit(INV_PHI);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Golden-section maximisation; see [`golden_min`].
pub fn golden_max<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    tol: T,
    max_iter: usize,
) -> (T, T) {
    let (x, v) = golden_min(|x| -f(x), lo, hi, tol, max_iter);
    (x, -v)
}

/// `count + 1` evenly spaced parameters covering `[0, 1]` with exact ends.
pub fn uniform_grid<T: Scalar>(count: usize) -> Vec<T> {
    let n = T::from_count(count.max(1));
    (0..=count.max(1))
        .map(|k| {
            if k == count.max(1) {
                T::one()
            } else {
                T::from_count(k) / n
            }
        })
        .collect()
}

/// Indices of discrete interior local minima of `values` (plateaus reported once).
pub fn local_minima<T: Scalar>(values: &[T]) -> Vec<usize> {
    let n = values.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(0);
        return out;
    }
    for i in 0..n {
        let left_ok = i == 0 || values[i] < values[i - 1];
        let right_ok = i + 1 == n || values[i] <= values[i + 1];
        if left_ok && right_ok {
            out.push(i);
        }
    }
    out
}
