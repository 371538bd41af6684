//! Bracketing root finding and unimodal maximization.
//!
//! Only bisection is used for roots: it cannot leave the bracket, and the
//! certificate pipeline depends on every root staying inside its stated
//! interval.

use crate::error::{Error, Result};

/// Bisects `f` on `[lo, hi]` until the bracket is narrower than `xtol`.
///
/// The endpoints must have opposite signs (or one of them must be a root).
pub fn bisect<F>(what: &'static str, f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let fa0 = f(a);
    let fb0 = f(b);
    if fa0 == 0.0 {
        return Ok(a);
    }
    if fb0 == 0.0 {
        return Ok(b);
    }
    if !(fa0.is_finite() && fb0.is_finite()) || (fa0 > 0.0) == (fb0 > 0.0) {
        return Err(Error::NoSignChange {
            what,
            lo,
            hi,
            f_lo: fa0,
            f_hi: fb0,
        });
    }
    let a_positive = fa0 > 0.0;
    // 200 halvings exhaust the f64 mantissa for any finite bracket.
    for _ in 0..200 {
        if b - a <= xtol {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == a_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // Compare the interior survivor against the endpoints so that a maximum
    // sitting on the boundary is not lost.
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [a, b, lo, hi] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Dense grid scan over `[lo, hi]` followed by golden-section refinement on
/// the winning cell and its neighbours.
pub fn grid_then_golden_max<F>(f: F, lo: f64, hi: f64, step: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if hi <= lo {
        return (lo, f(lo));
    }
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let node = |k: usize| {
        if k >= cells {
            hi
        } else {
            lo + (hi - lo) * (k as f64) / (cells as f64)
        }
    };
    let mut best_k = 0;
    let mut best_v = f64::NEG_INFINITY;
    for k in 0..=cells {
        let v = f(node(k));
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }
    let a = node(best_k.saturating_sub(1));
    let b = node((best_k + 1).min(cells));
    let (x, v) = golden_max(&f, a, b, xtol);
    if v >= best_v {
        (x, v)
    } else {
        (node(best_k), best_v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect("sqrt2", |x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_reports_missing_sign_change() {
        let err = bisect("positive", |x| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn golden_keeps_boundary_maximum() {
        let (x, v) = golden_max(|x| x, 0.0, 1.0, 1e-10);
        assert_eq!(x, 1.0);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn grid_golden_on_kink() {
        let (x, v) = grid_then_golden_max(|x| -(x - 0.3).abs(), 0.0, 1.0, 1e-3, 1e-12);
        assert!((x - 0.3).abs() < 1e-10);
        assert!(v.abs() < 1e-10);
    }
}
