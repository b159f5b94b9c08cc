//! Scalar root finding and 1-D line searches shared across the crate.
//!
//! All routines work on plain closures. Monotonicity and unimodality are the
//! caller's responsibility; within those contracts the searches are
//! deterministic and allocation-free.

use crate::error::{Error, Result};

/// Relative tolerance for inverse evaluations (bracket width / upper end).
pub(crate) const INVERSE_REL_TOL: f64 = 1e-12;

/// Growth factor used while hunting for a bracket.
pub(crate) const BRACKET_GROWTH: f64 = 4.0;

/// (sqrt(5) - 1) / 2, the golden-section shrink ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

const MAX_BISECT_ITER: usize = 200;

/// Bracket the solution of `f(x) = target` for a nondecreasing `f` with
/// `f(0) = 0`, starting the hunt at `start > 0`. Returns `(lo, hi)` with
/// `f(lo) <= target <= f(hi)`; `lo` may be 0. Fails with `Overflow` when no
/// finite upper bracket exists (the target is above the range of `f`).
pub(crate) fn bracket_increasing(
    f: impl Fn(f64) -> f64,
    target: f64,
    start: f64,
) -> Result<(f64, f64)> {
    debug_assert!(target > 0.0 && start > 0.0);
    let mut hi = start;
    let mut steps = 0usize;
    while f(hi) < target {
        hi *= BRACKET_GROWTH;
        steps += 1;
        if steps > 400 || !hi.is_finite() {
            return Err(Error::Overflow(format!(
                "no upper bracket for target {target:e}"
            )));
        }
    }
    let mut lo = hi;
    let mut steps = 0usize;
    while f(lo) > target {
        lo /= BRACKET_GROWTH;
        steps += 1;
        if lo < 1e-300 || steps > 400 {
            lo = 0.0;
            break;
        }
    }
    Ok((lo, hi))
}

/// Bisection for `f(x) = target` with nondecreasing `f` on `[lo, hi]`,
/// assuming `f(lo) <= target <= f(hi)`. Stops when the bracket width falls
/// below `rel_tol * hi` and returns the bracket midpoint.
pub(crate) fn bisect_increasing(
    f: impl Fn(f64) -> f64,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> f64 {
    for _ in 0..MAX_BISECT_ITER {
        if hi - lo <= rel_tol * hi.max(f64::MIN_POSITIVE) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
/// Runs a fixed number of shrink steps (each multiplies the bracket width by
/// ~0.618) and returns the best probed point and its value.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    debug_assert!(a <= b);
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Golden-section maximization of a unimodal (concave-like) `f` on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (x, neg) = golden_min(|x| -f(x), a, b, iters);
    (x, -neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_then_bisect_recovers_cube_root() {
        let f = |x: f64| x * x * x;
        let (lo, hi) = bracket_increasing(f, 27.0, 1.0).unwrap();
        assert!(f(lo) <= 27.0 && f(hi) >= 27.0);
        let root = bisect_increasing(f, 27.0, lo, hi, 1e-13);
        assert!((root - 3.0).abs() < 1e-11);
    }

    #[test]
    fn bracket_reports_overflow_for_bounded_functions() {
        let f = |x: f64| x.min(1.0);
        assert!(bracket_increasing(f, 2.0, 1.0).is_err());
    }

    #[test]
    fn golden_min_finds_parabola_vertex() {
        let (x, fx) = golden_min(|x| (x - 2.5) * (x - 2.5) + 1.0, 0.0, 10.0, 90);
        // Comparison-based search can't localize a quadratic minimum past
        // sqrt(eps)·scale, so the position tolerance is looser than the
        // value tolerance.
        assert!((x - 2.5).abs() < 1e-6);
        assert!((fx - 1.0).abs() < 1e-13);
    }

    #[test]
    fn golden_max_finds_concave_peak() {
        let (x, fx) = golden_max(|x| -(x - 1.0) * (x - 1.0), 0.0, 8.0, 90);
        assert!((x - 1.0).abs() < 1e-6);
        assert!(fx.abs() < 1e-13);
    }
}
