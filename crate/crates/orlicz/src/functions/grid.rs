//! Piecewise-linear carriers for convex functions known through samples.

use crate::error::{Error, Result};

/// Relative slack allowed when validating that chord slopes are
/// nondecreasing. Absorbs rounding noise in tabulated convex functions
/// without letting genuinely concave data through.
const CONVEXITY_SLACK: f64 = 1e-9;

/// Sampling plan for tabulating a function: `nodes` points log-spaced over
/// `[lo, hi]`, with the origin prepended. `lo` must be positive so the log
/// ladder is well defined; anything below `lo` is covered by the chord from
/// the origin to the first node.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    lo: f64,
    hi: f64,
    nodes: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, nodes: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
            return Err(Error::InvalidParameter(format!(
                "grid span must satisfy 0 < lo < hi, got [{lo:e}, {hi:e}]"
            )));
        }
        if nodes < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 nodes, got {nodes}"
            )));
        }
        Ok(Self { lo, hi, nodes })
    }

    /// Span `[hi * 1e-8, hi]`: eight decades below the working scale.
    pub fn up_to(hi: f64, nodes: usize) -> Result<Self> {
        Self::new(hi * 1e-8, hi, nodes)
    }

    /// The log-spaced abscissas, origin included.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(self.nodes + 1);
        pts.push(0.0);
        let ratio = (self.hi / self.lo).ln();
        for i in 0..self.nodes {
            let t = i as f64 / (self.nodes - 1) as f64;
            pts.push(self.lo * (ratio * t).exp());
        }
        // The exp/ln round trip can land the last point a ulp off; pin it.
        *pts.last_mut().expect("nonempty") = self.hi;
        pts
    }
}

/// A convex, nondecreasing, piecewise-linear function through sampled points.
///
/// Invariants, checked at construction: abscissas strictly increase and start
/// at 0; values are finite, nondecreasing, and start at 0; chord slopes are
/// nondecreasing (convexity, up to rounding slack). Between nodes the chord
/// over-approximates any convex function through the same samples; beyond the
/// last node the final chord is extended, which under-approximates it.
#[derive(Debug, Clone)]
pub struct GridFunction {
    us: Vec<f64>,
    vs: Vec<f64>,
}

impl GridFunction {
    pub fn new(us: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if us.len() != vs.len() {
            return Err(Error::InvalidInput(format!(
                "{} abscissas vs {} values",
                us.len(),
                vs.len()
            )));
        }
        if us.len() < 2 {
            return Err(Error::InvalidInput("grid needs at least 2 nodes".into()));
        }
        if us[0] != 0.0 || vs[0] != 0.0 {
            return Err(Error::InvalidInput("grid must start at (0, 0)".into()));
        }
        let mut prev_slope = f64::NEG_INFINITY;
        for i in 1..us.len() {
            let (u0, u1, v0, v1) = (us[i - 1], us[i], vs[i - 1], vs[i]);
            if !(u1.is_finite() && v1.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite node at {i}")));
            }
            if u1 <= u0 {
                return Err(Error::InvalidInput(format!(
                    "abscissas not strictly increasing at {i}"
                )));
            }
            if v1 < v0 {
                return Err(Error::InvalidInput(format!(
                    "values decrease at node {i}"
                )));
            }
            let slope = (v1 - v0) / (u1 - u0);
            if slope < prev_slope - CONVEXITY_SLACK * prev_slope.abs().max(1.0) {
                return Err(Error::InvalidInput(format!(
                    "chord slopes decrease at node {i}: {prev_slope:e} -> {slope:e}"
                )));
            }
            prev_slope = prev_slope.max(slope);
        }
        Ok(Self { us, vs })
    }

    /// Sample `f` on the spec's points and wrap the result. Fails if the
    /// samples are not convex/nondecreasing within rounding slack.
    pub fn tabulate(f: impl Fn(f64) -> f64, spec: &GridSpec) -> Result<Self> {
        let us = spec.points();
        let vs: Vec<f64> = us.iter().map(|&u| f(u)).collect();
        Self::new(us, vs)
    }

    pub fn len(&self) -> usize {
        self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least 2 nodes
    }

    pub fn abscissas(&self) -> &[f64] {
        &self.us
    }

    pub fn values(&self) -> &[f64] {
        &self.vs
    }

    fn last_slope(&self) -> f64 {
        let n = self.us.len();
        (self.vs[n - 1] - self.vs[n - 2]) / (self.us[n - 1] - self.us[n - 2])
    }

    /// Index of the segment containing `u` (largest `i` with `us[i] <= u`),
    /// for `u` within the grid.
    fn segment(&self, u: f64) -> usize {
        match self.us.binary_search_by(|x| x.partial_cmp(&u).expect("finite")) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    /// Piecewise-linear evaluation; beyond the last node the final chord is
    /// extended.
    pub fn eval(&self, u: f64) -> f64 {
        debug_assert!(u >= 0.0);
        let n = self.us.len();
        if u >= self.us[n - 1] {
            return self.vs[n - 1] + self.last_slope() * (u - self.us[n - 1]);
        }
        let i = self.segment(u);
        let t = (u - self.us[i]) / (self.us[i + 1] - self.us[i]);
        self.vs[i] + t * (self.vs[i + 1] - self.vs[i])
    }

    /// Slope of the segment immediately left of `u` (the left derivative of
    /// the interpolant). At 0 this is the first chord's slope.
    pub fn left_slope(&self, u: f64) -> f64 {
        debug_assert!(u >= 0.0);
        let n = self.us.len();
        if u >= self.us[n - 1] {
            return self.last_slope();
        }
        let i = self.segment(u);
        let i = if u == self.us[i] && i > 0 { i - 1 } else { i };
        (self.vs[i + 1] - self.vs[i]) / (self.us[i + 1] - self.us[i])
    }

    /// Inverse of the interpolant at `v >= 0`. Errors when the inverse is
    /// ambiguous (the value is hit on a flat segment) or unreachable (flat
    /// tail below `v`).
    pub fn inverse(&self, v: f64) -> Result<f64> {
        if v < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "inverse of a negative value {v:e}"
            )));
        }
        if v == 0.0 {
            return Ok(0.0);
        }
        let n = self.us.len();
        if v > self.vs[n - 1] {
            let m = self.last_slope();
            if m <= 0.0 {
                return Err(Error::Overflow(format!(
                    "value {v:e} above a flat tail (max {:e})",
                    self.vs[n - 1]
                )));
            }
            return Ok(self.us[n - 1] + (v - self.vs[n - 1]) / m);
        }
        // First segment whose upper value reaches v.
        let i = match self
            .vs
            .binary_search_by(|x| x.partial_cmp(&v).expect("finite"))
        {
            Ok(mut i) => {
                // Exact hit; step back over duplicates to the earliest.
                while i > 0 && self.vs[i - 1] == v {
                    i -= 1;
                }
                return Ok(self.us[i]);
            }
            Err(i) => i, // vs[i-1] < v < vs[i]
        };
        let (v0, v1) = (self.vs[i - 1], self.vs[i]);
        if v1 == v0 {
            return Err(Error::InvalidInput(format!(
                "value {v:e} lands on a flat segment"
            )));
        }
        let t = (v - v0) / (v1 - v0);
        Ok(self.us[i - 1] + t * (self.us[i] - self.us[i - 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_grid() -> GridFunction {
        let spec = GridSpec::new(1e-6, 10.0, 300).unwrap();
        GridFunction::tabulate(|u| u * u, &spec).unwrap()
    }

    #[test]
    fn rejects_non_convex_samples() {
        let err = GridFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 2.5]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_decreasing_values() {
        assert!(GridFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.5]).is_err());
    }

    #[test]
    fn interpolation_overestimates_convex_samples() {
        let g = square_grid();
        for &u in &[0.3, 0.9, 2.7, 8.1] {
            let v = g.eval(u);
            assert!(v >= u * u - 1e-12);
            assert!((v - u * u) / (u * u) < 1e-3);
        }
    }

    #[test]
    fn extrapolation_underestimates_convex_growth() {
        let g = square_grid();
        assert!(g.eval(20.0) < 400.0);
        assert!(g.eval(10.0) == 100.0);
    }

    #[test]
    fn inverse_round_trips_on_grid() {
        let g = square_grid();
        for &v in &[1e-8, 0.5, 3.0, 99.0] {
            let u = g.inverse(v).unwrap();
            assert!((g.eval(u) - v).abs() <= 1e-12 * v.max(1.0));
        }
        assert_eq!(g.inverse(0.0).unwrap(), 0.0);
    }

    #[test]
    fn inverse_extends_past_last_node() {
        let g = square_grid();
        let u = g.inverse(150.0).unwrap();
        assert!(u > 10.0);
        assert!((g.eval(u) - 150.0).abs() < 1e-9);
    }

    #[test]
    fn left_slope_is_monotone() {
        let g = square_grid();
        let mut prev = -1.0;
        for &u in &[0.1, 0.5, 1.0, 2.0, 5.0, 9.0, 50.0] {
            let s = g.left_slope(u);
            assert!(s >= prev);
            prev = s;
        }
    }
}
