//! Legendre conjugation: `psi(y) = sup_{x >= 0} { x y - phi(x) }`.
//!
//! The objective `h(x) = x y - phi(x)` is concave (phi convex), h(0) = 0,
//! and h eventually decreases to -inf whenever the supremum is finite. The
//! evaluator walks an expanding geometric ladder until `h` turns over, then
//! runs a golden-section maximization on the bracketing interval. If `h` is
//! still climbing past 1e150 the supremum is treated as infinite.

use crate::error::{Error, Result};
use crate::functions::{GridFunction, GridSpec, OrliczFunction};
use crate::numeric;

const LADDER_START: f64 = 1e-12;
const LADDER_RATIO: f64 = 4.0;
const LADDER_CAP: f64 = 1e150;
const GOLDEN_ITERS: usize = 120;

/// Pointwise conjugate value; `Overflow` when the supremum diverges.
pub(crate) fn conjugate_value_of(phi: &OrliczFunction, y: f64) -> Result<f64> {
    let y = y.abs();
    if y == 0.0 {
        return Ok(0.0);
    }
    let h = |x: f64| x * y - phi.eval(x);

    let mut x_prev = 0.0f64;
    let mut x_cur = LADDER_START;
    let mut h_cur = h(x_cur);
    loop {
        let x_next = x_cur * LADDER_RATIO;
        let h_next = h(x_next);
        if h_next < h_cur {
            // Concavity puts the maximizer inside [x_prev, x_next].
            let (_, peak) = numeric::golden_max(h, x_prev, x_next, GOLDEN_ITERS);
            return Ok(peak.max(0.0));
        }
        if x_next > LADDER_CAP {
            return Err(Error::Overflow(format!(
                "conjugate diverges at y = {y:e}: objective still climbing at x = {x_next:e}"
            )));
        }
        x_prev = x_cur;
        x_cur = x_next;
        h_cur = h_next;
    }
}

/// Tabulate the conjugate over `spec` and wrap it as a grid-backed Orlicz
/// function. Degenerate conjugates (identically zero near the origin, which
/// happens when `phi` has positive slope at 0) are rejected: the resulting
/// carrier would not be positive off the origin.
pub(crate) fn conjugate_on_grid(phi: &OrliczFunction, spec: &GridSpec) -> Result<OrliczFunction> {
    let us = spec.points();
    let mut vs = Vec::with_capacity(us.len());
    for &u in &us {
        vs.push(conjugate_value_of(phi, u)?);
    }
    let grid = GridFunction::new(us, vs)?;
    OrliczFunction::from_grid(format!("conj-grid({})", phi.label()), grid)
}
