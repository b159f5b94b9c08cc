//! Orlicz functions: the convex gauges that generate every norm in this
//! crate.
//!
//! An Orlicz function is convex on `[0, inf)` with `phi(0) = 0`,
//! `phi(u) > 0` for `u > 0`, and `phi(u) -> inf`. Evaluation is always on
//! `|u|`. The type supports closed-form powers, sampled (piecewise-linear)
//! carriers, pointwise Legendre conjugates, and the multiplicative
//! interpolant between two functions:
//!
//! ```text
//! phi_s^{-1}(u) = [phi_0^{-1}(u)]^(1-s) * [phi_1^{-1}(u)]^s,   0 <= s <= 1,
//! ```
//!
//! which is evaluated by inverting the monotone composite numerically.

mod conjugate;
mod grid;

pub use grid::{GridFunction, GridSpec};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric;

/// Tail-window spread above which an index estimate is flagged unconverged.
const INDEX_SPREAD_TOL: f64 = 1e-6;

/// Dyadic ladder for index estimation: ratios at u = 2^-k for k in this
/// range, with the last `INDEX_TAIL` ratios forming the reported window.
const INDEX_K_MIN: u32 = 8;
const INDEX_K_MAX: u32 = 40;
const INDEX_TAIL: usize = 8;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// u^p with p >= 1.
    Power { p: f64 },
    /// coef * u^p with coef > 0, p >= 1.
    ScaledPower { coef: f64, p: f64 },
    /// Piecewise-linear carrier through samples.
    Grid(GridFunction),
    /// The function whose inverse is
    /// `left.inverse(y)^(1-s) * right.inverse(y)^s`.
    Intermediate {
        left: Box<OrliczFunction>,
        right: Box<OrliczFunction>,
        s: f64,
    },
    /// Pointwise Legendre conjugate of the inner function; evaluation runs a
    /// concave maximization per call and returns +inf where the supremum
    /// diverges.
    Conjugate(Box<OrliczFunction>),
    /// User-supplied closures; `left_deriv`/`inverse` fall back to numeric
    /// secants/bisection when absent.
    Custom {
        eval: ScalarFn,
        left_deriv: Option<ScalarFn>,
        inverse: Option<ScalarFn>,
    },
}

/// A convex gauge `phi` with `phi(0) = 0`, `phi > 0` off the origin, and
/// unbounded growth. Cheap to clone.
#[derive(Clone)]
pub struct OrliczFunction {
    label: String,
    kind: Kind,
}

impl fmt::Debug for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrliczFunction({})", self.label)
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Result of estimating the dyadic growth indices
/// `alpha = liminf_{u->0} phi^{-1}(u) / phi^{-1}(2u)` and the matching
/// limsup `beta`, from a finite ladder of sample ratios.
#[derive(Debug, Clone, Copy)]
pub struct IndexEstimate {
    /// Minimum ratio over the tail window (the liminf estimate).
    pub alpha: f64,
    /// Maximum ratio over the tail window (the limsup estimate).
    pub beta: f64,
    /// `beta - alpha` over the tail window.
    pub spread: f64,
    /// True when the tail window spread is below 1e-6; a false flag means
    /// the ladder has not settled (or the two limits genuinely differ).
    pub converged: bool,
}

impl OrliczFunction {
    /// `phi(u) = u^p`, `p >= 1`.
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "power exponent must be finite and >= 1, got {p}"
            )));
        }
        Ok(Self {
            label: format!("power:{p}"),
            kind: Kind::Power { p },
        })
    }

    /// `phi(u) = coef * u^p`, `coef > 0`, `p >= 1`.
    pub fn scaled_power(coef: f64, p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "power exponent must be finite and >= 1, got {p}"
            )));
        }
        if !(coef.is_finite() && coef > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale must be finite and positive, got {coef}"
            )));
        }
        Ok(Self {
            label: format!("{coef}*u^{p}"),
            kind: Kind::ScaledPower { coef, p },
        })
    }

    /// Wrap a sampled carrier. Beyond the grid`s convexity/monotonicity
    /// checks this requires a strictly positive first sampled value (so the
    /// function is positive off the origin) — the carrier then grows without
    /// bound along its extended last chord.
    pub fn from_grid(label: impl Into<String>, grid: GridFunction) -> Result<Self> {
        if grid.values()[1] <= 0.0 {
            return Err(Error::InvalidInput(
                "grid carrier vanishes beyond the origin; not positive for u > 0".into(),
            ));
        }
        Ok(Self {
            label: label.into(),
            kind: Kind::Grid(grid),
        })
    }

    /// Build from closures. `eval` must satisfy the Orlicz axioms (use
    /// [`validate`](Self::validate) to spot-check); derivative and inverse
    /// closures are optional and replace numeric fallbacks.
    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        left_deriv: Option<ScalarFn>,
        inverse: Option<ScalarFn>,
    ) -> Self {
        Self {
            label: label.into(),
            kind: Kind::Custom {
                eval: Arc::new(eval),
                left_deriv,
                inverse,
            },
        }
    }

    /// The multiplicative interpolant `phi_s` between `left` (s = 0) and
    /// `right` (s = 1): its inverse is
    /// `left^{-1}(y)^(1-s) * right^{-1}(y)^s`, and evaluation inverts that
    /// composite by bracketed bisection.
    pub fn intermediate(left: &OrliczFunction, right: &OrliczFunction, s: f64) -> Result<Self> {
        if !(s.is_finite() && (0.0..=1.0).contains(&s)) {
            return Err(Error::InvalidParameter(format!(
                "interpolation weight must lie in [0, 1], got {s}"
            )));
        }
        Ok(Self {
            label: format!("intermediate({}, {}; s={s})", left.label, right.label),
            kind: Kind::Intermediate {
                left: Box::new(left.clone()),
                right: Box::new(right.clone()),
                s,
            },
        })
    }

    /// Parse a function spec: `power:<p>` or `grid:<csv-path>` (a two-column
    /// `u,phi` table, loaded from disk).
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(p) = spec.strip_prefix("power:") {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad power exponent {p:?}: {e}")))?;
            let mut f = Self::power(p)?;
            f.label = spec.to_string();
            Ok(f)
        } else if let Some(path) = spec.strip_prefix("grid:") {
            let grid = crate::io::read_grid_csv(path.trim())?;
            Self::from_grid(spec, grid)
        } else {
            Err(Error::Parse(format!(
                "unknown function spec {spec:?}; expected power:<p> or grid:<path>"
            )))
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True for kinds whose evaluation runs an inner iteration (so callers
    /// doing bulk work may want a tabulated proxy).
    pub(crate) fn is_costly(&self) -> bool {
        matches!(
            self.kind,
            Kind::Intermediate { .. } | Kind::Conjugate(_) | Kind::Custom { .. }
        )
    }

    /// True when the gauge is backed by sampled data rather than a formula.
    /// Index estimates differenced from such data carry tabulation error, so
    /// bound checks seeded by them should be advisory rather than hard.
    pub fn is_tabulated(&self) -> bool {
        matches!(self.kind, Kind::Grid(_))
    }

    /// If this is a pure power `u^p`, its exponent.
    pub fn power_exponent(&self) -> Option<f64> {
        match self.kind {
            Kind::Power { p } => Some(p),
            _ => None,
        }
    }

    /// Evaluate at `|u|`. Returns `+inf` where the value genuinely diverges
    /// (possible for conjugates of functions with linear growth).
    pub fn eval(&self, u: f64) -> f64 {
        let u = u.abs();
        match &self.kind {
            Kind::Power { p } => u.powf(*p),
            Kind::ScaledPower { coef, p } => coef * u.powf(*p),
            Kind::Grid(g) => g.eval(u),
            Kind::Intermediate { left, right, s } => {
                if u == 0.0 {
                    return 0.0;
                }
                let g = |y: f64| composite_inverse(left, right, *s, y);
                match numeric::bracket_increasing(g, u, 1.0) {
                    Ok((lo, hi)) => numeric::bisect_increasing(g, u, lo, hi, 1e-14),
                    Err(_) => f64::INFINITY,
                }
            }
            Kind::Conjugate(inner) => match conjugate::conjugate_value_of(inner, u) {
                Ok(v) => v,
                Err(_) => f64::INFINITY,
            },
            Kind::Custom { eval, .. } => eval(u),
        }
    }

    /// Left derivative at `t >= 0` (at 0: the right-hand limit of the
    /// difference quotient, which is the smallest subgradient slope).
    /// Closed forms where available, otherwise a one-sided secant with
    /// relative step 1e-7.
    pub fn left_deriv(&self, t: f64) -> f64 {
        let t = t.abs();
        match &self.kind {
            Kind::Power { p } => p * t.powf(p - 1.0),
            Kind::ScaledPower { coef, p } => coef * p * t.powf(p - 1.0),
            Kind::Grid(g) => g.left_slope(t),
            Kind::Custom {
                left_deriv: Some(d),
                ..
            } => d(t),
            _ => self.numeric_left_deriv(t),
        }
    }

    fn numeric_left_deriv(&self, t: f64) -> f64 {
        if t == 0.0 {
            let h = 1e-30;
            return self.eval(h) / h;
        }
        let h = t * 1e-7;
        (self.eval(t) - self.eval(t - h)) / h
    }

    /// Inverse at `v >= 0`: closed form for powers, segment arithmetic for
    /// grids, the defining composite for interpolants, bracketed bisection
    /// (relative tolerance 1e-12) otherwise.
    pub fn inverse(&self, v: f64) -> Result<f64> {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "inverse of a negative value {v:e}"
            )));
        }
        match &self.kind {
            Kind::Power { p } => Ok(v.powf(1.0 / p)),
            Kind::ScaledPower { coef, p } => Ok((v / coef).powf(1.0 / p)),
            Kind::Grid(g) => g.inverse(v),
            Kind::Intermediate { left, right, s } => composite_inverse_checked(left, right, *s, v),
            Kind::Custom {
                inverse: Some(inv), ..
            } => Ok(inv(v)),
            _ => self.numeric_inverse(v),
        }
    }

    fn numeric_inverse(&self, v: f64) -> Result<f64> {
        if v == 0.0 {
            return Ok(0.0);
        }
        let f = |x: f64| self.eval(x);
        let (lo, hi) = numeric::bracket_increasing(f, v, 1.0)?;
        Ok(numeric::bisect_increasing(
            f,
            v,
            lo,
            hi,
            numeric::INVERSE_REL_TOL,
        ))
    }

    /// Legendre conjugate value `psi(y) = sup_x { x|y| - phi(x) }`, computed
    /// by expanding-bracket golden-section maximization. `Overflow` when the
    /// supremum is infinite at this `y`.
    pub fn conjugate_value(&self, y: f64) -> Result<f64> {
        conjugate::conjugate_value_of(self, y)
    }

    /// Tabulate the conjugate on a grid and wrap it as a sampled carrier.
    /// Fails when the conjugate diverges inside the span, or degenerates
    /// (vanishes off the origin, which happens when `phi` has a positive
    /// slope at 0).
    pub fn conjugate(&self, spec: &GridSpec) -> Result<OrliczFunction> {
        conjugate::conjugate_on_grid(self, spec)
    }

    /// The conjugate as an exactly-evaluated function: closed form
    /// `y^q / (q (coef p)^(q-1))` for (scaled) powers with `p > 1`,
    /// otherwise a pointwise-maximizing wrapper (exact, but each evaluation
    /// runs a 1-D search; values are `+inf` where the supremum diverges).
    pub fn conjugate_pointwise(&self) -> OrliczFunction {
        let label = format!("conj({})", self.label);
        match self.kind {
            Kind::Power { p } if p > 1.0 => {
                let q = p / (p - 1.0);
                let coef = 1.0 / (q * p.powf(q - 1.0));
                let mut f = Self::scaled_power(coef, q).expect("valid conjugate exponent");
                f.label = label;
                f
            }
            Kind::ScaledPower { coef, p } if p > 1.0 => {
                let q = p / (p - 1.0);
                let c = 1.0 / (q * (coef * p).powf(q - 1.0));
                let mut f = Self::scaled_power(c, q).expect("valid conjugate exponent");
                f.label = label;
                f
            }
            _ => Self {
                label,
                kind: Kind::Conjugate(Box::new(self.clone())),
            },
        }
    }

    /// Estimate the dyadic growth indices from the ladder `u = 2^-k`,
    /// `k = 8..=40`, reporting min/max over the last 8 ratios.
    pub fn indices(&self) -> Result<IndexEstimate> {
        let mut inv = Vec::with_capacity((INDEX_K_MAX - INDEX_K_MIN + 2) as usize);
        for k in (INDEX_K_MIN - 1)..=INDEX_K_MAX {
            let u = (2.0f64).powi(-(k as i32));
            let x = self.inverse(u)?;
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "inverse at {u:e} is {x:e}; cannot form index ratios"
                )));
            }
            inv.push(x);
        }
        // ratio[k] = phi^{-1}(2^-k) / phi^{-1}(2^-(k-1)), k = 8..=40.
        let ratios: Vec<f64> = inv.windows(2).map(|w| w[1] / w[0]).collect();
        let tail = &ratios[ratios.len() - INDEX_TAIL..];
        let alpha = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let beta = tail.iter().cloned().fold(0.0f64, f64::max);
        let spread = beta - alpha;
        Ok(IndexEstimate {
            alpha,
            beta,
            spread,
            converged: spread <= INDEX_SPREAD_TOL,
        })
    }

    /// The liminf index estimate (tail-window minimum).
    pub fn index_alpha(&self) -> Result<f64> {
        Ok(self.indices()?.alpha)
    }

    /// The limsup index estimate (tail-window maximum).
    pub fn index_beta(&self) -> Result<f64> {
        Ok(self.indices()?.beta)
    }

    /// Observed supremum of `phi(2u) / phi(u)` over `samples` log-uniform
    /// points in `(0, u_max]` (span: eight decades below `u_max`). This is
    /// the doubling constant used by the triangle-type modular bound; for
    /// `u^p` it equals `2^p` at every sample.
    pub fn delta2_probe(&self, u_max: f64, samples: usize) -> Result<f64> {
        if !(u_max.is_finite() && u_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "probe range must be positive and finite, got {u_max:e}"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidParameter("need at least 2 samples".into()));
        }
        let mut worst = 0.0f64;
        for i in 0..samples {
            let t = i as f64 / (samples - 1) as f64;
            let u = u_max * (1e-8f64).powf(1.0 - t);
            let lo = self.eval(u);
            let hi = self.eval(2.0 * u);
            if lo <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "phi({u:e}) = {lo:e}; not positive off the origin"
                )));
            }
            let ratio = hi / lo;
            if !ratio.is_finite() {
                return Err(Error::Overflow(format!(
                    "phi(2u) overflows at u = {u:e}"
                )));
            }
            worst = worst.max(ratio);
        }
        Ok(worst)
    }

    /// Spot-check the Orlicz axioms on a log ladder over `(0, u_max]`:
    /// zero at the origin, positivity, monotonicity, midpoint convexity
    /// (relative slack 1e-9), and unbounded growth (doubling probe).
    pub fn validate(&self, u_max: f64, samples: usize) -> Result<()> {
        if !(u_max.is_finite() && u_max > 0.0) || samples < 3 {
            return Err(Error::InvalidParameter(
                "need u_max > 0 and at least 3 samples".into(),
            ));
        }
        let at_zero = self.eval(0.0);
        if !(at_zero.abs() <= 1e-12) {
            return Err(Error::InvalidInput(format!("phi(0) = {at_zero:e} != 0")));
        }
        let pts: Vec<f64> = (0..samples)
            .map(|i| {
                let t = i as f64 / (samples - 1) as f64;
                u_max * (1e-8f64).powf(1.0 - t)
            })
            .collect();
        let mut prev = 0.0f64;
        for &u in &pts {
            let v = self.eval(u);
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "phi({u:e}) = {v:e}; must be finite and positive"
                )));
            }
            if v < prev * (1.0 - 1e-12) {
                return Err(Error::InvalidInput(format!(
                    "phi decreases near u = {u:e}"
                )));
            }
            prev = v;
        }
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = 0.5 * (a + b);
            let lhs = self.eval(mid);
            let rhs = 0.5 * (self.eval(a) + self.eval(b));
            if lhs > rhs + 1e-9 * rhs.abs().max(1e-300) {
                return Err(Error::InvalidInput(format!(
                    "midpoint convexity fails on [{a:e}, {b:e}]"
                )));
            }
        }
        let mut u = u_max;
        for _ in 0..80 {
            let v = self.eval(u);
            if v > 1e8 || v == f64::INFINITY {
                return Ok(());
            }
            u *= 2.0;
        }
        Err(Error::InvalidInput(
            "no unbounded growth within 80 doublings".into(),
        ))
    }
}

/// `left^{-1}(y)^(1-s) * right^{-1}(y)^s`, with inverse failures mapped to
/// NaN (unreachable for the kinds this crate constructs).
fn composite_inverse(left: &OrliczFunction, right: &OrliczFunction, s: f64, y: f64) -> f64 {
    match composite_inverse_checked(left, right, s, y) {
        Ok(x) => x,
        Err(_) => f64::NAN,
    }
}

fn composite_inverse_checked(
    left: &OrliczFunction,
    right: &OrliczFunction,
    s: f64,
    y: f64,
) -> Result<f64> {
    let a = left.inverse(y)?;
    let b = right.inverse(y)?;
    Ok(a.powf(1.0 - s) * b.powf(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn power_rejects_bad_exponents() {
        assert!(OrliczFunction::power(0.5).is_err());
        assert!(OrliczFunction::power(f64::NAN).is_err());
        assert!(OrliczFunction::power(1.0).is_ok());
    }

    #[test]
    fn power_eval_deriv_inverse() {
        let phi = OrliczFunction::power(3.0).unwrap();
        assert_eq!(phi.eval(0.0), 0.0);
        assert_relative_eq!(phi.eval(2.0), 8.0);
        assert_relative_eq!(phi.eval(-2.0), 8.0); // even in u
        assert_relative_eq!(phi.left_deriv(2.0), 12.0);
        assert_eq!(phi.left_deriv(0.0), 0.0);
        assert_relative_eq!(phi.inverse(27.0).unwrap(), 3.0);
    }

    #[test]
    fn linear_power_has_unit_slope_at_origin() {
        let phi = OrliczFunction::power(1.0).unwrap();
        assert_eq!(phi.left_deriv(0.0), 1.0);
    }

    #[test]
    fn scaled_power_matches_hand_values() {
        let phi = OrliczFunction::scaled_power(0.5, 2.0).unwrap();
        assert_relative_eq!(phi.eval(3.0), 4.5);
        assert_relative_eq!(phi.left_deriv(3.0), 3.0);
        assert_relative_eq!(phi.inverse(2.0).unwrap(), 2.0);
    }

    #[test]
    fn parse_power_spec() {
        let phi = OrliczFunction::parse("power:2.5").unwrap();
        assert_relative_eq!(phi.eval(2.0), 2.0f64.powf(2.5));
        assert!(OrliczFunction::parse("power:abc").is_err());
        assert!(OrliczFunction::parse("mystery:1").is_err());
    }

    #[test]
    fn validate_accepts_powers_and_rejects_concave() {
        OrliczFunction::power(1.7).unwrap().validate(10.0, 64).unwrap();
        let sqrt = OrliczFunction::custom("sqrt", |u| u.sqrt(), None, None);
        assert!(sqrt.validate(10.0, 64).is_err());
    }

    #[test]
    fn intermediate_of_powers_is_the_interpolated_power() {
        // Inverses multiply as u^{(1-s)/a + s/b}, so phi_s = u^{p_s} with
        // 1/p_s = (1-s)/a + s/b.
        let a = OrliczFunction::power(1.2).unwrap();
        let b = OrliczFunction::power(2.0).unwrap();
        let s = 0.5;
        let phi_s = OrliczFunction::intermediate(&a, &b, s).unwrap();
        let p_s = 1.0 / ((1.0 - s) / 1.2 + s / 2.0);
        for &u in &[0.01, 0.3, 1.0, 4.0, 10.0] {
            assert_relative_eq!(phi_s.eval(u), u.powf(p_s), max_relative = 1e-10);
        }
        assert_relative_eq!(phi_s.inverse(7.0).unwrap(), 7.0f64.powf(1.0 / p_s));
    }

    #[test]
    fn intermediate_endpoints_reproduce_the_inputs() {
        let a = OrliczFunction::power(1.5).unwrap();
        let b = OrliczFunction::power(3.0).unwrap();
        let at0 = OrliczFunction::intermediate(&a, &b, 0.0).unwrap();
        let at1 = OrliczFunction::intermediate(&a, &b, 1.0).unwrap();
        for &u in &[0.2, 1.0, 5.0] {
            assert_relative_eq!(at0.eval(u), a.eval(u), max_relative = 1e-11);
            assert_relative_eq!(at1.eval(u), b.eval(u), max_relative = 1e-11);
        }
    }

    #[test]
    fn intermediate_rejects_weights_outside_unit_interval() {
        let a = OrliczFunction::power(2.0).unwrap();
        assert!(OrliczFunction::intermediate(&a, &a, -0.1).is_err());
        assert!(OrliczFunction::intermediate(&a, &a, 1.1).is_err());
    }

    #[test]
    fn indices_of_powers_hit_the_closed_form() {
        for &p in &[1.0, 1.5, 2.0, 4.0] {
            let phi = OrliczFunction::power(p).unwrap();
            let est = phi.indices().unwrap();
            let expect = (2.0f64).powf(-1.0 / p);
            assert!((est.alpha - expect).abs() < 1e-9, "p={p}");
            assert!((est.beta - expect).abs() < 1e-9, "p={p}");
            assert!(est.converged);
        }
    }

    #[test]
    fn index_alpha_never_exceeds_beta() {
        let phi = OrliczFunction::power(2.7).unwrap();
        let est = phi.indices().unwrap();
        assert!(est.alpha <= est.beta);
    }

    #[test]
    fn delta2_probe_of_power_is_two_to_the_p() {
        for &p in &[1.0, 1.4, 2.0, 3.0] {
            let phi = OrliczFunction::power(p).unwrap();
            let k = phi.delta2_probe(5.0, 200).unwrap();
            assert_relative_eq!(k, (2.0f64).powf(p), max_relative = 1e-13);
        }
    }

    #[test]
    fn grid_backed_function_requires_positive_first_value() {
        let g = GridFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 0.0, 1.0]).unwrap();
        assert!(OrliczFunction::from_grid("flat-start", g).is_err());
    }

    #[test]
    fn grid_backed_function_evaluates_and_inverts() {
        // Chord interpolation of u^3 errs by ~f''·h²/8 per segment; 2000
        // log-spaced nodes put that below 1e-4 relative near u = 2.
        let spec = GridSpec::new(1e-6, 20.0, 2000).unwrap();
        let grid = GridFunction::tabulate(|u| u * u * u, &spec).unwrap();
        let phi = OrliczFunction::from_grid("cubic-table", grid).unwrap();
        assert_relative_eq!(phi.eval(2.0), 8.0, max_relative = 1e-4);
        assert_relative_eq!(phi.inverse(8.0).unwrap(), 2.0, max_relative = 1e-4);
        phi.validate(20.0, 64).unwrap();
    }
}
