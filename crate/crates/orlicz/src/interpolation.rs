//! Interpolation of operator bounds between two exponent configurations.
//!
//! A linear map `F` on operator pairs that is bounded `(r_1 -> t_1)` with
//! constant `K_1` and `(r_2 -> t_2)` with constant `K_2` (outer aggregation
//! exponents, slot gauges interpolated multiplicatively) is bounded along
//! the whole path
//!
//! ```text
//! 1/r_s = (1-s)/r_1 + s/r_2,   1/t_s = (1-s)/t_1 + s/t_2,
//! ||F T||_{(phi_s), t_s} <= K_1^{1-s} K_2^s ||T||_{(phi_s), r_s}.
//! ```
//!
//! The classical two-point configuration — `F(T_1, T_2) = (T_1 + T_2,
//! T_1 - T_2)` between `(1 -> inf, K = 1)` and `(2 -> 2, K = sqrt 2)` —
//! yields uniform-convexity ("Clarkson") inequalities, checked here both
//! in interpolated-gauge form and in the two-branch Schatten form.

use serde_json::json;

use crate::error::{Error, Result};
use crate::functions::OrliczFunction;
use crate::norms::schatten_norm;
use crate::report::CheckRecord;
use crate::sampling::Sampler;
use crate::spectral::CompactMatrix;
use crate::tuple::{tuple_luxemburg_norm, OperatorPair, TupleSpaceSpec, INEQUALITY_TOL};

fn valid_exponent(e: f64) -> bool {
    e >= 1.0 && !e.is_nan()
}

fn reciprocal(e: f64) -> f64 {
    if e == f64::INFINITY {
        0.0
    } else {
        1.0 / e
    }
}

fn from_reciprocal(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        1.0 / x
    }
}

/// The exponent data of one interpolation step: two endpoint configurations
/// and the position `s` between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPath {
    pub r_first: f64,
    pub r_second: f64,
    pub t_first: f64,
    pub t_second: f64,
    pub s: f64,
    /// Domain aggregation exponent at `s`.
    pub r_s: f64,
    /// Range aggregation exponent at `s`.
    pub t_s: f64,
}

impl ExponentPath {
    pub fn new(r_first: f64, t_first: f64, r_second: f64, t_second: f64, s: f64) -> Result<Self> {
        for e in [r_first, t_first, r_second, t_second] {
            if !valid_exponent(e) {
                return Err(Error::InvalidParameter(format!(
                    "aggregation exponents must be in [1, inf], got {e}"
                )));
            }
        }
        if !(s.is_finite() && (0.0..=1.0).contains(&s)) {
            return Err(Error::InvalidParameter(format!(
                "path position must lie in [0, 1], got {s}"
            )));
        }
        let r_s = from_reciprocal((1.0 - s) * reciprocal(r_first) + s * reciprocal(r_second));
        let t_s = from_reciprocal((1.0 - s) * reciprocal(t_first) + s * reciprocal(t_second));
        Ok(Self {
            r_first,
            r_second,
            t_first,
            t_second,
            s,
            r_s,
            t_s,
        })
    }

    /// The sum/difference configuration: `(1 -> inf)` to `(2 -> 2)`, which
    /// gives `r_s = 2/(2-s)` and `t_s = 2/s`.
    pub fn sum_difference(s: f64) -> Result<Self> {
        Self::new(1.0, f64::INFINITY, 2.0, 2.0, s)
    }
}

/// A linear map on operator pairs: `(F T)_i = c_i1 T_1 + c_i2 T_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TupleLinearMap {
    coeffs: [[f64; 2]; 2],
}

impl TupleLinearMap {
    pub fn new(coeffs: [[f64; 2]; 2]) -> Result<Self> {
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "map coefficients must be finite".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// `(T_1, T_2) -> (T_1 + T_2, T_1 - T_2)`.
    pub fn sum_difference() -> Self {
        Self {
            coeffs: [[1.0, 1.0], [1.0, -1.0]],
        }
    }

    pub fn coeffs(&self) -> [[f64; 2]; 2] {
        self.coeffs
    }

    pub fn apply(&self, pair: &OperatorPair) -> Result<OperatorPair> {
        let row = |c: [f64; 2]| -> Result<CompactMatrix> {
            pair.first.scale(c[0]).add(&pair.second.scale(c[1]))
        };
        Ok(OperatorPair::new(
            row(self.coeffs[0])?,
            row(self.coeffs[1])?,
        ))
    }
}

/// Observed operator bound of `F` between two tuple spaces: the largest
/// ratio `||F T||_range / ||T||_domain` over `samples` random pairs.
pub fn empirical_bound(
    map: &TupleLinearMap,
    domain: &TupleSpaceSpec,
    range: &TupleSpaceSpec,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut sampler = Sampler::new(seed);
    let mut sup: f64 = 0.0;
    for _ in 0..samples {
        let t = sampler.pair(dim);
        let denom = tuple_luxemburg_norm(domain, &t)?.value;
        if denom == 0.0 {
            continue;
        }
        let num = tuple_luxemburg_norm(range, &map.apply(&t)?)?.value;
        sup = sup.max(num / denom);
    }
    Ok(sup)
}

/// Interpolated-bound check. Endpoint slot gauges `(phi at s=0, phi at
/// s=1)` are interpolated per slot; the endpoint operator bounds `k_first`
/// (at `r_1 -> t_1`) and `k_second` (at `r_2 -> t_2`) are certified on the
/// same samples, and the interpolated bound `k_first^{1-s} k_second^s` is
/// then checked at `(r_s -> t_s)`. Gaps are the worst (most violated) over
/// the sample set; three records come back: both endpoints and the
/// interpolated claim.
#[allow(clippy::too_many_arguments)]
pub fn check_riesz_thorin(
    map: &TupleLinearMap,
    endpoint_first: (&OrliczFunction, &OrliczFunction),
    endpoint_second: (&OrliczFunction, &OrliczFunction),
    path: &ExponentPath,
    k_first: f64,
    k_second: f64,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckRecord>> {
    for k in [k_first, k_second] {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "endpoint bounds must be positive and finite, got {k}"
            )));
        }
    }
    let s = path.s;
    let slot_a = OrliczFunction::intermediate(endpoint_first.0, endpoint_second.0, s)?;
    let slot_b = OrliczFunction::intermediate(endpoint_first.1, endpoint_second.1, s)?;

    let domain_first = TupleSpaceSpec::new(endpoint_first.0.clone(), endpoint_first.1.clone(), path.r_first)?;
    let range_first = TupleSpaceSpec::new(endpoint_first.0.clone(), endpoint_first.1.clone(), path.t_first)?;
    let domain_second = TupleSpaceSpec::new(endpoint_second.0.clone(), endpoint_second.1.clone(), path.r_second)?;
    let range_second = TupleSpaceSpec::new(endpoint_second.0.clone(), endpoint_second.1.clone(), path.t_second)?;
    let domain_s = TupleSpaceSpec::new(slot_a.clone(), slot_b.clone(), path.r_s)?;
    let range_s = TupleSpaceSpec::new(slot_a, slot_b, path.t_s)?;

    let k_s = k_first.powf(1.0 - s) * k_second.powf(s);

    let mut gap_first = f64::INFINITY;
    let mut gap_second = f64::INFINITY;
    let mut gap_s = f64::INFINITY;
    let mut worst_ratio = 0.0f64;
    let mut sampler = Sampler::new(seed);
    let mut used = 0usize;
    for _ in 0..samples {
        let t = sampler.pair(dim);
        if t.is_zero() {
            continue;
        }
        used += 1;
        let ft = map.apply(&t)?;

        let d1 = tuple_luxemburg_norm(&domain_first, &t)?.value;
        let n1 = tuple_luxemburg_norm(&range_first, &ft)?.value;
        gap_first = gap_first.min(k_first * d1 - n1);

        let d2 = tuple_luxemburg_norm(&domain_second, &t)?.value;
        let n2 = tuple_luxemburg_norm(&range_second, &ft)?.value;
        gap_second = gap_second.min(k_second * d2 - n2);

        let ds = tuple_luxemburg_norm(&domain_s, &t)?.value;
        let ns = tuple_luxemburg_norm(&range_s, &ft)?.value;
        gap_s = gap_s.min(k_s * ds - ns);
        if ds > 0.0 {
            worst_ratio = worst_ratio.max(ns / ds);
        }
    }
    if used == 0 {
        return Err(Error::InvalidInput(
            "no nonzero samples; cannot certify any bound".into(),
        ));
    }

    let details = json!({
        "s": s,
        "r_s": path.r_s,
        "t_s": path.t_s,
        "k_first": k_first,
        "k_second": k_second,
        "k_s": k_s,
        "worst_interpolated_ratio": worst_ratio,
        "samples": used,
    });
    let tol = |scale: f64| INEQUALITY_TOL * scale.abs().max(1.0);
    Ok(vec![
        CheckRecord::from_gap("endpoint_bound_first", gap_first, tol(k_first))
            .with_details(details.clone()),
        CheckRecord::from_gap("endpoint_bound_second", gap_second, tol(k_second))
            .with_details(details.clone()),
        CheckRecord::from_gap("interpolated_bound", gap_s, tol(k_s)).with_details(details),
    ])
}

/// Uniform-convexity inequality in interpolated-gauge form: with `phi_s`
/// the multiplicative interpolant between `phi` and the square gauge,
///
/// ```text
/// ||(T + B, T - B)||_{(phi_s), 2/s} <= 2^{s/2} ||(T, B)||_{(phi_s), 2/(2-s)}
/// ```
///
/// for `0 < s <= 1`. (`s = 0` degenerates to the triangle inequality
/// endpoint and is rejected here.)
pub fn check_clarkson_orlicz(
    phi: &OrliczFunction,
    s: f64,
    t: &CompactMatrix,
    b: &CompactMatrix,
) -> Result<CheckRecord> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "position must lie in (0, 1], got {s}"
        )));
    }
    let path = ExponentPath::sum_difference(s)?;
    let square = OrliczFunction::power(2.0)?;
    let phi_s = OrliczFunction::intermediate(phi, &square, s)?;
    let domain = TupleSpaceSpec::new(phi_s.clone(), phi_s.clone(), path.r_s)?;
    let range = TupleSpaceSpec::new(phi_s.clone(), phi_s, path.t_s)?;
    let constant = (2.0f64).powf(s / 2.0);

    let pair = OperatorPair::new(t.clone(), b.clone());
    let image = TupleLinearMap::sum_difference().apply(&pair)?;
    let lhs = tuple_luxemburg_norm(&range, &image)?.value;
    let rhs = constant * tuple_luxemburg_norm(&domain, &pair)?.value;
    Ok(
        CheckRecord::from_gap("clarkson_interpolated", rhs - lhs, INEQUALITY_TOL * rhs.max(1.0))
            .with_details(json!({
                "s": s,
                "r_s": path.r_s,
                "t_s": path.t_s,
                "constant": constant,
                "lhs": lhs,
                "rhs": rhs,
            })),
    )
}

/// Uniform-convexity inequality in Schatten form, two branches:
///
/// * `1 < p <= 2`, `q = p/(p-1)`:
///   `||T+B||_p^q + ||T-B||_p^q <= 2 (||T||_p^p + ||B||_p^p)^{q-1}`;
/// * `p >= 2`:
///   `||T+B||_p^p + ||T-B||_p^p <= 2^{p-1} (||T||_p^p + ||B||_p^p)`.
///
/// At `p = 2` both reduce to the parallelogram identity (gap 0).
pub fn check_clarkson_sp(p: f64, t: &CompactMatrix, b: &CompactMatrix) -> Result<CheckRecord> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Schatten exponent must be finite and > 1, got {p}"
        )));
    }
    let sum = t.add(b)?;
    let diff = t.sub(b)?;
    let np_sum = schatten_norm(&sum, p)?;
    let np_diff = schatten_norm(&diff, p)?;
    let np_t = schatten_norm(t, p)?;
    let np_b = schatten_norm(b, p)?;

    // Both branches are stated in rooted form, so the reported gap scales
    // like a norm.  Below 2 the inner exponents are (q | p); at or above 2
    // they swap to (p | q).  The two coincide at p = 2 (parallelogram).
    let q = p / (p - 1.0);
    let (branch, lhs, rhs) = if p <= 2.0 {
        (
            "small",
            (np_sum.powf(q) + np_diff.powf(q)).powf(1.0 / q),
            (2.0f64).powf(1.0 / q) * (np_t.powf(p) + np_b.powf(p)).powf(1.0 / p),
        )
    } else {
        (
            "large",
            (np_sum.powf(p) + np_diff.powf(p)).powf(1.0 / p),
            (2.0f64).powf(1.0 / p) * (np_t.powf(q) + np_b.powf(q)).powf(1.0 / q),
        )
    };
    Ok(
        CheckRecord::from_gap("clarkson_schatten", rhs - lhs, INEQUALITY_TOL * rhs.max(1.0))
            .with_details(json!({
                "p": p,
                "branch": branch,
                "lhs": lhs,
                "rhs": rhs,
            })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckStatus;
    use approx::assert_relative_eq;

    #[test]
    fn exponent_path_reciprocal_formula() {
        let path = ExponentPath::new(1.0, f64::INFINITY, 2.0, 2.0, 0.5).unwrap();
        assert_relative_eq!(path.r_s, 2.0 / 1.5); // 2/(2-s) at s = 1/2
        assert_relative_eq!(path.t_s, 4.0); // 2/s at s = 1/2
        let ends = ExponentPath::new(1.0, f64::INFINITY, 2.0, 2.0, 0.0).unwrap();
        assert_eq!(ends.t_s, f64::INFINITY);
        assert_eq!(ends.r_s, 1.0);
        assert!(ExponentPath::new(0.5, 1.0, 1.0, 1.0, 0.5).is_err());
        assert!(ExponentPath::new(1.0, 1.0, 1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn sum_difference_map_acts_componentwise() {
        let pair = OperatorPair::new(
            CompactMatrix::diagonal(&[1.0, 2.0]).unwrap(),
            CompactMatrix::diagonal(&[0.5, -1.0]).unwrap(),
        );
        let image = TupleLinearMap::sum_difference().apply(&pair).unwrap();
        assert_eq!(image.first.get(0, 0), 1.5);
        assert_eq!(image.second.get(1, 1), 3.0);
    }

    #[test]
    fn identity_map_has_empirical_bound_one() {
        let spec = TupleSpaceSpec::new(
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            2.0,
        )
        .unwrap();
        let id = TupleLinearMap::new([[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let bound = empirical_bound(&id, &spec, &spec, 3, 40, 17).unwrap();
        assert_relative_eq!(bound, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn sum_difference_endpoint_bound_is_sqrt_two_at_the_square_gauge() {
        // At the (2 -> 2) endpoint the parallelogram identity makes the
        // bound sqrt(2), attained for every sample.
        let spec = TupleSpaceSpec::new(
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            2.0,
        )
        .unwrap();
        let f = TupleLinearMap::sum_difference();
        let bound = empirical_bound(&f, &spec, &spec, 3, 40, 23).unwrap();
        assert_relative_eq!(bound, (2.0f64).sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn riesz_thorin_records_pass_on_the_sum_difference_configuration() {
        let phi = OrliczFunction::power(1.5).unwrap();
        let square = OrliczFunction::power(2.0).unwrap();
        let path = ExponentPath::sum_difference(0.5).unwrap();
        let recs = check_riesz_thorin(
            &TupleLinearMap::sum_difference(),
            (&phi, &phi),
            (&square, &square),
            &path,
            1.0,
            (2.0f64).sqrt(),
            2,
            25,
            31,
        )
        .unwrap();
        assert_eq!(recs.len(), 3);
        for r in &recs {
            assert_eq!(r.status, CheckStatus::Pass, "{} failed: {:?}", r.name, r.gap);
        }
    }

    #[test]
    fn clarkson_interpolated_passes_and_rejects_the_degenerate_position() {
        let phi = OrliczFunction::power(1.5).unwrap();
        let t = CompactMatrix::diagonal(&[1.0, 0.3]).unwrap();
        let b = CompactMatrix::diagonal(&[0.4, -0.8]).unwrap();
        let rec = check_clarkson_orlicz(&phi, 0.5, &t, &b).unwrap();
        assert_eq!(rec.status, CheckStatus::Pass);
        assert!(check_clarkson_orlicz(&phi, 0.0, &t, &b).is_err());
    }

    #[test]
    fn clarkson_schatten_is_parallelogram_equality_at_two() {
        let t = CompactMatrix::from_rows(vec![vec![1.0, 0.5], vec![-0.2, 0.8]]).unwrap();
        let b = CompactMatrix::from_rows(vec![vec![0.3, -0.1], vec![0.6, 0.4]]).unwrap();
        let rec = check_clarkson_sp(2.0, &t, &b).unwrap();
        assert_eq!(rec.status, CheckStatus::Pass);
        assert!(rec.gap.unwrap().abs() < 1e-10, "gap = {:?}", rec.gap);
    }

    #[test]
    fn clarkson_schatten_branches_pass_either_side_of_two() {
        let t = CompactMatrix::diagonal(&[1.0, 0.2]).unwrap();
        let b = CompactMatrix::diagonal(&[0.5, 0.9]).unwrap();
        for &p in &[1.2, 1.5, 2.0, 3.0, 4.0] {
            let rec = check_clarkson_sp(p, &t, &b).unwrap();
            assert_eq!(rec.status, CheckStatus::Pass, "p = {p}");
        }
        assert!(check_clarkson_sp(1.0, &t, &b).is_err());
    }
}
