//! Geometric constants of gauge-normed matrix spaces.
//!
//! Two classical constants are estimated by seeded search over matrix pairs:
//!
//! * the quadratic-mean ratio `(‖x+y‖² + ‖x−y‖²) / (2(‖x‖² + ‖y‖²))`, whose
//!   supremum measures how far the space sits from a Hilbert space (where the
//!   parallelogram identity pins it at exactly 1), and
//! * the nonsquareness functional `min(‖x+y‖, ‖x−y‖)` over pairs of unit
//!   vectors, whose supremum is below 2 precisely for uniformly nonsquare
//!   spaces.
//!
//! Both estimators evaluate a small set of hand-picked candidate pairs first
//! (diagonal unit pairs and their sum/difference rotation, which attain the
//! supremum for every power gauge), then spend the remaining budget on random
//! sampling and a local hill climb.  Search runs against a cheap tabulated
//! stand-in when the gauge itself is expensive to evaluate; the reported value
//! is always a fresh evaluation of the winning pair under the exact gauge, so
//! results replay independently of the search path.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{GridFunction, GridSpec, OrliczFunction};
use crate::norms::luxemburg_norm;
use crate::report::{matrix_to_json, CheckRecord};
use crate::sampling::Sampler;
use crate::spectral::CompactMatrix;

/// Nodes in the tabulated stand-in used to search expensive gauges.
const PROXY_NODES: usize = 2048;
/// Modular values bracketing the stand-in's abscissa range.
const PROXY_LO_VALUE: f64 = 1e-8;
const PROXY_HI_VALUE: f64 = 1e4;
/// Accept a hill-climb move only past this margin, so ties don't wander.
const CLIMB_MARGIN: f64 = 1e-15;
/// Shrink the climb step after this many stalls per matrix entry.
const CLIMB_PATIENCE: usize = 2;

/// Outcome of a constant search: the certified value together with the
/// witnessing pair it was evaluated at.
#[derive(Debug, Clone)]
pub struct ConstantEstimate {
    /// Value of the functional at `witness` under the exact gauge norm.
    pub value: f64,
    /// Pair attaining `value`.
    pub witness: (CompactMatrix, CompactMatrix),
    /// Number of candidate evaluations spent.
    pub trials: usize,
    /// Seed the search ran under.
    pub seed: u64,
    /// Matrix dimension searched.
    pub dim: usize,
}

impl ConstantEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "trials": self.trials,
            "seed": self.seed,
            "dim": self.dim,
            "witness": {
                "x": matrix_to_json(&self.witness.0),
                "y": matrix_to_json(&self.witness.1),
            },
        })
    }
}

/// Index and constant estimates for one gauge, with the consistency checks
/// tying them together.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub alpha: f64,
    pub beta: f64,
    pub cnj: ConstantEstimate,
    pub nonsquare: ConstantEstimate,
    pub records: Vec<CheckRecord>,
}

/// Quadratic-mean ratio of a pair under the given norm.
///
/// Undefined when both arguments are zero.
pub fn nj_functional(
    norm: impl Fn(&CompactMatrix) -> Result<f64>,
    x: &CompactMatrix,
    y: &CompactMatrix,
) -> Result<f64> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::InvalidInput(
            "quadratic-mean ratio is undefined at the zero pair".into(),
        ));
    }
    let sum = norm(&x.add(y)?)?;
    let diff = norm(&x.sub(y)?)?;
    let nx = norm(x)?;
    let ny = norm(y)?;
    Ok((sum * sum + diff * diff) / (2.0 * (nx * nx + ny * ny)))
}

/// Diagonal pair attaining the quadratic-mean supremum of the `u^p` gauge in
/// any dimension `>= 2`.
pub fn extremal_pair(p: f64, dim: usize) -> Result<(CompactMatrix, CompactMatrix)> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "extremal pair needs a finite exponent >= 1, got {p}"
        )));
    }
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "extremal pair needs dimension >= 2, got {dim}"
        )));
    }
    let e_first = diag_unit(dim, 0);
    let e_second = diag_unit(dim, 1);
    if p <= 2.0 {
        Ok((e_first, e_second))
    } else {
        let c = (2.0f64).powf(-1.0 / p);
        Ok((
            e_first.add(&e_second)?.scale(c),
            e_first.sub(&e_second)?.scale(c),
        ))
    }
}

/// Estimate the supremum of the quadratic-mean ratio over nonzero pairs.
pub fn estimate_cnj(
    phi: &OrliczFunction,
    dim: usize,
    budget: usize,
    seed: u64,
) -> Result<ConstantEstimate> {
    let (search_phi, exact_phi) = search_and_exact(phi, dim)?;
    let snorm = |m: &CompactMatrix| luxemburg_norm(&search_phi, m).map(|r| r.value);

    let mut sampler = Sampler::new(seed);
    let mut trials = 0usize;
    let mut best: Option<(f64, CompactMatrix, CompactMatrix)> = None;
    let mut candidates = canonical_pairs(dim)?;
    for _ in 0..budget / 2 {
        candidates.push((sampler.matrix(dim), sampler.matrix(dim)));
    }
    for (x, y) in candidates {
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let f = nj_functional(snorm, &x, &y)?;
        trials += 1;
        if best.as_ref().is_none_or(|(b, _, _)| f > *b) {
            best = Some((f, x, y));
        }
    }

    let (_, bx, by) = best.expect("canonical candidates always evaluated");
    let (bx, by, extra) = hill_climb(
        snorm,
        |n, x, y| nj_functional(n, x, y),
        bx,
        by,
        budget.saturating_sub(trials),
        &mut sampler,
    )?;
    trials += extra;

    let enorm = |m: &CompactMatrix| luxemburg_norm(&exact_phi, m).map(|r| r.value);
    let value = nj_functional(enorm, &bx, &by)?;
    Ok(ConstantEstimate {
        value,
        witness: (bx, by),
        trials,
        seed,
        dim,
    })
}

/// Estimate the supremum of `min(‖x+y‖, ‖x−y‖)` over pairs of unit vectors.
pub fn estimate_nonsquare(
    phi: &OrliczFunction,
    dim: usize,
    budget: usize,
    seed: u64,
) -> Result<ConstantEstimate> {
    let (search_phi, exact_phi) = search_and_exact(phi, dim)?;
    let snorm = |m: &CompactMatrix| luxemburg_norm(&search_phi, m).map(|r| r.value);

    let mut sampler = Sampler::new(seed);
    let mut trials = 0usize;
    let mut best: Option<(f64, CompactMatrix, CompactMatrix)> = None;
    let mut candidates = canonical_pairs(dim)?;
    for _ in 0..budget / 2 {
        candidates.push((sampler.matrix(dim), sampler.matrix(dim)));
    }
    for (x, y) in candidates {
        let Some(f) = min_sum_diff(snorm, &x, &y)? else {
            continue;
        };
        trials += 1;
        if best.as_ref().is_none_or(|(b, _, _)| f > *b) {
            best = Some((f, x, y));
        }
    }

    let (_, bx, by) = best.expect("canonical candidates always evaluated");
    let (bx, by, extra) = hill_climb(
        snorm,
        |n, x, y| Ok(min_sum_diff(n, x, y)?.unwrap_or(f64::NEG_INFINITY)),
        bx,
        by,
        budget.saturating_sub(trials),
        &mut sampler,
    )?;
    trials += extra;

    // Store the witness normalized under the exact gauge, so the reported
    // value is exactly the functional of the stored pair.
    let enorm = |m: &CompactMatrix| luxemburg_norm(&exact_phi, m).map(|r| r.value);
    let bx = bx.scale(1.0 / enorm(&bx)?);
    let by = by.scale(1.0 / enorm(&by)?);
    let value = enorm(&bx.add(&by)?)?.min(enorm(&bx.sub(&by)?)?);
    Ok(ConstantEstimate {
        value,
        witness: (bx, by),
        trials,
        seed,
        dim,
    })
}

/// Run the index/constant suite for one gauge, optionally for the geometric
/// interpolant of the gauge with `u²` at parameter `s`.
pub fn check_bounds(
    phi: &OrliczFunction,
    s: Option<f64>,
    dim: usize,
    budget: usize,
    seed: u64,
) -> Result<BoundsReport> {
    let target = match s {
        Some(w) => OrliczFunction::intermediate(phi, &OrliczFunction::power(2.0)?, w)?,
        None => phi.clone(),
    };
    let indices = target.indices()?;
    let (alpha, beta) = (indices.alpha, indices.beta);

    let mut cnj = estimate_cnj(&target, dim, budget, seed)?;
    let nonsquare = estimate_nonsquare(&target, dim, budget, seed)?;
    if nonsquare.value * nonsquare.value > 2.0 * cnj.value + 1e-6 {
        // The square bound can only look violated when the ratio search
        // underestimated its supremum; retry it once with more budget.
        cnj = estimate_cnj(&target, dim, budget.saturating_mul(4), seed.wrapping_add(1))?;
    }

    let details = json!({
        "alpha": alpha,
        "beta": beta,
        "cnj": cnj.value,
        "nonsquare": nonsquare.value,
        "s": s,
        "gauge": target.label(),
    });
    let mut records = Vec::new();

    // J² ≤ 2·c for every normed space; 0.05 of slack absorbs search error on
    // both sides.
    let j2 = nonsquare.value * nonsquare.value;
    records.push(
        CheckRecord::from_gap("j_squared_vs_cnj", 2.0 * cnj.value + 0.05 - j2, 0.0)
            .with_details(details.clone()),
    );

    // The nonsquareness supremum dominates both index ratios.  Indices of a
    // tabulated gauge are differenced from sampled data, so bounds seeded by
    // them are reported as attainment ratios rather than graded.
    let advisory = phi.is_tabulated();
    let index_floor = (1.0 / alpha).max(2.0 * beta);
    if advisory {
        let reason = "indices of a tabulated gauge carry sampling error; see attainment";
        records.push(
            CheckRecord::skipped("j_lower_from_indices", reason).with_details(annotated(
                &details,
                reason,
                nonsquare.value / index_floor,
                index_floor,
            )),
        );
    } else {
        records.push(
            CheckRecord::from_gap(
                "j_lower_from_indices",
                nonsquare.value + 2e-2 - index_floor,
                0.0,
            )
            .with_details(details.clone()),
        );
    }

    if let Some(w) = s {
        let cap = (2.0f64).powf(1.0 - w);
        records.push(
            CheckRecord::from_gap("cnj_interpolation_cap", cap + 1e-6 - cnj.value, 0.0)
                .with_details(details.clone()),
        );
    }

    // Index sandwich: the ratio constant is at least max{1/(2α²), 2β²}, and
    // at most the interpolation cap when one applies.
    let lower = (0.5 / (alpha * alpha)).max(2.0 * beta * beta);
    if advisory {
        let reason = "indices of a tabulated gauge carry sampling error; see attainment";
        records.push(
            CheckRecord::skipped("cnj_sandwich", reason).with_details(annotated(
                &details,
                reason,
                cnj.value / lower,
                lower,
            )),
        );
    } else {
        let mut sandwich_gap = cnj.value + 2e-2 - lower;
        if let Some(w) = s {
            let cap = (2.0f64).powf(1.0 - w);
            sandwich_gap = sandwich_gap.min(cap + 1e-6 - cnj.value);
        }
        records
            .push(CheckRecord::from_gap("cnj_sandwich", sandwich_gap, 0.0).with_details(details));
    }

    Ok(BoundsReport {
        alpha,
        beta,
        cnj,
        nonsquare,
        records,
    })
}

/// Details payload extended with how much of an advisory floor was attained.
fn annotated(base: &Value, reason: &str, attainment: f64, floor: f64) -> Value {
    let mut out = base.clone();
    if let Some(map) = out.as_object_mut() {
        map.insert("reason".into(), json!(reason));
        map.insert("attainment".into(), json!(attainment));
        map.insert("floor".into(), json!(floor));
    }
    out
}

/// `min(‖x+y‖, ‖x−y‖)` after normalizing both arguments; `None` when either
/// argument is zero.
fn min_sum_diff(
    norm: impl Fn(&CompactMatrix) -> Result<f64>,
    x: &CompactMatrix,
    y: &CompactMatrix,
) -> Result<Option<f64>> {
    let nx = if x.is_zero() { 0.0 } else { norm(x)? };
    let ny = if y.is_zero() { 0.0 } else { norm(y)? };
    if nx <= 0.0 || ny <= 0.0 {
        return Ok(None);
    }
    let ux = x.scale(1.0 / nx);
    let uy = y.scale(1.0 / ny);
    let sum = norm(&ux.add(&uy)?)?;
    let diff = norm(&ux.sub(&uy)?)?;
    Ok(Some(sum.min(diff)))
}

/// Local search: perturb single entries of the incumbent pair, shrinking the
/// step on repeated failure.  Returns the (possibly improved) incumbent and
/// the number of evaluations spent.
fn hill_climb<N, F>(
    norm: N,
    functional: F,
    mut x: CompactMatrix,
    mut y: CompactMatrix,
    budget: usize,
    sampler: &mut Sampler,
) -> Result<(CompactMatrix, CompactMatrix, usize)>
where
    N: Fn(&CompactMatrix) -> Result<f64> + Copy,
    F: Fn(N, &CompactMatrix, &CompactMatrix) -> Result<f64>,
{
    if budget == 0 {
        return Ok((x, y, 0));
    }
    let dim = x.dim();
    let mut incumbent = functional(norm, &x, &y)?;
    let mut spent = 1usize;
    let scale = x.frobenius_norm().max(y.frobenius_norm()).max(1e-6);
    let mut step = 0.5 * scale;
    let mut stalls = 0usize;
    let patience = CLIMB_PATIENCE * dim * dim;

    while spent < budget {
        let move_x = sampler.uniform(0.0, 2.0) < 1.0;
        let i = (sampler.uniform(0.0, dim as f64) as usize).min(dim - 1);
        let j = (sampler.uniform(0.0, dim as f64) as usize).min(dim - 1);
        let delta = step * sampler.uniform(-1.0, 1.0);
        let (cx, cy) = if move_x {
            (x.with_entry(i, j, x.get(i, j) + delta)?, y.clone())
        } else {
            (x.clone(), y.with_entry(i, j, y.get(i, j) + delta)?)
        };
        spent += 1;
        if cx.is_zero() && cy.is_zero() {
            continue;
        }
        let f = functional(norm, &cx, &cy)?;
        if f > incumbent + CLIMB_MARGIN {
            incumbent = f;
            x = cx;
            y = cy;
            stalls = 0;
        } else {
            stalls += 1;
            if stalls >= patience {
                step *= 0.5;
                stalls = 0;
                if step < 1e-9 * scale {
                    break;
                }
            }
        }
    }
    Ok((x, y, spent))
}

/// Candidate pairs evaluated before any random sampling: a unit against
/// zero (the ratio there is exactly 1, flooring the estimate), the first two
/// diagonal units, and their sum/difference rotation.
fn canonical_pairs(dim: usize) -> Result<Vec<(CompactMatrix, CompactMatrix)>> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "constant search needs dimension >= 2, got {dim}"
        )));
    }
    let e_first = diag_unit(dim, 0);
    let e_second = diag_unit(dim, 1);
    Ok(vec![
        (e_first.clone(), CompactMatrix::zeros(dim)),
        (e_first.clone(), e_second.clone()),
        (e_first.add(&e_second)?, e_first.sub(&e_second)?),
    ])
}

fn diag_unit(dim: usize, k: usize) -> CompactMatrix {
    CompactMatrix::from_fn(dim, |i, j| if i == j && i == k { 1.0 } else { 0.0 })
}

/// The gauge to search with and the gauge to certify with.  Expensive gauges
/// are searched through a tabulated stand-in covering modular values
/// `[1e-8, 1e4]`, which is ample for unit-ball geometry at small dimension.
fn search_and_exact(
    phi: &OrliczFunction,
    dim: usize,
) -> Result<(OrliczFunction, OrliczFunction)> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "constant search needs dimension >= 2, got {dim}"
        )));
    }
    if !phi.is_costly() {
        return Ok((phi.clone(), phi.clone()));
    }
    let lo = phi.inverse(PROXY_LO_VALUE)?;
    let hi = phi.inverse(PROXY_HI_VALUE)?;
    let spec = GridSpec::new(lo, hi, PROXY_NODES)?;
    let grid = GridFunction::tabulate(|u| phi.eval(u), &spec)?;
    let proxy = OrliczFunction::from_grid(format!("proxy({})", phi.label()), grid)?;
    Ok((proxy, phi.clone()))
}
