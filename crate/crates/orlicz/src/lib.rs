//! Orlicz sequence-space norms on finite matrices.
//!
//! A convex gauge φ with φ(0) = 0 turns the singular values of a matrix into
//! a modular `Σ φ(sᵢ)`, and the modular into two equivalent norms: the gauge
//! (Luxemburg) norm `inf { λ > 0 : Σ φ(sᵢ/λ) ≤ 1 }` and the dual-pairing
//! (Orlicz/Amemiya) norm `inf_k (1 + Σ φ(k·sᵢ)) / k`.  Powers `φ(u) = uᵖ`
//! recover the Schatten norms; general gauges interpolate between them.
//!
//! The crate computes these norms with certified searches, extends them to
//! two-slot operator tuples with an outer ℓ_p aggregation, and verifies the
//! inequality families that make the spaces usable: modular/norm
//! comparisons, Hölder pairings, ideal (two-sided multiplication) bounds,
//! duality representations, interpolated operator bounds with their
//! Clarkson-type consequences, and the geometric constants (quadratic-mean
//! ratio, nonsquareness) with their index bounds.
//!
//! # Quick start
//!
//! ```
//! use orlicz::{luxemburg_norm, orlicz_norm, CompactMatrix, OrliczFunction};
//!
//! let phi = OrliczFunction::power(2.0)?;
//! let t = CompactMatrix::diagonal(&[3.0, 4.0])?;
//!
//! // For φ(u) = u², the gauge norm is the Frobenius norm.
//! let gauge = luxemburg_norm(&phi, &t)?;
//! assert!((gauge.value - 5.0).abs() < 1e-9);
//!
//! // The pairing norm is bounded by twice the gauge norm.
//! let pairing = orlicz_norm(&phi, &t)?;
//! assert!(gauge.value <= pairing.value + 1e-12);
//! assert!(pairing.value <= 2.0 * gauge.value + 1e-9);
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! # Verification suites
//!
//! ```
//! use orlicz::{run_suite, Suite, VerifyConfig};
//!
//! let config = VerifyConfig {
//!     trials: 8,
//!     budget: 400,
//!     dim: 3,
//!     ..VerifyConfig::default()
//! };
//! let report = run_suite(&config, Suite::ClarksonSp)?;
//! assert!(report.is_pass());
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! Every randomized routine takes an explicit seed and is deterministic
//! given one; reports serialize to JSON, CSV, and plain text.

pub mod error;
pub mod functions;
pub mod geometry;
pub mod interpolation;
pub mod io;
pub mod norms;
mod numeric;
pub mod report;
pub mod sampling;
pub mod spectral;
pub mod tuple;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{GridFunction, GridSpec, IndexEstimate, OrliczFunction};
pub use geometry::{
    check_bounds, estimate_cnj, estimate_nonsquare, extremal_pair, nj_functional, BoundsReport,
    ConstantEstimate,
};
pub use interpolation::{
    check_clarkson_orlicz, check_clarkson_sp, check_riesz_thorin, empirical_bound, ExponentPath,
    TupleLinearMap,
};
pub use norms::{
    luxemburg_norm, orlicz_norm, orlicz_norm_dual_search, schatten_norm, NormMethod, NormResult,
};
pub use report::{CheckRecord, CheckStatus, Summary, VerificationReport};
pub use sampling::Sampler;
pub use spectral::{
    abs_product_trace, modular_trace, CompactMatrix, SingularSpectrum, SvdFactors,
};
pub use tuple::{
    check_doubling_triangle, check_dual_representation, check_holder, check_ideal,
    check_modular_norm_relations, dual_norm_estimate, tuple_luxemburg_norm, tuple_orlicz_norm,
    upsilon, upsilon_abs_product, upsilon_modular, DualNormEstimate, OperatorPair, TupleNorm,
    TupleSpaceSpec,
};
pub use verify::{run_suite, Suite, VerifyConfig};

#[cfg(doctest)]
mod book;
