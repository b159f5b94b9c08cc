//! Finite-dimensional stand-ins for compact operators: dense real square
//! matrices and their singular spectra.
//!
//! Every norm in this crate is a symmetric gauge of the singular values, so
//! the only nontrivial numerics here is the SVD. It is a one-sided Jacobi
//! (Hestenes) iteration: rotate column pairs until the Gram matrix of the
//! working copy is diagonal to within 1e-15 of its squared Frobenius mass.
//! That head-room (well past the accuracy the norm layer asks for) keeps
//! near-singular spectra trustworthy.

use crate::error::{Error, Result};
use crate::functions::OrliczFunction;

const MAX_SWEEPS: usize = 100;
/// Relative off-diagonal Gram mass at which the iteration stops.
const GRAM_TOL: f64 = 1e-15;
/// Entry-scale tolerance for the symmetry test in [`CompactMatrix::is_psd`].
const SYMMETRY_TOL: f64 = 1e-12;
/// Relative trace defect tolerated when certifying positivity.
const PSD_TRACE_TOL: f64 = 1e-9;

/// Dense real `dim x dim` matrix, row-major. Finite entries enforced at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl CompactMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !e.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "matrix entries must be finite, got {bad}"
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(
                "rows must all have length equal to the row count".into(),
            ));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "matrix entries must be finite, got {d}"
                )));
            }
            m.entries[i * dim + i] = d;
        }
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0.0)
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "matrix entries must be finite, got {v}"
            )));
        }
        if i >= self.dim || j >= self.dim {
            return Err(Error::DimensionMismatch(format!(
                "entry ({i}, {j}) outside a {0}x{0} matrix",
                self.dim
            )));
        }
        let mut entries = self.entries.clone();
        entries[i * self.dim + j] = v;
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| c * e).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, entries })
    }

    /// Transpose (these are real matrices, so adjoint = transpose).
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.entries[j * n + i])
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }

    /// Singular values, descending. One-sided Jacobi on a power-of-two
    /// rescaled copy; errors with `NoConvergence` if 100 sweeps do not
    /// diagonalize the Gram matrix.
    pub fn singular_values(&self) -> Result<SingularSpectrum> {
        let n = self.dim;
        if self.is_zero() {
            return Ok(SingularSpectrum {
                values: vec![0.0; n],
            });
        }
        let (cols, _, scale) = self.jacobi_columns(false)?;
        let mut values: Vec<f64> = cols
            .iter()
            .map(|col| scale * dot(col, col).sqrt())
            .collect();
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        Ok(SingularSpectrum { values })
    }

    /// Full decomposition `self = U diag(values) V^T` with `values`
    /// descending. Columns of `U` belonging to vanishing singular values
    /// (below 1e-14 of the largest) are zeroed rather than completed to an
    /// orthonormal basis; the reconstruction is unaffected.
    pub fn svd(&self) -> Result<SvdFactors> {
        let n = self.dim;
        if self.is_zero() {
            return Ok(SvdFactors {
                u: CompactMatrix::zeros(n),
                values: vec![0.0; n],
                v: CompactMatrix::identity(n),
            });
        }
        let (cols, rot, scale) = self.jacobi_columns(true)?;
        let rot = rot.expect("rotation accumulation requested");

        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).expect("finite norms"));

        let top = norms[order[0]];
        let mut u = CompactMatrix::zeros(n);
        let mut v = CompactMatrix::zeros(n);
        let mut values = Vec::with_capacity(n);
        for (slot, &j) in order.iter().enumerate() {
            let sigma = scale * norms[j];
            values.push(sigma);
            if norms[j] > 1e-14 * top {
                for i in 0..n {
                    u.entries[i * n + slot] = cols[j][i] / norms[j];
                }
            }
            // rot holds the accumulated column rotations: self * rot = U S,
            // so the right factor's columns are rot's columns.
            for i in 0..n {
                v.entries[i * n + slot] = rot[j][i];
            }
        }
        Ok(SvdFactors { u, values, v })
    }

    /// Shared Jacobi core: returns the rotated columns (each with norm
    /// `sigma_i / scale`), optionally the accumulated rotation matrix
    /// (columns, in the same layout), and the power-of-two prescale.
    fn jacobi_columns(
        &self,
        track_rotation: bool,
    ) -> Result<(Vec<Vec<f64>>, Option<Vec<Vec<f64>>>, f64)> {
        let n = self.dim;
        let frob = self.frobenius_norm();
        // Exact power-of-two rescale: keeps the working Frobenius norm near 1
        // without introducing rounding.
        let scale = (2.0f64).powi(frob.log2().round() as i32);
        let w = self.scale(1.0 / scale);

        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| w.entries[i * n + j]).collect())
            .collect();
        let mut rot: Option<Vec<Vec<f64>>> = track_rotation.then(|| {
            (0..n)
                .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
                .collect()
        });
        let work_frob2: f64 = cols.iter().flatten().map(|e| e * e).sum();

        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    let gamma: f64 = dot(&cols[i], &cols[j]);
                    off += 2.0 * gamma * gamma;
                }
            }
            if off.sqrt() <= GRAM_TOL * work_frob2 {
                converged = true;
                break;
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let gamma: f64 = dot(&cols[i], &cols[j]);
                    if gamma == 0.0 {
                        continue;
                    }
                    let alpha: f64 = dot(&cols[i], &cols[i]);
                    let beta: f64 = dot(&cols[j], &cols[j]);
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    rotate_pair(&mut cols, i, j, c, s);
                    if let Some(r) = rot.as_mut() {
                        rotate_pair(r, i, j, c, s);
                    }
                }
            }
        }
        if !converged {
            return Err(Error::NoConvergence(format!(
                "singular value iteration did not settle in {MAX_SWEEPS} sweeps (dim {n})"
            )));
        }
        Ok((cols, rot, scale))
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.largest())
    }

    /// Certify positive semidefiniteness without an eigensolver: the matrix
    /// must be symmetric, and its trace must exhaust its trace norm (for
    /// symmetric `T`, `tr T = sum of eigenvalues <= sum of |eigenvalues| =
    /// sum of singular values`, with equality iff all eigenvalues are
    /// nonnegative).
    pub fn is_psd(&self) -> Result<bool> {
        let n = self.dim;
        let scale = self
            .entries
            .iter()
            .fold(0.0f64, |m, e| m.max(e.abs()))
            .max(1.0);
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.get(i, j) - self.get(j, i)).abs() > SYMMETRY_TOL * scale {
                    return Ok(false);
                }
            }
        }
        let s_sum = self.singular_values()?.sum();
        Ok((self.trace() - s_sum).abs() <= PSD_TRACE_TOL * s_sum.max(1.0))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rotate_pair(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let n = cols[i].len();
    for k in 0..n {
        let u = cols[i][k];
        let v = cols[j][k];
        cols[i][k] = c * u - s * v;
        cols[j][k] = s * u + c * v;
    }
}

/// Result of [`CompactMatrix::svd`]: `u * diag(values) * v_transpose`
/// reproduces the input.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: CompactMatrix,
    /// Descending.
    pub values: Vec<f64>,
    pub v: CompactMatrix,
}

impl SvdFactors {
    /// `U diag(values) V^T`.
    pub fn reconstruct(&self) -> CompactMatrix {
        let n = self.values.len();
        let mut m = CompactMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.u.get(i, k) * self.values[k] * self.v.get(j, k);
                }
                m.entries[i * n + j] = acc;
            }
        }
        m
    }

    pub fn spectrum(&self) -> SingularSpectrum {
        SingularSpectrum {
            values: self.values.clone(),
        }
    }
}

/// Singular values in descending order, with the spectral sums the norm
/// layer consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Trace norm: the sum of all singular values.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// The modular `sum_i phi(s_i / lambda)`.
    pub fn modular(&self, phi: &OrliczFunction, lambda: f64) -> f64 {
        self.values.iter().map(|&s| phi.eval(s / lambda)).sum()
    }
}

/// `tr phi(|T| / lambda)` — the trace of `phi` applied to the singular
/// spectrum, which is how scalar gauges act on operators throughout.
pub fn modular_trace(phi: &OrliczFunction, t: &CompactMatrix, lambda: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "modular scale must be positive and finite, got {lambda:e}"
        )));
    }
    Ok(t.singular_values()?.modular(phi, lambda))
}

/// `tr |T B|`: the trace norm of the product.
pub fn abs_product_trace(t: &CompactMatrix, b: &CompactMatrix) -> Result<f64> {
    Ok(t.matmul(b)?.singular_values()?.sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn construction_validates_shape_and_entries() {
        assert!(CompactMatrix::new(2, vec![1.0, 2.0, 3.0]).is_err());
        assert!(CompactMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(CompactMatrix::new(0, vec![]).is_err());
        assert!(CompactMatrix::from_rows(vec![vec![1.0], vec![2.0]]).is_err());
    }

    #[test]
    fn rank_one_all_ones_has_spectrum_two_zero() {
        let t = CompactMatrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let s = t.singular_values().unwrap();
        assert_relative_eq!(s.values()[0], 2.0, max_relative = 1e-13);
        assert!(s.values()[1].abs() < 1e-13);
    }

    #[test]
    fn diagonal_spectrum_is_sorted_absolute_diagonal() {
        let t = CompactMatrix::diagonal(&[3.0, -4.0, 0.5]).unwrap();
        let s = t.singular_values().unwrap();
        assert_relative_eq!(s.values()[0], 4.0, max_relative = 1e-14);
        assert_relative_eq!(s.values()[1], 3.0, max_relative = 1e-14);
        assert_relative_eq!(s.values()[2], 0.5, max_relative = 1e-14);
        assert_relative_eq!(s.sum(), 7.5, max_relative = 1e-14);
        assert_relative_eq!(t.operator_norm().unwrap(), 4.0, max_relative = 1e-14);
    }

    #[test]
    fn frobenius_mass_equals_sum_of_squared_singular_values() {
        let t = CompactMatrix::from_rows(vec![
            vec![0.3, -1.2, 2.0],
            vec![4.5, 0.01, -0.7],
            vec![-2.2, 1.1, 0.4],
        ])
        .unwrap();
        let s = t.singular_values().unwrap();
        let mass: f64 = s.values().iter().map(|v| v * v).sum();
        assert_relative_eq!(mass.sqrt(), t.frobenius_norm(), max_relative = 1e-12);
    }

    #[test]
    fn singular_values_survive_extreme_scaling() {
        let t = CompactMatrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]])
            .unwrap()
            .scale(1e-150);
        let s = t.singular_values().unwrap();
        assert_relative_eq!(s.values()[0], 2e-150, max_relative = 1e-12);
    }

    #[test]
    fn zero_matrix_short_circuits() {
        let s = CompactMatrix::zeros(3).singular_values().unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
        assert_eq!(s.largest(), 0.0);
    }

    #[test]
    fn svd_factors_reconstruct_the_matrix() {
        let t = CompactMatrix::from_rows(vec![
            vec![0.9, -2.1, 0.3],
            vec![1.5, 0.2, -0.8],
            vec![-0.4, 0.6, 2.5],
        ])
        .unwrap();
        let f = t.svd().unwrap();
        let back = f.reconstruct();
        for (a, b) in t.entries().iter().zip(back.entries()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        // Full-rank factors are orthogonal.
        let utu = f.u.adjoint().matmul(&f.u).unwrap();
        let vtv = f.v.adjoint().matmul(&f.v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((utu.get(i, j) - expect).abs() < 1e-12);
                assert!((vtv.get(i, j) - expect).abs() < 1e-12);
            }
        }
        // And the values agree with the dedicated spectrum path.
        let s = t.singular_values().unwrap();
        for (a, b) in f.values.iter().zip(s.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn svd_of_zero_matrix_is_trivial() {
        let f = CompactMatrix::zeros(2).svd().unwrap();
        assert_eq!(f.values, vec![0.0, 0.0]);
        assert!(f.reconstruct().is_zero());
    }

    #[test]
    fn psd_certificate_accepts_gram_and_rejects_indefinite() {
        let a = CompactMatrix::from_rows(vec![vec![1.0, 0.3], vec![-0.2, 0.8]]).unwrap();
        let gram = a.adjoint().matmul(&a).unwrap();
        assert!(gram.is_psd().unwrap());
        let indefinite = CompactMatrix::diagonal(&[1.0, -0.5]).unwrap();
        assert!(!indefinite.is_psd().unwrap());
        let asym = CompactMatrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(!asym.is_psd().unwrap());
    }

    #[test]
    fn product_trace_norm_of_diagonals_is_dot_of_moduli() {
        let t = CompactMatrix::diagonal(&[2.0, -3.0]).unwrap();
        let b = CompactMatrix::diagonal(&[-1.0, 4.0]).unwrap();
        assert_relative_eq!(abs_product_trace(&t, &b).unwrap(), 14.0, max_relative = 1e-13);
    }

    #[test]
    fn modular_trace_scales_the_spectrum() {
        let phi = OrliczFunction::power(2.0).unwrap();
        let t = CompactMatrix::diagonal(&[3.0, 4.0]).unwrap();
        assert_relative_eq!(
            modular_trace(&phi, &t, 5.0).unwrap(),
            (0.6f64).powi(2) + (0.8f64).powi(2),
            max_relative = 1e-13
        );
        assert!(modular_trace(&phi, &t, 0.0).is_err());
    }
}
