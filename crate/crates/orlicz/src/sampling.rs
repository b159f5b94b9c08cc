//! Seeded random inputs for the verification suites.
//!
//! All sampling flows through one ChaCha-backed generator so that a run is
//! reproducible from its seed alone. Matrices come in mixed shapes (dense,
//! diagonal, rank-one) with log-uniform scale jitter, because the
//! inequalities under test must survive both well- and badly-conditioned
//! inputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spectral::CompactMatrix;
use crate::tuple::OperatorPair;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Dense matrix with entries uniform on [-1, 1).
    pub fn dense(&mut self, dim: usize) -> CompactMatrix {
        CompactMatrix::from_fn(dim, |_, _| self.rng.random_range(-1.0..1.0))
    }

    /// Diagonal matrix with entries uniform on [-1, 1).
    pub fn diagonal(&mut self, dim: usize) -> CompactMatrix {
        let d: Vec<f64> = (0..dim).map(|_| self.rng.random_range(-1.0..1.0)).collect();
        CompactMatrix::diagonal(&d).expect("finite diagonal")
    }

    /// Diagonal matrix with nonnegative entries (positive semidefinite by
    /// construction).
    pub fn psd_diagonal(&mut self, dim: usize) -> CompactMatrix {
        let d: Vec<f64> = (0..dim).map(|_| self.rng.random_range(0.0..1.0)).collect();
        CompactMatrix::diagonal(&d).expect("finite diagonal")
    }

    /// Rank-one matrix `x y^T` from two uniform vectors.
    pub fn rank_one(&mut self, dim: usize) -> CompactMatrix {
        let x: Vec<f64> = (0..dim).map(|_| self.rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..dim).map(|_| self.rng.random_range(-1.0..1.0)).collect();
        CompactMatrix::from_fn(dim, |i, j| x[i] * y[j])
    }

    /// Mixed-shape matrix with scale jitter `10^U[-1,1)`.
    pub fn matrix(&mut self, dim: usize) -> CompactMatrix {
        let shape = self.rng.random_range(0..4u8);
        let m = match shape {
            0 | 1 => self.dense(dim),
            2 => self.diagonal(dim),
            _ => self.rank_one(dim),
        };
        let jitter = (10.0f64).powf(self.rng.random_range(-1.0..1.0));
        m.scale(jitter)
    }

    pub fn pair(&mut self, dim: usize) -> OperatorPair {
        OperatorPair::new(self.matrix(dim), self.matrix(dim))
    }

    /// Haar-ish orthogonal matrix by Gram-Schmidt on a dense sample, with
    /// random sign flips; resamples on near-dependence.
    pub fn orthogonal(&mut self, dim: usize) -> Result<CompactMatrix> {
        'attempt: for _ in 0..100 {
            let raw = self.dense(dim);
            // Columns of the sample.
            let mut cols: Vec<Vec<f64>> = (0..dim)
                .map(|j| (0..dim).map(|i| raw.get(i, j)).collect())
                .collect();
            for j in 0..dim {
                for k in 0..j {
                    let proj: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                    for i in 0..dim {
                        cols[j][i] -= proj * cols[k][i];
                    }
                }
                let norm: f64 = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-6 {
                    continue 'attempt;
                }
                let sign = if self.rng.random_range(0..2u8) == 0 {
                    1.0
                } else {
                    -1.0
                };
                for x in cols[j].iter_mut() {
                    *x *= sign / norm;
                }
            }
            return Ok(CompactMatrix::from_fn(dim, |i, j| cols[j][i]));
        }
        Err(Error::NoConvergence(
            "orthogonalization kept hitting near-dependent samples".into(),
        ))
    }
}
