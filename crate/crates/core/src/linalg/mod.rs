//! Small dense matrices, partial-trace conditional expectations and projection
//! constructors.
//!
//! Two scalar backends implement [`Scalar`]: [`C64`] for representation residuals and
//! [`Rational`] for identities that must hold exactly.

mod matrix;
mod scalar;

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use matrix::{product, Matrix};
pub use scalar::{rat, Rational, Scalar, C64};

use crate::error::{Error, Result};

/// Seeded generator used everywhere randomness is needed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `B = M_d` inside the ambient algebra `M_d ⊗ M_D`, with `E = id ⊗ tr_D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BAlgebra {
    /// `d`, the size of `B`.
    pub b_dim: usize,
    /// `D`, the size of the traced-out factor.
    pub env_dim: usize,
}

impl BAlgebra {
    pub fn new(b_dim: usize, env_dim: usize) -> Result<Self> {
        if b_dim == 0 || env_dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(BAlgebra { b_dim, env_dim })
    }

    /// `B = ℂ` acting on a `D`-dimensional ambient algebra.
    pub fn scalar(env_dim: usize) -> Self {
        BAlgebra { b_dim: 1, env_dim }
    }

    pub fn ambient_dim(&self) -> usize {
        self.b_dim * self.env_dim
    }

    /// `b ↦ b ⊗ 1_D`.
    pub fn embed<T: Scalar>(&self, b: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_b(b)?;
        Ok(b.kron(&Matrix::identity(self.env_dim)))
    }

    pub fn partial_expectation<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        let n = self.ambient_dim();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.rows().max(a.cols()) });
        }
        let env = self.env_dim;
        let inv = T::from_i64(env as i64).inverse().unwrap_or_else(T::zero);
        Ok(Matrix::from_fn(self.b_dim, self.b_dim, |i, j| {
            let sum = (0..env).fold(T::zero(), |acc, k| acc + a.get(i * env + k, j * env + k).clone());
            sum * inv.clone()
        }))
    }

    /// `φ = normalized trace` on the ambient algebra.
    pub fn phi<T: Scalar>(&self, a: &Matrix<T>) -> T {
        a.normalized_trace()
    }

    fn check_b<T: Scalar>(&self, b: &Matrix<T>) -> Result<()> {
        if b.rows() != self.b_dim || b.cols() != self.b_dim {
            return Err(Error::DimensionMismatch { expected: self.b_dim, found: b.rows().max(b.cols()) });
        }
        Ok(())
    }
}

/// `p = diag(1, 0)` and `q = R(θ) p R(θ)ᵀ`.
pub fn projection_pair(theta: f64) -> (Matrix<C64>, Matrix<C64>) {
    let (s, c) = libm::sincos(theta);
    let p = Matrix::diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let q = Matrix::from_fn(2, 2, |i, j| {
        let v = match (i, j) {
            (0, 0) => c * c,
            (1, 1) => s * s,
            _ => c * s,
        };
        C64::new(v, 0.0)
    });
    (p, q)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Unitary from Gram-Schmidt applied to a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> Matrix<C64> {
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect()).collect();
    for j in 0..dim {
        // two passes keep the columns orthonormal to machine precision
        for _ in 0..2 {
            for k in 0..j {
                let overlap: C64 = (0..dim).map(|r| cols[k][r].conj() * cols[j][r]).sum();
                for r in 0..dim {
                    let delta = cols[k][r] * overlap;
                    cols[j][r] -= delta;
                }
            }
        }
        let norm = libm::sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>());
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    Matrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// `(G + G*) / 2` for a complex Gaussian `G`.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> Matrix<C64> {
    let g = Matrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let h = &g + &g.adjoint();
    h.scale(&C64::new(0.5, 0.0))
}

/// Random complex matrix with standard Gaussian entries.
pub fn random_matrix<R: Rng>(dim: usize, rng: &mut R) -> Matrix<C64> {
    Matrix::from_fn(dim, dim, |_, _| complex_gaussian(rng))
}

/// Symmetric matrix with integer entries in `-bound..=bound`.
pub fn random_integer_symmetric<R: Rng>(dim: usize, bound: i64, rng: &mut R) -> Matrix<Rational> {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = Rational::from_integer(rng.random_range(-bound..=bound).into());
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Matrix with entries `a/b`, `a ∈ -bound..=bound`, `b ∈ 1..=3`.
pub fn random_small_rational<R: Rng>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| rat(rng.random_range(-bound..=bound), rng.random_range(1..=3)))
}

/// `n` pairwise orthogonal projections on `ℂ^D` summing to the identity.
///
/// Projection `r` has rank `⌊D/n⌋` plus one for `r < D mod n`, conjugated by a
/// seeded random unitary.
pub fn random_pvm(n: usize, dim: usize, seed: u64) -> Result<Vec<Matrix<C64>>> {
    if n == 0 || dim < n {
        return Err(Error::DimensionMismatch { expected: n.max(1), found: dim });
    }
    let mut rng = rng_from_seed(seed);
    let u = random_unitary(dim, &mut rng);
    let mut owner = Vec::with_capacity(dim);
    for r in 0..n {
        let rank = dim / n + usize::from(r < dim % n);
        owner.extend(core::iter::repeat_n(r, rank));
    }
    Ok((0..n)
        .map(|r| {
            Matrix::from_fn(dim, dim, |a, b| {
                (0..dim)
                    .filter(|&c| owner[c] == r)
                    .map(|c| *u.get(a, c) * u.get(b, c).conj())
                    .sum()
            })
        })
        .collect())
}
