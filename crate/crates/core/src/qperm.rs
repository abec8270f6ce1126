//! Magic unitaries: representations of the quantum permutation algebra `A_s(n)`.
//!
//! The counit corresponds to `permutation_rep` of the identity.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::qis::{RepKind, Representation};
use crate::report::{witness, CheckReport, ResidualTracker};

/// Checks that every entry is a projection and every row and column sums to 1.
///
/// Orthogonality within rows and columns follows from these; it is reported as
/// `row_orthogonality` and `column_orthogonality`.
pub fn check_magic_unitary<T: Scalar>(rep: &Representation<T>) -> Result<CheckReport> {
    let RepKind::Permutation { n } = rep.kind() else {
        return Err(Error::MalformedRep("expected an A_s(n) representation".into()));
    };
    let d = rep.dim();
    let one = Matrix::<T>::identity(d);
    let mut t = ResidualTracker::new(rep.tolerance(), T::EXACT);
    let at = |i: usize, j: usize| witness([("i", vec![i as i64]), ("j", vec![j as i64])]);
    for i in 1..=n {
        for j in 1..=n {
            let u = rep.get(i, j);
            t.observe("projection", (u * u).max_abs_diff(u), || at(i, j));
            t.observe("self_adjoint", u.adjoint().max_abs_diff(u), || at(i, j));
        }
    }
    for a in 1..=n {
        let mut row = Matrix::zeros(d, d);
        let mut col = Matrix::zeros(d, d);
        for b in 1..=n {
            row = &row + rep.get(a, b);
            col = &col + rep.get(b, a);
        }
        t.observe("row_sum", row.max_abs_diff(&one), || witness([("i", vec![a as i64])]));
        t.observe("column_sum", col.max_abs_diff(&one), || witness([("j", vec![a as i64])]));
    }
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                if b == c {
                    continue;
                }
                let r = (rep.get(a, b) * rep.get(a, c)).max_abs();
                t.observe("row_orthogonality", r, || witness([("i", vec![a as i64, a as i64]), ("j", vec![b as i64, c as i64])]));
                let c_ = (rep.get(b, a) * rep.get(c, a)).max_abs();
                t.observe("column_orthogonality", c_, || witness([("i", vec![b as i64, c as i64]), ("j", vec![a as i64, a as i64])]));
            }
        }
    }
    t.touch("row_orthogonality");
    t.touch("column_orthogonality");
    Ok(t.finish("qperm.magic").with_param("n", n).with_param("dim", d).with_param("tolerance", rep.tolerance()))
}

/// 1×1 entries `δ_{i π(j)}` for a permutation given by its values `π(1), …, π(n)`.
pub fn permutation_rep<T: Scalar>(pi: &[usize]) -> Result<Representation<T>> {
    let n = pi.len();
    let mut seen = vec![false; n + 1];
    for &v in pi {
        if v < 1 || v > n || seen[v] {
            return Err(Error::NotPermutation(format!("{pi:?}")));
        }
        seen[v] = true;
    }
    let rows = (1..=n)
        .map(|i| pi.iter().map(|&p| Matrix::scalar(if p == i { T::one() } else { T::zero() })).collect())
        .collect();
    Representation::new(RepKind::Permutation { n }, rows, 0.0)
}

/// `[[p, 1 − p], [1 − p, p]]`.
pub fn two_by_two_rep<T: Scalar>(p: &Matrix<T>, tolerance: f64) -> Result<Representation<T>> {
    if !p.is_square() || p.rows() == 0 {
        return Err(Error::MalformedRep("p must be a non-empty square matrix".into()));
    }
    let q = &Matrix::identity(p.rows()) - p;
    Representation::new(RepKind::Permutation { n: 2 }, vec![vec![p.clone(), q.clone()], vec![q, p.clone()]], tolerance)
}

/// `w_ij = Σ_k u_ik ⊗ v_kj`, acting on `C^{D_1} ⊗ C^{D_2}`.
pub fn convolution<T: Scalar>(u: &Representation<T>, v: &Representation<T>) -> Result<Representation<T>> {
    let (RepKind::Permutation { n }, RepKind::Permutation { n: n2 }) = (u.kind(), v.kind()) else {
        return Err(Error::MalformedRep("convolution needs two A_s(n) representations".into()));
    };
    if n != n2 {
        return Err(Error::DimensionMismatch { expected: n, found: n2 });
    }
    let d = u.dim() * v.dim();
    let rows: Vec<Vec<Matrix<T>>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| (1..=n).fold(Matrix::zeros(d, d), |acc, k| &acc + &u.get(i, k).kron(v.get(k, j))))
                .collect()
        })
        .collect();
    Representation::new(RepKind::Permutation { n }, rows, u.tolerance().max(v.tolerance()))
}
