//! Quantum increasing sequence spaces `A_i(k, n)` through concrete representations.
//!
//! A representation assigns a square matrix to every generator `u_ij`. The same
//! container holds `A_s(n)` families (square `n × n` arrays of generators), which
//! [`quantum_extension`] produces from an `A_i(k, n)` family.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::linalg::{random_pvm, rng_from_seed, Matrix, Scalar, C64};
use crate::report::{witness, CheckReport, ResidualTracker};

/// Largest `n` accepted by [`enumerate_increasing`].
pub const SEQUENCE_LIMIT: usize = 20;

/// `1 ≤ l_1 < ⋯ < l_k ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncreasingSequence {
    n: usize,
    values: Vec<usize>,
}

impl IncreasingSequence {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() || values.len() > n {
            return Err(Error::Bounds(format!("need 1 ≤ k ≤ n, got k = {}, n = {n}", values.len())));
        }
        if values[0] < 1 || *values.last().unwrap() > n {
            return Err(Error::Bounds(format!("values {values:?} outside 1..={n}")));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Bounds(format!("{values:?} is not strictly increasing")));
        }
        Ok(IncreasingSequence { n, values })
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `l_j`, 1-based.
    pub fn value(&self, j: usize) -> usize {
        self.values[j - 1]
    }
}

fn check_kn(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::Bounds(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// All of `I(k, n)` in lexicographic order.
pub fn enumerate_increasing(k: usize, n: usize) -> Result<Vec<IncreasingSequence>> {
    check_kn(k, n)?;
    if n > SEQUENCE_LIMIT {
        return Err(Error::SizeLimit { size: n, limit: SEQUENCE_LIMIT });
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(IncreasingSequence { n, values: cur.clone() });
        // rightmost position that can still move up
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - (k - 1 - p)) else { break };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    Ok(out)
}

/// `f_ij(l) = [l_j = i]`.
pub fn classical_coordinate(l: &IncreasingSequence, i: usize, j: usize) -> Result<u8> {
    if i < 1 || i > l.n || j < 1 || j > l.k() {
        return Err(Error::Bounds(format!("(i, j) = ({i}, {j}) outside {} × {}", l.n, l.k())));
    }
    Ok(u8::from(l.value(j) == i))
}

/// Permutation values `π(1), …, π(n)` extending `l`: `π(j) = l_j`, then the least unused value.
pub fn extend_to_permutation(l: &IncreasingSequence) -> Vec<usize> {
    let mut used = vec![false; l.n + 1];
    let mut pi = l.values.clone();
    for &v in &l.values {
        used[v] = true;
    }
    let mut next = 1;
    while pi.len() < l.n {
        while used[next] {
            next += 1;
        }
        used[next] = true;
        pi.push(next);
    }
    pi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// `n × k` generators of `A_i(k, n)`.
    Increasing { k: usize, n: usize },
    /// `n × n` generators of `A_s(n)`.
    Permutation { n: usize },
}

impl RepKind {
    pub fn rows(&self) -> usize {
        match *self {
            RepKind::Increasing { n, .. } | RepKind::Permutation { n } => n,
        }
    }

    pub fn cols(&self) -> usize {
        match *self {
            RepKind::Increasing { k, .. } => k,
            RepKind::Permutation { n } => n,
        }
    }
}

/// Generator matrices `u_ij` acting on a common space of dimension `dim`.
///
/// Zero generators are stored explicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T> {
    kind: RepKind,
    dim: usize,
    gens: Vec<Matrix<T>>,
    tolerance: f64,
}

impl<T: Scalar> Representation<T> {
    /// `gens[i - 1][j - 1]` is `u_ij`.
    pub fn new(kind: RepKind, gens: Vec<Vec<Matrix<T>>>, tolerance: f64) -> Result<Self> {
        if let RepKind::Increasing { k, n } = kind {
            check_kn(k, n)?;
        }
        if kind.rows() == 0 {
            return Err(Error::MalformedRep("no generators".into()));
        }
        if gens.len() != kind.rows() {
            return Err(Error::MalformedRep(format!("expected {} rows of generators, found {}", kind.rows(), gens.len())));
        }
        let dim = gens[0].first().map_or(0, Matrix::rows);
        if dim == 0 {
            return Err(Error::MalformedRep("generators must be non-empty square matrices".into()));
        }
        let mut flat = Vec::with_capacity(kind.rows() * kind.cols());
        for (i, row) in gens.into_iter().enumerate() {
            if row.len() != kind.cols() {
                return Err(Error::MalformedRep(format!("row {} has {} generators, expected {}", i + 1, row.len(), kind.cols())));
            }
            for (j, g) in row.into_iter().enumerate() {
                if g.rows() != dim || g.cols() != dim {
                    return Err(Error::MalformedRep(format!(
                        "u_{}{} is {}×{}, expected {dim}×{dim}",
                        i + 1,
                        j + 1,
                        g.rows(),
                        g.cols()
                    )));
                }
                flat.push(g);
            }
        }
        Ok(Representation { kind, dim, gens: flat, tolerance })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.kind.rows()
    }

    pub fn cols(&self) -> usize {
        self.kind.cols()
    }

    /// Dimension of the space the generators act on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `u_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Matrix<T> {
        assert!((1..=self.rows()).contains(&i) && (1..=self.cols()).contains(&j), "generator ({i}, {j}) out of range");
        &self.gens[(i - 1) * self.cols() + j - 1]
    }

    pub fn to_rows(&self) -> Vec<Vec<Matrix<T>>> {
        self.gens.chunks(self.cols()).map(<[Matrix<T>]>::to_vec).collect()
    }

    /// Applies `f` to every generator.
    pub fn map_generators(&self, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Result<Self> {
        Representation::new(self.kind, self.to_rows().iter().map(|r| r.iter().map(&f).collect()).collect(), self.tolerance)
    }

    /// `u_ij ↦ w u_ij w*` for a unitary `w`.
    pub fn conjugated(&self, w: &Matrix<T>) -> Result<Self> {
        if w.rows() != self.dim || w.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: w.rows() });
        }
        let wa = w.adjoint();
        self.map_generators(|g| &(w * g) * &wa)
    }

    /// Product `u_{i_1 j_1} ⋯ u_{i_m j_m}`; the identity for empty tuples.
    pub fn word_product(&self, i: &[usize], j: &[usize]) -> Matrix<T> {
        let mut acc = Matrix::identity(self.dim);
        for (&a, &b) in i.iter().zip(j) {
            acc = &acc * self.get(a, b);
        }
        acc
    }
}

/// Checks the defining relations of `A_i(k, n)` and the derived zero pattern.
///
/// Components: `projection`, `self_adjoint`, `column_sum`, `increasing`
/// (`u_ij u_i'j' = 0` for `j < j'`, `i ≥ i'`), `zero_product` (`u_ij u_i'j' = 0` for
/// `j ≤ j'`, `i' − i < j' − j`) and `zero_support` (`u_ij = 0` unless `j ≤ i ≤ n − k + j`).
pub fn check_ai_relations<T: Scalar>(rep: &Representation<T>) -> Result<CheckReport> {
    let RepKind::Increasing { k, n } = rep.kind() else {
        return Err(Error::MalformedRep("expected an A_i(k, n) representation".into()));
    };
    let mut t = ResidualTracker::new(rep.tolerance(), T::EXACT);
    let one = Matrix::<T>::identity(rep.dim());
    let at = |i: usize, j: usize| witness([("i", vec![i as i64]), ("j", vec![j as i64])]);
    let pair = |i: usize, j: usize, i2: usize, j2: usize| witness([("i", vec![i as i64, i2 as i64]), ("j", vec![j as i64, j2 as i64])]);
    for i in 1..=n {
        for j in 1..=k {
            let u = rep.get(i, j);
            t.observe("projection", (u * u).max_abs_diff(u), || at(i, j));
            t.observe("self_adjoint", u.adjoint().max_abs_diff(u), || at(i, j));
            let supported = j <= i && i <= n - k + j;
            if !supported {
                t.observe("zero_support", u.max_abs(), || at(i, j));
            }
        }
    }
    t.touch("zero_support");
    for j in 1..=k {
        let mut sum = Matrix::zeros(rep.dim(), rep.dim());
        for i in 1..=n {
            sum = &sum + rep.get(i, j);
        }
        t.observe("column_sum", sum.max_abs_diff(&one), || witness([("j", vec![j as i64])]));
    }
    for j in 1..=k {
        for j2 in j..=k {
            for i in 1..=n {
                for i2 in 1..=n {
                    let increasing = j < j2 && i >= i2;
                    let zero_product = (i2 as i64 - i as i64) < (j2 - j) as i64;
                    if !increasing && !zero_product {
                        continue;
                    }
                    let r = (rep.get(i, j) * rep.get(i2, j2)).max_abs();
                    if increasing {
                        t.observe("increasing", r, || pair(i, j, i2, j2));
                    }
                    if zero_product {
                        t.observe("zero_product", r, || pair(i, j, i2, j2));
                    }
                }
            }
        }
    }
    t.touch("increasing");
    t.touch("zero_product");
    Ok(t.finish("qis.relations").with_param("k", k).with_param("n", n).with_param("dim", rep.dim()).with_param("tolerance", rep.tolerance()))
}

/// The `A_s(n)` family built from an `A_i(k, n)` family.
///
/// Column `k + m` has `u_{(m+p)(k+m)} = Σ_{i=0}^{m+p−1} (v_{ip} − v_{(i+1)(p+1)})` for
/// `0 ≤ p ≤ k` and zeros elsewhere, with `v_00 = 1` and `v_i0 = v_0i = v_{i(k+1)} = 0`.
/// Refuses input whose relations fail at its tolerance.
pub fn quantum_extension<T: Scalar>(rep: &Representation<T>) -> Result<Representation<T>> {
    let report = check_ai_relations(rep)?;
    if !report.passed() {
        let relation = report
            .residuals
            .iter()
            .find(|(_, r)| !(r.as_f64() <= rep.tolerance()))
            .map_or_else(|| "unknown".into(), |(name, _)| name.clone());
        return Err(Error::RelationsViolated { relation, residual: report.max_residual.as_f64() });
    }
    let RepKind::Increasing { k, n } = rep.kind() else { unreachable!("checked above") };
    let d = rep.dim();
    let zero = Matrix::<T>::zeros(d, d);
    let one = Matrix::<T>::identity(d);
    let v = |i: usize, p: usize| -> &Matrix<T> {
        match (i, p) {
            (0, 0) => &one,
            _ if i == 0 || p == 0 || p == k + 1 => &zero,
            _ => rep.get(i, p),
        }
    };
    let mut rows = vec![vec![zero.clone(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().take(k) {
            *slot = rep.get(i + 1, j + 1).clone();
        }
    }
    for m in 1..=n - k {
        for p in 0..=k {
            let mut acc = zero.clone();
            for i in 0..m + p {
                acc = &(&acc + v(i, p)) - v(i + 1, p + 1);
            }
            rows[m + p - 1][k + m - 1] = acc;
        }
    }
    Representation::new(RepKind::Permutation { n }, rows, rep.tolerance())
}

/// `f_ij(l)` as 1×1 matrices.
pub fn classical_point_rep<T: Scalar>(l: &IncreasingSequence) -> Representation<T> {
    let rows = (1..=l.n())
        .map(|i| (1..=l.k()).map(|j| Matrix::scalar(if l.value(j) == i { T::one() } else { T::zero() })).collect())
        .collect();
    Representation::new(RepKind::Increasing { k: l.k(), n: l.n() }, rows, 0.0).expect("valid sequence")
}

/// The `A_i(2, 4)` family `[[p, 0], [1 − p, 0], [0, q], [0, 1 − q]]`.
pub fn two_projection_rep<T: Scalar>(p: &Matrix<T>, q: &Matrix<T>, tolerance: f64) -> Result<Representation<T>> {
    if !p.is_square() || p.rows() != q.rows() || !q.is_square() {
        return Err(Error::MalformedRep("p and q must be square of equal size".into()));
    }
    let one = Matrix::identity(p.rows());
    let zero = Matrix::zeros(p.rows(), p.rows());
    let rows = vec![
        vec![p.clone(), zero.clone()],
        vec![&one - p, zero.clone()],
        vec![zero.clone(), q.clone()],
        vec![zero, &one - q],
    ];
    Representation::new(RepKind::Increasing { k: 2, n: 4 }, rows, tolerance)
}

/// `A_i(k, kn)` family with a random rank-balanced PVM in the row band of each column.
///
/// `u_lj` vanishes unless `(j − 1)n < l ≤ jn`.
pub fn build_block_rep(k: usize, n: usize, dim: usize, seed: u64) -> Result<Representation<C64>> {
    if k == 0 || n == 0 {
        return Err(Error::Bounds(format!("need k, n ≥ 1, got k = {k}, n = {n}")));
    }
    if dim < n {
        return Err(Error::Bounds(format!("dimension {dim} is smaller than n = {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let zero = Matrix::<C64>::zeros(dim, dim);
    let mut rows = vec![vec![zero; k]; k * n];
    for j in 0..k {
        let pvm = random_pvm(n, dim, rng.next_u64())?;
        for (i, p) in pvm.into_iter().enumerate() {
            rows[j * n + i][j] = p;
        }
    }
    Representation::new(RepKind::Increasing { k, n: k * n }, rows, 1e-12)
}

/// First `k` columns of an `A_s(n)` family, viewed as an `A_i(k, n)` candidate.
pub fn restrict_to_columns<T: Scalar>(rep: &Representation<T>, k: usize) -> Result<Representation<T>> {
    let RepKind::Permutation { n } = rep.kind() else {
        return Err(Error::MalformedRep("expected an A_s(n) representation".into()));
    };
    check_kn(k, n)?;
    let rows = rep.to_rows().into_iter().map(|r| r.into_iter().take(k).collect()).collect();
    Representation::new(RepKind::Increasing { k, n }, rows, rep.tolerance())
}
