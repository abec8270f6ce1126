//! The state `ψ_{k,n}` on `A_i(k, kn)` and the exact finite-`n` reconstruction identity.
//!
//! `ψ_{k,n}` comes from `k` free copies of `C^n` with the uniform state: the generator
//! `u_lj` with `l = (j − 1)n + i` is the `i`-th minimal projection of copy `j`, and
//! `u_lj = 0` outside that row band. Everything here is exact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariance::index_tuples;
use crate::linalg::{Matrix, Rational};
use crate::moments::{JointDistribution, Word};
use crate::partitions::{enumerate_nc, kernel, MobiusCache, NcLattice, Partition};
use crate::report::{to_i64s, witness, CheckReport, ResidualTracker};

/// Row index `(j − 1)n + i` of the `i`-th projection in column `j`.
pub fn band_index(j: usize, i: usize, n: usize) -> usize {
    (j - 1) * n + i
}

/// `ker((j_r − 1)n + i_r) = ker j ∧ ker i`.
pub fn band_kernel(j: &[usize], i: &[usize]) -> Result<Partition> {
    kernel(j)?.meet(&kernel(i)?)
}

/// A moment `ψ_{k,n}(u_{l_1 j_1} ⋯ u_{l_m j_m})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiQuery {
    pub k: usize,
    pub n: usize,
    pub l: Vec<usize>,
    pub j: Vec<usize>,
}

impl PsiQuery {
    pub fn new(k: usize, n: usize, l: Vec<usize>, j: Vec<usize>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Bounds(format!("need k, n ≥ 1, got k = {k}, n = {n}")));
        }
        if l.is_empty() {
            return Err(Error::EmptyInput);
        }
        if l.len() != j.len() {
            return Err(Error::DimensionMismatch { expected: j.len(), found: l.len() });
        }
        if let Some(&bad) = l.iter().find(|&&v| v < 1 || v > k * n) {
            return Err(Error::Bounds(format!("row {bad} outside 1..={}", k * n)));
        }
        if let Some(&bad) = j.iter().find(|&&v| v < 1 || v > k) {
            return Err(Error::Bounds(format!("column {bad} outside 1..={k}")));
        }
        Ok(PsiQuery { k, n, l, j })
    }

    /// Query for `p_{i_1 j_1} ⋯ p_{i_m j_m}`.
    pub fn from_offsets(k: usize, n: usize, i: &[usize], j: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = i.iter().find(|&&v| v < 1 || v > n) {
            return Err(Error::Bounds(format!("offset {bad} outside 1..={n}")));
        }
        let l = i.iter().zip(&j).map(|(&i, &j)| band_index(j.max(1), i, n)).collect();
        Self::new(k, n, l, j)
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    /// Offsets `i_r = l_r − (j_r − 1)n`, or `None` when some `l_r` is outside its band.
    pub fn offsets(&self) -> Option<Vec<usize>> {
        self.l
            .iter()
            .zip(&self.j)
            .map(|(&l, &j)| {
                let lo = (j - 1) * self.n;
                (lo < l && l <= j * self.n).then(|| l - lo)
            })
            .collect()
    }
}

fn inverse_power(n: usize, e: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n).pow(e as u32))
}

fn lattice(cache: &MobiusCache, m: usize) -> Result<&NcLattice> {
    cache.get(m).ok_or(Error::SizeLimit { size: m, limit: (0..=m).take_while(|&s| cache.get(s).is_some()).count().saturating_sub(1) })
}

/// Evaluates Möbius-weighted sums, memoizing `c(σ) = Σ_{σ ≤ π ≤ ker j} μ(σ, π)` by `ker j`.
#[derive(Debug)]
pub struct PsiEvaluator<'a> {
    cache: &'a MobiusCache,
    coefficients: BTreeMap<Partition, Vec<(usize, Rational)>>,
}

impl<'a> PsiEvaluator<'a> {
    pub fn new(cache: &'a MobiusCache) -> Self {
        PsiEvaluator { cache, coefficients: BTreeMap::new() }
    }

    /// `Σ_{π ∈ NC(m), π ≤ ker j} Σ_{σ ∈ NC(m), σ ≤ π ∧ ker i} μ(σ, π) n^{−|σ|}`.
    pub fn reconstruction_weight(&mut self, j: &[usize], i: &[usize], n: usize) -> Result<Rational> {
        if j.len() != i.len() {
            return Err(Error::DimensionMismatch { expected: j.len(), found: i.len() });
        }
        if n == 0 {
            return Err(Error::Bounds("n must be positive".into()));
        }
        let m = j.len();
        if m == 0 {
            return Ok(Rational::one());
        }
        let lat = lattice(self.cache, m)?;
        let ker_j = kernel(j)?;
        let ker_i = kernel(i)?;
        let coeffs = self
            .coefficients
            .entry(ker_j.clone())
            .or_insert_with(|| crate::moments::free_coefficients(lat, &ker_j).into_iter().collect());
        let mut acc = Rational::zero();
        for (s, c) in coeffs.iter() {
            let sigma = &lat.elements()[*s];
            if sigma.leq_unchecked(&ker_i) {
                acc += c * inverse_power(n, sigma.num_blocks());
            }
        }
        Ok(acc)
    }

    /// `ψ_{k,n}` by the closed Möbius formula; zero off the row bands.
    pub fn psi_moment(&mut self, q: &PsiQuery) -> Result<Rational> {
        match q.offsets() {
            None => Ok(Rational::zero()),
            Some(i) => self.reconstruction_weight(&q.j, &i, q.n),
        }
    }
}

/// See [`PsiEvaluator::psi_moment`].
pub fn psi_moment(q: &PsiQuery, cache: &MobiusCache) -> Result<Rational> {
    PsiEvaluator::new(cache).psi_moment(q)
}

/// See [`PsiEvaluator::reconstruction_weight`].
pub fn reconstruction_weight(j: &[usize], i: &[usize], n: usize, cache: &MobiusCache) -> Result<Rational> {
    PsiEvaluator::new(cache).reconstruction_weight(j, i, n)
}

/// `ψ_{k,n}` from freeness alone: no Möbius function is used.
///
/// Inside one copy of `C^n`, `φ(p_{i_1} ⋯ p_{i_s})` is `1/n` if all `i_r` agree and 0
/// otherwise. Free cumulants of one copy come from the moment-cumulant recursion
/// `κ_s = φ − Σ_{π ≠ 1_s} κ_π`, and across copies mixed cumulants vanish, so the
/// moment is `Σ_{π ≤ ker j} Π_V κ(i_V)`.
#[derive(Debug)]
pub struct ProjectionOracle {
    n: usize,
    nc: Vec<Vec<Partition>>,
    cumulants: BTreeMap<Partition, Rational>,
}

impl ProjectionOracle {
    pub fn new(n: usize, max_len: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Bounds("n must be positive".into()));
        }
        let nc = (0..=max_len).map(enumerate_nc).collect::<Result<_>>()?;
        Ok(ProjectionOracle { n, nc, cumulants: BTreeMap::new() })
    }

    fn column_moment(&self, ker: &Partition) -> Rational {
        if ker.num_blocks() == 1 {
            inverse_power(self.n, 1)
        } else {
            Rational::zero()
        }
    }

    /// Free cumulant of one column; depends only on the kernel of the offsets.
    fn column_cumulant(&mut self, ker: &Partition) -> Rational {
        if let Some(v) = self.cumulants.get(ker) {
            return v.clone();
        }
        let s = ker.m();
        let top = Partition::one_block(s);
        let mut value = self.column_moment(ker);
        let partitions = self.nc[s].clone();
        for pi in partitions.iter().filter(|p| **p != top) {
            let mut term = Rational::one();
            for block in pi.blocks() {
                let restricted: Vec<u8> = block.iter().map(|&r| ker.labels()[r - 1]).collect();
                term *= self.column_cumulant(&Partition::from_labels(&restricted).expect("non-empty block"));
                if term.is_zero() {
                    break;
                }
            }
            value -= term;
        }
        self.cumulants.insert(ker.clone(), value.clone());
        value
    }

    /// `φ(p_{i_1 j_1} ⋯ p_{i_m j_m})` for an in-band query.
    pub fn moment(&mut self, q: &PsiQuery) -> Result<Rational> {
        if q.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: q.n });
        }
        let Some(i) = q.offsets() else {
            return Err(Error::Bounds(format!("query rows {:?} leave their column bands", q.l)));
        };
        let m = q.len();
        if m >= self.nc.len() {
            return Err(Error::SizeLimit { size: m, limit: self.nc.len() - 1 });
        }
        let ker_j = kernel(&q.j)?;
        let ker_i = kernel(&i)?;
        let mut acc = Rational::zero();
        let partitions = self.nc[m].clone();
        for pi in partitions.iter().filter(|p| p.leq_unchecked(&ker_j)) {
            let mut term = Rational::one();
            for block in pi.blocks() {
                let restricted: Vec<u8> = block.iter().map(|&r| ker_i.labels()[r - 1]).collect();
                term *= self.column_cumulant(&Partition::from_labels(&restricted)?);
                if term.is_zero() {
                    break;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// See [`ProjectionOracle::moment`].
pub fn free_projection_oracle(q: &PsiQuery) -> Result<Rational> {
    ProjectionOracle::new(q.n, q.len())?.moment(q)
}

/// `Σ_{i ∈ [n]^m} E[word at (j_r − 1)n + i_r] · weight(j, i, n)`.
///
/// Tuples are grouped by `ker j ∧ ker i`, the kernel of the re-indexed word, so each
/// distinct moment is computed once.
pub fn finite_n_reconstruction<J: JointDistribution<Rational> + ?Sized>(
    dist: &J,
    cache: &MobiusCache,
    word: &Word<Rational>,
    n: usize,
) -> Result<Matrix<Rational>> {
    if n == 0 {
        return Err(Error::Bounds("n must be positive".into()));
    }
    let j = &word.indices;
    let mut eval = PsiEvaluator::new(cache);
    let mut groups: BTreeMap<Partition, (Rational, Vec<usize>)> = BTreeMap::new();
    for i in index_tuples(n, word.len()) {
        let w = eval.reconstruction_weight(j, &i, n)?;
        if w.is_zero() {
            continue;
        }
        let labels: Vec<usize> = i.iter().zip(j).map(|(&i, &j)| band_index(j, i, n)).collect();
        let entry = groups.entry(band_kernel(j, &i)?).or_insert_with(|| (Rational::zero(), labels));
        entry.0 += w;
    }
    let labels: Vec<Vec<usize>> = groups.values().map(|(_, l)| l.clone()).collect();
    let moments = dist.moments_relabelled(word, &labels)?;
    let d = word.b_dim();
    Ok(groups.values().zip(&moments).fold(Matrix::zeros(d, d), |acc, ((w, _), mom)| &acc + &mom.scale(w)))
}

/// `Σ_{i ∈ [n]^m : τ ≤ ker i} weight(j, i, n)`, which equals 1.
pub fn combinatorial_unit_identity(tau: &Partition, j: &[usize], n: usize, cache: &MobiusCache) -> Result<Rational> {
    if tau.m() != j.len() {
        return Err(Error::GroundSetMismatch { left: tau.m(), right: j.len() });
    }
    if !tau.is_noncrossing() {
        return Err(Error::Crossing);
    }
    if !tau.leq(&kernel(j)?)? {
        return Err(Error::NotBelow);
    }
    let mut eval = PsiEvaluator::new(cache);
    let mut acc = Rational::zero();
    for values in index_tuples(n, tau.num_blocks()) {
        let i: Vec<usize> = tau.labels().iter().map(|&b| values[b as usize]).collect();
        acc += eval.reconstruction_weight(j, &i, n)?;
    }
    Ok(acc)
}

fn rational_residual(a: &Rational, b: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if a == b {
        0.0
    } else {
        (a - b).abs().to_f64().unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
    }
}

/// `psi_moment` against [`ProjectionOracle`] on every in-band query with `k ≤ max_k`,
/// `n ≤ max_n`, `1 ≤ m ≤ max_m`, plus vanishing off the bands for `m ≤ min(max_m, 3)`.
pub fn check_psi_oracle(max_k: usize, max_n: usize, max_m: usize) -> Result<CheckReport> {
    let cache = MobiusCache::filled(max_m)?;
    let mut t = ResidualTracker::new(0.0, true);
    let mut queries = 0usize;
    for n in 1..=max_n {
        let mut oracle = ProjectionOracle::new(n, max_m)?;
        let mut eval = PsiEvaluator::new(&cache);
        for k in 1..=max_k {
            for m in 1..=max_m {
                for j in index_tuples(k, m) {
                    for i in index_tuples(n, m) {
                        let q = PsiQuery::from_offsets(k, n, &i, j.clone())?;
                        let a = eval.psi_moment(&q)?;
                        let b = oracle.moment(&q)?;
                        queries += 1;
                        t.observe("oracle", rational_residual(&a, &b), || {
                            witness([("k", vec![k as i64]), ("n", vec![n as i64]), ("l", to_i64s(&q.l)), ("j", to_i64s(&q.j))])
                        });
                    }
                }
                if m > 3 {
                    continue;
                }
                for j in index_tuples(k, m) {
                    for l in index_tuples(k * n, m) {
                        let q = PsiQuery::new(k, n, l, j.clone())?;
                        if q.offsets().is_none() {
                            let v = eval.psi_moment(&q)?;
                            t.observe("off_band", rational_residual(&v, &Rational::zero()), || {
                                witness([("k", vec![k as i64]), ("n", vec![n as i64]), ("l", to_i64s(&q.l)), ("j", to_i64s(&q.j))])
                            });
                        }
                    }
                }
            }
        }
    }
    t.touch("off_band");
    Ok(t.finish("weingarten.psi_oracle")
        .with_param("max_k", max_k)
        .with_param("max_n", max_n)
        .with_param("max_m", max_m)
        .with_param("queries", queries))
}

/// [`combinatorial_unit_identity`] for every `j ∈ [m]^m` pattern, every `τ ≤ ker j`
/// in `NC(m)`, `m ≤ max_m`, `n ≤ max_n`.
pub fn check_unit_identity(max_m: usize, max_n: usize) -> Result<CheckReport> {
    let cache = MobiusCache::filled(max_m)?;
    let mut t = ResidualTracker::new(0.0, true);
    let one = Rational::one();
    for m in 1..=max_m {
        let nc = enumerate_nc(m)?;
        // every kernel pattern occurs among tuples in [m]^m; keep one per kernel
        let mut patterns: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
        for j in index_tuples(m, m) {
            patterns.entry(kernel(&j)?).or_insert(j);
        }
        for j in patterns.values() {
            let ker = kernel(j)?;
            for tau in nc.iter().filter(|t| t.leq_unchecked(&ker)) {
                for n in 1..=max_n {
                    let v = combinatorial_unit_identity(tau, j, n, &cache)?;
                    t.observe("unit", rational_residual(&v, &one), || {
                        witness([
                            ("j", to_i64s(j)),
                            ("tau", tau.labels().iter().map(|&l| l as i64 + 1).collect()),
                            ("n", vec![n as i64]),
                        ])
                    });
                }
            }
        }
    }
    Ok(t.finish("weingarten.unit_identity").with_param("max_m", max_m).with_param("max_n", max_n))
}

/// `finite_n_reconstruction` against the direct moment for every word and every
/// `1 ≤ n ≤ max_n`.
pub fn check_reconstruction<J: JointDistribution<Rational> + ?Sized>(
    dist: &J,
    cache: &MobiusCache,
    words: &[Word<Rational>],
    max_n: usize,
) -> Result<CheckReport> {
    let mut t = ResidualTracker::new(0.0, true);
    for word in words {
        let direct = dist.moment(word)?;
        for n in 1..=max_n {
            let rebuilt = finite_n_reconstruction(dist, cache, word, n)?;
            let exact = rebuilt == direct;
            let r = if exact { 0.0 } else { rebuilt.max_abs_diff(&direct).max(f64::MIN_POSITIVE) };
            t.observe("reconstruction", r, || {
                witness([("j", to_i64s(&word.indices)), ("powers", to_i64s(&word.powers)), ("n", vec![n as i64])])
            });
        }
    }
    Ok(t.finish("weingarten.reconstruction").with_param("words", words.len()).with_param("max_n", max_n))
}

/// In-band generators `(l, j)` of `A_i(k, kn)` in column-major order.
fn band_generators(k: usize, n: usize) -> Vec<(usize, usize)> {
    (1..=k).flat_map(|j| (1..=n).map(move |i| (band_index(j, i, n), j))).collect()
}

/// Gram matrix `[ψ(w* w')]` over all words of length `≤ max_len` in the in-band generators.
pub fn gram_matrix(k: usize, n: usize, max_len: usize) -> Result<Matrix<Rational>> {
    let gens = band_generators(k, n);
    let mut words: Vec<Vec<(usize, usize)>> = Vec::new();
    for len in 0..=max_len {
        for t in index_tuples(gens.len(), len) {
            words.push(t.iter().map(|&g| gens[g - 1]).collect());
        }
    }
    let cache = MobiusCache::filled(2 * max_len)?;
    let mut eval = PsiEvaluator::new(&cache);
    let size = words.len();
    let mut entries = vec![vec![Rational::zero(); size]; size];
    for (a, wa) in words.iter().enumerate() {
        for (b, wb) in words.iter().enumerate() {
            // generators are self-adjoint, so w* is the reversed word
            let joined: Vec<(usize, usize)> = wa.iter().rev().chain(wb).copied().collect();
            entries[a][b] = if joined.is_empty() {
                Rational::one()
            } else {
                let (l, j) = joined.into_iter().unzip();
                eval.psi_moment(&PsiQuery::new(k, n, l, j)?)?
            };
        }
    }
    Matrix::from_rows(entries)
}

/// Outcome of an exact positive-semidefiniteness test.
#[derive(Clone, Debug, PartialEq)]
pub enum Definiteness {
    /// Positive semidefinite; `rank` nonzero pivots, the smallest being `min_pivot`.
    Psd { rank: usize, min_pivot: Rational },
    NotSymmetric { row: usize, col: usize },
    /// A negative pivot, or a zero pivot with a nonzero row, at this index.
    Indefinite { index: usize },
}

/// Symmetric Gaussian elimination without pivoting, in exact arithmetic.
pub fn positive_semidefinite(a: &Matrix<Rational>) -> Definiteness {
    let size = a.rows();
    for r in 0..size {
        for c in 0..r {
            if a.get(r, c) != a.get(c, r) {
                return Definiteness::NotSymmetric { row: r, col: c };
            }
        }
    }
    let mut m = a.to_rows();
    let mut rank = 0;
    let mut min_pivot: Option<Rational> = None;
    for p in 0..size {
        let pivot = m[p][p].clone();
        if pivot.is_negative() {
            return Definiteness::Indefinite { index: p };
        }
        if pivot.is_zero() {
            if m[p][p + 1..].iter().any(|v| !v.is_zero()) {
                return Definiteness::Indefinite { index: p };
            }
            continue;
        }
        rank += 1;
        if min_pivot.as_ref().is_none_or(|mp| pivot < *mp) {
            min_pivot = Some(pivot.clone());
        }
        for r in p + 1..size {
            if m[p][r].is_zero() {
                continue;
            }
            let f = &m[p][r] / &pivot;
            for c in p + 1..size {
                let delta = &f * &m[p][c];
                m[r][c] -= delta;
            }
        }
    }
    Definiteness::Psd { rank, min_pivot: min_pivot.unwrap_or_else(Rational::zero) }
}

/// Gram matrix of `ψ_{k,n}` on words of length `≤ max_len` is positive semidefinite.
///
/// This is evidence that `ψ_{k,n}` is a state, not a proof.
pub fn check_gram_psd(k: usize, n: usize, max_len: usize) -> Result<CheckReport> {
    use num_traits::ToPrimitive;
    let gram = gram_matrix(k, n, max_len)?;
    let mut t = ResidualTracker::new(0.0, true);
    let outcome = positive_semidefinite(&gram);
    let (residual, w) = match &outcome {
        Definiteness::Psd { .. } => (0.0, None),
        Definiteness::NotSymmetric { row, col } => (1.0, Some(witness([("row", vec![*row as i64]), ("col", vec![*col as i64])]))),
        Definiteness::Indefinite { index } => (1.0, Some(witness([("index", vec![*index as i64])]))),
    };
    t.observe("psd", residual, || w.unwrap_or_default());
    let mut report = t.finish("weingarten.gram_psd").with_param("k", k).with_param("n", n).with_param("max_len", max_len).with_param("size", gram.rows());
    if let Definiteness::Psd { rank, min_pivot } = outcome {
        report = report.with_param("rank", rank).with_param("min_pivot", min_pivot.to_f64().unwrap_or(0.0));
        report.message = Some("positive semidefinite Gram matrix: evidence of positivity, not a proof".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::moments::{FreeIid, ScalarMomentLaw};
    use crate::report::Residual;

    fn cache(m: usize) -> MobiusCache {
        MobiusCache::filled(m).unwrap()
    }

    #[test]
    fn query_validation_and_bands() {
        assert!(PsiQuery::new(2, 2, vec![5], vec![1]).is_err());
        assert!(PsiQuery::new(2, 2, vec![1], vec![3]).is_err());
        assert!(PsiQuery::new(2, 2, vec![1, 2], vec![1]).is_err());
        assert!(PsiQuery::new(2, 2, vec![], vec![]).is_err());
        let q = PsiQuery::new(2, 2, vec![2, 3], vec![1, 2]).unwrap();
        assert_eq!(q.offsets(), Some(vec![2, 1]));
        let off = PsiQuery::new(2, 2, vec![3, 3], vec![1, 2]).unwrap();
        assert_eq!(off.offsets(), None);
        assert_eq!(psi_moment(&off, &cache(2)).unwrap(), Rational::zero());
    }

    #[test]
    fn psi_small_values() {
        let c = cache(2);
        for n in 1..4 {
            let q = PsiQuery::from_offsets(1, n, &[1], vec![1]).unwrap();
            assert_eq!(psi_moment(&q, &c).unwrap(), rat(1, n as i64));
        }
        let q = PsiQuery::from_offsets(1, 3, &[1, 2], vec![1, 1]).unwrap();
        assert_eq!(psi_moment(&q, &c).unwrap(), Rational::zero());
        let q = PsiQuery::from_offsets(1, 3, &[2, 2], vec![1, 1]).unwrap();
        assert_eq!(psi_moment(&q, &c).unwrap(), rat(1, 3));
    }

    #[test]
    fn weights_by_hand() {
        let c = cache(2);
        for i in 1..=3 {
            assert_eq!(reconstruction_weight(&[2], &[i], 3, &c).unwrap(), rat(1, 3));
        }
        let total: Rational = index_tuples(2, 2).iter().map(|i| reconstruction_weight(&[1, 1], i, 2, &c).unwrap()).sum();
        assert_eq!(total, rat(1, 1));
        for i in index_tuples(3, 2) {
            assert_eq!(reconstruction_weight(&[1, 2], &i, 3, &c).unwrap(), rat(1, 9));
        }
    }

    #[test]
    fn oracle_examples() {
        let c = cache(4);
        let alternating = PsiQuery::from_offsets(2, 2, &[1, 1, 1, 1], vec![1, 2, 1, 2]).unwrap();
        let a = psi_moment(&alternating, &c).unwrap();
        let b = free_projection_oracle(&alternating).unwrap();
        assert_eq!(a, b);
        // free projections of traces t, s: φ(pqpq) = t²s + ts² − t²s²
        assert_eq!(a, rat(3, 16));
        let same_column = PsiQuery::from_offsets(2, 3, &[2, 2, 2], vec![2, 2, 2]).unwrap();
        assert_eq!(free_projection_oracle(&same_column).unwrap(), rat(1, 3));
        let mixed = PsiQuery::from_offsets(2, 3, &[2, 1, 2], vec![2, 2, 2]).unwrap();
        assert_eq!(free_projection_oracle(&mixed).unwrap(), Rational::zero());
        let off = PsiQuery::new(2, 2, vec![3], vec![1]).unwrap();
        assert!(free_projection_oracle(&off).is_err());
    }

    #[test]
    fn band_kernel_is_kernel_of_band_indices() {
        for n in 1..=3 {
            for j in index_tuples(3, 3) {
                for i in index_tuples(n, 3) {
                    let l: Vec<usize> = i.iter().zip(&j).map(|(&i, &j)| band_index(j, i, n)).collect();
                    assert_eq!(band_kernel(&j, &i).unwrap(), kernel(&l).unwrap());
                }
            }
        }
    }

    #[test]
    fn unit_identity_cases() {
        let c = cache(2);
        assert_eq!(combinatorial_unit_identity(&Partition::one_block(1), &[1], 5, &c).unwrap(), rat(1, 1));
        assert_eq!(combinatorial_unit_identity(&Partition::one_block(2), &[2, 2], 3, &c).unwrap(), rat(1, 1));
        assert_eq!(combinatorial_unit_identity(&Partition::one_block(2), &[1, 2], 3, &c), Err(Error::NotBelow));
        let crossing = Partition::from_labels(&[1, 2, 1, 2]).unwrap();
        assert_eq!(combinatorial_unit_identity(&crossing, &[1, 1, 1, 1], 2, &cache(4)), Err(Error::Crossing));
        let r = check_unit_identity(3, 3).unwrap();
        assert_eq!(r.max_residual, Residual::ExactZero);
    }

    #[test]
    fn reconstruction_of_semicircle_words() {
        let dist = FreeIid::new(ScalarMomentLaw::<Rational>::semicircular(8), 4).unwrap();
        let c = cache(4);
        let word = Word::plain(vec![1, 2, 1, 2], vec![1; 4], 1).unwrap();
        for n in 2..=3 {
            let v = finite_n_reconstruction(&dist, &c, &word, n).unwrap();
            assert_eq!(v, Matrix::scalar(Rational::zero()));
        }
        let word = Word::plain(vec![1, 1, 2, 2], vec![1, 2, 1, 1], 1).unwrap();
        let direct = dist.moment(&word).unwrap();
        for n in 1..=3 {
            assert_eq!(finite_n_reconstruction(&dist, &c, &word, n).unwrap(), direct);
        }
    }

    #[test]
    fn psd_test() {
        let psd = Matrix::from_rows(vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]).unwrap();
        assert!(matches!(positive_semidefinite(&psd), Definiteness::Psd { rank: 2, .. }));
        let singular = Matrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]).unwrap();
        assert!(matches!(positive_semidefinite(&singular), Definiteness::Psd { rank: 1, .. }));
        let zero_pivot = Matrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]).unwrap();
        assert_eq!(positive_semidefinite(&zero_pivot), Definiteness::Indefinite { index: 0 });
        let negative = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(1, 1)]]).unwrap();
        assert_eq!(positive_semidefinite(&negative), Definiteness::Indefinite { index: 1 });
        let asym = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(1, 1)]]).unwrap();
        assert_eq!(positive_semidefinite(&asym), Definiteness::NotSymmetric { row: 1, col: 0 });
    }

    #[test]
    fn gram_of_small_state() {
        let r = check_gram_psd(2, 2, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
