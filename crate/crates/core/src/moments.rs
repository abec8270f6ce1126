//! Operator-valued moments and free cumulants of a single self-adjoint variable, and
//! the joint moments of a free i.i.d. sequence built from them.
//!
//! A [`Word`] `b₀ x_{i₁}^{p₁} b₁ ⋯ x_{i_m}^{p_m} b_m` is read as the tensor
//! `a₁ ⊗ ⋯ ⊗ a_m` with `a₁ = b₀ x^{p₁} b₁` and `a_r = x^{p_r} b_r` for `r ≥ 2`. When an
//! interval block is evaluated, its value multiplies into the insert on its left.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{BAlgebra, Matrix, Rational, Scalar};
use crate::partitions::{first_interval_block, kernel, MobiusCache, NcLattice, Partition};
use crate::report::{to_i64s, witness, CheckReport, ResidualTracker};

/// `b₀ x_{i₁}^{p₁} b₁ ⋯ x_{i_m}^{p_m} b_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Word<T> {
    pub indices: Vec<usize>,
    pub inserts: Vec<Matrix<T>>,
    pub powers: Vec<usize>,
}

impl<T: Scalar> Word<T> {
    pub fn new(indices: Vec<usize>, inserts: Vec<Matrix<T>>, powers: Vec<usize>) -> Result<Self> {
        let m = indices.len();
        if inserts.len() != m + 1 {
            return Err(Error::DimensionMismatch { expected: m + 1, found: inserts.len() });
        }
        if powers.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: powers.len() });
        }
        if indices.contains(&0) {
            return Err(Error::Bounds("sequence labels start at 1".into()));
        }
        if powers.contains(&0) {
            return Err(Error::Bounds("powers must be positive".into()));
        }
        let d = inserts[0].rows();
        if let Some(bad) = inserts.iter().find(|b| b.rows() != d || b.cols() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.rows().max(bad.cols()) });
        }
        Ok(Word { indices, inserts, powers })
    }

    /// Word with identity inserts of size `b_dim`.
    pub fn plain(indices: Vec<usize>, powers: Vec<usize>, b_dim: usize) -> Result<Self> {
        let inserts = vec![Matrix::identity(b_dim); indices.len() + 1];
        Self::new(indices, inserts, powers)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn b_dim(&self) -> usize {
        self.inserts[0].rows()
    }

    /// Same inserts and powers with new sequence labels.
    pub fn with_indices(&self, indices: Vec<usize>) -> Result<Self> {
        Self::new(indices, self.inserts.clone(), self.powers.clone())
    }

    pub fn kernel(&self) -> Result<Partition> {
        kernel(&self.indices)
    }
}

/// `E[b₀ x^{p₁} b₁ ⋯ x^{p_s} b_s]` for one variable `x`.
pub trait SingleVariableLaw<T: Scalar> {
    fn b_dim(&self) -> usize;

    fn eval(&self, inserts: &[Matrix<T>], powers: &[usize]) -> Result<Matrix<T>>;
}

/// `B = ℂ` law given by its moment sequence `m₀ = 1, m₁, m₂, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMomentLaw<T> {
    moments: Vec<T>,
}

impl<T: Scalar> ScalarMomentLaw<T> {
    /// `moments` lists `m₁, m₂, ...`; `m₀ = 1` is implicit.
    pub fn new(moments: Vec<T>) -> Self {
        let mut all = Vec::with_capacity(moments.len() + 1);
        all.push(T::one());
        all.extend(moments);
        ScalarMomentLaw { moments: all }
    }

    /// Standard semicircle: `m_{2k} = Catalan(k)`, odd moments zero.
    pub fn semicircular(max_order: usize) -> Self {
        Self::semicircular_with_variance(max_order, 1)
    }

    /// Semicircle of variance `v`: `m_{2k} = v^k Catalan(k)`.
    pub fn semicircular_with_variance(max_order: usize, variance: i64) -> Self {
        let moments = (1..=max_order)
            .map(|p| {
                if p % 2 == 1 {
                    T::zero()
                } else {
                    let k = p / 2;
                    let v = catalan(k) * BigInt::from(variance).pow(k as u32);
                    T::from_rational(&Rational::from_integer(v))
                }
            })
            .collect();
        Self::new(moments)
    }

    pub fn moment(&self, order: usize) -> Result<&T> {
        self.moments.get(order).ok_or(Error::MomentUnavailable { order, available: self.moments.len() - 1 })
    }

    /// Highest known moment order.
    pub fn max_order(&self) -> usize {
        self.moments.len() - 1
    }
}

impl<T: Scalar> SingleVariableLaw<T> for ScalarMomentLaw<T> {
    fn b_dim(&self) -> usize {
        1
    }

    fn eval(&self, inserts: &[Matrix<T>], powers: &[usize]) -> Result<Matrix<T>> {
        check_inserts(1, inserts, powers)?;
        let total: usize = powers.iter().sum();
        let coeff = inserts.iter().fold(T::one(), |acc, b| acc * b.get(0, 0).clone());
        Ok(Matrix::scalar(coeff * self.moment(total)?.clone()))
    }
}

/// Law of an ambient matrix `X ∈ M_d ⊗ M_D` with respect to `E = id ⊗ tr_D`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientLaw<T> {
    alg: BAlgebra,
    x: Matrix<T>,
}

impl<T: Scalar> AmbientLaw<T> {
    pub fn new(alg: BAlgebra, x: Matrix<T>) -> Result<Self> {
        let n = alg.ambient_dim();
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.rows().max(x.cols()) });
        }
        Ok(AmbientLaw { alg, x })
    }

    pub fn algebra(&self) -> BAlgebra {
        self.alg
    }

    pub fn variable(&self) -> &Matrix<T> {
        &self.x
    }
}

impl<T: Scalar> SingleVariableLaw<T> for AmbientLaw<T> {
    fn b_dim(&self) -> usize {
        self.alg.b_dim
    }

    fn eval(&self, inserts: &[Matrix<T>], powers: &[usize]) -> Result<Matrix<T>> {
        check_inserts(self.alg.b_dim, inserts, powers)?;
        let mut acc = self.alg.embed(&inserts[0])?;
        for (b, &p) in inserts[1..].iter().zip(powers) {
            acc = &(&acc * &self.x.pow(p)) * &self.alg.embed(b)?;
        }
        self.alg.partial_expectation(&acc)
    }
}

fn check_inserts<T: Scalar>(d: usize, inserts: &[Matrix<T>], powers: &[usize]) -> Result<()> {
    if inserts.len() != powers.len() + 1 {
        return Err(Error::DimensionMismatch { expected: powers.len() + 1, found: inserts.len() });
    }
    if let Some(bad) = inserts.iter().find(|b| b.rows() != d || b.cols() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.rows().max(bad.cols()) });
    }
    Ok(())
}

pub fn catalan(k: usize) -> BigInt {
    // C_{j+1} = C_j * 2(2j+1) / (j+2)
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * BigInt::from(2 * (2 * j + 1)) / BigInt::from(j + 2);
    }
    c
}

fn nested<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(
    law: &L,
    sigma: &Partition,
    inserts: &[Matrix<T>],
    powers: &[usize],
) -> Result<Matrix<T>> {
    let mut labels: Vec<u8> = sigma.labels().to_vec();
    let mut inserts: Vec<Matrix<T>> = inserts.to_vec();
    let mut powers: Vec<usize> = powers.to_vec();
    let d = inserts[0].rows();
    loop {
        if labels.is_empty() {
            return Ok(inserts.swap_remove(0));
        }
        let (start, len) = first_interval_block(&labels).ok_or(Error::Crossing)?;
        if len == labels.len() {
            return law.eval(&inserts, &powers);
        }
        let mut inner = Vec::with_capacity(len + 1);
        inner.push(Matrix::identity(d));
        inner.extend(inserts[start + 1..=start + len].iter().cloned());
        let value = law.eval(&inner, &powers[start..start + len])?;
        inserts[start] = &inserts[start] * &value;
        inserts.drain(start + 1..=start + len);
        powers.drain(start..start + len);
        labels.drain(start..start + len);
    }
}

/// `E^{(σ)}` of a word whose labels all coincide.
pub fn moment_sigma<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(law: &L, sigma: &Partition, word: &Word<T>) -> Result<Matrix<T>> {
    if sigma.m() != word.len() {
        return Err(Error::GroundSetMismatch { left: sigma.m(), right: word.len() });
    }
    if word.indices.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Bounds(format!("labels {:?} are not all equal", word.indices)));
    }
    if !sigma.is_noncrossing() {
        return Err(Error::Crossing);
    }
    nested(law, sigma, &word.inserts, &word.powers)
}

/// `E^{(σ)}` for every `σ ∈ NC(m)`, indexed like `lattice.elements()`. Labels are ignored.
pub fn moment_table<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(law: &L, lattice: &NcLattice, word: &Word<T>) -> Result<Vec<Matrix<T>>> {
    if lattice.m() != word.len() {
        return Err(Error::GroundSetMismatch { left: lattice.m(), right: word.len() });
    }
    lattice.elements().iter().map(|s| nested(law, s, &word.inserts, &word.powers)).collect()
}

fn combine<T: Scalar>(d: usize, table: &[Matrix<T>], coeffs: &BTreeMap<usize, Rational>) -> Matrix<T> {
    let mut acc = Matrix::zeros(d, d);
    for (&s, c) in coeffs {
        if !c.is_zero() {
            acc = &acc + &table[s].scale(&T::from_rational(c));
        }
    }
    acc
}

/// `κ^{(π)} = Σ_{σ ≤ π} μ(σ, π) E^{(σ)}`. Labels are ignored.
pub fn cumulant_pi<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(law: &L, lattice: &NcLattice, pi: &Partition, word: &Word<T>) -> Result<Matrix<T>> {
    if pi.m() != word.len() || lattice.m() != word.len() {
        return Err(Error::GroundSetMismatch { left: pi.m(), right: word.len() });
    }
    let p = lattice.index_of(pi).ok_or(Error::Crossing)?;
    let mut acc = Matrix::zeros(word.b_dim(), word.b_dim());
    for (s, sigma) in lattice.elements().iter().enumerate() {
        if let Some(mu) = lattice.mobius_by_index(s, p) {
            let e = nested(law, sigma, &word.inserts, &word.powers)?;
            acc = &acc + &e.scale(&T::from_rational(mu));
        }
    }
    Ok(acc)
}

/// Coefficients `c(σ) = Σ_{π ∈ NC, σ ≤ π ≤ upper} μ(σ, π)`, so that
/// `Σ_{π ≤ upper} κ^{(π)} = Σ_σ c(σ) E^{(σ)}`.
pub fn free_coefficients(lattice: &NcLattice, upper: &Partition) -> BTreeMap<usize, Rational> {
    let below: Vec<bool> = lattice.elements().iter().map(|p| p.leq_unchecked(upper)).collect();
    let mut out = BTreeMap::new();
    for s in 0..lattice.len() {
        if !below[s] {
            continue;
        }
        let c: Rational = lattice.mobius_row(s).iter().filter(|(p, _)| below[*p]).map(|(_, mu)| mu.clone()).sum();
        if !c.is_zero() {
            out.insert(s, c);
        }
    }
    out
}

/// Joint moment of the free i.i.d. sequence with single-variable law `law`:
/// `Σ_{π ∈ NC(m), π ≤ ker i} κ^{(π)}[word]`.
pub fn free_iid_moment<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(law: &L, cache: &MobiusCache, word: &Word<T>) -> Result<Matrix<T>> {
    if word.is_empty() {
        return Ok(word.inserts[0].clone());
    }
    let lattice = cache.get(word.len()).ok_or(Error::SizeLimit { size: word.len(), limit: cache_limit(cache) })?;
    let table = moment_table(law, lattice, word)?;
    Ok(combine(word.b_dim(), &table, &free_coefficients(lattice, &word.kernel()?)))
}

fn cache_limit(cache: &MobiusCache) -> usize {
    (0..=crate::partitions::LATTICE_LIMIT).take_while(|&m| cache.get(m).is_some()).last().unwrap_or(0)
}

/// Joint `B`-valued distribution of a sequence of variables.
pub trait JointDistribution<T: Scalar> {
    fn b_dim(&self) -> usize;

    fn moment(&self, word: &Word<T>) -> Result<Matrix<T>>;

    /// Moments of `word` relabelled by each tuple in `labels`.
    fn moments_relabelled(&self, word: &Word<T>, labels: &[Vec<usize>]) -> Result<Vec<Matrix<T>>> {
        labels.iter().map(|l| self.moment(&word.with_indices(l.clone())?)).collect()
    }
}

/// Free i.i.d. sequence defined by vanishing of mixed cumulants.
#[derive(Clone, Debug)]
pub struct FreeIid<L> {
    law: L,
    cache: MobiusCache,
}

impl<L> FreeIid<L> {
    /// Tabulates `NC(m)` for every `m ≤ max_len`.
    pub fn new(law: L, max_len: usize) -> Result<Self> {
        Ok(FreeIid { law, cache: MobiusCache::filled(max_len)? })
    }

    pub fn law(&self) -> &L {
        &self.law
    }

    pub fn cache(&self) -> &MobiusCache {
        &self.cache
    }
}

impl<T: Scalar, L: SingleVariableLaw<T>> JointDistribution<T> for FreeIid<L> {
    fn b_dim(&self) -> usize {
        self.law.b_dim()
    }

    fn moment(&self, word: &Word<T>) -> Result<Matrix<T>> {
        free_iid_moment(&self.law, &self.cache, word)
    }

    fn moments_relabelled(&self, word: &Word<T>, labels: &[Vec<usize>]) -> Result<Vec<Matrix<T>>> {
        if word.is_empty() {
            return Ok(vec![word.inserts[0].clone(); labels.len()]);
        }
        let lattice = self.cache.get(word.len()).ok_or(Error::SizeLimit { size: word.len(), limit: cache_limit(&self.cache) })?;
        let table = moment_table(&self.law, lattice, word)?;
        let mut by_kernel: BTreeMap<Partition, Matrix<T>> = BTreeMap::new();
        labels
            .iter()
            .map(|l| {
                if l.len() != word.len() {
                    return Err(Error::DimensionMismatch { expected: word.len(), found: l.len() });
                }
                let ker = kernel(l)?;
                if let Some(v) = by_kernel.get(&ker) {
                    return Ok(v.clone());
                }
                let v = combine(word.b_dim(), &table, &free_coefficients(lattice, &ker));
                by_kernel.insert(ker, v.clone());
                Ok(v)
            })
            .collect()
    }
}

/// Freely independent scalar variables, variable `i` distributed by `laws[i - 1]`.
///
/// With unequal laws this is free but not identically distributed.
#[derive(Clone, Debug)]
pub struct FreeProduct<T> {
    laws: Vec<ScalarMomentLaw<T>>,
    cache: MobiusCache,
}

impl<T: Scalar> FreeProduct<T> {
    pub fn new(laws: Vec<ScalarMomentLaw<T>>, max_len: usize) -> Result<Self> {
        if laws.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(FreeProduct { laws, cache: MobiusCache::filled(max_len)? })
    }

    fn block_cumulant(&self, law: &ScalarMomentLaw<T>, powers: &[usize]) -> Result<T> {
        let s = powers.len();
        let lattice = self.cache.get(s).ok_or(Error::SizeLimit { size: s, limit: cache_limit(&self.cache) })?;
        let top = lattice.index_of(&Partition::one_block(s)).expect("1_s is non-crossing");
        let mut acc = T::zero();
        for (k, sigma) in lattice.elements().iter().enumerate() {
            let Some(mu) = lattice.mobius_by_index(k, top) else { continue };
            let mut term = T::from_rational(mu);
            for block in sigma.blocks() {
                let order: usize = block.iter().map(|&r| powers[r - 1]).sum();
                term = term * law.moment(order)?.clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

impl<T: Scalar> JointDistribution<T> for FreeProduct<T> {
    fn b_dim(&self) -> usize {
        1
    }

    fn moment(&self, word: &Word<T>) -> Result<Matrix<T>> {
        check_inserts(1, &word.inserts, &word.powers)?;
        let coeff = word.inserts.iter().fold(T::one(), |acc, b| acc * b.get(0, 0).clone());
        if word.is_empty() {
            return Ok(Matrix::scalar(coeff));
        }
        let law_of = |label: usize| {
            self.laws.get(label - 1).ok_or_else(|| Error::Bounds(format!("no law for variable {label}")))
        };
        let m = word.len();
        let lattice = self.cache.get(m).ok_or(Error::SizeLimit { size: m, limit: cache_limit(&self.cache) })?;
        let ker = word.kernel()?;
        let mut acc = T::zero();
        for pi in lattice.elements().iter().filter(|p| p.leq_unchecked(&ker)) {
            let mut term = T::one();
            for block in pi.blocks() {
                let law = law_of(word.indices[block[0] - 1])?;
                let powers: Vec<usize> = block.iter().map(|&r| word.powers[r - 1]).collect();
                term = term * self.block_cumulant(law, &powers)?;
            }
            acc = acc + term;
        }
        Ok(Matrix::scalar(coeff * acc))
    }
}

/// Checks `E[word] = Σ_{π ∈ NC(m)} κ^{(π)}[word]` on each word.
pub fn moment_cumulant_roundtrip<T: Scalar, L: SingleVariableLaw<T> + ?Sized>(
    law: &L,
    cache: &MobiusCache,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let mut tracker = ResidualTracker::new(tolerance, T::EXACT);
    for word in words {
        let m = word.len();
        let lattice = cache.get(m).ok_or(Error::SizeLimit { size: m, limit: cache_limit(cache) })?;
        let direct = law.eval(&word.inserts, &word.powers)?;
        let mut sum = Matrix::zeros(word.b_dim(), word.b_dim());
        for pi in lattice.elements() {
            sum = &sum + &cumulant_pi(law, lattice, pi, word)?;
        }
        tracker.observe("moment_cumulant", direct.max_abs_diff(&sum), || witness([("m", vec![m as i64]), ("powers", to_i64s(&word.powers))]));
    }
    Ok(tracker.finish("moments.roundtrip").with_param("words", words.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rng_from_seed, random_small_rational, random_integer_symmetric};

    fn r(v: i64) -> Rational {
        rat(v, 1)
    }

    fn rational_ambient(seed: u64) -> AmbientLaw<Rational> {
        let alg = BAlgebra::new(2, 2).unwrap();
        let mut rng = rng_from_seed(seed);
        AmbientLaw::new(alg, random_integer_symmetric(4, 2, &mut rng)).unwrap()
    }

    fn random_word(m: usize, seed: u64) -> Word<Rational> {
        let mut rng = rng_from_seed(seed);
        let inserts = (0..=m).map(|_| random_small_rational(2, 2, 3, &mut rng)).collect();
        Word::new(vec![1; m], inserts, vec![1; m]).unwrap()
    }

    #[test]
    fn word_validation() {
        let b = Matrix::<Rational>::identity(1);
        assert!(Word::new(vec![1], vec![b.clone()], vec![1]).is_err());
        assert!(Word::new(vec![1], vec![b.clone(), b.clone()], vec![]).is_err());
        assert!(Word::new(vec![0], vec![b.clone(), b.clone()], vec![1]).is_err());
        assert!(Word::new(vec![1], vec![b.clone(), b.clone()], vec![0]).is_err());
        assert!(Word::new(vec![1], vec![b.clone(), Matrix::identity(2)], vec![1]).is_err());
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<BigInt> = (0..7).map(catalan).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132].into_iter().map(BigInt::from).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_word_returns_insert() {
        let law = rational_ambient(1);
        let b = random_small_rational(2, 2, 3, &mut rng_from_seed(2));
        assert_eq!(law.eval(&[b.clone()], &[]).unwrap(), b);
        let scalar = ScalarMomentLaw::<Rational>::semicircular(4);
        assert_eq!(scalar.eval(&[Matrix::scalar(r(3))], &[]).unwrap(), Matrix::scalar(r(3)));
    }

    #[test]
    fn one_block_is_plain_expectation() {
        let law = rational_ambient(3);
        let word = random_word(1, 4);
        let e = moment_sigma(&law, &Partition::one_block(1), &word).unwrap();
        assert_eq!(e, law.eval(&word.inserts, &word.powers).unwrap());
    }

    #[test]
    fn singletons_factor_through_first_moment() {
        let law = rational_ambient(5);
        let word = random_word(3, 6);
        let got = moment_sigma(&law, &Partition::singletons(3), &word).unwrap();
        // b₀ E[x] b₁ E[x] b₂ E[x] b₃
        let ex = law.eval(&[Matrix::identity(2), Matrix::identity(2)], &[1]).unwrap();
        let mut want = word.inserts[0].clone();
        for b in &word.inserts[1..] {
            want = &(&want * &ex) * b;
        }
        assert_eq!(got, want);
    }

    #[test]
    fn moment_sigma_rejects_bad_input() {
        let law = rational_ambient(7);
        let word = random_word(4, 8);
        let crossing = Partition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(moment_sigma(&law, &crossing, &word), Err(Error::Crossing));
        assert!(moment_sigma(&law, &Partition::one_block(3), &word).is_err());
        let mixed = word.with_indices(vec![1, 2, 1, 1]).unwrap();
        assert!(moment_sigma(&law, &Partition::one_block(4), &mixed).is_err());
    }

    #[test]
    fn two_block_cumulant_by_hand() {
        let law = rational_ambient(9);
        let word = random_word(2, 10);
        let lattice = NcLattice::new(2).unwrap();
        let k = cumulant_pi(&law, &lattice, &Partition::one_block(2), &word).unwrap();
        let [b0, b1, b2] = [&word.inserts[0], &word.inserts[1], &word.inserts[2]];
        let full = law.eval(&word.inserts, &word.powers).unwrap();
        let left = law.eval(&[b0.clone(), b1.clone()], &[1]).unwrap();
        let right = law.eval(&[Matrix::identity(2), b2.clone()], &[1]).unwrap();
        assert_eq!(k, &full - &(&left * &right));
        let k1 = cumulant_pi(&law, &NcLattice::new(1).unwrap(), &Partition::one_block(1), &random_word(1, 11)).unwrap();
        assert_eq!(k1, law.eval(&random_word(1, 11).inserts, &[1]).unwrap());
    }

    #[test]
    fn semicircle_cumulants() {
        let law = ScalarMomentLaw::<Rational>::semicircular(8);
        for m in 1..=4 {
            let lattice = NcLattice::new(m).unwrap();
            let word = Word::plain(vec![1; m], vec![1; m], 1).unwrap();
            let k = cumulant_pi(&law, &lattice, &Partition::one_block(m), &word).unwrap();
            let want = if m == 2 { r(1) } else { r(0) };
            assert_eq!(*k.get(0, 0), want, "m = {m}");
        }
    }

    #[test]
    fn free_semicircle_words() {
        let model = FreeIid::new(ScalarMomentLaw::<Rational>::semicircular(8), 4).unwrap();
        let alternating = Word::plain(vec![1, 2, 1, 2], vec![1; 4], 1).unwrap();
        let nested = Word::plain(vec![1, 2, 2, 1], vec![1; 4], 1).unwrap();
        assert_eq!(*model.moment(&alternating).unwrap().get(0, 0), r(0));
        assert_eq!(*model.moment(&nested).unwrap().get(0, 0), r(1));
    }

    #[test]
    fn single_letter_is_label_free() {
        let law = rational_ambient(12);
        let model = FreeIid::new(law.clone(), 2).unwrap();
        let word = random_word(1, 13);
        let direct = law.eval(&word.inserts, &word.powers).unwrap();
        for label in [1, 2, 7] {
            assert_eq!(model.moment(&word.with_indices(vec![label]).unwrap()).unwrap(), direct);
        }
    }

    #[test]
    fn relabelled_batch_matches_single() {
        let model = FreeIid::new(rational_ambient(14), 3).unwrap();
        let word = random_word(3, 15);
        let labels = vec![vec![1, 2, 1], vec![2, 2, 2], vec![3, 1, 2], vec![1, 2, 1]];
        let batch = model.moments_relabelled(&word, &labels).unwrap();
        for (l, got) in labels.iter().zip(batch) {
            assert_eq!(got, model.moment(&word.with_indices(l.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn free_product_with_equal_laws_is_free_iid() {
        let law = ScalarMomentLaw::<Rational>::new(vec![r(1), r(3), r(-2), r(7), r(0), r(5)]);
        let iid = FreeIid::new(law.clone(), 4).unwrap();
        let prod = FreeProduct::new(vec![law.clone(), law], 4).unwrap();
        for labels in [vec![1, 2, 1, 2], vec![1, 1, 2], vec![2, 1, 1, 2], vec![1]] {
            let m = labels.len();
            let word = Word::new(labels, (0..=m).map(|i| Matrix::scalar(r(i as i64 + 1))).collect(), vec![1; m]).unwrap();
            assert_eq!(iid.moment(&word).unwrap(), prod.moment(&word).unwrap());
        }
    }

    #[test]
    fn unknown_moment_order() {
        let law = ScalarMomentLaw::<Rational>::semicircular(2);
        assert_eq!(law.eval(&[Matrix::scalar(r(1)), Matrix::scalar(r(1))], &[3]), Err(Error::MomentUnavailable { order: 3, available: 2 }));
    }
}
