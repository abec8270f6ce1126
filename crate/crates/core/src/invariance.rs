//! Quantum exchangeability and quantum spreadability of joint distributions.
//!
//! For target indices `j = (j_1, …, j_m)` the coaction equation reads
//!
//! ```text
//! Σ_{i ∈ [n]^m} E[b_0 x_{i_1}^{p_1} ⋯ x_{i_m}^{p_m} b_m] ⊗ u_{i_1 j_1} ⋯ u_{i_m j_m}
//!     = E[b_0 x_{j_1}^{p_1} ⋯ x_{j_m}^{p_m} b_m] ⊗ 1
//! ```
//!
//! The scalar checks apply `φ = tr ∘ E` to the left factor; the `B`-valued checks
//! compare in `B ⊗ M_D`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::moments::{JointDistribution, Word};
use crate::partitions::{kernel, Partition};
use crate::qis::{classical_point_rep, enumerate_increasing, quantum_extension, restrict_to_columns, RepKind, Representation};
use crate::report::{to_i64s, witness, CheckReport, ResidualTracker, Witness};

/// All tuples in `[n]^m`, lexicographic.
pub fn index_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=n).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Words with identity inserts, every label tuple in `[labels]^m` and every power
/// pattern in `[max_power]^m`, for `1 ≤ m ≤ max_len`.
pub fn enumerate_words<T: Scalar>(labels: usize, max_len: usize, max_power: usize, b_dim: usize) -> Result<Vec<Word<T>>> {
    let mut words = Vec::new();
    for m in 1..=max_len {
        let powers = index_tuples(max_power, m);
        for j in index_tuples(labels, m) {
            for p in &powers {
                words.push(Word::plain(j.clone(), p.clone(), b_dim)?);
            }
        }
    }
    Ok(words)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Scalar,
    BValued,
}

fn word_witness<T: Scalar>(word: &Word<T>) -> Witness {
    witness([("j", to_i64s(&word.indices)), ("powers", to_i64s(&word.powers))])
}

/// Largest entrywise deviation from the coaction equation over all words.
fn coaction_residuals<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    mode: Mode,
    component: &str,
    tolerance: f64,
    tracker: &mut ResidualTracker,
) -> Result<()> {
    let n = rep.rows();
    let d = rep.dim();
    for word in words {
        if let Some(&bad) = word.indices.iter().find(|&&j| j > rep.cols()) {
            return Err(Error::Bounds(alloc::format!("word label {bad} exceeds the {} columns of the representation", rep.cols())));
        }
        let m = word.len();
        let mut labels = index_tuples(n, m);
        labels.push(word.indices.clone());
        let moments = dist.moments_relabelled(word, &labels)?;
        let target = moments.last().expect("target moment present");
        let (mut lhs, rhs) = match mode {
            Mode::Scalar => (Matrix::zeros(d, d), Matrix::identity(d).scale(&target.normalized_trace())),
            Mode::BValued => {
                let b = target.rows();
                (Matrix::zeros(b * d, b * d), target.kron(&Matrix::identity(d)))
            }
        };
        for (i, mom) in labels[..labels.len() - 1].iter().zip(&moments) {
            let prod = rep.word_product(i, &word.indices);
            if prod.is_zero_matrix() {
                continue;
            }
            let term = match mode {
                Mode::Scalar => prod.scale(&mom.normalized_trace()),
                Mode::BValued => mom.kron(&prod),
            };
            lhs = &lhs + &term;
        }
        tracker.observe_with(component, lhs.max_abs_diff(&rhs), tolerance, || word_witness(word));
    }
    tracker.touch(component);
    Ok(())
}

/// Evaluates the spreadability equation at every classical point `l ∈ I(k, n)`.
fn classical_residuals<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    k: usize,
    n: usize,
    words: &[Word<T>],
    mode: Mode,
    tracker: &mut ResidualTracker,
) -> Result<()> {
    for l in enumerate_increasing(k, n)? {
        let point = classical_point_rep::<T>(&l);
        let mut local = ResidualTracker::new(0.0, true);
        coaction_residuals(dist, &point, words, mode, "classical", 0.0, &mut local)?;
        let max = local.max();
        // classical spreadability is an exact statement: no tolerance
        tracker.observe_with("classical", max, 0.0, || {
            let mut w = local.finish("").witness.unwrap_or_default();
            w.insert("l".into(), to_i64s(l.values()));
            w
        });
    }
    Ok(())
}

fn require_kind<T: Scalar>(rep: &Representation<T>, want_square: bool) -> Result<(usize, usize)> {
    match (rep.kind(), want_square) {
        (RepKind::Permutation { n }, true) => Ok((n, n)),
        (RepKind::Increasing { k, n }, false) => Ok((k, n)),
        _ if want_square => Err(Error::MalformedRep("expected an A_s(n) representation".into())),
        _ => Err(Error::MalformedRep("expected an A_i(k, n) representation".into())),
    }
}

fn finish(tracker: ResidualTracker, name: &str, rep_k: usize, rep_n: usize, dim: usize, words: usize, tolerance: f64) -> CheckReport {
    tracker
        .finish(name)
        .with_param("k", rep_k)
        .with_param("n", rep_n)
        .with_param("dim", dim)
        .with_param("words", words)
        .with_param("tolerance", tolerance)
}

/// Quantum exchangeability against an `A_s(n)` family, scalar form.
pub fn check_exchangeable<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let (_, n) = require_kind(rep, true)?;
    let mut t = ResidualTracker::new(tolerance, false);
    coaction_residuals(dist, rep, words, Mode::Scalar, "coaction", tolerance, &mut t)?;
    Ok(finish(t, "invariance.exchangeable", n, n, rep.dim(), words.len(), tolerance))
}

/// Quantum exchangeability in `B ⊗ M_D`.
pub fn check_bvalued_exchangeable<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let (_, n) = require_kind(rep, true)?;
    let mut t = ResidualTracker::new(tolerance, false);
    coaction_residuals(dist, rep, words, Mode::BValued, "coaction", tolerance, &mut t)?;
    Ok(finish(t, "invariance.bvalued_exchangeable", n, n, rep.dim(), words.len(), tolerance))
}

/// Quantum spreadability against an `A_i(k, n)` family, scalar form, together with
/// the exact classical specialization at every point of `I(k, n)`.
pub fn check_spreadable<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let (k, n) = require_kind(rep, false)?;
    let mut t = ResidualTracker::new(tolerance, false);
    coaction_residuals(dist, rep, words, Mode::Scalar, "coaction", tolerance, &mut t)?;
    classical_residuals(dist, k, n, words, Mode::Scalar, &mut t)?;
    Ok(finish(t, "invariance.spreadable", k, n, rep.dim(), words.len(), tolerance))
}

/// Quantum spreadability in `B ⊗ M_D`, with the exact classical specialization.
pub fn check_bvalued_spreadable<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let (k, n) = require_kind(rep, false)?;
    let mut t = ResidualTracker::new(tolerance, false);
    coaction_residuals(dist, rep, words, Mode::BValued, "coaction", tolerance, &mut t)?;
    classical_residuals(dist, k, n, words, Mode::BValued, &mut t)?;
    Ok(finish(t, "invariance.bvalued_spreadable", k, n, rep.dim(), words.len(), tolerance))
}

/// Spreadability through `A_s(n)`: extends `rep` by [`quantum_extension`], checks
/// exchangeability there, and checks that the first `k` columns give back `rep`
/// before checking spreadability on them.
pub fn check_pullback_spreadable<T: Scalar, J: JointDistribution<T> + ?Sized>(
    dist: &J,
    rep: &Representation<T>,
    words: &[Word<T>],
    tolerance: f64,
) -> Result<CheckReport> {
    let (k, n) = require_kind(rep, false)?;
    let extended = quantum_extension(rep)?;
    let restricted = restrict_to_columns(&extended, k)?;
    let mut t = ResidualTracker::new(tolerance, false);
    let mismatch = (1..=n)
        .flat_map(|i| (1..=k).map(move |j| (i, j)))
        .map(|(i, j)| restricted.get(i, j).max_abs_diff(rep.get(i, j)))
        .fold(0.0, f64::max);
    t.observe_with("restriction", mismatch, 0.0, Witness::new);
    coaction_residuals(dist, &extended, words, Mode::Scalar, "extended_coaction", tolerance, &mut t)?;
    coaction_residuals(dist, &restricted, words, Mode::Scalar, "coaction", tolerance, &mut t)?;
    Ok(finish(t, "invariance.pullback_spreadable", k, n, rep.dim(), words.len(), tolerance))
}

/// `Σ_{i : π ≤ ker i} u_{i_1 j_1} ⋯ u_{i_m j_m}`.
///
/// For a magic unitary this equals `1` when `π ≤ ker j` and `0` otherwise.
pub fn summation_lemma<T: Scalar>(rep: &Representation<T>, pi: &Partition, j: &[usize]) -> Result<Matrix<T>> {
    let m = pi.m();
    if j.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: j.len() });
    }
    if !pi.is_noncrossing() {
        return Err(Error::Crossing);
    }
    if let Some(&bad) = j.iter().find(|&&v| v < 1 || v > rep.cols()) {
        return Err(Error::Bounds(alloc::format!("column {bad} outside 1..={}", rep.cols())));
    }
    let mut acc = Matrix::zeros(rep.dim(), rep.dim());
    let mut values = vec![0usize; pi.num_blocks()];
    sum_over_blocks(rep, pi.labels(), j, 0, &Matrix::identity(rep.dim()), &mut values, &mut acc);
    Ok(acc)
}

fn sum_over_blocks<T: Scalar>(
    rep: &Representation<T>,
    labels: &[u8],
    j: &[usize],
    r: usize,
    prefix: &Matrix<T>,
    values: &mut [usize],
    acc: &mut Matrix<T>,
) {
    if r == labels.len() {
        *acc = &*acc + prefix;
        return;
    }
    let block = labels[r] as usize;
    // restricted growth: a label is new exactly when it exceeds all earlier ones
    let fresh = labels[..r].iter().all(|&l| (l as usize) < block);
    let choices = if fresh { 1..=rep.rows() } else { values[block]..=values[block] };
    for v in choices {
        values[block] = v;
        let next = prefix * rep.get(v, j[r]);
        if !next.is_zero_matrix() {
            sum_over_blocks(rep, labels, j, r + 1, &next, values, acc);
        }
    }
}

/// Runs [`summation_lemma`] for every `π ∈ NC(m)`, `m ≤ max_m`, and every `j ∈ [n]^m`.
pub fn check_summation_lemma<T: Scalar>(rep: &Representation<T>, max_m: usize) -> Result<CheckReport> {
    let (_, n) = require_kind(rep, true)?;
    let mut t = ResidualTracker::new(rep.tolerance(), T::EXACT);
    let one = Matrix::<T>::identity(rep.dim());
    let zero = Matrix::<T>::zeros(rep.dim(), rep.dim());
    for m in 1..=max_m {
        let nc = crate::partitions::enumerate_nc(m)?;
        for j in index_tuples(n, m) {
            let ker = kernel(&j)?;
            for pi in &nc {
                let expected = if pi.leq_unchecked(&ker) { &one } else { &zero };
                let got = summation_lemma(rep, pi, &j)?;
                t.observe("summation", got.max_abs_diff(expected), || {
                    witness([("j", to_i64s(&j)), ("pi", pi.labels().iter().map(|&l| l as i64 + 1).collect())])
                });
            }
        }
    }
    Ok(t.finish("invariance.summation_lemma").with_param("n", n).with_param("max_m", max_m).with_param("dim", rep.dim()))
}
