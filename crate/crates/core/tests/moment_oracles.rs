use proptest::prelude::*;
use qspread_core::linalg::{rat, random_integer_symmetric, random_small_rational, rng_from_seed, BAlgebra};
use qspread_core::moments::{
    cumulant_pi, free_iid_moment, moment_cumulant_roundtrip, moment_sigma, AmbientLaw, ScalarMomentLaw, SingleVariableLaw, Word,
};
use qspread_core::partitions::{enumerate_nc, MobiusCache, NcLattice, Partition};
use qspread_core::{Matrix, Rational};

fn ambient(seed: u64) -> AmbientLaw<Rational> {
    let alg = BAlgebra::new(2, 2).unwrap();
    AmbientLaw::new(alg, random_integer_symmetric(4, 2, &mut rng_from_seed(seed))).unwrap()
}

fn word(indices: Vec<usize>, powers: Vec<usize>, seed: u64) -> Word<Rational> {
    let mut rng = rng_from_seed(seed);
    let inserts = (0..=indices.len()).map(|_| random_small_rational(2, 2, 3, &mut rng)).collect();
    Word::new(indices, inserts, powers).unwrap()
}

#[test]
fn worked_nesting_in_nc10() {
    let law = ambient(11);
    let alg = law.algebra();
    let x = law.variable().clone();
    let w = word(vec![1; 10], vec![1, 2, 1, 1, 2, 1, 1, 1, 2, 1], 5);
    let pi = Partition::from_blocks(10, &[vec![1, 5, 8], vec![2, 4], vec![3], vec![6, 7], vec![9, 10]]).unwrap();

    // a_1 = b_0 x^{p_1} b_1 and a_r = x^{p_r} b_r in the ambient algebra
    let emb = |b: &Matrix<Rational>| alg.embed(b).unwrap();
    let a: Vec<Matrix<Rational>> = (0..10)
        .map(|r| {
            let tail = &x.pow(w.powers[r]) * &emb(&w.inserts[r + 1]);
            if r == 0 {
                &emb(&w.inserts[0]) * &tail
            } else {
                tail
            }
        })
        .collect();
    let e = |m: Matrix<Rational>| alg.partial_expectation(&m).unwrap();
    let rho3 = e(a[2].clone());
    let rho2 = e(&(&a[1] * &emb(&rho3)) * &a[3]);
    let rho67 = e(&a[5] * &a[6]);
    let outer = e(&(&(&(&a[0] * &emb(&rho2)) * &a[4]) * &emb(&rho67)) * &a[7]);
    let tail = e(&a[8] * &a[9]);
    let expected = &outer * &tail;

    assert_eq!(moment_sigma(&law, &pi, &w).unwrap(), expected);
}

#[test]
fn singletons_unroll_to_first_moments() {
    let law = ambient(3);
    let w = word(vec![1; 4], vec![1; 4], 9);
    let ex = law.eval(&[Matrix::identity(2), Matrix::identity(2)], &[1]).unwrap();
    let mut expected = w.inserts[0].clone();
    for r in 1..=4 {
        expected = &(&expected * &ex) * &w.inserts[r];
    }
    assert_eq!(moment_sigma(&law, &Partition::singletons(4), &w).unwrap(), expected);
}

/// Free cumulants of a scalar moment sequence by the recursion
/// `m_k = Σ_{s=1}^{k} κ_s Σ_{i_1 + … + i_s = k − s} m_{i_1} ⋯ m_{i_s}`.
fn scalar_cumulants(moments: &[Rational]) -> Vec<Rational> {
    let max = moments.len() - 1;
    let mut kappa = vec![Rational::from_integer(0.into()); max + 1];
    for k in 1..=max {
        let mut rest = Rational::from_integer(0.into());
        for s in 1..k {
            rest += &kappa[s] * compositions_sum(moments, s, k - s);
        }
        kappa[k] = &moments[k] - rest;
    }
    kappa
}

fn compositions_sum(moments: &[Rational], parts: usize, total: usize) -> Rational {
    if parts == 0 {
        return if total == 0 { rat(1, 1) } else { rat(0, 1) };
    }
    (0..=total).map(|first| &moments[first] * compositions_sum(moments, parts - 1, total - first)).sum()
}

#[test]
fn one_block_cumulants_match_scalar_recursion() {
    let ms: Vec<Rational> = [1, 0, 2, -1, 7, 3, 30].iter().map(|&v| rat(v, 1)).collect();
    let law = ScalarMomentLaw::new(ms[1..].to_vec());
    let kappa = scalar_cumulants(&ms);
    for m in 1..=6 {
        let lattice = NcLattice::new(m).unwrap();
        let w = Word::plain(vec![1; m], vec![1; m], 1).unwrap();
        let k = cumulant_pi(&law, &lattice, &Partition::one_block(m), &w).unwrap();
        assert_eq!(k, Matrix::scalar(kappa[m].clone()), "κ_{m}");
    }
}

fn nc_pairings_below(indices: &[usize]) -> usize {
    let m = indices.len();
    enumerate_nc(m)
        .unwrap()
        .iter()
        .filter(|p| p.blocks().iter().all(|b| b.len() == 2 && indices[b[0] - 1] == indices[b[1] - 1]))
        .count()
}

#[test]
fn free_semicircles_count_nc_pairings() {
    let law = ScalarMomentLaw::<Rational>::semicircular(8);
    let cache = MobiusCache::filled(6).unwrap();
    for m in 1..=6 {
        for code in 0..3usize.pow(m as u32) {
            let indices: Vec<usize> = (0..m).map(|r| code / 3usize.pow(r as u32) % 3 + 1).collect();
            let w = Word::plain(indices.clone(), vec![1; m], 1).unwrap();
            let v = free_iid_moment(&law, &cache, &w).unwrap();
            assert_eq!(v, Matrix::scalar(rat(nc_pairings_below(&indices) as i64, 1)), "{indices:?}");
        }
    }
}

#[test]
fn roundtrip_on_rational_laws() {
    let cache = MobiusCache::filled(5).unwrap();
    let law = ambient(21);
    let words: Vec<Word<Rational>> = (1..=5).map(|m| word(vec![1; m], vec![1; m], m as u64)).collect();
    let r = moment_cumulant_roundtrip(&law, &cache, &words, 0.0).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn bimodule_property() {
    let law = ambient(8);
    let cache = MobiusCache::filled(4).unwrap();
    let mut rng = rng_from_seed(77);
    let b = random_small_rational(2, 2, 3, &mut rng);
    let w = word(vec![1, 2, 2, 1], vec![1, 2, 1, 1], 4);
    let base = free_iid_moment(&law, &cache, &w).unwrap();
    let mut left = w.clone();
    left.inserts[0] = &b * &left.inserts[0];
    assert_eq!(free_iid_moment(&law, &cache, &left).unwrap(), &b * &base);
    let mut right = w.clone();
    right.inserts[4] = &right.inserts[4] * &b;
    assert_eq!(free_iid_moment(&law, &cache, &right).unwrap(), &base * &b);
}

#[test]
fn multilinear_in_inserts() {
    let law = ambient(2);
    let cache = MobiusCache::filled(3).unwrap();
    let w1 = word(vec![1, 2, 1], vec![1; 3], 1);
    let w2 = word(vec![1, 2, 1], vec![1; 3], 2);
    let c = rat(-3, 2);
    for pos in 0..=3 {
        let mut sum = w1.clone();
        sum.inserts[pos] = &w1.inserts[pos] + &w2.inserts[pos].scale(&c);
        let mut other = w1.clone();
        other.inserts[pos] = w2.inserts[pos].clone();
        let lhs = free_iid_moment(&law, &cache, &sum).unwrap();
        let rhs = &free_iid_moment(&law, &cache, &w1).unwrap() + &free_iid_moment(&law, &cache, &other).unwrap().scale(&c);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn single_index_words_are_plain_expectations() {
    let law = ambient(14);
    let cache = MobiusCache::filled(5).unwrap();
    for m in 1..=5 {
        let w = word(vec![3; m], vec![1; m], 40 + m as u64);
        assert_eq!(free_iid_moment(&law, &cache, &w).unwrap(), law.eval(&w.inserts, &w.powers).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moments_depend_only_on_kernel(
        indices in prop::collection::vec(1usize..4, 1..5),
        shift in prop::collection::vec(1usize..20, 3),
        seed in 0u64..1000,
    ) {
        // injective relabelling 1, 2, 3 ↦ distinct labels
        let mut targets = vec![shift[0], shift[0] + shift[1], shift[0] + shift[1] + shift[2]];
        targets.dedup();
        prop_assume!(targets.len() == 3);
        let law = ambient(seed);
        let cache = MobiusCache::filled(4).unwrap();
        let w = word(indices.clone(), vec![1; indices.len()], seed + 1);
        let relabelled = w.with_indices(indices.iter().map(|&i| targets[i - 1]).collect()).unwrap();
        prop_assert_eq!(free_iid_moment(&law, &cache, &w).unwrap(), free_iid_moment(&law, &cache, &relabelled).unwrap());
    }
}
