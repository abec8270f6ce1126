//! Check suites assembled from a [`Config`].
//!
//! Each function runs its checks in a fixed order and returns one report per check, so
//! the same configuration always yields the same stream apart from `runtime_ms`.

use std::time::Instant;

use qspread_core::invariance::{
    check_bvalued_exchangeable, check_bvalued_spreadable, check_exchangeable, check_pullback_spreadable, check_spreadable,
    check_summation_lemma, enumerate_words,
};
use qspread_core::linalg::{
    projection_pair, random_hermitian, random_integer_symmetric, random_matrix, random_small_rational, rng_from_seed, BAlgebra,
};
use qspread_core::moments::{moment_cumulant_roundtrip, AmbientLaw, FreeIid, FreeProduct, JointDistribution, ScalarMomentLaw, Word};
use qspread_core::partitions::{check_mobius, check_nc_counts};
use qspread_core::qis::{
    build_block_rep, check_ai_relations, classical_point_rep, enumerate_increasing, extend_to_permutation, quantum_extension,
    two_projection_rep, Representation,
};
use qspread_core::qperm::{check_magic_unitary, convolution, permutation_rep, two_by_two_rep};
use qspread_core::report::{to_i64s, witness, Param, ResidualTracker, Status};
use qspread_core::weingarten::{check_gram_psd, check_psi_oracle, check_reconstruction, check_unit_identity};
use qspread_core::{CheckReport, MobiusCache, Rational, C64};
use rand::Rng;

use crate::config::{BlockRepConfig, Config, LawConfig};

/// Runs `f`, records its runtime and turns an error into an `error` report carrying
/// the same params.
fn timed(name: &str, params: &[(&str, Param)], seed: u64, f: impl FnOnce() -> qspread_core::Result<CheckReport>) -> CheckReport {
    let start = Instant::now();
    let mut report = f().unwrap_or_else(|e| CheckReport::error(name, e.to_string()));
    for (k, v) in params {
        report.params.insert((*k).to_string(), v.clone());
    }
    report.seed = seed;
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

fn renamed(mut r: CheckReport, name: &str) -> CheckReport {
    r.check_name = name.to_string();
    r
}

/// Whether every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

// ---------------------------------------------------------------- partitions

pub fn nc_enumerate(m: usize) -> CheckReport {
    timed("nc.enumerate", &[], 0, || check_nc_counts(m))
}

pub fn nc_mobius(m: usize) -> CheckReport {
    timed("nc.mobius", &[], 0, || check_mobius(m))
}

pub fn partitions(cfg: &Config) -> Vec<CheckReport> {
    let mut out = vec![nc_enumerate(cfg.partitions.count_max_m)];
    out.extend((0..=cfg.partitions.mobius_max_m).map(nc_mobius));
    out
}

// ---------------------------------------------------------------- moments

fn power_patterns(m: usize, max_power: usize) -> Vec<Vec<usize>> {
    qspread_core::invariance::index_tuples(max_power, m)
}

pub fn moments(cfg: &Config) -> Vec<CheckReport> {
    let mc = &cfg.moments;
    let seed = cfg.seed;
    let mut out = Vec::new();
    let exact_cache = MobiusCache::filled(mc.exact_max_m);

    let scalar = ScalarMomentLaw::new(mc.scalar_moments.iter().map(|&v| Rational::from_integer(v.into())).collect());
    let params = [("law", Param::from("scalar_moments")), ("max_m", mc.exact_max_m.into()), ("max_power", mc.max_power.into())];
    out.push(timed("moments.roundtrip", &params, seed, || {
        let cache = exact_cache.clone()?;
        let words: Vec<Word<Rational>> = (1..=mc.exact_max_m)
            .flat_map(|m| power_patterns(m, mc.max_power).into_iter().map(move |p| Word::plain(vec![1; m], p, 1)))
            .collect::<qspread_core::Result<_>>()?;
        moment_cumulant_roundtrip(&scalar, &cache, &words, 0.0)
    }));

    let params = [("law", Param::from("ambient_rational")), ("b_dim", 2usize.into()), ("max_m", mc.exact_max_m.into())];
    out.push(timed("moments.roundtrip", &params, seed, || {
        let cache = exact_cache.clone()?;
        let mut rng = rng_from_seed(seed);
        let law = AmbientLaw::new(BAlgebra::new(2, 2)?, random_integer_symmetric(4, 2, &mut rng))?;
        let words: Vec<Word<Rational>> = (1..=mc.exact_max_m)
            .map(|m| Word::new(vec![1; m], (0..=m).map(|_| random_small_rational(2, 2, 3, &mut rng)).collect(), vec![1; m]))
            .collect::<qspread_core::Result<_>>()?;
        moment_cumulant_roundtrip(&law, &cache, &words, 0.0)
    }));

    let params = [
        ("law", Param::from("ambient_float")),
        ("b_dim", 2usize.into()),
        ("max_m", mc.float_max_m.into()),
        ("max_power", mc.max_power.into()),
        ("tolerance", mc.tolerance.into()),
    ];
    out.push(timed("moments.roundtrip", &params, seed, || {
        let cache = MobiusCache::filled(mc.float_max_m)?;
        let mut rng = rng_from_seed(seed);
        let x = random_hermitian(4, &mut rng).scale(&C64::new(0.5, 0.0));
        let law = AmbientLaw::new(BAlgebra::new(2, 2)?, x)?;
        let mut words = Vec::new();
        for m in 1..=mc.float_max_m {
            for p in power_patterns(m, mc.max_power) {
                words.push(Word::new(vec![1; m], (0..=m).map(|_| random_matrix(2, &mut rng)).collect(), p)?);
            }
        }
        moment_cumulant_roundtrip(&law, &cache, &words, mc.tolerance)
    }));
    out
}

// ---------------------------------------------------------------- qis

/// Seeded angles of the two-projection family.
pub fn family_angles(cfg: &Config) -> Vec<f64> {
    let mut rng = rng_from_seed(cfg.seed);
    (0..cfg.qis.angles).map(|_| rng.random_range(cfg.qis.theta_min..cfg.qis.theta_max)).collect()
}

pub fn two_projection(theta: f64, tolerance: f64) -> qspread_core::Result<Representation<C64>> {
    let (p, q) = projection_pair(theta);
    two_projection_rep(&p, &q, tolerance)
}

pub fn relations_check(rep: &Representation<C64>, params: &[(&str, Param)], seed: u64) -> CheckReport {
    timed("qis.relations", params, seed, || check_ai_relations(rep))
}

/// Magic-unitary check on the extension of `rep`.
pub fn extension_check(rep: &Representation<C64>, params: &[(&str, Param)], seed: u64, magic_tolerance: f64) -> CheckReport {
    timed("qis.extend", params, seed, || {
        let ext = quantum_extension(rep)?.with_tolerance(magic_tolerance);
        check_magic_unitary(&ext).map(|r| renamed(r, "qis.extend").with_param("tolerance", magic_tolerance))
    })
}

/// Relations and extension checks for one float `A_i(k, n)` representation.
pub fn rep_checks(rep: &Representation<C64>, params: &[(&str, Param)], seed: u64, magic_tolerance: f64) -> Vec<CheckReport> {
    vec![relations_check(rep, params, seed), extension_check(rep, params, seed, magic_tolerance)]
}

/// Exact relations on every classical point of `I(k, n)` for the given shapes.
pub fn classical_relations(shapes: &[(usize, usize)]) -> CheckReport {
    let max_n = shapes.iter().map(|s| s.1).max().unwrap_or(0);
    timed("qis.relations.classical", &[("max_n", max_n.into()), ("shapes", shapes.len().into())], 0, || {
        let mut t = ResidualTracker::new(0.0, true);
        let mut points = 0usize;
        for &(k, n) in shapes {
            for l in enumerate_increasing(k, n)? {
                points += 1;
                let r = check_ai_relations(&classical_point_rep::<Rational>(&l))?;
                for (c, v) in &r.residuals {
                    t.observe(c, v.as_f64(), || witness([("k", vec![k as i64]), ("n", vec![n as i64]), ("l", to_i64s(l.values()))]));
                }
            }
        }
        Ok(t.finish("qis.relations.classical").with_param("points", points))
    })
}

/// Exact agreement of `quantum_extension` with the permutation matrix of
/// `extend_to_permutation` on every classical point.
pub fn classical_extension(shapes: &[(usize, usize)]) -> CheckReport {
    let max_n = shapes.iter().map(|s| s.1).max().unwrap_or(0);
    timed("qis.extend.classical", &[("max_n", max_n.into()), ("shapes", shapes.len().into())], 0, || {
        let mut t = ResidualTracker::new(0.0, true);
        t.touch("permutation_matrix");
        let mut points = 0usize;
        for &(k, n) in shapes {
            for l in enumerate_increasing(k, n)? {
                points += 1;
                let w = || witness([("k", vec![k as i64]), ("n", vec![n as i64]), ("l", to_i64s(l.values()))]);
                let ext = quantum_extension(&classical_point_rep::<Rational>(&l))?;
                let perm = permutation_rep(&extend_to_permutation(&l))?;
                t.observe("permutation_matrix", if ext == perm { 0.0 } else { 1.0 }, w);
                for (c, v) in &check_magic_unitary(&ext)?.residuals {
                    t.observe(c, v.as_f64(), w);
                }
            }
        }
        Ok(t.finish("qis.extend.classical").with_param("points", points))
    })
}

/// All `(k, n)` with `1 ≤ k ≤ n ≤ max_n`.
pub fn shapes_up_to(max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_n).flat_map(|n| (1..=n).map(move |k| (k, n))).collect()
}

fn block_params(b: &BlockRepConfig) -> Vec<(&'static str, Param)> {
    vec![("family", "block".into()), ("block_k", b.k.into()), ("block_n", b.n.into()), ("block_dim", b.dim.into())]
}

pub fn qis(cfg: &Config) -> Vec<CheckReport> {
    let qc = &cfg.qis;
    let mut out = Vec::new();
    for (index, theta) in family_angles(cfg).into_iter().enumerate() {
        let params = [("family", Param::from("two_projection")), ("theta", theta.into()), ("angle_index", index.into())];
        match two_projection(theta, qc.relation_tolerance) {
            Ok(rep) => out.extend(rep_checks(&rep, &params, cfg.seed, qc.magic_tolerance)),
            Err(e) => out.push(timed("qis.relations", &params, cfg.seed, || Err(e))),
        }
    }
    let shapes = shapes_up_to(qc.classical_max_n);
    out.push(classical_relations(&shapes));
    out.push(classical_extension(&shapes));
    for b in &qc.block_reps {
        let params = block_params(b);
        match build_block_rep(b.k, b.n, b.dim, b.seed) {
            Ok(rep) => out.extend(rep_checks(&rep.with_tolerance(qc.relation_tolerance), &params, b.seed, qc.magic_tolerance)),
            Err(e) => out.push(timed("qis.relations", &params, b.seed, || Err(e))),
        }
    }
    out
}

// ---------------------------------------------------------------- qperm

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Summation lemma, exactly, on every permutation representation with `n ≤ max_n`.
pub fn summation_on_permutations(max_n: usize, max_m: usize) -> CheckReport {
    timed("qperm.summation.permutations", &[("max_n", max_n.into()), ("max_m", max_m.into())], 0, || {
        let mut t = ResidualTracker::new(0.0, true);
        t.touch("summation");
        let mut reps = 0usize;
        for n in 1..=max_n {
            for pi in permutations(n) {
                reps += 1;
                let r = check_summation_lemma(&permutation_rep::<Rational>(&pi)?, max_m)?;
                for (c, v) in &r.residuals {
                    let mut w = r.witness.clone().unwrap_or_default();
                    t.observe(c, v.as_f64(), || {
                        w.insert("permutation".into(), to_i64s(&pi));
                        w
                    });
                }
            }
        }
        Ok(t.finish("qperm.summation.permutations").with_param("reps", reps))
    })
}

pub fn qperm(cfg: &Config) -> Vec<CheckReport> {
    let pc = &cfg.qperm;
    let mut out = vec![summation_on_permutations(pc.summation_max_n, pc.summation_max_m)];
    let mut extended = Vec::new();
    for &theta in &pc.extended_angles {
        let params = [("family", Param::from("two_projection_extended")), ("theta", theta.into()), ("tolerance", pc.tolerance.into())];
        let ext = two_projection(theta, 1e-12).and_then(|r| quantum_extension(&r)).map(|r| r.with_tolerance(pc.tolerance));
        out.push(timed("qperm.magic", &params, cfg.seed, || check_magic_unitary(ext.as_ref().map_err(Clone::clone)?)));
        out.push(timed("qperm.summation", &params, cfg.seed, || {
            check_summation_lemma(ext.as_ref().map_err(Clone::clone)?, pc.summation_max_m).map(|r| renamed(r, "qperm.summation"))
        }));
        if let Ok(e) = ext {
            extended.push((theta, e));
        }
    }
    // convolving two extended reps stays magic
    if let [(a, u), (b, v), ..] = extended.as_slice() {
        let params = [("theta_left", Param::from(*a)), ("theta_right", (*b).into()), ("tolerance", pc.tolerance.into())];
        out.push(timed("qperm.convolution", &params, cfg.seed, || {
            check_magic_unitary(&convolution(u, v)?).map(|r| renamed(r, "qperm.convolution"))
        }));
    }
    out
}

// ---------------------------------------------------------------- invariance

/// Joint distribution over `labels` variables described by `law`.
pub fn build_law(law: &LawConfig, labels: usize, max_len: usize) -> qspread_core::Result<Box<dyn JointDistribution<C64>>> {
    let order = 2 * max_len.max(1) * 2;
    Ok(match law {
        LawConfig::Semicircular { variance } => Box::new(FreeIid::new(ScalarMomentLaw::semicircular_with_variance(order, *variance), max_len)?),
        LawConfig::Moments { moments } => {
            Box::new(FreeIid::new(ScalarMomentLaw::new(moments.iter().map(|&m| C64::new(m, 0.0)).collect()), max_len)?)
        }
        LawConfig::Ambient { b_dim, env_dim, seed, scale } => {
            let alg = BAlgebra::new(*b_dim, *env_dim)?;
            let x = random_hermitian(alg.ambient_dim(), &mut rng_from_seed(*seed)).scale(&C64::new(*scale, 0.0));
            Box::new(FreeIid::new(AmbientLaw::new(alg, x)?, max_len)?)
        }
        LawConfig::FreeProduct { variances } => {
            if variances.is_empty() {
                return Err(qspread_core::Error::EmptyInput);
            }
            let laws = (0..labels).map(|i| ScalarMomentLaw::semicircular_with_variance(order, variances[i % variances.len()])).collect();
            Box::new(FreeProduct::new(laws, max_len)?)
        }
    })
}

fn law_params(law: &LawConfig) -> Vec<(&'static str, Param)> {
    let mut p = vec![("law", Param::from(law.label()))];
    match law {
        LawConfig::Semicircular { variance } => p.push(("variance", (*variance).into())),
        LawConfig::Moments { moments } => p.push(("moments", moments.len().into())),
        LawConfig::Ambient { b_dim, env_dim, seed, scale } => {
            p.extend([("b_dim", (*b_dim).into()), ("env_dim", (*env_dim).into()), ("law_seed", (*seed).into()), ("scale", (*scale).into())])
        }
        LawConfig::FreeProduct { variances } => p.push(("variances", Param::Str(format!("{variances:?}")))),
    }
    p
}

/// Words over `labels` letters, with seeded random inserts when `b_dim > 1` and
/// `spot_checks` extra random words one letter longer than `max_len`.
pub fn suite_words(labels: usize, max_len: usize, max_power: usize, b_dim: usize, spot_checks: usize, seed: u64) -> qspread_core::Result<Vec<Word<C64>>> {
    let mut rng = rng_from_seed(seed);
    let mut words = enumerate_words::<C64>(labels, max_len, max_power, b_dim)?;
    for _ in 0..spot_checks {
        let m = max_len + 1;
        let indices = (0..m).map(|_| rng.random_range(1..=labels)).collect();
        let powers = (0..m).map(|_| rng.random_range(1..=max_power)).collect();
        words.push(Word::plain(indices, powers, b_dim)?);
    }
    if b_dim > 1 {
        words = words
            .into_iter()
            .map(|w| {
                let inserts = (0..=w.len()).map(|_| random_matrix(b_dim, &mut rng)).collect();
                Word::new(w.indices, inserts, w.powers)
            })
            .collect::<qspread_core::Result<_>>()?;
    }
    Ok(words)
}

struct NamedRep {
    params: Vec<(&'static str, Param)>,
    rep: qspread_core::Result<Representation<C64>>,
}

fn exchangeable_reps(cfg: &Config) -> Vec<NamedRep> {
    let ic = &cfg.invariance;
    let mut reps = Vec::new();
    for &theta in &ic.angles {
        let (p, _) = projection_pair(theta);
        reps.push(NamedRep { params: vec![("family", "two_by_two".into()), ("theta", theta.into())], rep: two_by_two_rep(&p, 1e-12) });
        reps.push(NamedRep {
            params: vec![("family", "two_projection_extended".into()), ("theta", theta.into())],
            rep: two_projection(theta, 1e-12).and_then(|r| quantum_extension(&r)),
        });
    }
    for b in &ic.block_reps {
        let mut params = block_params(b);
        params[0].1 = "block_extended".into();
        params.push(("block_seed", b.seed.into()));
        reps.push(NamedRep { params, rep: build_block_rep(b.k, b.n, b.dim, b.seed).and_then(|r| quantum_extension(&r)) });
    }
    reps
}

fn spreadable_reps(cfg: &Config) -> Vec<NamedRep> {
    let ic = &cfg.invariance;
    let mut reps = Vec::new();
    for &theta in &ic.angles {
        reps.push(NamedRep { params: vec![("family", "two_projection".into()), ("theta", theta.into())], rep: two_projection(theta, 1e-12) });
    }
    for b in &ic.block_reps {
        let mut params = block_params(b);
        params.push(("block_seed", b.seed.into()));
        reps.push(NamedRep { params, rep: build_block_rep(b.k, b.n, b.dim, b.seed) });
    }
    reps
}

type Check = fn(&dyn JointDistribution<C64>, &Representation<C64>, &[Word<C64>], f64) -> qspread_core::Result<CheckReport>;

/// Runs `checks` for every law against every rep. Word labels are the rep's column count.
fn law_rep_sweep(cfg: &Config, laws: &[LawConfig], reps: &[NamedRep], checks: &[(&str, Check, bool)]) -> Vec<CheckReport> {
    let ic = &cfg.invariance;
    let mut out = Vec::new();
    for (li, law) in laws.iter().enumerate() {
        for (ri, named) in reps.iter().enumerate() {
            let seed = cfg.seed.wrapping_add((li * 1000 + ri) as u64);
            let columns = named.rep.as_ref().map(|r| r.cols()).unwrap_or(0);
            let rows = named.rep.as_ref().map(|r| r.rows()).unwrap_or(0);
            let max_power = if columns <= 2 { ic.max_power } else { ic.extended_max_power };
            let spot = if columns <= 2 { ic.spot_checks } else { 0 };
            let max_len = if spot > 0 { ic.max_len + 1 } else { ic.max_len };
            let dist = build_law(law, rows.max(columns), max_len);
            let b_dim = dist.as_ref().map(|d| d.b_dim()).unwrap_or(1);
            let words = suite_words(columns, ic.max_len, max_power, b_dim, spot, seed);
            let mut params: Vec<(&str, Param)> = law_params(law);
            params.extend(named.params.iter().cloned());
            params.extend([
                ("max_len", ic.max_len.into()),
                ("max_power", max_power.into()),
                ("spot_checks", spot.into()),
                ("law_index", li.into()),
                ("rep_index", ri.into()),
            ]);
            for (name, check, bvalued_only) in checks {
                if *bvalued_only && b_dim == 1 {
                    continue;
                }
                out.push(timed(name, &params, seed, || {
                    let dist = dist.as_ref().map_err(Clone::clone)?;
                    let rep = named.rep.as_ref().map_err(Clone::clone)?;
                    let words = words.as_ref().map_err(Clone::clone)?;
                    check(&**dist, rep, words, ic.tolerance)
                }));
            }
        }
    }
    out
}

/// Runs `inner` on the configured broken law and passes iff it fails with a witness.
fn negative_control(cfg: &Config, name: &str, reps: &[NamedRep], inner: Check) -> CheckReport {
    let ic = &cfg.invariance;
    let law = &ic.negative_control;
    let mut params = law_params(law);
    let Some(named) = reps.first() else {
        return timed(name, &params, cfg.seed, || Err(qspread_core::Error::EmptyInput));
    };
    params.extend(named.params.iter().cloned());
    params.extend([("max_len", ic.max_len.into()), ("max_power", ic.max_power.into())]);
    timed(name, &params, cfg.seed, || {
        let rep = named.rep.as_ref().map_err(Clone::clone)?;
        let dist = build_law(law, rep.rows(), ic.max_len)?;
        let words = suite_words(rep.cols(), ic.max_len, ic.max_power, dist.b_dim(), 0, cfg.seed)?;
        let r = inner(&*dist, rep, &words, ic.tolerance)?;
        let caught = r.status == Status::Fail && r.witness.is_some();
        let mut t = ResidualTracker::new(0.0, true);
        t.observe("detected", if caught { 0.0 } else { 1.0 }, || witness([]));
        let mut out = t.finish(name).with_param("control_residual", r.max_residual.as_f64()).with_param("control_check", r.check_name.clone());
        out.message = Some(match &r.witness {
            Some(w) if caught => format!("broken law rejected at {}", serde_json::to_string(w).unwrap_or_default()),
            _ => "broken law was not rejected".into(),
        });
        Ok(out)
    })
}

fn exch(d: &dyn JointDistribution<C64>, r: &Representation<C64>, w: &[Word<C64>], t: f64) -> qspread_core::Result<CheckReport> {
    check_exchangeable(d, r, w, t)
}

fn bexch(d: &dyn JointDistribution<C64>, r: &Representation<C64>, w: &[Word<C64>], t: f64) -> qspread_core::Result<CheckReport> {
    check_bvalued_exchangeable(d, r, w, t)
}

fn spread(d: &dyn JointDistribution<C64>, r: &Representation<C64>, w: &[Word<C64>], t: f64) -> qspread_core::Result<CheckReport> {
    check_spreadable(d, r, w, t)
}

fn bspread(d: &dyn JointDistribution<C64>, r: &Representation<C64>, w: &[Word<C64>], t: f64) -> qspread_core::Result<CheckReport> {
    check_bvalued_spreadable(d, r, w, t)
}

fn pullback(d: &dyn JointDistribution<C64>, r: &Representation<C64>, w: &[Word<C64>], t: f64) -> qspread_core::Result<CheckReport> {
    check_pullback_spreadable(d, r, w, t)
}

pub fn exchangeable(cfg: &Config) -> Vec<CheckReport> {
    let reps = exchangeable_reps(cfg);
    let checks: [(&str, Check, bool); 2] = [("invariance.exchangeable", exch, false), ("invariance.bvalued_exchangeable", bexch, true)];
    let mut out = law_rep_sweep(cfg, &cfg.invariance.laws, &reps, &checks);
    out.push(negative_control(cfg, "invariance.negative_control.exchangeable", &reps, exch));
    out
}

pub fn spreadable(cfg: &Config) -> Vec<CheckReport> {
    let reps = spreadable_reps(cfg);
    let checks: [(&str, Check, bool); 3] = [
        ("invariance.spreadable", spread, false),
        ("invariance.bvalued_spreadable", bspread, true),
        ("invariance.pullback_spreadable", pullback, false),
    ];
    let mut out = law_rep_sweep(cfg, &cfg.invariance.laws, &reps, &checks);
    out.push(negative_control(cfg, "invariance.negative_control.spreadable", &reps, spread));
    out
}

// ---------------------------------------------------------------- weingarten

pub fn psi(max_k: usize, max_n: usize, max_m: usize) -> CheckReport {
    timed("weingarten.psi_oracle", &[], 0, || check_psi_oracle(max_k, max_n, max_m))
}

pub fn gram(k: usize, n: usize, max_len: usize) -> CheckReport {
    timed("weingarten.gram_psd", &[], 0, || check_gram_psd(k, n, max_len))
}

pub fn reconstruct(cfg: &Config) -> Vec<CheckReport> {
    let wc = &cfg.weingarten;
    let (max_m, max_n, labels) = (wc.reconstruction_max_m, wc.reconstruction_max_n, wc.reconstruction_labels);
    let mut out = vec![timed("weingarten.unit_identity", &[], 0, || check_unit_identity(wc.unit_max_m, wc.unit_max_n))];
    let base = [("max_m", Param::from(max_m)), ("labels", labels.into())];

    let mut params = base.to_vec();
    params.push(("law", "semicircular".into()));
    out.push(timed("weingarten.reconstruction", &params, 0, || {
        let dist = FreeIid::new(ScalarMomentLaw::<Rational>::semicircular(2 * max_m), max_m)?;
        let mut words = Vec::new();
        for m in 1..=max_m {
            for j in qspread_core::invariance::index_tuples(labels, m) {
                for p in power_patterns(m, 2) {
                    words.push(Word::plain(j.clone(), p, 1)?);
                }
            }
        }
        check_reconstruction(&dist, dist.cache(), &words, max_n)
    }));

    let mut params = base.to_vec();
    params.extend([("law", Param::from("ambient_rational")), ("b_dim", 2usize.into())]);
    out.push(timed("weingarten.reconstruction", &params, wc.ambient_seed, || {
        let mut rng = rng_from_seed(wc.ambient_seed);
        let law = AmbientLaw::new(BAlgebra::new(2, 2)?, random_integer_symmetric(4, 2, &mut rng))?;
        let dist = FreeIid::new(law, max_m)?;
        let mut words = Vec::new();
        for m in 1..=max_m {
            for j in qspread_core::invariance::index_tuples(labels, m) {
                let inserts = (0..=m).map(|_| random_small_rational(2, 2, 2, &mut rng)).collect();
                words.push(Word::new(j, inserts, vec![1; m])?);
            }
        }
        check_reconstruction(&dist, dist.cache(), &words, max_n)
    }));
    out
}

pub fn weingarten(cfg: &Config) -> Vec<CheckReport> {
    let wc = &cfg.weingarten;
    let mut out = vec![psi(wc.psi_max_k, wc.psi_max_n, wc.psi_max_m)];
    out.extend(wc.gram.iter().map(|g| gram(g.k, g.n, g.max_len)));
    out.extend(reconstruct(cfg));
    out
}

/// Every suite, in a fixed order.
pub fn all(cfg: &Config) -> Vec<CheckReport> {
    let mut out = partitions(cfg);
    out.extend(moments(cfg));
    out.extend(qis(cfg));
    out.extend(qperm(cfg));
    out.extend(exchangeable(cfg));
    out.extend(spreadable(cfg));
    out.extend(weingarten(cfg));
    out
}
