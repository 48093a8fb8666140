//! Acceptance suite: eleven criteria, one PASS/FAIL line each, with pinned tolerances
//! and time limits. Runs without the libtest harness so the ledger always prints.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use mra_rank::alpha::{alpha_table_bound, build_alpha_table};
use mra_rank::coeffs::feature_marginal;
use mra_rank::combi::{derangements, fact_usize};
use mra_rank::function::RankingFunction;
use mra_rank::fwt::{fwt_bound, fwt_single, fwt_single_counted};
use mra_rank::inference::{empirical_estimate, generate_dataset, solution_space, ObservationDesign};
use mra_rank::linalg::Matrix;
use mra_rank::marginals::marginal;
use mra_rank::synthesis::synthesize;
use mra_rank::validation::h2::h2_audit;
use mra_rank::validation::oracle::BruteForceOracle;
use mra_rank::validation::suites::{random_feature, shuffle_suite};
use mra_rank::validation::syt::syt_dimension_audit;
use mra_rank::word::ItemSubset;

const ALPHA_TIME: Duration = Duration::from_millis(1);
const DERANGEMENT_TIME: Duration = Duration::from_secs(30);
const ROUND_TRIP_TIME: Duration = Duration::from_secs(60);
const ROUND_TRIP_TOL: f64 = 1e-9;
const COMMUTE_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-8;
const ESTIMATOR_TIME: Duration = Duration::from_secs(120);
const ESTIMATOR_SE: f64 = 4.0;
const SHUFFLE_TIME: Duration = Duration::from_secs(60);
const SYT_TIME: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn set(v: &[u32]) -> ItemSubset {
    ItemSubset::new(v.to_vec())
}

fn random_function(a: &ItemSubset, rng: &mut impl Rng) -> RankingFunction {
    let values: Vec<f64> = (0..fact_usize(a.len())).map(|_| rng.random_range(-1.0..1.0)).collect();
    RankingFunction::from_dense(a, &values)
}

fn random_subset(universe: &[u32], k: usize, rng: &mut impl Rng) -> ItemSubset {
    ItemSubset::new(universe.choose_multiple(rng, k).copied().collect())
}

/// 1. Exact alpha matrices for k = 2 and k = 3.
fn alpha_matrices() -> Outcome {
    let start = Instant::now();
    let t = build_alpha_table(3).map_err(err)?;
    let m2 = t.exact_matrix(2).map_err(err)?;
    let m3 = t.exact_matrix(3).map_err(err)?;
    let elapsed = start.elapsed();
    let r = |n, d| Ratio::new(n, d);
    let (h, g) = (r(1, 2), r(-1, 2));
    ensure(m2 == vec![vec![h, g], vec![g, h]], "k=2 matrix differs")?;
    let (a, b) = (r(1, 3), r(-1, 6));
    let want3 = vec![
        vec![a, b, b, b, b, a],
        vec![b, a, b, a, b, b],
        vec![b, b, a, b, a, b],
        vec![b, a, b, a, b, b],
        vec![b, b, a, b, a, b],
        vec![a, b, b, b, b, a],
    ];
    ensure(m3 == want3, "k=3 matrix differs")?;
    ensure(elapsed < ALPHA_TIME, format!("took {elapsed:?}, limit {ALPHA_TIME:?}"))?;
    Ok(format!("exact match, {elapsed:?}"))
}

/// 2. Rank of the top block over all Diracs equals d_k for k = 2..6.
fn derangement_dimensions() -> Outcome {
    let t = build_alpha_table(6).map_err(err)?;
    let mut ranks = Vec::new();
    let mut k6 = Duration::ZERO;
    for k in 2..=6 {
        let start = Instant::now();
        let a = ItemSubset::range(k);
        let mut cols = Vec::with_capacity(fact_usize(k));
        for r in 0..fact_usize(k) {
            let f = RankingFunction::dirac(a.unrank(r)).map_err(err)?;
            let x = fwt_single(&f, &a, &t).map_err(err)?;
            cols.push(x.block(&a).map(<[f64]>::to_vec).unwrap_or_else(|| vec![0.0; fact_usize(k)]));
        }
        let rank = Matrix::from_columns(&cols).rank();
        ensure(rank as u64 == derangements(k), format!("k={k}: rank {rank}, d_k = {}", derangements(k)))?;
        ranks.push(rank);
        if k == 6 {
            k6 = start.elapsed();
        }
    }
    ensure(k6 < DERANGEMENT_TIME, format!("k=6 took {k6:?}"))?;
    Ok(format!("ranks {ranks:?}, k=6 in {k6:?}"))
}

/// 3. φ_A∘Ψ = id on 200 random functions per |A| ∈ {2..6}; Ψ∘φ = id for n ≤ 5.
fn round_trips() -> Outcome {
    let start = Instant::now();
    let t = build_alpha_table(6).map_err(err)?;
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let pool: Vec<u32> = (1..=9).collect();
    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        for _ in 0..200 {
            let a = random_subset(&pool, k, &mut rng);
            let f = random_function(&a, &mut rng);
            let back = synthesize(&fwt_single(&f, &a, &t).map_err(err)?, &a).map_err(err)?;
            worst = worst.max(back.max_abs_diff(&f) / f.norm_inf());
        }
    }
    ensure(worst <= ROUND_TRIP_TOL, format!("φ∘Ψ relative deviation {worst:.2e}"))?;
    let mut worst_section: f64 = 0.0;
    for n in 2..=5 {
        let a = ItemSubset::range(n);
        for _ in 0..20 {
            let x = random_feature(&a, &mut rng).map_err(err)?;
            let back = fwt_single(&synthesize(&x, &a).map_err(err)?, &a, &t).map_err(err)?;
            worst_section = worst_section.max(back.max_abs_diff(&x) / x.norm_inf());
        }
    }
    ensure(worst_section <= ROUND_TRIP_TOL, format!("Ψ∘φ relative deviation {worst_section:.2e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < ROUND_TRIP_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("φ∘Ψ {worst:.1e}, Ψ∘φ {worst_section:.1e}, {elapsed:?}"))
}

/// 4. fwt∘marginal = feature_marginal∘fwt on 100 random (F, A′), n ≤ 5.
fn commuting_diagram() -> Outcome {
    let t = build_alpha_table(5).map_err(err)?;
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(3..=5);
        let a = ItemSubset::range(n);
        let f = random_function(&a, &mut rng);
        let k2 = rng.random_range(2..=n);
        let a2 = random_subset(a.items(), k2, &mut rng);
        let lhs = fwt_single(&marginal(&f, &a2).map_err(err)?, &a2, &t).map_err(err)?;
        let rhs = feature_marginal(&fwt_single(&f, &a, &t).map_err(err)?, &a2);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    ensure(worst <= COMMUTE_TOL, format!("max deviation {worst:.2e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

/// 5. Solution space of the n=4 design has dimension 13 by formula and by nullspace.
fn solution_space_example() -> Outcome {
    let t = build_alpha_table(4).map_err(err)?;
    let a = ItemSubset::range(4);
    let design = [set(&[1, 3]), set(&[2, 4]), set(&[3, 4]), set(&[1, 2, 3]), set(&[1, 3, 4])];
    let f0 = RankingFunction::uniform(&a).map_err(err)?;
    let by_formula = solution_space(&f0, &a, &design, &t).map_err(err)?.dim;
    let words: Vec<_> = (0..24).map(|r| a.unrank(r)).collect();
    let mut rows = Vec::new();
    for b in &design {
        for r in 0..fact_usize(b.len()) {
            let target = b.unrank(r);
            rows.push(words.iter().map(|w| if w.induce(b).unwrap() == target { 1.0 } else { 0.0 }).collect());
        }
    }
    let nullity = 24 - Matrix::from_rows(&rows).rank();
    let want = derangements(4) + 2 * derangements(3);
    ensure(by_formula == want, format!("formula gives {by_formula}"))?;
    ensure(nullity as u64 == want, format!("nullspace has dimension {nullity}"))?;
    Ok(format!("formula {by_formula}, nullspace {nullity}"))
}

/// 6. fwt_single agrees with the brute-force oracle.
fn oracle_equivalence() -> Outcome {
    let t = build_alpha_table(5).map_err(err)?;
    let a4 = ItemSubset::range(4);
    let o4 = BruteForceOracle::new(&a4).map_err(err)?;
    let mut worst: f64 = 0.0;
    for r in 0..24 {
        let f = RankingFunction::dirac(a4.unrank(r)).map_err(err)?;
        worst = worst.max(fwt_single(&f, &a4, &t).map_err(err)?.max_abs_diff(&o4.transform(&f).map_err(err)?));
    }
    let a5 = ItemSubset::range(5);
    let o5 = BruteForceOracle::new(&a5).map_err(err)?;
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    for _ in 0..50 {
        let f = random_function(&a5, &mut rng);
        worst = worst.max(fwt_single(&f, &a5, &t).map_err(err)?.max_abs_diff(&o5.transform(&f).map_err(err)?));
    }
    ensure(worst < ORACLE_TOL, format!("max deviation {worst:.2e}"))?;
    Ok(format!("24 Diracs + 50 random, max deviation {worst:.1e}"))
}

/// 7. Block means of the estimator over 200 replicates lie within 4 standard errors of Ψ_B p.
fn estimator_unbiased() -> Outcome {
    let start = Instant::now();
    let t = build_alpha_table(4).map_err(err)?;
    let a = ItemSubset::range(4);
    // Plackett-Luce model with item weights 4, 3, 2, 1.
    let w = [4.0, 3.0, 2.0, 1.0];
    let probs: Vec<f64> = (0..24)
        .map(|r| {
            let s = a.unrank(r);
            let mut left: f64 = w.iter().sum();
            let mut p = 1.0;
            for &x in s.items() {
                p *= w[x as usize - 1] / left;
                left -= w[x as usize - 1];
            }
            p
        })
        .collect();
    let p = RankingFunction::from_dense(&a, &probs);
    let subsets = vec![set(&[1, 3]), set(&[2, 4]), set(&[3, 4]), set(&[1, 2, 3]), set(&[1, 3, 4])];
    let design = ObservationDesign::new(subsets, Some(vec![0.1, 0.15, 0.2, 0.25, 0.3])).map_err(err)?;
    let truth = fwt_single(&p, &a, &t).map_err(err)?;

    const R: usize = 200;
    const N: usize = 2000;
    let mut sums: BTreeMap<(ItemSubset, usize), (f64, f64)> = BTreeMap::new();
    for rep in 0..R {
        let d = generate_dataset(&p, &design, N, 7000 + rep as u64).map_err(err)?;
        let est = empirical_estimate(&d, &t).map_err(err)?;
        for (b, v) in est.coefficients.iter() {
            for (i, &y) in v.iter().enumerate() {
                let e = sums.entry((b.clone(), i)).or_insert((0.0, 0.0));
                e.0 += y;
                e.1 += y * y;
            }
        }
    }
    let mut worst_z: f64 = 0.0;
    for ((b, i), (s, s2)) in &sums {
        let mean = s / R as f64;
        let var = ((s2 - R as f64 * mean * mean) / (R as f64 - 1.0)).max(0.0);
        let se = (var / R as f64).sqrt();
        let target = truth.block(b).map_or(0.0, |v| v[*i]);
        let dev = (mean - target).abs();
        // Blocks that are constant across replicates (the mass block) must match to rounding.
        if se == 0.0 {
            ensure(dev <= 1e-12, format!("{b}[{i}]: constant {mean} vs {target}"))?;
            continue;
        }
        worst_z = worst_z.max(dev / se);
        ensure(dev <= ESTIMATOR_SE * se, format!("{b}[{i}]: |{mean:.5} − {target:.5}| = {:.2} SE", dev / se))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ESTIMATOR_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("{} entries, worst {worst_z:.2} SE, {elapsed:?}", sums.len()))
}

/// 8. Operation counts within [e·k! + k(2^{k−1}−1)]·|supp F|; alpha build within ½k²k!.
fn complexity_bounds() -> Outcome {
    let t = build_alpha_table(8).map_err(err)?;
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let pool: Vec<u32> = (1..=12).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let k = rng.random_range(2..=8);
        let a = random_subset(&pool, k, &mut rng);
        let cap = if k <= 5 { fact_usize(k) } else { 24 };
        let supp = rng.random_range(1..=cap);
        let mut f = RankingFunction::new();
        while f.len() < supp {
            let r = rng.random_range(0..fact_usize(k));
            let v: f64 = rng.random_range(0.5..1.5);
            f.add(a.unrank(r), v).map_err(err)?;
        }
        let (_, ops) = fwt_single_counted(&f, &a, &t).map_err(err)?;
        let bound = fwt_bound(k, f.len());
        ensure(ops.total() as f64 <= bound, format!("k={k}, |supp|={}: {} ops > {bound}", f.len(), ops.total()))?;
        worst = worst.max(ops.total() as f64 / bound);
    }
    for k in 2..=8 {
        let ops = build_alpha_table(k).map_err(err)?.build_ops() as f64;
        ensure(ops <= alpha_table_bound(k), format!("alpha build k={k}: {ops} > {}", alpha_table_bound(k)))?;
    }
    Ok(format!("1000 inputs, max ops/bound {worst:.3}; alpha builds within bound for k ≤ 8"))
}

/// 9. Shuffle matrices at n = 4, 5.
fn shuffle_matrices() -> Outcome {
    let start = Instant::now();
    let mut lines = 0;
    for n in [4, 5] {
        let rep = shuffle_suite(n).map_err(err)?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{}: {}", f.name, f.detail));
        }
        lines += rep.checks.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SHUFFLE_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("{lines} checks, {elapsed:?}"))
}

/// 10. H² audit at n = 3..6.
fn h2_decomposition() -> Outcome {
    let mut lines = 0;
    for n in 3..=6 {
        let rep = h2_audit(n).map_err(err)?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{}: {}", f.name, f.detail));
        }
        lines += rep.checks.len();
    }
    Ok(format!("{lines} checks"))
}

/// 11. SYT dimension accounting for n ≤ 8.
fn syt_accounting() -> Outcome {
    let start = Instant::now();
    let mut lines = 0;
    for n in 2..=8 {
        let rep = syt_dimension_audit(n).map_err(err)?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("{}: {}", f.name, f.detail));
        }
        lines += rep.checks.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SYT_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("{lines} checks, {elapsed:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("alpha matrices k=2,3", alpha_matrices),
        ("derangement dimensions k=2..6", derangement_dimensions),
        ("round trips", round_trips),
        ("commuting diagram", commuting_diagram),
        ("solution space n=4", solution_space_example),
        ("oracle equivalence", oracle_equivalence),
        ("estimator unbiasedness", estimator_unbiased),
        ("complexity bounds", complexity_bounds),
        ("shuffle matrices n=4,5", shuffle_matrices),
        ("H² audit n=3..6", h2_decomposition),
        ("SYT accounting n≤8", syt_accounting),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
