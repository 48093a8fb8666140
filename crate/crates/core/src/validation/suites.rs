//! Named audit suites, as run by `mra validate --suite <name> --n <int>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::embedding::embedding_audit;
use super::h2::h2_audit;
use super::oracle::{hb_basis, BruteForceOracle, ORACLE_MAX};
use super::shuffle::{commutator_norm, null_space_check, COMMUTATOR_TOL, NULL_SPACE_MAX_N};
use super::syt::syt_dimension_audit;
use super::{cap, AuditReport};
use crate::alpha::build_alpha_table;
use crate::coeffs::{max_hb_residual, WaveletCoefficients};
use crate::combi::{derangements, fact_usize};
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::fwt::fwt_single;
use crate::linalg::Matrix;
use crate::synthesis::synthesize;
use crate::word::ItemSubset;

pub const SUITES: [&str; 5] = ["mra", "shuffle", "h2", "syt", "embedding"];

/// Agreement bound between the fast transform and the brute-force oracle.
pub const ORACLE_TOL: f64 = 1e-8;
/// Bound for round trips through synthesis and the transform.
pub const ROUND_TRIP_TOL: f64 = 1e-9;
/// Bound on the H_B membership residual of computed blocks.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Seed for the random coefficient sets drawn by the `mra` suite.
pub const SUITE_SEED: u64 = 0x6d7261;

pub fn run_suite(name: &str, n: usize) -> Result<AuditReport> {
    match name {
        "mra" => mra_suite(n),
        "shuffle" => shuffle_suite(n),
        "h2" => h2_audit(n),
        "syt" => syt_dimension_audit(n),
        "embedding" => embedding_audit(n),
        _ => Err(MraError::domain(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

/// A random element of ℍ restricted to P̄(A): every block is a random combination of an
/// explicit H_B basis.
pub fn random_feature(a: &ItemSubset, rng: &mut impl Rng) -> Result<WaveletCoefficients> {
    let mut x = WaveletCoefficients::new();
    for b in a.ranking_subsets() {
        let mut block = vec![0.0; fact_usize(b.len())];
        for u in hb_basis(&b)? {
            let c: f64 = rng.random_range(-1.0..1.0);
            block.iter_mut().zip(&u).for_each(|(v, w)| *v += c * w);
        }
        x.insert_block(b, block)?;
    }
    Ok(x)
}

/// Transform checks on Γ_⟦n⟧: oracle agreement and round trip on every Dirac, the rank
/// of the top block, H_B membership, and Ψ∘φ = id on random features.
pub fn mra_suite(n: usize) -> Result<AuditReport> {
    cap(n, ORACLE_MAX, "mra suite")?;
    if n < 2 {
        return Err(MraError::domain("mra suite needs n ≥ 2"));
    }
    let a = ItemSubset::range(n);
    let t = build_alpha_table(n)?;
    let oracle = BruteForceOracle::new(&a)?;
    let tag = format!("n={n}");
    let mut rep = AuditReport::new();

    let words: Vec<_> = (0..fact_usize(n)).map(|r| a.unrank(r)).collect();
    let per_word: Vec<Result<(f64, f64, f64, Vec<f64>)>> = words
        .par_iter()
        .map(|w| {
            let f = RankingFunction::dirac(w.clone())?;
            let x = fwt_single(&f, &a, &t)?;
            let oracle_dev = x.max_abs_diff(&oracle.transform(&f)?);
            let round = synthesize(&x, &a)?.max_abs_diff(&f);
            let top = x.block(&a).map(<[f64]>::to_vec).unwrap_or_else(|| vec![0.0; fact_usize(n)]);
            Ok((oracle_dev, round, max_hb_residual(&x), top))
        })
        .collect();
    let mut oracle_dev: f64 = 0.0;
    let mut round: f64 = 0.0;
    let mut member: f64 = 0.0;
    let mut tops = Vec::with_capacity(words.len());
    for r in per_word {
        let (o, rt, m, top) = r?;
        oracle_dev = oracle_dev.max(o);
        round = round.max(rt);
        member = member.max(m);
        tops.push(top);
    }
    rep.check(format!("fwt_single = brute force on every Dirac [{tag}]"), oracle_dev < ORACLE_TOL, format!("max deviation {oracle_dev:.2e}"));
    rep.check(format!("φ∘Ψ = id on every Dirac [{tag}]"), round <= ROUND_TRIP_TOL, format!("max deviation {round:.2e}"));
    rep.check(format!("every block lies in H_B [{tag}]"), member <= MEMBERSHIP_TOL, format!("max residual {member:.2e}"));
    let rank = Matrix::from_columns(&tops).rank();
    let d = derangements(n) as usize;
    rep.check(format!("rank of the top block over Diracs = d_n [{tag}]"), rank == d, format!("rank {rank}, d_n = {d}"));

    let mut rng = ChaCha20Rng::seed_from_u64(SUITE_SEED);
    let mut section: f64 = 0.0;
    for _ in 0..20 {
        let x = random_feature(&a, &mut rng)?;
        let back = fwt_single(&synthesize(&x, &a)?, &a, &t)?;
        section = section.max(back.max_abs_diff(&x) / x.norm_inf().max(1.0));
    }
    rep.check(format!("Ψ∘φ = id on 20 random features [{tag}]"), section <= ROUND_TRIP_TOL, format!("max relative deviation {section:.2e}"));
    Ok(rep)
}

/// Null-space checks for every R_k, k = 2..n, and pairwise commutation.
pub fn shuffle_suite(n: usize) -> Result<AuditReport> {
    cap(n, NULL_SPACE_MAX_N, "shuffle suite")?;
    if n < 2 {
        return Err(MraError::domain("shuffle suite needs n ≥ 2"));
    }
    let mut rep = AuditReport::new();
    let parts: Vec<Result<AuditReport>> = (2..=n).into_par_iter().map(|k| null_space_check(n, k)).collect();
    for p in parts {
        rep.extend(p?);
    }
    for j in 2..=n {
        for k in j + 1..=n {
            let c = commutator_norm(n, j, k)?;
            rep.check(format!("R_{j} R_{k} = R_{k} R_{j} [n={n}]"), c < COMMUTATOR_TOL, format!("max |commutator| {c:.2e}"));
        }
    }
    Ok(rep)
}
