use mra_rank::alpha::build_alpha_table;
use mra_rank::combi::{binomial, fact_usize};
use mra_rank::function::RankingFunction;
use mra_rank::fwt::fwt_single;
use mra_rank::validation::embedding::embedding_audit;
use mra_rank::validation::h2::{e_vector, f_vector, h2_audit, hodge_decompose, x_pair};
use mra_rank::validation::kendall::generalized_kendall;
use mra_rank::validation::oracle::{brute_force_wavelet, BruteForceOracle};
use mra_rank::validation::shuffle::{commutator_norm, null_space_check, shuffle_matrix};
use mra_rank::validation::suites::run_suite;
use mra_rank::validation::syt::syt_dimension_audit;
use mra_rank::word::{InjectiveWord, ItemSubset};
use mra_rank::MraError;

fn w(s: &str) -> InjectiveWord {
    InjectiveWord::digits(s).unwrap()
}

#[test]
fn oracle_matches_fast_transform_on_every_word_up_to_five() {
    let t = build_alpha_table(5).unwrap();
    for k in 2..=5 {
        let a = ItemSubset::range(k);
        let oracle = BruteForceOracle::new(&a).unwrap();
        for r in 0..fact_usize(k) {
            let f = RankingFunction::dirac(a.unrank(r)).unwrap();
            let dev = fwt_single(&f, &a, &t).unwrap().max_abs_diff(&oracle.transform(&f).unwrap());
            assert!(dev < 1e-8, "k={k} r={r}: {dev}");
        }
    }
}

#[test]
fn oracle_on_dirac_123_matches_alpha_blocks() {
    let t = build_alpha_table(3).unwrap();
    let a = ItemSubset::range(3);
    let f = RankingFunction::dirac(w("123")).unwrap();
    let x = brute_force_wavelet(&f, &a).unwrap();
    let top = x.block(&a).unwrap();
    for r in 0..6 {
        let pi = a.unrank(r);
        let alpha = t.alpha_f64(&a, &pi, &w("123")).unwrap();
        assert!((top[r] - alpha).abs() < 1e-12);
    }
}

#[test]
fn kendall_is_a_metric_and_relabeling_invariant() {
    for n in 3..=5 {
        let u = ItemSubset::range(n);
        let perms: Vec<_> = (0..fact_usize(n)).map(|r| u.unrank(r)).collect();
        for k in 2..=n {
            let d: Vec<Vec<u64>> = perms
                .iter()
                .map(|s| perms.iter().map(|s2| generalized_kendall(s, s2, k).unwrap()).collect())
                .collect();
            for i in 0..perms.len() {
                assert_eq!(d[i][i], 0);
                for j in 0..perms.len() {
                    assert_eq!(d[i][j], d[j][i]);
                    assert!(d[i][j] <= binomial(n, k));
                    for l in 0..perms.len() {
                        assert!(d[i][l] <= d[i][j] + d[j][l]);
                    }
                }
            }
            // Relabeling items by any τ leaves every distance unchanged.
            for tau in &perms {
                let relabel = |s: &InjectiveWord| s.map(|x| tau.items()[x as usize - 1]);
                for i in (0..perms.len()).step_by(7) {
                    for j in 0..perms.len() {
                        let moved = generalized_kendall(&relabel(&perms[i]), &relabel(&perms[j]), k).unwrap();
                        assert_eq!(moved, d[i][j]);
                    }
                }
            }
        }
    }
}

#[test]
fn kendall_pairwise_is_affine_in_shuffle_entries() {
    let n = 4;
    let r2 = shuffle_matrix(n, 2).unwrap();
    let u = ItemSubset::range(n);
    let c = 2.0 * (2.0f64 / 24.0).powi(2);
    for i in 0..24 {
        for j in 0..24 {
            let d = generalized_kendall(&u.unrank(i), &u.unrank(j), 2).unwrap() as f64;
            assert!((r2[(i, j)] - c * (6.0 - d)).abs() < 1e-15);
        }
    }
}

#[test]
fn shuffle_entries_depend_on_relative_position_only() {
    let n = 4;
    let r3 = shuffle_matrix(n, 3).unwrap();
    let u = ItemSubset::range(n);
    let perms: Vec<_> = (0..24).map(|r| u.unrank(r)).collect();
    let index = |s: &InjectiveWord| u.rank_of(s);
    for tau in &perms {
        for i in 0..24 {
            for j in 0..24 {
                let a = perms[i].map(|x| tau.items()[x as usize - 1]);
                let b = perms[j].map(|x| tau.items()[x as usize - 1]);
                assert_eq!(r3[(i, j)], r3[(index(&a), index(&b))]);
            }
        }
    }
}

#[test]
fn null_space_examples() {
    assert_eq!(shuffle_matrix(4, 3).unwrap().rank(), 15);
    assert_eq!(24 - shuffle_matrix(4, 2).unwrap().rank(), 17);
    assert!(commutator_norm(5, 2, 3).unwrap() < 1e-10);
    for k in 2..=4 {
        let rep = null_space_check(4, k).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn h2_examples() {
    let u = ItemSubset::range(5);
    let mut neg = x_pair(1, 2).unwrap();
    neg.axpy(1.0, &x_pair(2, 1).unwrap());
    assert!(neg.norm_inf() == 0.0);
    let e1 = e_vector(1, &u).unwrap();
    let (g, c) = hodge_decompose(&e1, &u).unwrap();
    assert!(g.max_abs_diff(&e1) < 1e-12 && c.norm_inf() < 1e-12);
    let f12 = f_vector(1, 2, &u).unwrap();
    let (g, c) = hodge_decompose(&f12, &u).unwrap();
    assert!(g.norm_inf() < 1e-12 && c.max_abs_diff(&f12) < 1e-12);
    for n in 3..=6 {
        assert!(h2_audit(n).unwrap().passed());
    }
}

#[test]
fn embedding_and_syt_audits() {
    for n in 2..=4 {
        let rep = embedding_audit(n).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    for n in 2..=8 {
        let rep = syt_dimension_audit(n).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn suite_caps_are_resource_errors() {
    assert!(matches!(run_suite("mra", 6), Err(MraError::Resource(_))));
    assert!(matches!(run_suite("shuffle", 6), Err(MraError::Resource(_))));
    assert!(matches!(run_suite("embedding", 6), Err(MraError::Resource(_))));
    assert!(matches!(run_suite("syt", 9), Err(MraError::Resource(_))));
    assert!(matches!(run_suite("h2", 2), Err(MraError::Domain(_))));
}

#[test]
fn suites_pass_at_four() {
    for name in ["mra", "shuffle", "h2", "syt", "embedding"] {
        let rep = run_suite(name, 4).unwrap();
        assert!(rep.passed(), "{name}\n{rep}");
    }
}
