use proptest::prelude::*;

use mra_rank::alpha::build_alpha_table;
use mra_rank::coeffs::{feature_marginal, max_hb_residual, WaveletCoefficients};
use mra_rank::combi::{fact_usize, lex_rank, lex_unrank};
use mra_rank::dataset::{parse_dataset, serialize_dataset, Dataset};
use mra_rank::function::RankingFunction;
use mra_rank::fwt::{fwt, fwt_single, low_pass, low_pass_with_rule};
use mra_rank::inference::wavelet_empirical_estimator;
use mra_rank::io::{read_coefficients, write_coefficients};
use mra_rank::marginals::marginal;
use mra_rank::regularization::kernel_smooth;
use mra_rank::synthesis::synthesize;
use mra_rank::validation::h2::{block_inner, hodge_decompose};
use mra_rank::word::{InjectiveWord, ItemSubset};

/// M^j F: the marginals of F on every j-subset of A, side by side.
fn scale_marginals(f: &RankingFunction, a: &ItemSubset, j: usize) -> RankingFunction {
    let mut out = RankingFunction::new();
    for c in a.ranking_subsets().into_iter().filter(|c| c.len() == j) {
        out.axpy(1.0, &marginal(f, &c).unwrap());
    }
    out
}

/// A subset of {1..9} with 2..=max items and dense values on its rankings.
fn function_on_subset(max: usize) -> impl Strategy<Value = (ItemSubset, RankingFunction)> {
    prop::sample::subsequence((1u32..=9).collect::<Vec<_>>(), 2..=max).prop_flat_map(|items| {
        let a = ItemSubset::new(items);
        let n = fact_usize(a.len());
        prop::collection::vec(-1.0f64..1.0, n).prop_map(move |v| (a.clone(), RankingFunction::from_dense(&a, &v)))
    })
}

fn ranking_of(items: Vec<u32>) -> impl Strategy<Value = InjectiveWord> {
    Just(items).prop_shuffle().prop_map(|v| InjectiveWord::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocks_lie_in_their_spaces((a, f) in function_on_subset(5)) {
        let t = build_alpha_table(5).unwrap();
        let x = fwt_single(&f, &a, &t).unwrap();
        prop_assert!(max_hb_residual(&x) < 1e-10);
        prop_assert!((x.empty_block() - f.total()).abs() < 1e-10);
    }

    #[test]
    fn synthesis_inverts_transform((a, f) in function_on_subset(5)) {
        let t = build_alpha_table(5).unwrap();
        let back = synthesize(&fwt_single(&f, &a, &t).unwrap(), &a).unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn transform_is_linear((a, f) in function_on_subset(4), c in -3.0f64..3.0) {
        let t = build_alpha_table(4).unwrap();
        let mut g = RankingFunction::uniform(&a).unwrap();
        g.axpy(c, &f);
        let lhs = fwt_single(&g, &a, &t).unwrap();
        let mut rhs = fwt_single(&RankingFunction::uniform(&a).unwrap(), &a, &t).unwrap();
        rhs.axpy(c, &fwt_single(&f, &a, &t).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn marginals_compose((a, f) in function_on_subset(5), pick in prop::collection::vec(any::<bool>(), 5)) {
        let inner: Vec<u32> = a.items().iter().zip(&pick).filter(|(_, p)| **p).map(|(x, _)| *x).collect();
        prop_assume!(inner.len() >= 2);
        let b = ItemSubset::new(inner);
        let direct = marginal(&f, &b).unwrap();
        let nested = marginal(&marginal(&f, &a).unwrap(), &b).unwrap();
        prop_assert!(direct.max_abs_diff(&nested) < 1e-12);
    }

    #[test]
    fn feature_marginal_commutes((a, f) in function_on_subset(5), pick in prop::collection::vec(any::<bool>(), 5)) {
        let inner: Vec<u32> = a.items().iter().zip(&pick).filter(|(_, p)| **p).map(|(x, _)| *x).collect();
        prop_assume!(inner.len() >= 2);
        let b = ItemSubset::new(inner);
        let t = build_alpha_table(5).unwrap();
        let lhs = fwt_single(&marginal(&f, &b).unwrap(), &b, &t).unwrap();
        let rhs = feature_marginal(&fwt_single(&f, &a, &t).unwrap(), &b);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn lex_rank_round_trip(k in 1usize..=9, seed in any::<usize>()) {
        let r = seed % fact_usize(k);
        let mut p = vec![0u8; k];
        lex_unrank(r, &mut p);
        prop_assert_eq!(lex_rank(&p), r);
    }

    #[test]
    fn coefficient_text_round_trip((a, f) in function_on_subset(4)) {
        let t = build_alpha_table(4).unwrap();
        let x = fwt_single(&f, &a, &t).unwrap();
        let text = write_coefficients(&x);
        prop_assert_eq!(read_coefficients(&text).unwrap(), x);
    }

    #[test]
    fn dataset_text_round_trip(words in prop::collection::vec(ranking_of(vec![1, 2, 3, 4, 5]), 1..20)) {
        let d = Dataset::from_rankings(words).unwrap();
        let back = parse_dataset(&serialize_dataset(&d)).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn estimator_on_full_rankings_is_scaled_transform(words in prop::collection::vec(ranking_of(vec![1, 2, 3, 4]), 1..40)) {
        let t = build_alpha_table(4).unwrap();
        let d = Dataset::from_rankings(words).unwrap();
        let est = wavelet_empirical_estimator(&d, &t).unwrap();
        let scaled = fwt(&d.counts(), &t).unwrap().scaled(1.0 / d.len() as f64);
        prop_assert!(est.max_abs_diff(&scaled) < 1e-12);
    }

    #[test]
    fn smoothing_preserves_block_spaces((a, f) in function_on_subset(4), h in 0usize..3) {
        let t = build_alpha_table(4).unwrap();
        let x = fwt_single(&f, &a, &t).unwrap();
        let universe = ItemSubset::range(9);
        let y = kernel_smooth(&x, h, &universe).unwrap();
        prop_assert!(max_hb_residual(&y) < 1e-10);
        // The step kernel is normalized, so the mass block is untouched.
        prop_assert!((y.empty_block() - x.empty_block()).abs() < 1e-12);
    }

    #[test]
    fn hodge_parts_are_orthogonal(values in prop::collection::vec(-1.0f64..1.0, 10)) {
        let u = ItemSubset::range(5);
        let mut x = WaveletCoefficients::new();
        let mut i = 0;
        for a in 1..=5u32 {
            for b in a + 1..=5 {
                x.insert_block(ItemSubset::new(vec![a, b]), vec![values[i], -values[i]]).unwrap();
                i += 1;
            }
        }
        let (g, c) = hodge_decompose(&x, &u).unwrap();
        prop_assert!(block_inner(&g, &c).abs() < 1e-10);
        let mut sum = g.clone();
        sum.axpy(1.0, &c);
        prop_assert!(sum.max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn low_pass_does_not_depend_on_the_inserted_item((a, f) in function_on_subset(5)) {
        for j in 3..=a.len() {
            let m = scale_marginals(&f, &a, j);
            let want = scale_marginals(&f, &a, j - 1);
            let smallest = low_pass(&m, &a, j).unwrap();
            let largest = low_pass_with_rule(&m, &a, j, |missing| *missing.items().last().unwrap()).unwrap();
            prop_assert!(smallest.max_abs_diff(&want) < 1e-10);
            prop_assert!(largest.max_abs_diff(&want) < 1e-10);
        }
    }
}
