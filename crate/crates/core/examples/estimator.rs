//! Simulates censored rankings from a Plackett-Luce model and compares the wavelet
//! empirical estimator of a marginal with the truth.

use mra_rank::inference::{empirical_estimate, estimate_marginal, generate_dataset, identifiable_support, project_to_simplex};
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let u = ItemSubset::range(4);
    let weights = [4.0, 3.0, 2.0, 1.0];
    let probs: Vec<f64> = (0..24)
        .map(|r| {
            let mut left: f64 = weights.iter().sum();
            u.unrank(r).items().iter().fold(1.0, |p, &x| {
                let w = weights[x as usize - 1];
                let q = p * w / left;
                left -= w;
                q
            })
        })
        .collect();
    let p = RankingFunction::from_dense(&u, &probs);

    let subsets: Vec<ItemSubset> = ["1,2,3", "2,4", "3,4", "1,3,4"].iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let design = ObservationDesign::new(subsets.clone(), None)?;
    let support = identifiable_support(&subsets);
    println!("identifiable blocks: {}, degrees of freedom: {}", support.blocks.len(), support.dof);

    let data = generate_dataset(&p, &design, 5000, 42)?;
    let table = build_alpha_table(4)?;
    let est = empirical_estimate(&data, &table)?;
    println!("{} observations, {} transform ops", est.n_obs, est.ops);

    let target = ItemSubset::new(vec![1, 4]);
    let raw = estimate_marginal(&est.coefficients, &target)?;
    let fitted = project_to_simplex(&raw, &target)?;
    let truth = marginal(&p, &target)?;
    for w in enumerate_rankings(&target)? {
        println!("{w}: estimate {:.4}, projected {:.4}, truth {:.4}", raw.get(&w), fitted.get(&w), truth.get(&w));
    }
    Ok(())
}
