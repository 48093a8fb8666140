//! Marginals of a distribution on full rankings, linear extensions, and the naive
//! versus marginal-based empirical estimates of a partial order.

use mra_rank::marginals::{linear_extension_embed, linear_extensions, marginal_based_estimator, naive_empirical_marginal};
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let p = RankingFunction::from_pairs([
        (InjectiveWord::digits("1234")?, 0.4),
        (InjectiveWord::digits("2143")?, 0.35),
        (InjectiveWord::digits("4321")?, 0.25),
    ])?;
    let a = ItemSubset::new(vec![1, 3, 4]);
    for (w, v) in marginal(&p, &a)?.iter() {
        println!("P({w}) = {v:.2}");
    }

    let u = ItemSubset::range(4);
    let pi = InjectiveWord::digits("42")?;
    let ext = linear_extensions(&pi, &u)?;
    println!("{} linear extensions of {pi}:", ext.len());
    for w in &ext {
        println!("  {w}");
    }
    let spread = linear_extension_embed(&RankingFunction::dirac(pi)?, &u)?;
    println!("embedded mass per extension: {:.4}", spread.iter().next().map_or(0.0, |(_, v)| v));

    let d = parse_dataset("1>2\n2>1>3\n3>1>2\n1>2>4\n")?;
    let b = ItemSubset::new(vec![1, 2]);
    let naive = naive_empirical_marginal(&d, &b)?;
    let based = marginal_based_estimator(&d, &b)?;
    for w in enumerate_rankings(&b)? {
        println!("{w}: naive {:.3}, marginal-based {:.3}", naive.get(&w), based.get(&w));
    }
    Ok(())
}
