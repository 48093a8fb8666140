//! Transforms a small histogram of incomplete rankings and prints its blocks, then
//! rebuilds a marginal of a histogram of full rankings from its blocks.

use mra_rank::prelude::*;

fn main() -> Result<()> {
    let table = build_alpha_table(DEFAULT_K_MAX)?;
    let data = parse_dataset("1>2>3\n2>1>3\n3>4\n1>3\n4>2>3>1\n")?;
    let x = fwt(&data.counts(), &table)?;
    for (b, values) in x.iter() {
        let shown: Vec<String> = values.iter().map(|v| format!("{v:+.4}")).collect();
        println!("{b:<10} {}", shown.join(" "));
    }
    let full = parse_dataset("1>2>3>4\n3>1>4>2\n2>4>1>3\n1>2>3>4\n")?.counts();
    let y = fwt(&full, &table)?;
    let a = ItemSubset::new(vec![1, 3]);
    let rebuilt = synthesize(&feature_marginal(&y, &a), &a)?;
    let direct = marginal(&full, &a)?;
    for (w, v) in rebuilt.iter() {
        println!("marginal on {a}: {w} rebuilt {v:.4}, direct {:.4}", direct.get(w));
    }
    Ok(())
}
