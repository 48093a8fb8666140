//! Spreads a single pairwise block to neighboring pairs with the step kernel, then
//! smooths only inside a chosen subset.

use mra_rank::regularization::{step_weight, subset_distance};
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let u = ItemSubset::range(5);
    let b: ItemSubset = "1,2".parse()?;
    let mut x = WaveletCoefficients::new();
    x.insert_block(ItemSubset::empty(), vec![1.0])?;
    x.insert_block(b.clone(), vec![0.5, -0.5])?;
    for h in 0..=2 {
        let y = kernel_smooth(&x, h, &u)?;
        println!("h = {h}");
        for (c, v) in y.iter().filter(|(c, _)| c.len() == 2) {
            let d = subset_distance(&b, c)?;
            println!("  {c} (distance {d}, weight {:.4}): {:+.4} {:+.4}", step_weight(5, 2, h, d), v[0], v[1]);
        }
    }
    let local = local_regularize(&x, &"1,2,3".parse()?, 1)?;
    println!("local smoothing inside {{1,2,3}} keeps {} blocks", local.len());
    Ok(())
}
