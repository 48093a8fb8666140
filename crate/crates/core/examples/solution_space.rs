//! Counts the functions on S_4 that share a given set of observed marginals.

use mra_rank::inference::solution_space;
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let a = ItemSubset::range(4);
    let design: Vec<ItemSubset> = ["1,3", "2,4", "3,4", "1,2,3", "1,3,4"].iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let f0 = RankingFunction::dirac(InjectiveWord::digits("3142")?)?;
    let space = solution_space(&f0, &a, &design, &build_alpha_table(4)?)?;
    println!("free dimension: {}", space.dim);
    println!("unconstrained blocks:");
    for b in &space.free_blocks {
        println!("  {b}");
    }
    for (w, v) in space.particular.iter() {
        println!("particular solution at {w}: {v:+.4}");
    }
    Ok(())
}
