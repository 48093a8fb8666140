//! Splits pairwise preference blocks into a score-based (gradient) part and a cyclic
//! (curl) part.

use mra_rank::validation::h2::{block_inner, hodge_decompose, pair_coordinates};
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let u = ItemSubset::range(4);
    let table = build_alpha_table(4)?;
    // Pairwise preferences with a cycle 1 ≻ 2 ≻ 3 ≻ 1 on top of a preference for 4 last.
    let data = parse_dataset("1>2\n1>2\n2>3\n2>3\n3>1\n3>1\n1>4\n2>4\n3>4\n1>4\n")?;
    let x = fwt(&data.counts(), &table)?.scale(2);
    let (grad, curl) = hodge_decompose(&x, &u)?;
    println!("pair coordinates: {:?}", pair_coordinates(&x, &u)?);
    println!("gradient part:    {:?}", pair_coordinates(&grad, &u)?);
    println!("curl part:        {:?}", pair_coordinates(&curl, &u)?);
    println!("<grad, curl> = {:.1e}", block_inner(&grad, &curl));
    Ok(())
}
