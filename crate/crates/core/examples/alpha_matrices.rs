//! Prints the exact top-scale projection matrices α for k = 2, 3 and the size of the
//! canonical tables up to k = 6.

use mra_rank::alpha::{alpha_table_bound, build_alpha_table};
use mra_rank::word::ItemSubset;

fn main() -> mra_rank::Result<()> {
    let table = build_alpha_table(6)?;
    for k in [2, 3] {
        let a = ItemSubset::range(k);
        println!("alpha, k = {k} (rows and columns in lexicographic order)");
        for (r, row) in table.exact_matrix(k)?.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
            println!("  {:<6} {}", a.unrank(r), cells.join(" "));
        }
    }
    println!("construction cost {} ops (bound {})", table.build_ops(), alpha_table_bound(6));
    Ok(())
}
