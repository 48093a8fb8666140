//! Writes coefficients and their sidecar in the text format and reads them back.

use mra_rank::io::{read_coefficients, read_meta, write_coefficients, write_meta, CoefficientMeta};
use mra_rank::prelude::*;

fn main() -> Result<()> {
    let table = build_alpha_table(4)?;
    let f = RankingFunction::dirac(InjectiveWord::digits("231")?)?;
    let x = fwt(&f, &table)?;
    let text = write_coefficients(&x);
    print!("{text}");
    assert_eq!(read_coefficients(&text)?, x);
    let meta = CoefficientMeta { k_max: 4, universe: ItemSubset::range(3) };
    let side = write_meta(&meta);
    print!("{side}");
    assert_eq!(read_meta(&side)?, meta);
    Ok(())
}
