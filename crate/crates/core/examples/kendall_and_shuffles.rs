//! Generalized Kendall distances and the random-to-random shuffle matrices whose null
//! spaces are the high-scale parts of φ′.

use mra_rank::validation::kendall::generalized_kendall;
use mra_rank::validation::shuffle::{commutator_norm, null_space_check, shuffle_matrix};
use mra_rank::word::InjectiveWord;

fn main() -> mra_rank::Result<()> {
    let s = InjectiveWord::digits("1234")?;
    let t = InjectiveWord::digits("2134")?;
    for k in 2..=4 {
        println!("d^{k}({s}, {t}) = {}", generalized_kendall(&s, &t, k)?);
    }
    let n = 4;
    for k in 2..=n {
        let r = shuffle_matrix(n, k)?;
        println!("R_{k}: rank {} of {}", r.rank(), r.rows());
    }
    println!("max |R_2 R_3 - R_3 R_2| = {:.1e}", commutator_norm(n, 2, 3)?);
    print!("{}", null_space_check(n, 2)?);
    Ok(())
}
