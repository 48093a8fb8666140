//! Generalized Kendall distances d^k: the number of k-subsets on which two full
//! rankings induce different orders.

use crate::combi::{binomial, pattern_rank};
use crate::error::{MraError, Result};
use crate::word::InjectiveWord;

pub const KENDALL_MAX_N: usize = 8;

/// d^k(σ, σ′) = #{A : |A| = k, σ|A ≠ σ′|A}. k = 2 is Kendall's tau distance.
pub fn generalized_kendall(sigma: &InjectiveWord, sigma2: &InjectiveWord, k: usize) -> Result<u64> {
    let n = sigma.len();
    if sigma.content() != sigma2.content() {
        return Err(MraError::domain(format!("{sigma} and {sigma2} rank different items")));
    }
    if n > KENDALL_MAX_N {
        return Err(MraError::resource(format!("d^k is limited to n ≤ {KENDALL_MAX_N}")));
    }
    if k < 2 || k > n {
        return Err(MraError::domain(format!("need 2 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let items = sigma.content();
    let pos = |w: &InjectiveWord| -> Vec<usize> {
        let mut p = vec![0; n];
        for (i, &x) in w.items().iter().enumerate() {
            p[items.index_of(x).expect("same content")] = i;
        }
        p
    };
    let (p1, p2) = (pos(sigma), pos(sigma2));
    let mut count = 0;
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        a.clear();
        b.clear();
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            a.push(p1[i]);
            b.push(p2[i]);
        }
        if pattern_rank(&a) != pattern_rank(&b) {
            count += 1;
        }
    }
    debug_assert!(count <= binomial(n, k));
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> InjectiveWord {
        InjectiveWord::digits(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(generalized_kendall(&w("1234"), &w("1234"), 2).unwrap(), 0);
        assert_eq!(generalized_kendall(&w("12345"), &w("54321"), 2).unwrap(), 10);
        assert_eq!(generalized_kendall(&w("1234"), &w("2134"), 3).unwrap(), 2);
        assert_eq!(generalized_kendall(&w("1234"), &w("2134"), 2).unwrap(), 1);
        assert!(generalized_kendall(&w("1234"), &w("2134"), 1).is_err());
        assert!(generalized_kendall(&w("1234"), &w("213"), 2).is_err());
    }
}
