//! Synthesis operator φ_A through the contiguous-subword formula
//! φ_A(X)(π) = X_∅/k! + Σ_{i<j} X_{c(π_i…π_j)}(π_i…π_j) / (k−j+i)!.

use rayon::prelude::*;

use crate::alpha::HARD_K_MAX;
use crate::coeffs::WaveletCoefficients;
use crate::combi::{fact_usize, factorial, lex_rank, lex_unrank};
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::word::ItemSubset;

/// φ_A X as dense values over Γ_A in lexicographic order.
pub fn synthesize_dense(x: &WaveletCoefficients, a: &ItemSubset) -> Result<Vec<f64>> {
    let k = a.len();
    if k < 2 {
        return Err(MraError::domain("synthesis needs at least two items"));
    }
    if k > HARD_K_MAX {
        return Err(MraError::resource(format!("|A| = {k} exceeds the cap {HARD_K_MAX}")));
    }
    let lookup: Vec<Option<&[f64]>> = (0u32..1 << k)
        .map(|m| if m.count_ones() >= 2 { x.block(&a.select(m)) } else { None })
        .collect();
    let inv_fact: Vec<f64> = (0..=k).map(|i| 1.0 / factorial(i) as f64).collect();
    let base = x.empty_block() * inv_fact[k];
    let values = (0..fact_usize(k))
        .into_par_iter()
        .map(|r| {
            let mut p = [0u8; HARD_K_MAX];
            lex_unrank(r, &mut p[..k]);
            let mut s = base;
            let mut local = [0u8; HARD_K_MAX];
            for i in 0..k {
                let mut mask = 1u32 << p[i];
                for j in i + 1..k {
                    mask |= 1 << p[j];
                    if let Some(block) = lookup[mask as usize] {
                        for (t, &v) in p[i..=j].iter().enumerate() {
                            local[t] = (mask & ((1u32 << v) - 1)).count_ones() as u8;
                        }
                        s += block[lex_rank(&local[..=j - i])] * inv_fact[k - j + i];
                    }
                }
            }
            s
        })
        .collect();
    Ok(values)
}

/// φ_A X as a ranking function on Γ_A. Blocks not contained in A are ignored.
pub fn synthesize(x: &WaveletCoefficients, a: &ItemSubset) -> Result<RankingFunction> {
    Ok(RankingFunction::from_dense(a, &synthesize_dense(x, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::InjectiveWord;

    fn w(s: &str) -> InjectiveWord {
        InjectiveWord::digits(s).unwrap()
    }

    fn set(v: &[u32]) -> ItemSubset {
        ItemSubset::new(v.to_vec())
    }

    #[test]
    fn mass_only_gives_uniform() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(ItemSubset::empty(), vec![1.0]).unwrap();
        let f = synthesize(&x, &set(&[1, 2, 3])).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|(_, v)| (v - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn value_at_213() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(ItemSubset::empty(), vec![0.3]).unwrap();
        x.insert_block(set(&[1, 2]), vec![0.7, -0.2]).unwrap();
        x.insert_block(set(&[1, 3]), vec![0.11, 0.5]).unwrap();
        x.insert_block(set(&[2, 3]), vec![1.5, -2.0]).unwrap();
        x.insert_block(set(&[1, 2, 3]), vec![0.01, 0.02, 0.03, 0.04, 0.05, 0.06]).unwrap();
        let f = synthesize(&x, &set(&[1, 2, 3])).unwrap();
        let expect = 0.3 / 6.0 + 0.5 * (-0.2) + 0.5 * 0.11 + 0.03;
        assert!((f.get(&w("213")) - expect).abs() < 1e-15);
    }

    #[test]
    fn pair_dirac_on_four_items() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(set(&[2, 4]), vec![0.0, 1.0]).unwrap();
        let f = synthesize(&x, &set(&[1, 2, 3, 4])).unwrap();
        let words = ["1342", "3142", "1423", "3421", "4213", "4231"];
        assert_eq!(f.len(), 6);
        for s in words {
            assert!((f.get(&w(s)) - 1.0 / 6.0).abs() < 1e-15, "{s}");
        }
    }

    #[test]
    fn outside_blocks_ignored() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(set(&[5, 6]), vec![1.0, -1.0]).unwrap();
        assert!(synthesize(&x, &set(&[1, 2, 3])).unwrap().is_empty());
    }
}
