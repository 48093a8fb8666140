//! Brute-force wavelet transform: explicit bases of every H_B, their images under φ_A
//! computed from the factor-counting definition, and one dense linear solve.

use crate::coeffs::WaveletCoefficients;
use crate::combi::{derangements, fact_usize, factorial};
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::linalg::Matrix;
use crate::word::ItemSubset;

/// Largest content size the oracle accepts.
pub const ORACLE_MAX: usize = 5;

/// Basis of H_B as dense vectors over Γ_B (lexicographic order): the functions whose
/// marginal on every strict subset B′ ∈ P̄(B), ∅ included, vanishes.
pub fn hb_basis(b: &ItemSubset) -> Result<Vec<Vec<f64>>> {
    let k = b.len();
    if k == 1 {
        return Err(MraError::domain("H_B is defined for |B| = 0 or |B| ≥ 2"));
    }
    if k > ORACLE_MAX + 1 {
        return Err(MraError::resource(format!("explicit H_B bases are limited to |B| ≤ {}", ORACLE_MAX + 1)));
    }
    if k == 0 {
        return Ok(vec![vec![1.0]]);
    }
    let words: Vec<_> = (0..fact_usize(k)).map(|r| b.unrank(r)).collect();
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0; words.len()]];
    for sub in b.ranking_subsets() {
        if sub.len() < 2 || sub.len() == k {
            continue;
        }
        for r2 in 0..fact_usize(sub.len()) {
            let target = sub.unrank(r2);
            rows.push(words.iter().map(|w| if w.induce(&sub).expect("subset") == target { 1.0 } else { 0.0 }).collect());
        }
    }
    let basis = Matrix::from_rows(&rows).nullspace();
    let expect = derangements(k) as usize;
    if basis.len() != expect {
        return Err(MraError::Audit(format!("dim H_{b} = {} but d_{k} = {expect}", basis.len())));
    }
    Ok(basis)
}

/// φ_A applied to a single block X_B (dense over Γ_B), straight from the definition:
/// each π ∈ Γ_B contributes X_B(π)·(occurrences of π as a factor of σ)/(|A|−|π|+1)!.
/// The empty word occurs |A|+1 times in every σ.
pub fn phi_by_definition(block: &[f64], b: &ItemSubset, a: &ItemSubset) -> Result<Vec<f64>> {
    if !b.is_subset_of(a) {
        return Err(MraError::domain(format!("{b} is not contained in {a}")));
    }
    if a.len() > ORACLE_MAX + 1 {
        return Err(MraError::resource(format!("dense φ_A is limited to |A| ≤ {}", ORACLE_MAX + 1)));
    }
    let k = a.len();
    let weight = 1.0 / factorial(k - b.len() + 1) as f64;
    let sigmas: Vec<_> = (0..fact_usize(k)).map(|r| a.unrank(r)).collect();
    if b.is_empty() {
        let v = block[0] * (k + 1) as f64 * weight;
        return Ok(vec![v; sigmas.len()]);
    }
    let mut out = vec![0.0; sigmas.len()];
    for (r, &v) in block.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let pi = b.unrank(r);
        for (s, sigma) in sigmas.iter().enumerate() {
            if pi.is_factor_of(sigma) {
                out[s] += v * weight;
            }
        }
    }
    Ok(out)
}

/// Change-of-basis matrix for one content set, reusable across many inputs.
pub struct BruteForceOracle {
    a: ItemSubset,
    columns: Vec<(ItemSubset, Vec<f64>)>,
    matrix: Matrix,
}

impl BruteForceOracle {
    pub fn new(a: &ItemSubset) -> Result<Self> {
        if a.len() < 2 {
            return Err(MraError::domain("the oracle needs at least two items"));
        }
        if a.len() > ORACLE_MAX {
            return Err(MraError::resource(format!("brute-force oracle is limited to |A| ≤ {ORACLE_MAX}")));
        }
        let mut basis_by_size: Vec<Option<Vec<Vec<f64>>>> = vec![None; a.len() + 1];
        let mut columns = Vec::new();
        let mut images = Vec::new();
        for b in a.ranking_subsets() {
            // Lexicographic order is preserved by the increasing relabeling {1..k} → B,
            // so one basis per size serves every subset.
            let basis = match &basis_by_size[b.len()] {
                Some(basis) => basis.clone(),
                None => {
                    let basis = hb_basis(&ItemSubset::range(b.len()))?;
                    basis_by_size[b.len()] = Some(basis.clone());
                    basis
                }
            };
            for u in basis {
                images.push(phi_by_definition(&u, &b, a)?);
                columns.push((b.clone(), u));
            }
        }
        if images.len() != fact_usize(a.len()) {
            return Err(MraError::Audit(format!("{} basis vectors for {}! rankings", images.len(), a.len())));
        }
        Ok(Self { a: a.clone(), columns, matrix: Matrix::from_columns(&images) })
    }

    pub fn transform(&self, f: &RankingFunction) -> Result<WaveletCoefficients> {
        if let Some((w, _)) = f.iter().find(|(w, _)| w.content() != self.a) {
            return Err(MraError::domain(format!("{w} is not a ranking of {}", self.a)));
        }
        let dense = f.to_dense(&self.a)?;
        let c = self
            .matrix
            .solve(&dense)
            .ok_or_else(|| MraError::Audit(format!("singular synthesis matrix on {}", self.a)))?;
        let mut x = WaveletCoefficients::new();
        for b in self.a.ranking_subsets() {
            x.insert_block(b.clone(), vec![0.0; fact_usize(b.len())])?;
        }
        for ((b, u), &ci) in self.columns.iter().zip(&c) {
            x.add_to_block(b, u, ci);
        }
        Ok(x)
    }
}

/// Ψ F for F supported on Γ_A, |A| ≤ 5, by brute force.
pub fn brute_force_wavelet(f: &RankingFunction, a: &ItemSubset) -> Result<WaveletCoefficients> {
    BruteForceOracle::new(a)?.transform(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_dimensions() {
        for k in [0usize, 2, 3, 4, 5] {
            assert_eq!(hb_basis(&ItemSubset::range(k)).unwrap().len(), derangements(k) as usize);
        }
        assert_eq!(hb_basis(&ItemSubset::range(2)).unwrap(), vec![vec![-1.0, 1.0]]);
    }

    #[test]
    fn phi_of_pair_block_on_three_items() {
        let a = ItemSubset::range(3);
        let b = ItemSubset::new(vec![1, 2]);
        let v = phi_by_definition(&[1.0, 0.0], &b, &a).unwrap();
        // 1>2 is a factor of 123 and 312 only; weight 1/2!.
        let expect: Vec<f64> = (0..6)
            .map(|r| if ["1>2>3", "3>1>2"].contains(&a.unrank(r).to_string().as_str()) { 0.5 } else { 0.0 })
            .collect();
        assert_eq!(v, expect);
        let uniform = phi_by_definition(&[1.0], &ItemSubset::empty(), &a).unwrap();
        assert!(uniform.iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn uniform_has_mass_only() {
        let a = ItemSubset::range(4);
        let x = brute_force_wavelet(&RankingFunction::uniform(&a).unwrap(), &a).unwrap();
        assert!((x.empty_block() - 1.0).abs() < 1e-12);
        let rest: f64 = x.iter().filter(|(b, _)| !b.is_empty()).flat_map(|(_, v)| v).fold(0.0, |m, v| m.max(v.abs()));
        assert!(rest < 1e-12);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(BruteForceOracle::new(&ItemSubset::range(6)), Err(MraError::Resource(_))));
    }
}
