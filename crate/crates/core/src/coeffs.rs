//! Elements of the feature space: one dense block per item subset.

use std::collections::BTreeMap;

use crate::combi::fact_usize;
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::marginals::marginal;
use crate::word::{InjectiveWord, ItemSubset};

/// Blocks X_B, each a function on Γ_B stored densely by lexicographic rank.
/// The ∅ block holds a single scalar.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WaveletCoefficients {
    blocks: BTreeMap<ItemSubset, Vec<f64>>,
}

impl WaveletCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, b: &ItemSubset) -> Option<&[f64]> {
        self.blocks.get(b).map(|v| v.as_slice())
    }

    pub fn subsets(&self) -> impl Iterator<Item = &ItemSubset> {
        self.blocks.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ItemSubset, &[f64])> {
        self.blocks.iter().map(|(b, v)| (b, v.as_slice()))
    }

    /// Value of X_B at a word of Γ_B; zero when the block is absent.
    pub fn value(&self, b: &ItemSubset, w: &InjectiveWord) -> f64 {
        match self.blocks.get(b) {
            Some(v) if b.is_empty() => v[0],
            Some(v) => v[b.rank_of(w)],
            None => 0.0,
        }
    }

    /// The scalar block X_∅.
    pub fn empty_block(&self) -> f64 {
        self.blocks.get(&ItemSubset::empty()).map_or(0.0, |v| v[0])
    }

    pub fn insert_block(&mut self, b: ItemSubset, values: Vec<f64>) -> Result<()> {
        if b.len() == 1 {
            return Err(MraError::domain("no block lives on a single item"));
        }
        if values.len() != fact_usize(b.len()) {
            return Err(MraError::domain(format!("block {b} needs {} values", fact_usize(b.len()))));
        }
        self.blocks.insert(b, values);
        Ok(())
    }

    /// `X_B += scale · values`, creating the block if needed.
    pub fn add_to_block(&mut self, b: &ItemSubset, values: &[f64], scale: f64) {
        let dst = self.blocks.entry(b.clone()).or_insert_with(|| vec![0.0; values.len()]);
        for (d, v) in dst.iter_mut().zip(values) {
            *d += scale * v;
        }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: f64, other: &WaveletCoefficients) {
        for (b, v) in &other.blocks {
            self.add_to_block(b, v, c);
        }
    }

    pub fn scaled(&self, c: f64) -> WaveletCoefficients {
        WaveletCoefficients {
            blocks: self.blocks.iter().map(|(b, v)| (b.clone(), v.iter().map(|x| x * c).collect())).collect(),
        }
    }

    pub fn map_blocks(&mut self, mut f: impl FnMut(&ItemSubset, &mut Vec<f64>)) {
        for (b, v) in self.blocks.iter_mut() {
            f(b, v);
        }
    }

    /// Sup-norm distance, absent blocks counting as zero.
    pub fn max_abs_diff(&self, other: &WaveletCoefficients) -> f64 {
        let mut m: f64 = 0.0;
        for (b, v) in &self.blocks {
            match other.blocks.get(b) {
                Some(w) => v.iter().zip(w).for_each(|(x, y)| m = m.max((x - y).abs())),
                None => v.iter().for_each(|x| m = m.max(x.abs())),
            }
        }
        for (b, w) in &other.blocks {
            if !self.blocks.contains_key(b) {
                w.iter().for_each(|y| m = m.max(y.abs()));
            }
        }
        m
    }

    pub fn norm_inf(&self) -> f64 {
        self.blocks.values().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Drops blocks whose entries are all exactly zero.
    pub fn prune_zero_blocks(&mut self) {
        self.blocks.retain(|_, v| v.iter().any(|x| *x != 0.0));
    }

    /// Block X_B as a sparse ranking function.
    pub fn block_function(&self, b: &ItemSubset) -> RankingFunction {
        match self.blocks.get(b) {
            Some(v) => RankingFunction::from_dense(b, v),
            None => RankingFunction::new(),
        }
    }

    /// Union of the items of all blocks.
    pub fn items(&self) -> ItemSubset {
        ItemSubset::new(self.blocks.keys().flat_map(|b| b.items().iter().copied()).collect())
    }

    /// Largest block size.
    pub fn max_block_size(&self) -> usize {
        self.blocks.keys().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Blocks of size `k`.
    pub fn scale(&self, k: usize) -> WaveletCoefficients {
        WaveletCoefficients {
            blocks: self.blocks.iter().filter(|(b, _)| b.len() == k).map(|(b, v)| (b.clone(), v.clone())).collect(),
        }
    }
}

/// ℳ_A: keeps exactly the blocks X_B with B ⊆ A.
pub fn feature_marginal(x: &WaveletCoefficients, a: &ItemSubset) -> WaveletCoefficients {
    WaveletCoefficients {
        blocks: x.blocks.iter().filter(|(b, _)| b.is_subset_of(a)).map(|(b, v)| (b.clone(), v.clone())).collect(),
    }
}

/// Largest |M_{B′} X_B| over the strict subsets B′ ⊊ B of size 0 or ≥ 2.
/// Zero (up to rounding) exactly when the block lies in H_B.
pub fn hb_residual(b: &ItemSubset, values: &[f64]) -> f64 {
    if b.is_empty() {
        return 0.0;
    }
    let f = RankingFunction::from_dense(b, values);
    let mut worst: f64 = f.total().abs();
    for sub in b.ranking_subsets() {
        if sub.is_empty() || sub.len() == b.len() {
            continue;
        }
        let m = marginal(&f, &sub).expect("sizes checked");
        worst = worst.max(m.norm_inf());
    }
    worst
}

/// [`hb_residual`] maximized over all blocks.
pub fn max_hb_residual(x: &WaveletCoefficients) -> f64 {
    x.iter().map(|(b, v)| hb_residual(b, v)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> ItemSubset {
        ItemSubset::new(v.to_vec())
    }

    #[test]
    fn feature_marginal_filters() {
        let mut x = WaveletCoefficients::new();
        for b in set(&[1, 2, 3, 4]).ranking_subsets() {
            let n = fact_usize(b.len());
            x.insert_block(b, vec![1.0; n]).unwrap();
        }
        let m = feature_marginal(&x, &set(&[1, 2, 4]));
        let kept: Vec<ItemSubset> = m.subsets().cloned().collect();
        assert_eq!(kept, vec![ItemSubset::empty(), set(&[1, 2]), set(&[1, 2, 4]), set(&[1, 4]), set(&[2, 4])]);
        assert_eq!(feature_marginal(&m, &set(&[1, 2, 4])), m);
        assert_eq!(feature_marginal(&x, &ItemSubset::empty()).len(), 1);
    }

    #[test]
    fn block_values() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(set(&[2, 7]), vec![0.5, -0.5]).unwrap();
        let w = |v: Vec<u32>| InjectiveWord::new(v).unwrap();
        assert_eq!(x.value(&set(&[2, 7]), &w(vec![7, 2])), -0.5);
        assert_eq!(x.value(&set(&[1, 2]), &w(vec![1, 2])), 0.0);
        assert!(x.insert_block(set(&[1, 2, 3]), vec![0.0; 5]).is_err());
        assert!(hb_residual(&set(&[2, 7]), &[0.5, -0.5]) < 1e-15);
        assert!(hb_residual(&set(&[2, 7]), &[1.0, 0.0]) > 0.5);
    }
}
