//! Sparse real-valued functions on incomplete rankings.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{MraError, Result};
use crate::word::{enumerate_rankings, InjectiveWord, ItemSubset};

/// A function on Γ̄ stored by its nonzero values. Missing words are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RankingFunction {
    entries: BTreeMap<InjectiveWord, f64>,
}

impl RankingFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dirac(w: InjectiveWord) -> Result<Self> {
        let mut f = Self::new();
        f.add(w, 1.0)?;
        Ok(f)
    }

    /// Uniform value `1/|A|!` on Γ_A.
    pub fn uniform(a: &ItemSubset) -> Result<Self> {
        let words = enumerate_rankings(a)?;
        let v = 1.0 / words.len() as f64;
        let mut f = Self::new();
        for w in words {
            f.entries.insert(w, v);
        }
        Ok(f)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (InjectiveWord, f64)>) -> Result<Self> {
        let mut f = Self::new();
        for (w, v) in pairs {
            f.add(w, v)?;
        }
        f.compact();
        Ok(f)
    }

    /// Adds `v` to the value at `w`. Words of length one are not rankings.
    pub fn add(&mut self, w: InjectiveWord, v: f64) -> Result<()> {
        if !w.is_ranking() {
            return Err(MraError::domain(format!("{w} has length 1 and is not a ranking")));
        }
        if v != 0.0 {
            *self.entries.entry(w).or_insert(0.0) += v;
        }
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, w: InjectiveWord, v: f64) {
        *self.entries.entry(w).or_insert(0.0) += v;
    }

    pub fn get(&self, w: &InjectiveWord) -> f64 {
        self.entries.get(w).copied().unwrap_or(0.0)
    }

    /// Drops entries equal to zero.
    pub fn compact(&mut self) {
        self.entries.retain(|_, v| *v != 0.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InjectiveWord, f64)> {
        self.entries.iter().map(|(w, &v)| (w, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &InjectiveWord> {
        self.entries.iter().filter(|(_, v)| **v != 0.0).map(|(w, _)| w)
    }

    /// The set of contents of the support.
    pub fn global_support(&self) -> BTreeSet<ItemSubset> {
        self.support().map(|w| w.content()).collect()
    }

    /// Union of all items appearing in the support.
    pub fn items(&self) -> ItemSubset {
        ItemSubset::new(self.support().flat_map(|w| w.items().iter().copied()).collect())
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Splits into the restrictions F_A to each content block.
    pub fn by_content(&self) -> BTreeMap<ItemSubset, RankingFunction> {
        let mut out: BTreeMap<ItemSubset, RankingFunction> = BTreeMap::new();
        for (w, v) in self.iter() {
            if v != 0.0 {
                out.entry(w.content()).or_default().entries.insert(w.clone(), v);
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> RankingFunction {
        let mut f = RankingFunction {
            entries: self.entries.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        };
        f.compact();
        f
    }

    /// `self + c·other`.
    pub fn axpy(&mut self, c: f64, other: &RankingFunction) {
        for (w, v) in other.iter() {
            *self.entries.entry(w.clone()).or_insert(0.0) += c * v;
        }
        self.compact();
    }

    /// Sup-norm distance between two functions.
    pub fn max_abs_diff(&self, other: &RankingFunction) -> f64 {
        let mut m: f64 = 0.0;
        for (w, v) in self.iter() {
            m = m.max((v - other.get(w)).abs());
        }
        for (w, v) in other.iter() {
            if !self.entries.contains_key(w) {
                m = m.max(v.abs());
            }
        }
        m
    }

    /// Dense vector of values over Γ_A in lexicographic order.
    pub fn to_dense(&self, a: &ItemSubset) -> Result<Vec<f64>> {
        let words = enumerate_rankings(a)?;
        Ok(words.iter().map(|w| self.get(w)).collect())
    }

    /// Inverse of [`RankingFunction::to_dense`]; zeros are not stored.
    pub fn from_dense(a: &ItemSubset, values: &[f64]) -> RankingFunction {
        let mut f = RankingFunction::new();
        for (r, &v) in values.iter().enumerate() {
            if v != 0.0 {
                f.entries.insert(a.unrank(r), v);
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_single_items() {
        let mut f = RankingFunction::new();
        assert!(f.add(InjectiveWord::new(vec![3]).unwrap(), 1.0).is_err());
        assert!(f.add(InjectiveWord::empty(), 1.0).is_ok());
    }

    #[test]
    fn compaction_and_support() {
        let a = InjectiveWord::digits("12").unwrap();
        let b = InjectiveWord::digits("123").unwrap();
        let mut f = RankingFunction::from_pairs([(a.clone(), 1.0), (b.clone(), 2.0)]).unwrap();
        f.add(a, -1.0).unwrap();
        f.compact();
        assert_eq!(f.len(), 1);
        assert_eq!(f.global_support().len(), 1);
        assert_eq!(f.total(), 2.0);
    }

    #[test]
    fn dense_roundtrip() {
        let a = ItemSubset::new(vec![1, 4, 6]);
        let v = vec![0.5, 0.0, -1.0, 2.0, 0.0, 3.0];
        let f = RankingFunction::from_dense(&a, &v);
        assert_eq!(f.len(), 4);
        assert_eq!(f.to_dense(&a).unwrap(), v);
    }
}
