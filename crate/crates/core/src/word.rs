//! Injective words (rankings) and canonical item subsets.

use std::fmt;
use std::str::FromStr;

use crate::combi::{self, fact_usize};
use crate::error::{MraError, Result};

/// Item label. Labels are arbitrary non-negative integers, compared numerically.
pub type Item = u32;

/// A duplicate-free sequence of items, best first. The empty word plays the role of 0̄.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct InjectiveWord(Vec<Item>);

/// A strictly ascending set of items.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ItemSubset(Vec<Item>);

impl InjectiveWord {
    pub fn new(items: Vec<Item>) -> Result<Self> {
        let mut s = items.clone();
        s.sort_unstable();
        if s.windows(2).any(|p| p[0] == p[1]) {
            return Err(MraError::domain(format!("duplicate item in word {:?}", items)));
        }
        Ok(InjectiveWord(items))
    }

    /// Builds a word without checking for duplicates. Callers guarantee injectivity.
    pub(crate) fn from_vec_unchecked(items: Vec<Item>) -> Self {
        InjectiveWord(items)
    }

    pub fn empty() -> Self {
        InjectiveWord(Vec::new())
    }

    /// Terse notation for single-digit labels: `digits("231")` is the word 2≻3≻1.
    pub fn digits(s: &str) -> Result<Self> {
        let items = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| MraError::domain(format!("not a digit: {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        InjectiveWord::new(items)
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rankings are words of length 0 or at least 2.
    pub fn is_ranking(&self) -> bool {
        self.0.len() != 1
    }

    /// The content c(π).
    pub fn content(&self) -> ItemSubset {
        let mut v = self.0.clone();
        v.sort_unstable();
        ItemSubset(v)
    }

    /// The induced ranking π|A.
    pub fn induce(&self, a: &ItemSubset) -> Result<InjectiveWord> {
        let w: Vec<Item> = self.0.iter().copied().filter(|x| a.contains(*x)).collect();
        if w.len() != a.len() {
            return Err(MraError::domain(format!("{a} is not contained in the content of {self}")));
        }
        Ok(InjectiveWord(w))
    }

    /// Subword test: `self` is obtained from `w` by deleting items.
    pub fn is_subword_of(&self, w: &InjectiveWord) -> bool {
        let mut it = w.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    /// Contiguous subword test (π ⊏ σ).
    pub fn is_factor_of(&self, w: &InjectiveWord) -> bool {
        if self.0.is_empty() {
            return true;
        }
        w.0.windows(self.0.len()).any(|win| win == self.0.as_slice())
    }

    /// All factors `w_i…w_j` with `1 ≤ i < j ≤ |w|`, as `(i, j, factor)` with 1-based indices.
    /// Ordered by `j − i`, then by `i`.
    pub fn contiguous_subwords(&self) -> Vec<(usize, usize, InjectiveWord)> {
        let k = self.0.len();
        let mut out = Vec::new();
        for gap in 1..k {
            for i in 0..k - gap {
                out.push((i + 1, i + gap + 1, InjectiveWord(self.0[i..=i + gap].to_vec())));
            }
        }
        out
    }

    /// Lexicographic position of this word among all orderings of its content.
    pub fn rank_in_content(&self) -> usize {
        combi::pattern_rank(&self.0)
    }

    /// Applies an item relabeling.
    pub fn map(&self, f: impl Fn(Item) -> Item) -> InjectiveWord {
        InjectiveWord(self.0.iter().map(|&x| f(x)).collect())
    }

    /// Removes one item, keeping the order of the others.
    pub fn without(&self, item: Item) -> InjectiveWord {
        InjectiveWord(self.0.iter().copied().filter(|&x| x != item).collect())
    }
}

impl ItemSubset {
    /// Canonical subset from arbitrary items; duplicates collapse.
    pub fn new(mut items: Vec<Item>) -> Self {
        items.sort_unstable();
        items.dedup();
        ItemSubset(items)
    }

    pub fn empty() -> Self {
        ItemSubset(Vec::new())
    }

    /// `{1, …, n}`.
    pub fn range(n: usize) -> Self {
        ItemSubset((1..=n as Item).collect())
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Item) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` within the sorted members.
    pub fn index_of(&self, x: Item) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &ItemSubset) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &ItemSubset) -> ItemSubset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ItemSubset::new(v)
    }

    pub fn intersection(&self, other: &ItemSubset) -> ItemSubset {
        ItemSubset(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn difference(&self, other: &ItemSubset) -> ItemSubset {
        ItemSubset(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }

    /// Sub-collection picked by a bitmask over the sorted members.
    pub fn select(&self, mask: u32) -> ItemSubset {
        ItemSubset(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect(),
        )
    }

    /// P̄(A): every subset of size 0 or at least 2, in canonical order.
    pub fn ranking_subsets(&self) -> Vec<ItemSubset> {
        let k = self.0.len();
        assert!(k < 32, "subset too large to enumerate its power set");
        let mut out: Vec<ItemSubset> = (0u32..1 << k)
            .filter(|m| m.count_ones() != 1)
            .map(|m| self.select(m))
            .collect();
        out.sort();
        out
    }

    /// The word listing the members in increasing order.
    pub fn identity_word(&self) -> InjectiveWord {
        InjectiveWord(self.0.clone())
    }

    /// The word of lexicographic rank `r` in Γ_A.
    pub fn unrank(&self, r: usize) -> InjectiveWord {
        let mut p = vec![0u8; self.0.len()];
        combi::lex_unrank(r, &mut p);
        InjectiveWord(p.iter().map(|&i| self.0[i as usize]).collect())
    }

    /// Lexicographic rank of a word of Γ_A. The word must have content `self`.
    pub fn rank_of(&self, w: &InjectiveWord) -> usize {
        debug_assert_eq!(w.len(), self.len());
        let p: Vec<u8> = w
            .0
            .iter()
            .map(|&x| self.index_of(x).expect("word outside subset") as u8)
            .collect();
        combi::lex_rank(&p)
    }
}

/// Γ_A in lexicographic order. `∅` gives the single empty word.
pub fn enumerate_rankings(a: &ItemSubset) -> Result<Vec<InjectiveWord>> {
    if a.len() == 1 {
        return Err(MraError::domain("a single item admits no ranking"));
    }
    if a.len() > combi::MAX_FACT {
        return Err(MraError::resource(format!("cannot enumerate {}! rankings", a.len())));
    }
    Ok((0..fact_usize(a.len())).map(|r| a.unrank(r)).collect())
}

/// Number of stored values needed for a dataset with design `design` and `n_obs` rows.
pub fn storage_bound(design: &[ItemSubset], n_obs: u64) -> u64 {
    let s: u64 = design.iter().map(|a| combi::factorial(a.len())).sum();
    s.min(n_obs)
}

impl fmt::Display for InjectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "_");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(">"))
    }
}

impl fmt::Debug for InjectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ItemSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl fmt::Debug for ItemSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `3>1>4`, or `_` for the empty word.
impl FromStr for InjectiveWord {
    type Err = MraError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "_" {
            return Ok(InjectiveWord::empty());
        }
        let items = s
            .split('>')
            .map(|t| {
                t.trim()
                    .parse::<Item>()
                    .map_err(|_| MraError::domain(format!("not an item label: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        InjectiveWord::new(items)
    }
}

/// Parses `1,2,3`, `{1,2,3}` or `{}`. Duplicates are rejected.
impl FromStr for ItemSubset {
    type Err = MraError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if s.is_empty() {
            return Ok(ItemSubset::empty());
        }
        let items = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Item>()
                    .map_err(|_| MraError::domain(format!("not an item label: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = items.len();
        let set = ItemSubset::new(items);
        if set.len() != n {
            return Err(MraError::domain("duplicate item in subset"));
        }
        Ok(set)
    }
}
