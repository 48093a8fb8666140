//! Datasets of incomplete rankings and their line-oriented text format.
//!
//! One observation per line, items separated by `>`, best first (`3>1>4`).
//! Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;

use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::word::{InjectiveWord, Item, ItemSubset};

#[derive(Clone, Debug, PartialEq)]
pub struct Observation {
    pub subset: ItemSubset,
    pub ranking: InjectiveWord,
}

impl Observation {
    pub fn new(ranking: InjectiveWord) -> Result<Self> {
        if ranking.len() < 2 {
            return Err(MraError::domain("an observation ranks at least two items"));
        }
        Ok(Observation { subset: ranking.content(), ranking })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dataset {
    pub observations: Vec<Observation>,
}

impl Dataset {
    pub fn new(observations: Vec<Observation>) -> Self {
        Dataset { observations }
    }

    pub fn from_rankings(words: impl IntoIterator<Item = InjectiveWord>) -> Result<Self> {
        Ok(Dataset {
            observations: words.into_iter().map(Observation::new).collect::<Result<_>>()?,
        })
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Observed subsets with their counts N_A.
    pub fn design(&self) -> BTreeMap<ItemSubset, usize> {
        let mut m = BTreeMap::new();
        for o in &self.observations {
            *m.entry(o.subset.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Union of observed items.
    pub fn universe(&self) -> ItemSubset {
        ItemSubset::new(
            self.observations
                .iter()
                .flat_map(|o| o.ranking.items().iter().copied())
                .collect(),
        )
    }

    /// Σ_i δ_{Π_i}: the unnormalized histogram of observed rankings.
    pub fn counts(&self) -> RankingFunction {
        let mut f = RankingFunction::new();
        for o in &self.observations {
            f.add_unchecked(o.ranking.clone(), 1.0);
        }
        f
    }
}

/// Parses the `a>b>c` line format. Errors carry the 1-based line number.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut obs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let items = line
            .split('>')
            .map(|t| {
                t.trim()
                    .parse::<Item>()
                    .map_err(|_| MraError::parse(line_no, format!("not an item label: {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if items.len() < 2 {
            return Err(MraError::parse(line_no, "a ranking needs at least two items"));
        }
        let word = InjectiveWord::new(items).map_err(|_| MraError::parse(line_no, "duplicate item"))?;
        obs.push(Observation { subset: word.content(), ranking: word });
    }
    Ok(Dataset { observations: obs })
}

/// Canonical text: one `a>b>c` line per observation, in dataset order.
pub fn serialize_dataset(d: &Dataset) -> String {
    let mut s = String::new();
    for o in &d.observations {
        s.push_str(&o.ranking.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_lines() {
        let d = parse_dataset("3>1\n2>4>5\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.observations[0].subset, ItemSubset::new(vec![1, 3]));
        assert_eq!(d.observations[1].subset, ItemSubset::new(vec![2, 4, 5]));
    }

    #[test]
    fn canonical_roundtrip() {
        let text = "3>1\n2>4>5\n10>7>12>0\n";
        assert_eq!(serialize_dataset(&parse_dataset(text).unwrap()), text);
    }

    #[test]
    fn comments_and_blanks() {
        let d = parse_dataset("# header\n\n1>2\n  # indented comment\n2 > 1\n").unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_dataset("3>3").unwrap_err(), MraError::parse(1, "duplicate item"));
        assert!(matches!(parse_dataset("1>2\n7\n"), Err(MraError::Parse { line: 2, .. })));
        assert!(matches!(parse_dataset("1>2\n1>x\n"), Err(MraError::Parse { line: 2, .. })));
    }
}
