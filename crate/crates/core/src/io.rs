//! Text formats for coefficient sets, their sidecar, model files and design files.
//!
//! Coefficient file:
//!
//! ```text
//! mra-coefficients v1
//! block {}
//! _ 1.0000000000000000e0
//! block {1,2}
//! 1>2 5.0000000000000000e-1
//! 2>1 -5.0000000000000000e-1
//! ```
//!
//! Blocks appear in canonical subset order and words in lexicographic order; values
//! carry 17 significant digits so the text round-trips bit-for-bit.

use std::fmt::Write as _;

use crate::coeffs::WaveletCoefficients;
use crate::combi::fact_usize;
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::inference::ObservationDesign;
use crate::word::{InjectiveWord, ItemSubset};

pub const COEFF_HEADER: &str = "mra-coefficients v1";
pub const META_HEADER: &str = "mra-coefficients-meta v1";

/// 17 significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_coefficients(x: &WaveletCoefficients) -> String {
    let mut s = String::new();
    s.push_str(COEFF_HEADER);
    s.push('\n');
    for (b, values) in x.iter() {
        let _ = writeln!(s, "block {b}");
        for (r, &v) in values.iter().enumerate() {
            let w = if b.is_empty() { InjectiveWord::empty() } else { b.unrank(r) };
            let _ = writeln!(s, "{w} {}", format_value(v));
        }
    }
    s
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(line: usize, t: &str) -> Result<f64> {
    let v: f64 = t.parse().map_err(|_| MraError::parse(line, format!("not a number: {t:?}")))?;
    if !v.is_finite() {
        return Err(MraError::parse(line, "non-finite value"));
    }
    Ok(v)
}

pub fn read_coefficients(text: &str) -> Result<WaveletCoefficients> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, h)) if h == COEFF_HEADER => {}
        Some((n, _)) => return Err(MraError::parse(n, format!("expected header {COEFF_HEADER:?}"))),
        None => return Err(MraError::parse(1, "empty coefficient file")),
    }
    let mut x = WaveletCoefficients::new();
    let mut current: Option<(ItemSubset, Vec<f64>)> = None;
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("block") {
            if let Some((b, v)) = current.take() {
                x.insert_block(b, v)?;
            }
            let b: ItemSubset = rest.parse().map_err(|e: MraError| MraError::parse(n, e.to_string()))?;
            if b.len() == 1 {
                return Err(MraError::parse(n, "blocks live on subsets of size 0 or at least 2"));
            }
            if x.block(&b).is_some() {
                return Err(MraError::parse(n, format!("block {b} repeated")));
            }
            let size = fact_usize(b.len());
            current = Some((b, vec![0.0; size]));
            continue;
        }
        let (b, values) = current.as_mut().ok_or_else(|| MraError::parse(n, "value before any block line"))?;
        let mut parts = line.split_whitespace();
        let (Some(wt), Some(vt), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(MraError::parse(n, "expected `<word> <value>`"));
        };
        let w: InjectiveWord = wt.parse().map_err(|e: MraError| MraError::parse(n, e.to_string()))?;
        if w.content() != *b {
            return Err(MraError::parse(n, format!("{w} is not a ranking of {b}")));
        }
        let r = if b.is_empty() { 0 } else { b.rank_of(&w) };
        values[r] = parse_f64(n, vt)?;
    }
    if let Some((b, v)) = current.take() {
        x.insert_block(b, v)?;
    }
    Ok(x)
}

/// Sidecar metadata accompanying a coefficient file.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMeta {
    pub k_max: usize,
    pub universe: ItemSubset,
}

pub fn write_meta(m: &CoefficientMeta) -> String {
    let items: Vec<String> = m.universe.items().iter().map(|x| x.to_string()).collect();
    format!("{META_HEADER}\nkmax {}\nuniverse {}\n", m.k_max, items.join(","))
}

pub fn read_meta(text: &str) -> Result<CoefficientMeta> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, h)) if h == META_HEADER => {}
        Some((n, _)) => return Err(MraError::parse(n, format!("expected header {META_HEADER:?}"))),
        None => return Err(MraError::parse(1, "empty sidecar")),
    }
    let mut k_max = None;
    let mut universe = None;
    for (n, line) in lines {
        let (key, val) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "kmax" => k_max = Some(val.trim().parse::<usize>().map_err(|_| MraError::parse(n, "bad kmax"))?),
            "universe" => universe = Some(val.parse::<ItemSubset>().map_err(|e| MraError::parse(n, e.to_string()))?),
            _ => return Err(MraError::parse(n, format!("unknown key {key:?}"))),
        }
    }
    match (k_max, universe) {
        (Some(k_max), Some(universe)) => Ok(CoefficientMeta { k_max, universe }),
        _ => Err(MraError::parse(1, "sidecar needs kmax and universe")),
    }
}

/// Model file: `<permutation> <probability>` per line, e.g. `2>1>3 0.25`.
/// All permutations share one item set and the probabilities sum to 1 within 1e-9.
pub fn read_model(text: &str) -> Result<(RankingFunction, ItemSubset)> {
    let mut p = RankingFunction::new();
    let mut universe: Option<ItemSubset> = None;
    let mut total = 0.0;
    let mut last_line = 1;
    for (n, line) in meaningful_lines(text) {
        last_line = n;
        let mut parts = line.split_whitespace();
        let (Some(wt), Some(vt), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(MraError::parse(n, "expected `<permutation> <probability>`"));
        };
        let w: InjectiveWord = wt.parse().map_err(|e: MraError| MraError::parse(n, e.to_string()))?;
        let v = parse_f64(n, vt)?;
        if v < 0.0 {
            return Err(MraError::parse(n, "negative probability"));
        }
        let c = w.content();
        match &universe {
            None => universe = Some(c),
            Some(u) if *u != c => return Err(MraError::parse(n, format!("{w} does not rank the items {u}"))),
            _ => {}
        }
        if p.get(&w) != 0.0 {
            return Err(MraError::parse(n, format!("{w} listed twice")));
        }
        if w.len() < 2 {
            return Err(MraError::parse(n, "a model ranks at least two items"));
        }
        p.add(w, v)?;
        total += v;
    }
    let universe = universe.ok_or_else(|| MraError::parse(1, "empty model"))?;
    if (total - 1.0).abs() > 1e-9 {
        return Err(MraError::parse(last_line, format!("probabilities sum to {total}, not 1")));
    }
    Ok((p, universe))
}

/// Design file: `<subset> [weight]` per line, e.g. `1,2,3 0.5`. Either every line carries
/// a weight or none does (uniform weights).
pub fn read_design(text: &str) -> Result<ObservationDesign> {
    let mut rows: Vec<(usize, ItemSubset, Option<f64>)> = Vec::new();
    for (n, line) in meaningful_lines(text) {
        let mut parts = line.split_whitespace();
        let st = parts.next().expect("non-empty line");
        let b: ItemSubset = st.parse().map_err(|e: MraError| MraError::parse(n, e.to_string()))?;
        let w = parts.next().map(|t| parse_f64(n, t)).transpose()?;
        if parts.next().is_some() {
            return Err(MraError::parse(n, "expected `<subset> [weight]`"));
        }
        rows.push((n, b, w));
    }
    let Some(first) = rows.first() else {
        return Err(MraError::parse(1, "empty design"));
    };
    let weighted = first.2.is_some();
    if let Some((n, _, _)) = rows.iter().find(|r| r.2.is_some() != weighted) {
        return Err(MraError::parse(*n, "weights must be given on every line or on none"));
    }
    let weights = weighted.then(|| rows.iter().map(|r| r.2.unwrap()).collect());
    ObservationDesign::new(rows.into_iter().map(|r| r.1).collect(), weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_roundtrip_is_bit_exact() {
        let mut x = WaveletCoefficients::new();
        x.insert_block(ItemSubset::empty(), vec![1.0]).unwrap();
        x.insert_block(ItemSubset::new(vec![1, 12]), vec![0.1 + 0.2, -(0.1 + 0.2)]).unwrap();
        x.insert_block(ItemSubset::new(vec![1, 2, 3]), vec![1.0 / 3.0, -1.0 / 6.0, 0.0, 1e-300, 5.0, -7.25]).unwrap();
        let text = write_coefficients(&x);
        let y = read_coefficients(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(write_coefficients(&y), text);
    }

    #[test]
    fn coefficient_errors() {
        assert!(matches!(read_coefficients("nope\n"), Err(MraError::Parse { line: 1, .. })));
        let bad = format!("{COEFF_HEADER}\nblock {{1,2}}\n1>3 0.5\n");
        assert!(matches!(read_coefficients(&bad), Err(MraError::Parse { line: 3, .. })));
    }

    #[test]
    fn meta_roundtrip() {
        let m = CoefficientMeta { k_max: 8, universe: ItemSubset::range(5) };
        assert_eq!(read_meta(&write_meta(&m)).unwrap(), m);
    }

    #[test]
    fn model_and_design() {
        let (p, u) = read_model("1>2>3 0.5\n3>2>1 0.5\n").unwrap();
        assert_eq!(u, ItemSubset::range(3));
        assert_eq!(p.len(), 2);
        assert!(read_model("1>2>3 0.5\n3>2>1 0.4\n").is_err());
        assert!(read_model("1>2>3 0.5\n3>2 0.5\n").is_err());

        let d = read_design("1,2,3\n3,4\n").unwrap();
        assert_eq!(d.weights(), &[0.5, 0.5]);
        let d = read_design("1,2,3 0.25\n3,4 0.75\n").unwrap();
        assert_eq!(d.weights(), &[0.25, 0.75]);
        assert!(read_design("1,2,3 0.25\n3,4\n").is_err());
        assert!(read_design("1,2,3\n3,4 1.0\n").is_err());
    }
}
