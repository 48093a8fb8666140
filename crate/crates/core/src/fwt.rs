//! Low-pass and high-pass filters and the fast wavelet transform.
//!
//! Inside one content block `A` (with `k = |A|` items) subsets are bitmasks over the
//! sorted members of `A`, and a function on Γ_C is a dense vector indexed by the
//! lexicographic rank of the word's relative order.

use rayon::prelude::*;

use crate::alpha::AlphaTable;
use crate::coeffs::WaveletCoefficients;
use crate::combi::{fact_usize, lex_rank, lex_unrank};
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::word::{InjectiveWord, Item, ItemSubset};

/// Multiply-add counts of one transform.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub high_pass: u64,
    pub low_pass: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.high_pass + self.low_pass
    }
}

impl std::ops::AddAssign for OpCount {
    fn add_assign(&mut self, o: OpCount) {
        self.high_pass += o.high_pass;
        self.low_pass += o.low_pass;
    }
}

/// [e·k! + k(2^{k−1} − 1)]·|supp F| for a function on Γ_A with |A| = k.
pub fn fwt_bound(k: usize, support: usize) -> f64 {
    let kf = fact_usize(k) as f64;
    (std::f64::consts::E * kf + (k as f64) * ((1u64 << (k - 1)) as f64 - 1.0)) * support as f64
}

/// Approximation coefficients M^j F at one scale: a dense block per mask of popcount j.
struct Scale {
    j: usize,
    blocks: Vec<Vec<f64>>,
}

impl Scale {
    fn empty(k: usize, j: usize) -> Self {
        let blocks = (0u32..1 << k)
            .map(|m| if m.count_ones() as usize == j { vec![0.0; fact_usize(j)] } else { Vec::new() })
            .collect();
        Scale { j, blocks }
    }

    fn from_function(f: &RankingFunction, a: &ItemSubset, j: usize) -> Result<Self> {
        let mut s = Scale::empty(a.len(), j);
        for (w, v) in f.iter() {
            if w.len() != j {
                return Err(MraError::domain(format!("{w} does not have length {j}")));
            }
            let (mask, rank) = locate(a, w)?;
            s.blocks[mask as usize][rank] += v;
        }
        Ok(s)
    }

    fn to_function(&self, a: &ItemSubset) -> RankingFunction {
        let mut f = RankingFunction::new();
        for (mask, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                continue;
            }
            let c = a.select(mask as u32);
            for (r, &v) in block.iter().enumerate() {
                if v != 0.0 {
                    f.add_unchecked(if c.is_empty() { InjectiveWord::empty() } else { c.unrank(r) }, v);
                }
            }
        }
        f
    }
}

/// Mask of the word's content inside `a` and its rank within that content.
fn locate(a: &ItemSubset, w: &InjectiveWord) -> Result<(u32, usize)> {
    let mut mask = 0u32;
    let mut local = Vec::with_capacity(w.len());
    for &x in w.items() {
        let i = a.index_of(x).ok_or_else(|| MraError::domain(format!("{w} leaves {a}")))?;
        mask |= 1 << i;
        local.push(i as u32);
    }
    Ok((mask, crate::combi::pattern_rank(&local)))
}

/// Inserts into every (j−1)-word the item chosen by `rule` at all j positions,
/// reading values from the parent block. `rule` gets the child mask and returns a local index
/// outside it.
fn low_pass_scale(m: &Scale, k: usize, rule: &dyn Fn(u32) -> usize, ops: &mut u64) -> Scale {
    let j = m.j;
    let mut out = Scale::empty(k, j - 1);
    let mut p = [0u8; 32];
    let mut q = [0u8; 32];
    for child in 0u32..1 << k {
        if child.count_ones() as usize != j - 1 {
            continue;
        }
        let b = rule(child);
        debug_assert!(child >> b & 1 == 0);
        let parent = child | 1 << b;
        let cb = (parent & ((1u32 << b) - 1)).count_ones() as u8;
        let src = &m.blocks[parent as usize];
        let dst = &mut out.blocks[child as usize];
        for (r, &v) in src.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            lex_unrank(r, &mut p[..j]);
            let mut t = 0;
            for &x in &p[..j] {
                if x != cb {
                    q[t] = if x > cb { x - 1 } else { x };
                    t += 1;
                }
            }
            dst[lex_rank(&q[..j - 1])] += v;
            *ops += 1;
        }
    }
    out
}

fn smallest_missing(k: usize) -> impl Fn(u32) -> usize {
    move |mask: u32| {
        let b = (!mask).trailing_zeros() as usize;
        debug_assert!(b < k);
        b
    }
}

fn high_pass_scale(m: &Scale, t: &AlphaTable, ops: &mut u64) -> Vec<Vec<f64>> {
    let j = m.j;
    let nj = fact_usize(j);
    m.blocks
        .iter()
        .map(|src| {
            if src.is_empty() {
                return Vec::new();
            }
            let mut out = vec![0.0; nj];
            for (r, &v) in src.iter().enumerate() {
                if v != 0.0 {
                    t.add_column(j, r, v, &mut out);
                    *ops += nj as u64;
                }
            }
            out
        })
        .collect()
}

fn check_scale(a: &ItemSubset, j: usize) -> Result<()> {
    if j < 2 || j > a.len() {
        return Err(MraError::domain(format!("scale {j} out of range for {a}")));
    }
    if a.len() > 31 {
        return Err(MraError::resource("subset too large"));
    }
    Ok(())
}

/// g^j_A: maps scale-j approximation coefficients (words of length j inside A) to scale j−1.
/// The inserted item is the smallest item of A missing from the word; for j = 2 the two
/// smallest items of A are summed into the value at the empty word.
pub fn low_pass(f: &RankingFunction, a: &ItemSubset, j: usize) -> Result<RankingFunction> {
    low_pass_with_rule(f, a, j, |missing: &ItemSubset| missing.items()[0])
}

/// [`low_pass`] with a caller-chosen insertion item: `rule` receives A∖c(π) and returns a member.
pub fn low_pass_with_rule(
    f: &RankingFunction,
    a: &ItemSubset,
    j: usize,
    rule: impl Fn(&ItemSubset) -> Item,
) -> Result<RankingFunction> {
    check_scale(a, j)?;
    let k = a.len();
    let m = Scale::from_function(f, a, j)?;
    let full = (1u32 << k) - 1;
    let local_rule = |mask: u32| {
        let missing = a.select(full & !mask);
        let pick = rule(&missing);
        a.index_of(pick).filter(|&i| mask >> i & 1 == 0).expect("rule must return a missing item")
    };
    let mut ops = 0;
    let out = if j == 2 {
        low_pass_pair(&m, k, &mut ops)
    } else {
        low_pass_scale(&m, k, &local_rule, &mut ops)
    };
    Ok(out.to_function(a))
}

/// g²: the two smallest items of A carry the total mass down to 0̄.
fn low_pass_pair(m: &Scale, k: usize, ops: &mut u64) -> Scale {
    let mut out = Scale::empty(k, 0);
    let s: f64 = m.blocks[0b11].iter().inspect(|v| *ops += u64::from(**v != 0.0)).sum();
    out.blocks[0][0] = s;
    out
}

/// h^j_A: applies the alpha matrix of each content block of size j.
pub fn high_pass(f: &RankingFunction, a: &ItemSubset, j: usize, t: &AlphaTable) -> Result<RankingFunction> {
    check_scale(a, j)?;
    if j > t.k_max() {
        return Err(MraError::resource(format!("alpha table built for sizes ≤ {}", t.k_max())));
    }
    let m = Scale::from_function(f, a, j)?;
    let mut ops = 0;
    let blocks = high_pass_scale(&m, t, &mut ops);
    Ok(Scale { j, blocks }.to_function(a))
}

/// Fast wavelet transform of a function supported in Γ_A, with operation counts.
pub fn fwt_single_counted(f: &RankingFunction, a: &ItemSubset, t: &AlphaTable) -> Result<(WaveletCoefficients, OpCount)> {
    let k = a.len();
    if k < 2 {
        return Err(MraError::domain("the transform needs a subset of at least two items"));
    }
    if k > t.k_max() {
        return Err(MraError::resource(format!("|A| = {k} exceeds the alpha table size {}", t.k_max())));
    }
    let mut m = Scale::empty(k, k);
    for (w, v) in f.iter() {
        if w.len() != k {
            return Err(MraError::domain(format!("{w} is not a ranking of {a}")));
        }
        let (_, r) = locate(a, w)?;
        m.blocks[(1usize << k) - 1][r] += v;
    }
    let mut ops = OpCount::default();
    let mut out = WaveletCoefficients::new();
    let rule = smallest_missing(k);
    for j in (2..=k).rev() {
        let psi = high_pass_scale(&m, t, &mut ops.high_pass);
        for (mask, block) in psi.into_iter().enumerate() {
            if !block.is_empty() {
                out.insert_block(a.select(mask as u32), block)?;
            }
        }
        m = if j > 2 {
            low_pass_scale(&m, k, &rule, &mut ops.low_pass)
        } else {
            low_pass_pair(&m, k, &mut ops.low_pass)
        };
    }
    out.insert_block(ItemSubset::empty(), vec![m.blocks[0][0]])?;
    Ok((out, ops))
}

/// Fast wavelet transform Ψ F for F ∈ 𝕃(Γ_A).
pub fn fwt_single(f: &RankingFunction, a: &ItemSubset, t: &AlphaTable) -> Result<WaveletCoefficients> {
    fwt_single_counted(f, a, t).map(|(x, _)| x)
}

/// Ψ F for F on rankings of any content, with operation counts: transforms every content block and sums.
pub fn fwt_counted(f: &RankingFunction, t: &AlphaTable) -> Result<(WaveletCoefficients, OpCount)> {
    let parts = f.by_content();
    let results: Vec<Result<(WaveletCoefficients, OpCount)>> = parts
        .par_iter()
        .map(|(a, fa)| {
            if a.is_empty() {
                let mut x = WaveletCoefficients::new();
                x.insert_block(ItemSubset::empty(), vec![fa.total()])?;
                Ok((x, OpCount::default()))
            } else {
                fwt_single_counted(fa, a, t)
            }
        })
        .collect();
    let mut out = WaveletCoefficients::new();
    let mut ops = OpCount::default();
    for r in results {
        let (x, o) = r?;
        out.axpy(1.0, &x);
        ops += o;
    }
    Ok((out, ops))
}

/// Ψ F for F ∈ 𝕃(Γ̄): transforms every content block and sums.
pub fn fwt(f: &RankingFunction, t: &AlphaTable) -> Result<WaveletCoefficients> {
    fwt_counted(f, t).map(|(x, _)| x)
}
