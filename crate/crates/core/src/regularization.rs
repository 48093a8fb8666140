//! Feature-space smoothing: blocks of one scale borrow strength from blocks on
//! nearby subsets of the same size.

use num_rational::Ratio;

use crate::coeffs::{feature_marginal, WaveletCoefficients};
use crate::combi::{binomial, fact_usize, lex_rank, next_permutation};
use crate::error::{MraError, Result};
use crate::word::{Item, ItemSubset};

/// D_k(B,B′) = k − |B ∩ B′|: the number of items to swap to turn B into B′.
pub fn subset_distance(b: &ItemSubset, b2: &ItemSubset) -> Result<usize> {
    if b.len() != b2.len() {
        return Err(MraError::domain(format!("{b} and {b2} have different sizes")));
    }
    Ok(b.len() - b.intersection(b2).len())
}

/// Average of τ·X_B over the bijections τ: B → B′ that fix B ∩ B′.
pub fn transport(x_b: &[f64], b: &ItemSubset, b2: &ItemSubset) -> Result<Vec<f64>> {
    if b.len() != b2.len() {
        return Err(MraError::domain(format!("{b} and {b2} have different sizes")));
    }
    if x_b.len() != fact_usize(b.len()) {
        return Err(MraError::domain(format!("block on {b} needs {} values", fact_usize(b.len()))));
    }
    let k = b.len();
    if k == 0 {
        return Ok(x_b.to_vec());
    }
    let from: Vec<Item> = b.difference(b2).items().to_vec();
    let to: Vec<Item> = b2.difference(b).items().to_vec();
    let j = from.len();
    let mut rho: Vec<usize> = (0..j).collect();
    let mut maps: Vec<Vec<u8>> = Vec::with_capacity(fact_usize(j));
    loop {
        // Local index in B′ of τ(b_i) for each local index i of B.
        let m: Vec<u8> = b
            .items()
            .iter()
            .map(|&x| {
                let y = match from.iter().position(|&f| f == x) {
                    Some(i) => to[rho[i]],
                    None => x,
                };
                b2.index_of(y).expect("image inside B′") as u8
            })
            .collect();
        maps.push(m);
        if !next_permutation(&mut rho) {
            break;
        }
    }
    let scale = 1.0 / maps.len() as f64;
    let mut out = vec![0.0; x_b.len()];
    let mut p = vec![0u8; k];
    let mut q = vec![0u8; k];
    for (r, &v) in x_b.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        crate::combi::lex_unrank(r, &mut p);
        for m in &maps {
            for (t, &pi) in p.iter().enumerate() {
                q[t] = m[pi as usize];
            }
            out[lex_rank(&q)] += scale * v;
        }
    }
    Ok(out)
}

/// Step kernel weight q_h(j) = [(h′+1)·C(k,j)·C(n−k,j)]⁻¹ for j ≤ h′, zero beyond, where
/// h′ = min(h, k, n−k) is the largest distance that actually occurs at scale k.
pub fn step_weight(n: usize, k: usize, h: usize, j: usize) -> f64 {
    let r = step_weight_exact(n, k, h, j);
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact form of [`step_weight`].
pub fn step_weight_exact(n: usize, k: usize, h: usize, j: usize) -> Ratio<i64> {
    let he = h.min(k).min(n - k);
    if j > he {
        return Ratio::from_integer(0);
    }
    let d = (he as i64 + 1) * binomial(k, j) as i64 * binomial(n - k, j) as i64;
    Ratio::new(1, d)
}

/// Σ_j q_h(j)·C(k,j)·C(n−k,j), exact. Equals 1 for the step kernel.
pub fn step_normalization(n: usize, k: usize, h: usize) -> Ratio<i64> {
    (0..=k.min(n - k))
        .map(|j| step_weight_exact(n, k, h, j) * Ratio::from_integer((binomial(k, j) * binomial(n - k, j)) as i64))
        .sum()
}

fn combinations(items: &[Item], j: usize) -> Vec<Vec<Item>> {
    if j == 0 {
        return vec![Vec::new()];
    }
    if items.len() < j {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], j - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Work done by a smoothing pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SmoothStats {
    pub transports: u64,
}

/// K X_B = Σ_{|B′|=k} q(k, D_k(B,B′))·transport(X_B, B′), with `q(k, j)` a caller-supplied
/// weight. Absent blocks are zero; they receive mass from their neighbors.
pub fn kernel_smooth_with(
    x: &WaveletCoefficients,
    universe: &ItemSubset,
    q: &dyn Fn(usize, usize) -> f64,
) -> Result<(WaveletCoefficients, SmoothStats)> {
    let n = universe.len();
    let mut out = WaveletCoefficients::new();
    let mut stats = SmoothStats::default();
    for (b, v) in x.iter() {
        if !b.is_subset_of(universe) {
            return Err(MraError::domain(format!("block {b} leaves the universe {universe}")));
        }
        let k = b.len();
        let outside = universe.difference(b);
        for j in 0..=k.min(n - k) {
            let wgt = q(k, j);
            if wgt == 0.0 {
                continue;
            }
            for drop in combinations(b.items(), j) {
                let kept = b.difference(&ItemSubset::new(drop));
                for add in combinations(outside.items(), j) {
                    let b2 = kept.union(&ItemSubset::new(add));
                    let moved = transport(v, b, &b2)?;
                    out.add_to_block(&b2, &moved, wgt);
                    stats.transports += 1;
                }
            }
        }
    }
    Ok((out, stats))
}

/// Smoothing with the step kernel of bandwidth `h`. `h = 0` is the identity.
pub fn kernel_smooth(x: &WaveletCoefficients, h: usize, universe: &ItemSubset) -> Result<WaveletCoefficients> {
    let n = universe.len();
    kernel_smooth_with(x, universe, &|k, j| step_weight(n, k, h, j)).map(|(y, _)| y)
}

/// Smooths only the blocks inside `A`, treating `A` as the universe.
pub fn local_regularize(x: &WaveletCoefficients, a: &ItemSubset, h: usize) -> Result<WaveletCoefficients> {
    local_regularize_counted(x, a, h).map(|(y, _)| y)
}

pub fn local_regularize_counted(
    x: &WaveletCoefficients,
    a: &ItemSubset,
    h: usize,
) -> Result<(WaveletCoefficients, SmoothStats)> {
    let n = a.len();
    kernel_smooth_with(&feature_marginal(x, a), a, &|k, j| step_weight(n, k, h, j))
}
