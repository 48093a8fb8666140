//! The linear-extension embedding φ′ and the orthogonal decomposition it induces on
//! functions of full rankings.

use super::shuffle::embedded_basis;
use super::{cap, AuditReport};
use crate::combi::{binomial, derangements, fact_usize, factorial};
use crate::error::{MraError, Result};
use crate::linalg::{dot, Matrix};
use crate::word::ItemSubset;

pub const EMBEDDING_MAX_N: usize = 5;
/// Bound on |⟨u, v⟩| / (‖u‖·‖v‖) for vectors from different scales.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// φ′_A applied to one block (dense over Γ_B), dense over Γ_A:
/// σ ↦ (|B|!/|A|!)·X_B(σ|B).
pub fn phi_prime_by_definition(block: &[f64], b: &ItemSubset, a: &ItemSubset) -> Result<Vec<f64>> {
    if !b.is_subset_of(a) {
        return Err(MraError::domain(format!("{b} is not contained in {a}")));
    }
    cap(a.len(), EMBEDDING_MAX_N + 1, "dense φ′")?;
    let w = factorial(b.len()) as f64 / factorial(a.len()) as f64;
    Ok((0..fact_usize(a.len()))
        .map(|r| {
            if b.is_empty() {
                return w * block[0];
            }
            let sigma = a.unrank(r);
            w * block[b.rank_of(&sigma.induce(b).expect("subset"))]
        })
        .collect())
}

/// Indicator of S_n(π) = {σ : σ|c(π) = π} over S_n in lexicographic order.
fn extension_indicator(n: usize, pi: &[u32]) -> Vec<f64> {
    let u = ItemSubset::range(n);
    let b = ItemSubset::new(pi.to_vec());
    (0..fact_usize(n))
        .map(|r| if u.unrank(r).induce(&b).expect("subset").items() == pi { 1.0 } else { 0.0 })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Audits V⁰ = φ′(H⁰) and W^k = φ′(H^k) inside 𝕃(S_n): injectivity on each H_B, the
/// dimension of each W^k, pairwise orthogonality of the scales, that they fill 𝕃(S_n),
/// and 𝟙_{S_n} = 𝟙_{S_n(ab)} + 𝟙_{S_n(ba)}.
pub fn embedding_audit(n: usize) -> Result<AuditReport> {
    cap(n, EMBEDDING_MAX_N, "embedding_audit")?;
    if n < 2 {
        return Err(MraError::domain("embedding_audit needs n ≥ 2"));
    }
    let mut rep = AuditReport::new();
    let u = ItemSubset::range(n);
    let all = embedded_basis(n, |_| true)?;

    let mut worst_injective = (true, String::new());
    for b in u.ranking_subsets() {
        let cols: Vec<Vec<f64>> = all.iter().filter(|(c, _)| *c == b).map(|(_, v)| v.clone()).collect();
        let rank = Matrix::from_columns(&cols).rank();
        let expect = derangements(b.len()) as usize;
        if rank != expect && worst_injective.0 {
            worst_injective = (false, format!("rank φ′(H_{b}) = {rank}, d = {expect}"));
        }
    }
    rep.check(format!("φ′ injective on every H_B [n={n}]"), worst_injective.0, worst_injective.1);

    let mut scales: Vec<(usize, Vec<Vec<f64>>)> = Vec::new();
    for k in (0..=n).filter(|&k| k != 1) {
        let cols: Vec<Vec<f64>> = all.iter().filter(|(b, _)| b.len() == k).map(|(_, v)| v.clone()).collect();
        let rank = Matrix::from_columns(&cols).rank();
        let expect = (binomial(n, k) * derangements(k)) as usize;
        rep.check(
            format!("dim φ′(H^{k}) = C(n,k)·d_k [n={n}]"),
            rank == expect,
            format!("rank {rank}, expected {expect}"),
        );
        scales.push((k, cols));
    }

    for (i, (k, wk)) in scales.iter().enumerate() {
        for (j, wj) in scales[..i].iter() {
            let worst = wk
                .iter()
                .flat_map(|x| wj.iter().map(move |y| dot(x, y).abs() / (norm(x) * norm(y))))
                .fold(0.0f64, f64::max);
            rep.check(
                format!("W^{k} ⊥ W^{j} [n={n}]"),
                worst <= ORTHOGONALITY_TOL,
                format!("max normalized inner product {worst:.2e}"),
            );
        }
    }

    let total = Matrix::from_columns(&all.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()).rank();
    rep.check(
        format!("V⁰ ⊕ W² ⊕ … ⊕ W^n = 𝕃(S_n) [n={n}]"),
        total == fact_usize(n),
        format!("rank {total} of {}", fact_usize(n)),
    );

    let ones = vec![1.0; fact_usize(n)];
    let mut split_ok = true;
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            let s: Vec<f64> = extension_indicator(n, &[a, b])
                .iter()
                .zip(extension_indicator(n, &[b, a]))
                .map(|(x, y)| x + y)
                .collect();
            split_ok &= s == ones;
        }
    }
    rep.check(format!("𝟙_(S_n) = 𝟙_(S_n(ab)) + 𝟙_(S_n(ba)) [n={n}]"), split_ok, "every pair a<b");
    Ok(rep)
}
