//! Marginal operators, classical empirical estimators and the linear-extension embedding.

use crate::combi::factorial;
use crate::dataset::Dataset;
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::linalg::Matrix;
use crate::word::{enumerate_rankings, InjectiveWord, ItemSubset};

/// Largest universe for the estimators that live on full rankings.
pub const FULL_RANKING_MAX_N: usize = 8;

/// M_A f. Sums over the support of `f` only; words whose content misses part of `A` are ignored.
/// For `A = ∅` the result is the total mass placed on the empty word.
pub fn marginal(f: &RankingFunction, a: &ItemSubset) -> Result<RankingFunction> {
    if a.len() == 1 {
        return Err(MraError::domain("marginal on a single item is undefined"));
    }
    let mut out = RankingFunction::new();
    if a.is_empty() {
        out.add_unchecked(InjectiveWord::empty(), f.total());
        out.compact();
        return Ok(out);
    }
    for (w, v) in f.iter() {
        if w.len() < a.len() {
            continue;
        }
        if let Ok(p) = w.induce(a) {
            out.add_unchecked(p, v);
        }
    }
    out.compact();
    Ok(out)
}

/// P̂_A: empirical distribution of the rankings observed on exactly `A`.
pub fn naive_empirical_marginal(d: &Dataset, a: &ItemSubset) -> Result<RankingFunction> {
    let mut out = RankingFunction::new();
    let mut n = 0usize;
    for o in d.observations.iter().filter(|o| &o.subset == a) {
        out.add_unchecked(o.ranking.clone(), 1.0);
        n += 1;
    }
    if n == 0 {
        return Err(MraError::domain(format!("unobserved subset {a}")));
    }
    Ok(out.scaled(1.0 / n as f64))
}

/// Q̂_B: average of the induced rankings on `B` over observations whose subset contains `B`.
pub fn marginal_based_estimator(d: &Dataset, b: &ItemSubset) -> Result<RankingFunction> {
    let mut out = RankingFunction::new();
    let mut n = 0usize;
    for o in &d.observations {
        if b.is_subset_of(&o.subset) {
            out.add_unchecked(o.ranking.induce(b)?, 1.0);
            n += 1;
        }
    }
    if n == 0 {
        return Err(MraError::domain(format!("no observation covers {b}")));
    }
    Ok(out.scaled(1.0 / n as f64))
}

/// All σ ∈ Γ_A with π ⊂ σ, where `A ⊇ c(π)`.
pub fn linear_extensions(pi: &InjectiveWord, a: &ItemSubset) -> Result<Vec<InjectiveWord>> {
    let c = pi.content();
    if !c.is_subset_of(a) {
        return Err(MraError::domain(format!("{pi} is not a word on {a}")));
    }
    let mut acc = vec![pi.items().to_vec()];
    for &x in a.difference(&c).items() {
        let mut next = Vec::with_capacity(acc.len() * (acc[0].len() + 1));
        for w in &acc {
            for pos in 0..=w.len() {
                let mut v = w.clone();
                v.insert(pos, x);
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out: Vec<InjectiveWord> = acc.into_iter().map(InjectiveWord::from_vec_unchecked).collect();
    out.sort();
    Ok(out)
}

/// φ′_A: spreads the mass of each word uniformly over its linear extensions in Γ_A.
pub fn linear_extension_embed(f: &RankingFunction, a: &ItemSubset) -> Result<RankingFunction> {
    if a.len() == 1 {
        return Err(MraError::domain("cannot embed into a single item"));
    }
    let mut out = RankingFunction::new();
    for (w, v) in f.iter() {
        let ext = linear_extensions(w, a)?;
        let c = v * factorial(w.len()) as f64 / factorial(a.len()) as f64;
        for s in ext {
            out.add_unchecked(s, c);
        }
    }
    out.compact();
    Ok(out)
}

fn check_full_scale(universe: &ItemSubset) -> Result<()> {
    if universe.len() > FULL_RANKING_MAX_N {
        return Err(MraError::resource(format!(
            "full-ranking estimators are limited to n ≤ {FULL_RANKING_MAX_N}"
        )));
    }
    if universe.len() < 2 {
        return Err(MraError::domain("the universe needs at least two items"));
    }
    Ok(())
}

/// p̂_N: each observation contributes the uniform distribution over its linear extensions.
pub fn biased_estimator(d: &Dataset, universe: &ItemSubset) -> Result<RankingFunction> {
    check_full_scale(universe)?;
    if d.is_empty() {
        return Err(MraError::domain("empty dataset"));
    }
    let mut out = RankingFunction::new();
    for o in &d.observations {
        let e = linear_extension_embed(&RankingFunction::dirac(o.ranking.clone())?, universe)?;
        out.axpy(1.0, &e);
    }
    Ok(out.scaled(1.0 / d.len() as f64))
}

/// T_ν(σ,σ′) = Σ_A ν(A)(|A|!/n!)·𝕀{σ|A = σ′|A}, rows and columns in lexicographic order of S_n.
pub fn similarity_matrix_tnu(nu: &[(ItemSubset, f64)], universe: &ItemSubset) -> Result<Matrix> {
    check_full_scale(universe)?;
    let total: f64 = nu.iter().map(|(_, w)| w).sum();
    if nu.iter().any(|(_, w)| *w < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(MraError::domain("ν must be nonnegative and sum to 1"));
    }
    let perms = enumerate_rankings(universe)?;
    let n = perms.len();
    let nf = factorial(universe.len()) as f64;
    let mut m = Matrix::zeros(n, n);
    for (a, w) in nu {
        if !a.is_subset_of(universe) {
            return Err(MraError::domain(format!("{a} is not inside the universe")));
        }
        let c = w * factorial(a.len()) as f64 / nf;
        let induced: Vec<InjectiveWord> = perms.iter().map(|s| s.induce(a)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in 0..n {
                if induced[i] == induced[j] {
                    m[(i, j)] += c;
                }
            }
        }
    }
    Ok(m)
}
