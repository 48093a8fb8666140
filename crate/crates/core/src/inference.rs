//! Statistical layer: observation designs, the wavelet empirical estimator,
//! identifiable blocks, solution spaces of marginal constraints and synthetic data.

use std::collections::{BTreeMap, BTreeSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::alpha::AlphaTable;
use crate::coeffs::{feature_marginal, WaveletCoefficients};
use crate::combi::{derangements, factorial};
use crate::dataset::{Dataset, Observation};
use crate::error::{MraError, Result};
use crate::function::RankingFunction;
use crate::fwt::{fwt_counted, fwt_single};
use crate::marginals::FULL_RANKING_MAX_N;
use crate::synthesis::{synthesize, synthesize_dense};
use crate::word::ItemSubset;

/// Subsets with positive observation probability and their weights ν(A).
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationDesign {
    subsets: Vec<ItemSubset>,
    weights: Vec<f64>,
}

impl ObservationDesign {
    /// Weights default to uniform. Given weights must be positive and sum to 1 within 1e-9.
    pub fn new(subsets: Vec<ItemSubset>, weights: Option<Vec<f64>>) -> Result<Self> {
        if subsets.is_empty() {
            return Err(MraError::domain("empty design"));
        }
        if let Some(a) = subsets.iter().find(|a| a.len() < 2) {
            return Err(MraError::domain(format!("design subset {a} has fewer than two items")));
        }
        let distinct: BTreeSet<&ItemSubset> = subsets.iter().collect();
        if distinct.len() != subsets.len() {
            return Err(MraError::domain("design subsets must be distinct"));
        }
        let weights = match weights {
            None => vec![1.0 / subsets.len() as f64; subsets.len()],
            Some(w) => {
                if w.len() != subsets.len() {
                    return Err(MraError::domain("one weight per subset"));
                }
                if w.iter().any(|&x| !(x > 0.0)) {
                    return Err(MraError::domain("design weights must be positive"));
                }
                let s: f64 = w.iter().sum();
                if (s - 1.0).abs() > 1e-9 {
                    return Err(MraError::domain(format!("design weights sum to {s}, not 1")));
                }
                w
            }
        };
        Ok(ObservationDesign { subsets, weights })
    }

    pub fn subsets(&self) -> &[ItemSubset] {
        &self.subsets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn items(&self) -> ItemSubset {
        ItemSubset::new(self.subsets.iter().flat_map(|a| a.items().iter().copied()).collect())
    }
}

/// P̄(𝒜) and its number of free parameters Σ d_{|B|}.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentifiableSupport {
    pub blocks: BTreeSet<ItemSubset>,
    pub dof: u64,
}

/// Downward closure of the design (subsets of size ≥ 2 plus ∅).
pub fn downward_closure(subsets: &[ItemSubset]) -> BTreeSet<ItemSubset> {
    let mut out = BTreeSet::new();
    for a in subsets {
        out.extend(a.ranking_subsets());
    }
    out
}

/// Blocks Ψ_B p that the design identifies, with their degrees of freedom.
pub fn identifiable_support(design: &[ItemSubset]) -> IdentifiableSupport {
    let blocks = downward_closure(design);
    let dof = blocks.iter().map(|b| derangements(b.len())).sum();
    IdentifiableSupport { blocks, dof }
}

/// Estimator state: a commutative monoid over observations. Shards can be built
/// independently and merged before [`EstimatorAccumulator::finish`].
#[derive(Clone, Debug, Default)]
pub struct EstimatorAccumulator {
    counts: RankingFunction,
    design: BTreeMap<ItemSubset, usize>,
    n: usize,
}

/// X̂ together with the coverage counts #{i : B ⊆ A_i}.
#[derive(Clone, Debug)]
pub struct EmpiricalEstimate {
    pub coefficients: WaveletCoefficients,
    pub coverage: BTreeMap<ItemSubset, usize>,
    pub n_obs: usize,
    /// Filter operations of the transform plus coverage updates.
    pub ops: u64,
}

impl EstimatorAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, o: &Observation) {
        self.counts.add_unchecked(o.ranking.clone(), 1.0);
        *self.design.entry(o.subset.clone()).or_insert(0) += 1;
        self.n += 1;
    }

    pub fn add_dataset(&mut self, d: &Dataset) {
        d.observations.iter().for_each(|o| self.add(o));
    }

    pub fn merge(&mut self, other: &EstimatorAccumulator) {
        self.counts.axpy(1.0, &other.counts);
        for (a, c) in &other.design {
            *self.design.entry(a.clone()).or_insert(0) += c;
        }
        self.n += other.n;
    }

    pub fn finish(&self, t: &AlphaTable) -> Result<EmpiricalEstimate> {
        if self.n == 0 {
            return Err(MraError::domain("the estimator needs at least one observation"));
        }
        let (mut x, ops) = fwt_counted(&self.counts, t)?;
        let mut coverage: BTreeMap<ItemSubset, usize> = BTreeMap::new();
        let mut extra = 0u64;
        for (a, c) in &self.design {
            for b in a.ranking_subsets() {
                *coverage.entry(b).or_insert(0) += c;
                extra += 1;
            }
        }
        x.map_blocks(|b, v| {
            let c = coverage[b] as f64;
            v.iter_mut().for_each(|y| *y /= c);
        });
        Ok(EmpiricalEstimate { coefficients: x, coverage, n_obs: self.n, ops: ops.total() + extra })
    }
}

/// X̂_B = Σ_i Ψ_B δ_{Π_i} / #{i : B ⊆ A_i}; uncovered blocks are absent.
pub fn wavelet_empirical_estimator(d: &Dataset, t: &AlphaTable) -> Result<WaveletCoefficients> {
    empirical_estimate(d, t).map(|e| e.coefficients)
}

pub fn empirical_estimate(d: &Dataset, t: &AlphaTable) -> Result<EmpiricalEstimate> {
    let mut acc = EstimatorAccumulator::new();
    acc.add_dataset(d);
    acc.finish(t)
}

/// [e·K! + (K+4)·2^{K−1}]·min(N, Σ_A |A|!) for the estimator computation.
pub fn estimator_bound(k_max: usize, n_obs: usize, design: &[ItemSubset]) -> f64 {
    let stored = crate::word::storage_bound(design, n_obs as u64) as f64;
    (std::f64::consts::E * factorial(k_max) as f64 + (k_max + 4) as f64 * 2f64.powi(k_max as i32 - 1)) * stored
}

/// φ_A X̂ restricted to the blocks inside A. No clipping or renormalization.
pub fn estimate_marginal(x: &WaveletCoefficients, a: &ItemSubset) -> Result<RankingFunction> {
    synthesize(&feature_marginal(x, a), a)
}

/// Euclidean projection of the values of `f` over Γ_A onto the probability simplex.
pub fn project_to_simplex(f: &RankingFunction, a: &ItemSubset) -> Result<RankingFunction> {
    let v = f.to_dense(a)?;
    let mut u = v.clone();
    u.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cum += ui;
        let t = (cum - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    let proj: Vec<f64> = v.iter().map(|x| (x - theta).max(0.0)).collect();
    Ok(RankingFunction::from_dense(a, &proj))
}

/// Family of solutions F ∈ 𝕃(Γ_A) of M_{A′}F = M_{A′}F₀ for all A′ ∈ 𝒮.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    /// φ_A Σ_{B ∈ P̄(𝒮)} Ψ_B F₀.
    pub particular: RankingFunction,
    /// P̄(A) ∖ P̄(𝒮): blocks left unconstrained.
    pub free_blocks: BTreeSet<ItemSubset>,
    /// |A|! − Σ_{B ∈ P̄(𝒮)} d_{|B|}.
    pub dim: u64,
}

pub fn solution_space(f0: &RankingFunction, a: &ItemSubset, s: &[ItemSubset], t: &AlphaTable) -> Result<SolutionSpace> {
    if let Some(b) = s.iter().find(|b| !b.is_subset_of(a)) {
        return Err(MraError::domain(format!("{b} is not a subset of {a}")));
    }
    if let Some(b) = s.iter().find(|b| b.len() < 2) {
        return Err(MraError::domain(format!("constraint subset {b} has fewer than two items")));
    }
    let constrained = downward_closure(s);
    let x = fwt_single(f0, a, t)?;
    let mut kept = WaveletCoefficients::new();
    for (b, v) in x.iter() {
        if constrained.contains(b) {
            kept.insert_block(b.clone(), v.to_vec())?;
        }
    }
    let particular = synthesize(&kept, a)?;
    let free_blocks: BTreeSet<ItemSubset> =
        a.ranking_subsets().into_iter().filter(|b| !constrained.contains(b)).collect();
    let fixed: u64 = constrained.iter().map(|b| derangements(b.len())).sum();
    Ok(SolutionSpace { particular, free_blocks, dim: factorial(a.len()) - fixed })
}

/// Draws `n_obs` observations: Σ ~ p, then A ~ ν, and records Σ restricted to A.
/// The generator is ChaCha20 seeded from `seed`, so output is reproducible.
pub fn generate_dataset(p: &RankingFunction, design: &ObservationDesign, n_obs: usize, seed: u64) -> Result<Dataset> {
    let support: Vec<_> = p.iter().collect();
    let Some((first, _)) = support.first() else {
        return Err(MraError::domain("empty model"));
    };
    let universe = first.content();
    if universe.len() > FULL_RANKING_MAX_N {
        return Err(MraError::resource(format!("models are limited to n ≤ {FULL_RANKING_MAX_N}")));
    }
    if support.iter().any(|(w, _)| w.content() != universe) {
        return Err(MraError::domain("model words must all rank the same items"));
    }
    if support.iter().any(|(_, v)| *v < 0.0) || (p.total() - 1.0).abs() > 1e-9 {
        return Err(MraError::domain("model must be nonnegative and sum to 1"));
    }
    if let Some(a) = design.subsets().iter().find(|a| !a.is_subset_of(&universe)) {
        return Err(MraError::domain(format!("design subset {a} leaves the model items {universe}")));
    }
    let pick_sigma = WeightedIndex::new(support.iter().map(|(_, v)| *v)).map_err(|e| MraError::domain(e.to_string()))?;
    let pick_a = WeightedIndex::new(design.weights()).map_err(|e| MraError::domain(e.to_string()))?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut obs = Vec::with_capacity(n_obs);
    for _ in 0..n_obs {
        let sigma = support[pick_sigma.sample(&mut rng)].0;
        let a = &design.subsets()[pick_a.sample(&mut rng)];
        obs.push(Observation { subset: a.clone(), ranking: sigma.induce(a)? });
    }
    Ok(Dataset::new(obs))
}

/// Independent estimators per group. Empty groups are skipped and reported.
pub fn per_group_features<G: Ord + Clone>(
    groups: &BTreeMap<G, Dataset>,
    t: &AlphaTable,
) -> Result<(BTreeMap<G, WaveletCoefficients>, Vec<G>)> {
    let mut out = BTreeMap::new();
    let mut skipped = Vec::new();
    for (g, d) in groups {
        if d.is_empty() {
            skipped.push(g.clone());
            continue;
        }
        out.insert(g.clone(), wavelet_empirical_estimator(d, t)?);
    }
    Ok((out, skipped))
}

/// ℓ₂ distance between coefficient sets, absent blocks counting as zero.
pub fn block_distance(x: &WaveletCoefficients, y: &WaveletCoefficients) -> f64 {
    let mut d = x.clone();
    d.axpy(-1.0, y);
    d.iter().flat_map(|(_, v)| v.iter()).map(|v| v * v).sum::<f64>().sqrt()
}

/// Dense φ_A X̂ over Γ_A, handy for simplex projection and tabulation.
pub fn estimate_marginal_dense(x: &WaveletCoefficients, a: &ItemSubset) -> Result<Vec<f64>> {
    synthesize_dense(&feature_marginal(x, a), a)
}
