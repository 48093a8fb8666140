//! Multiresolution analysis of incomplete rankings.
//!
//! A ranking `a₁ ≻ … ≻ a_k` of a subset of items is an injective word. Functions on
//! all such words decompose into blocks `Ψ_B F`, one per item subset `B`, each carrying
//! the information specific to the relative order of the items of `B`. The fast wavelet
//! transform computes these blocks with low-pass (marginal) and high-pass (alpha
//! coefficient) filters, and the synthesis operator `φ_A` rebuilds any marginal on `A`
//! from the blocks with `B ⊆ A`.
//!
//! ```
//! use mra_rank::prelude::*;
//!
//! let table = build_alpha_table(4)?;
//! let f = RankingFunction::dirac(InjectiveWord::digits("213")?)?;
//! let x = fwt(&f, &table)?;
//! let back = synthesize(&x, &ItemSubset::range(3))?;
//! assert!(back.max_abs_diff(&f) < 1e-12);
//! # Ok::<(), mra_rank::MraError>(())
//! ```

pub mod alpha;
pub mod coeffs;
pub mod combi;
pub mod dataset;
pub mod error;
pub mod function;
pub mod fwt;
pub mod inference;
pub mod io;
pub mod linalg;
pub mod marginals;
pub mod regularization;
pub mod synthesis;
pub mod validation;
pub mod word;

pub use error::{MraError, Result};

pub mod prelude {
    pub use crate::alpha::{build_alpha_table, AlphaTable, DEFAULT_K_MAX};
    pub use crate::coeffs::{feature_marginal, WaveletCoefficients};
    pub use crate::dataset::{parse_dataset, serialize_dataset, Dataset, Observation};
    pub use crate::error::{MraError, Result};
    pub use crate::function::RankingFunction;
    pub use crate::fwt::{fwt, fwt_single};
    pub use crate::inference::{empirical_estimate, wavelet_empirical_estimator, ObservationDesign};
    pub use crate::marginals::marginal;
    pub use crate::regularization::{kernel_smooth, local_regularize};
    pub use crate::synthesis::synthesize;
    pub use crate::word::{enumerate_rankings, InjectiveWord, Item, ItemSubset};
}
