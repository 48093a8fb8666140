//! Random-to-random shuffle matrices R_k and the check that their kernels are the
//! high-scale spaces φ′(H^j), j > k.

use rayon::prelude::*;

use super::embedding::phi_prime_by_definition;
use super::oracle::hb_basis;
use super::{cap, AuditReport};
use crate::combi::{binomial, derangements, fact_usize, factorial, pattern_rank};
use crate::error::{MraError, Result};
use crate::linalg::Matrix;
use crate::word::ItemSubset;

pub const SHUFFLE_MAX_N: usize = 6;
pub const NULL_SPACE_MAX_N: usize = 5;

/// Tolerance for "annihilates", relative to the size of the vector.
pub const ANNIHILATION_TOL: f64 = 1e-8;
/// Smallest eigenvalue accepted as nonnegative.
pub const PSD_TOL: f64 = 1e-10;
/// Bound on ‖[R_j, R_k]‖_max.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// For every σ ∈ S_n (lexicographic order) and every k-subset (mask order), the
/// lexicographic rank of the induced order σ|A.
fn induced_table(n: usize, k: usize) -> (Vec<u32>, Vec<Vec<u16>>) {
    let masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    let u = ItemSubset::range(n);
    let table = (0..fact_usize(n))
        .map(|r| {
            let sigma = u.unrank(r);
            let mut pos = vec![0usize; n];
            for (i, &x) in sigma.items().iter().enumerate() {
                pos[x as usize - 1] = i;
            }
            masks
                .iter()
                .map(|&m| {
                    let p: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| pos[i]).collect();
                    pattern_rank(&p) as u16
                })
                .collect()
        })
        .collect();
    (masks, table)
}

/// R_k(σ, σ′) = (n−k)!·(k!/n!)²·(C(n,k) − d^k(σ, σ′)) over S_n in lexicographic order.
pub fn shuffle_matrix(n: usize, k: usize) -> Result<Matrix> {
    cap(n, SHUFFLE_MAX_N, "shuffle_matrix")?;
    if k < 1 || k > n {
        return Err(MraError::domain(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let (_, table) = induced_table(n, k);
    let nf = factorial(n) as f64;
    let c = factorial(n - k) as f64 * (factorial(k) as f64 / nf).powi(2);
    let size = table.len();
    let mut m = Matrix::zeros(size, size);
    for i in 0..size {
        for j in i..size {
            let agree = table[i].iter().zip(&table[j]).filter(|(x, y)| x == y).count();
            let v = c * agree as f64;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

/// ‖R_j R_k − R_k R_j‖_max.
pub fn commutator_norm(n: usize, j: usize, k: usize) -> Result<f64> {
    let rj = shuffle_matrix(n, j)?;
    let rk = shuffle_matrix(n, k)?;
    Ok(rj.matmul(&rk).sub(&rk.matmul(&rj)).max_abs())
}

/// φ′_⟦n⟧ of every basis vector of every H_B with |B| ∈ sizes, as dense vectors over S_n.
pub(crate) fn embedded_basis(n: usize, sizes: impl Fn(usize) -> bool) -> Result<Vec<(ItemSubset, Vec<f64>)>> {
    let u = ItemSubset::range(n);
    let mut out = Vec::new();
    for b in u.ranking_subsets() {
        if !sizes(b.len()) {
            continue;
        }
        for v in hb_basis(&b)? {
            out.push((b.clone(), phi_prime_by_definition(&v, &b, &u)?));
        }
    }
    Ok(out)
}

fn high_scale_dim(n: usize, k: usize) -> usize {
    (k + 1..=n).map(|j| (binomial(n, j) * derangements(j)) as usize).sum()
}

/// Checks that R_k is symmetric PSD with constant row sums, annihilates φ′_⟦n⟧(H_B) for
/// every |B| > k, and has rank 1 + Σ_{j=2}^{k} C(n,j)·d_j, so that its kernel is exactly
/// ⊕_{j>k} φ′(H^j).
pub fn null_space_check(n: usize, k: usize) -> Result<AuditReport> {
    cap(n, NULL_SPACE_MAX_N, "null_space_check")?;
    if k < 2 || k > n {
        return Err(MraError::domain(format!("need 2 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let r = shuffle_matrix(n, k)?;
    let mut rep = AuditReport::new();
    let tag = format!("n={n} k={k}");

    rep.check(format!("R_k symmetric [{tag}]"), r.is_symmetric(0.0), "exact symmetry");
    let sums: Vec<f64> = (0..r.rows()).map(|i| r.row(i).iter().sum()).collect();
    let spread = sums.iter().fold(0.0f64, |m, s| m.max((s - sums[0]).abs()));
    rep.check(format!("R_k constant row sums [{tag}]"), spread <= 1e-12, format!("row sum {:.6}, spread {spread:.1e}", sums[0]));
    let ev = r.symmetric_eigenvalues();
    rep.check(format!("R_k PSD [{tag}]"), ev[0] >= -PSD_TOL, format!("min eigenvalue {:.3e}", ev[0]));

    let high = embedded_basis(n, |s| s > k)?;
    let worst = high
        .par_iter()
        .map(|(_, v)| {
            let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
            r.matvec(v).iter().fold(0.0f64, |m, x| m.max(x.abs())) / scale
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0f64, f64::max);
    rep.check(
        format!("R_k annihilates φ′(H_B), |B|>k [{tag}]"),
        worst <= ANNIHILATION_TOL,
        format!("{} vectors, max relative residual {worst:.2e}", high.len()),
    );

    let expect_rank = 1 + (2..=k).map(|j| (binomial(n, j) * derangements(j)) as usize).sum::<usize>();
    let rank = r.rank();
    rep.check(format!("rank R_k [{tag}]"), rank == expect_rank, format!("rank {rank}, expected {expect_rank}"));

    let nullity = r.rows() - rank;
    let expect_null = high_scale_dim(n, k);
    let span = if high.is_empty() {
        0
    } else {
        Matrix::from_columns(&high.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()).rank()
    };
    rep.check(
        format!("ker R_k = ⊕_(j>k) φ′(H^j) [{tag}]"),
        nullity == expect_null && span == expect_null,
        format!("nullity {nullity}, dim span {span}, expected {expect_null}"),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_k2_diagonal() {
        let r = shuffle_matrix(3, 2).unwrap();
        assert!((r[(0, 0)] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn null_space_examples() {
        let rep = null_space_check(4, 3).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(shuffle_matrix(4, 3).unwrap().rank(), 15);
        assert_eq!(shuffle_matrix(4, 2).unwrap().rank(), 24 - 17);
    }

    #[test]
    fn caps() {
        assert!(matches!(shuffle_matrix(7, 2), Err(MraError::Resource(_))));
        assert!(matches!(null_space_check(6, 2), Err(MraError::Resource(_))));
    }
}
