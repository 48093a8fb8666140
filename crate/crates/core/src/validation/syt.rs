//! Standard Young tableaux and the eig statistic that assigns each tableau to a scale.
//!
//! Summing dim S^{shape(Q)} over the tableaux Q with eig(Q) = n − k must give
//! dim H^k = C(n,k)·d_k.

use std::collections::BTreeMap;

use super::{cap, AuditReport};
use crate::combi::{binomial, derangements, factorial};
use crate::error::{MraError, Result};

pub const SYT_MAX_N: usize = 8;

/// A standard Young tableau as rows of entries 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Length l of the run 1, 2, …, l at the start of the first row, and length m of
    /// the run l+1, …, l+m directly below the corner in the first column.
    pub fn hook_runs(&self) -> (usize, usize) {
        let first = &self.rows[0];
        let l = first.iter().enumerate().take_while(|(i, &v)| v as usize == i + 1).count();
        let m = self.rows[1..]
            .iter()
            .enumerate()
            .take_while(|(i, r)| r[0] as usize == l + i + 1)
            .count();
        (l, m)
    }

    /// eig(Q) = l if m is even, l − 1 if m is odd.
    pub fn eig(&self) -> usize {
        let (l, m) = self.hook_runs();
        if m % 2 == 0 {
            l
        } else {
            l - 1
        }
    }

    /// The scale k = n − eig(Q) this tableau contributes to.
    pub fn scale(&self) -> usize {
        self.n() - self.eig()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|p| p[1].len() <= p[0].len() && p[1].iter().zip(&p[0]).all(|(lo, hi)| lo > hi));
        rows_ok && cols_ok
    }
}

/// All standard Young tableaux with n boxes, built by placing 1, 2, …, n in turn at the
/// end of any row that stays a partition.
pub fn enumerate_syt(n: usize) -> Result<Vec<Tableau>> {
    cap(n, SYT_MAX_N, "SYT enumeration")?;
    if n == 0 {
        return Err(MraError::domain("tableaux need n ≥ 1"));
    }
    fn grow(rows: &mut Vec<Vec<u8>>, next: u8, n: u8, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..=rows.len() {
            let fits = if i == rows.len() { true } else { i == 0 || rows[i].len() < rows[i - 1].len() };
            if !fits {
                continue;
            }
            if i == rows.len() {
                rows.push(vec![next]);
                grow(rows, next + 1, n, out);
                rows.pop();
            } else {
                rows[i].push(next);
                grow(rows, next + 1, n, out);
                rows[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, n as u8, &mut out);
    Ok(out)
}

/// Number of standard tableaux of shape λ by the hook-length formula.
pub fn hook_length_dim(shape: &[usize]) -> u64 {
    let n: usize = shape.iter().sum();
    let mut hooks: u64 = 1;
    for (i, &len) in shape.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&l| l > j).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(n) / hooks
}

/// The ten tableaux of size 4 grouped by shape, each with the scale k = 4 − eig(Q).
pub fn n4_reference() -> Vec<(Vec<Vec<u8>>, usize)> {
    vec![
        (vec![vec![1, 2, 3, 4]], 0),
        (vec![vec![1, 3, 4], vec![2]], 4),
        (vec![vec![1, 2, 4], vec![3]], 3),
        (vec![vec![1, 2, 3], vec![4]], 2),
        (vec![vec![1, 3], vec![2, 4]], 4),
        (vec![vec![1, 2], vec![3, 4]], 3),
        (vec![vec![1, 3], vec![2], vec![4]], 4),
        (vec![vec![1, 2], vec![3], vec![4]], 2),
        (vec![vec![1, 4], vec![2], vec![3]], 3),
        (vec![vec![1], vec![2], vec![3], vec![4]], 4),
    ]
}

/// Per-scale dimension ledger from the tableau statistic, checked against C(n,k)·d_k,
/// the total n!, one copy of S^{(n−1,1)} per scale k ≥ 2, and κ^k_λ = 0 for λ₁ < n−k.
pub fn syt_dimension_audit(n: usize) -> Result<AuditReport> {
    cap(n, SYT_MAX_N, "syt_dimension_audit")?;
    if n < 2 {
        return Err(MraError::domain("syt_dimension_audit needs n ≥ 2"));
    }
    let tableaux = enumerate_syt(n)?;
    let mut rep = AuditReport::new();
    let tag = format!("n={n}");

    let mut by_shape: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for q in &tableaux {
        *by_shape.entry(q.shape()).or_default() += 1;
    }
    let hooks_ok = by_shape.iter().all(|(s, &c)| hook_length_dim(s) == c);
    rep.check(
        format!("#SYT(λ) = hook-length formula [{tag}]"),
        hooks_ok && tableaux.iter().all(Tableau::is_standard),
        format!("{} tableaux, {} shapes", tableaux.len(), by_shape.len()),
    );

    // κ[k][λ] = #{Q of shape λ with scale k}.
    let mut kappa: BTreeMap<usize, BTreeMap<Vec<usize>, u64>> = BTreeMap::new();
    for q in &tableaux {
        *kappa.entry(q.scale()).or_default().entry(q.shape()).or_default() += 1;
    }
    let mut total = 0;
    for k in 0..=n {
        let dim: u64 = kappa.get(&k).map_or(0, |m| m.iter().map(|(s, &c)| c * by_shape[s]).sum());
        let want = binomial(n, k) * derangements(k);
        total += dim;
        rep.check(format!("dim H^{k} = C(n,k)·d_k [{tag}]"), dim == want, format!("{dim} vs {want}"));
    }
    rep.check(format!("Σ_k dim H^k = n! [{tag}]"), total == factorial(n), format!("{total}"));

    let standard = vec![n - 1, 1];
    let mut one_copy = true;
    let mut vanish = true;
    for k in 0..=n {
        let row = kappa.get(&k);
        let copies = row.and_then(|m| m.get(&standard)).copied().unwrap_or(0);
        one_copy &= copies == if k >= 2 { 1 } else { 0 };
        if let Some(m) = row {
            vanish &= m.iter().all(|(s, &c)| c == 0 || s[0] >= n - k);
        }
    }
    rep.check(format!("one copy of S^(n−1,1) per scale k ≥ 2 [{tag}]"), one_copy, "κ^k_(n−1,1) = 1");
    rep.check(format!("κ^k_λ = 0 when λ₁ < n−k [{tag}]"), vanish, "every scale");

    if n == 4 {
        let placed = n4_reference()
            .into_iter()
            .all(|(rows, k)| tableaux.iter().any(|q| q.rows == rows && q.scale() == k));
        rep.check("n=4 tableau placement matches the frozen reference table", placed && tableaux.len() == 10, "10 tableaux");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_involution_numbers() {
        let want = [1, 2, 4, 10, 26, 76, 232, 764];
        for n in 1..=8 {
            assert_eq!(enumerate_syt(n).unwrap().len(), want[n - 1]);
        }
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(hook_length_dim(&[3, 1]), 3);
        assert_eq!(hook_length_dim(&[2, 2]), 2);
        assert_eq!(hook_length_dim(&[4, 2, 1]), 35);
    }

    #[test]
    fn eig_of_n4_tableaux() {
        for (rows, k) in n4_reference() {
            let q = Tableau { rows };
            assert_eq!(q.scale(), k, "{q:?}");
        }
    }
}
