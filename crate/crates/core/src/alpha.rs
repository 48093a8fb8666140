//! Alpha coefficients α_B(π,π′), the matrix entries of the top-scale wavelet projection.
//!
//! Only the row π = 12…k is stored for each size k; every other entry is read off
//! that row after relabeling. Rows are computed in exact rational arithmetic over a
//! common denominator per size and exposed both as reduced fractions and as `f64`.

use std::sync::OnceLock;

use num_rational::Ratio;

use crate::combi::{binomial, fact_usize, factorial, lex_rank, lex_unrank, next_permutation};
use crate::error::{MraError, Result};
use crate::word::{InjectiveWord, ItemSubset};

pub const DEFAULT_K_MAX: usize = 8;
pub const HARD_K_MAX: usize = 10;
/// Sizes up to this one get a cached dense |B|!×|B|! matrix for fast filtering.
const DENSE_MAX: usize = 6;

pub struct AlphaTable {
    k_max: usize,
    exact: Vec<Vec<Ratio<i64>>>,
    rows: Vec<Vec<f64>>,
    dense: Vec<OnceLock<Vec<f64>>>,
    build_ops: u64,
}

impl std::fmt::Debug for AlphaTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlphaTable").field("k_max", &self.k_max).field("build_ops", &self.build_ops).finish()
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

fn lcm(a: i128, b: i128) -> Option<i128> {
    (a / gcd(a, b)).checked_mul(b)
}

fn overflow() -> MraError {
    MraError::resource("alpha table arithmetic overflow")
}

/// Builds the canonical rows for every size 2..=k_max.
pub fn build_alpha_table(k_max: usize) -> Result<AlphaTable> {
    if k_max > HARD_K_MAX {
        return Err(MraError::resource(format!("K_max = {k_max} exceeds the cap {HARD_K_MAX}")));
    }
    let k_max = k_max.max(2);
    // numer[m][r] / denom[m] = α_⟦m⟧(12…m, π′) with π′ of lexicographic rank r.
    let mut numer: Vec<Vec<i128>> = vec![Vec::new(); k_max + 1];
    let mut denom: Vec<i128> = vec![1; k_max + 1];
    let mut ops: u64 = 0;
    let mut sub = [0u8; HARD_K_MAX];
    for m in 2..=k_max {
        let mf = factorial(m) as i128;
        let mut d = mf;
        for l in 2..m {
            let w = denom[l].checked_mul(factorial(m - l + 1) as i128).ok_or_else(overflow)?;
            d = lcm(d, w).ok_or_else(overflow)?;
        }
        denom[m] = d;
        let mult: Vec<i128> = (0..m)
            .map(|l| if l >= 2 { d / (denom[l] * factorial(m - l + 1) as i128) } else { 0 })
            .collect();
        let mut row = Vec::with_capacity(fact_usize(m));
        let mut p: Vec<u8> = (0..m as u8).collect();
        loop {
            let mut acc: i128 = -(d / mf);
            if p.iter().enumerate().all(|(i, &v)| v as usize == i) {
                acc += d;
            }
            for l in 2..m {
                for i in 0..=m - l {
                    let hi = (i + l) as u8;
                    let mut t = 0;
                    for &v in &p {
                        if v >= i as u8 && v < hi {
                            sub[t] = v - i as u8;
                            t += 1;
                        }
                    }
                    let s = lex_rank(&sub[..l]);
                    acc = numer[l][s]
                        .checked_mul(mult[l])
                        .and_then(|x| acc.checked_sub(x))
                        .ok_or_else(overflow)?;
                }
            }
            ops += binomial(m, 2);
            row.push(acc);
            if !next_permutation(&mut p) {
                break;
            }
        }
        numer[m] = row;
    }
    let mut exact = vec![Vec::new(); k_max + 1];
    let mut rows = vec![Vec::new(); k_max + 1];
    for m in 2..=k_max {
        let d = denom[m];
        exact[m] = numer[m]
            .iter()
            .map(|&n| {
                let g = gcd(n, d).max(1);
                let (a, b) = (n / g, d / g);
                Ok(Ratio::new_raw(i64::try_from(a).map_err(|_| overflow())?, i64::try_from(b).map_err(|_| overflow())?))
            })
            .collect::<Result<_>>()?;
        rows[m] = numer[m].iter().map(|&n| n as f64 / d as f64).collect();
    }
    Ok(AlphaTable {
        k_max,
        exact,
        rows,
        dense: (0..=k_max).map(|_| OnceLock::new()).collect(),
        build_ops: ops,
    })
}

/// Local positions of `w`'s items within `b`.
fn local(b: &ItemSubset, w: &InjectiveWord) -> Result<Vec<u8>> {
    if w.len() != b.len() {
        return Err(MraError::domain(format!("{w} is not a ranking of {b}")));
    }
    w.items()
        .iter()
        .map(|&x| b.index_of(x).map(|i| i as u8).ok_or_else(|| MraError::domain(format!("{w} is not a ranking of {b}"))))
        .collect()
}

impl AlphaTable {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Number of elementary operations spent building the table.
    pub fn build_ops(&self) -> u64 {
        self.build_ops
    }

    /// α_⟦k⟧(12…k, ·) in lexicographic order, exact.
    pub fn canonical_row(&self, k: usize) -> Result<&[Ratio<i64>]> {
        self.check(k)?;
        if k < 2 {
            return Err(MraError::domain("alpha rows exist for k ≥ 2"));
        }
        Ok(&self.exact[k])
    }

    pub fn canonical_row_f64(&self, k: usize) -> &[f64] {
        &self.rows[k]
    }

    fn check(&self, k: usize) -> Result<()> {
        if k > self.k_max {
            return Err(MraError::resource(format!("alpha table built for sizes ≤ {}, needs {k}", self.k_max)));
        }
        Ok(())
    }

    /// Index into the canonical row for local words `p` (playing π) and `q` (playing π′).
    fn row_index(p: &[u8], q: &[u8]) -> usize {
        let mut pos = [0u8; HARD_K_MAX];
        for (i, &v) in p.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        let mut s = [0u8; HARD_K_MAX];
        for (m, &v) in q.iter().enumerate() {
            s[m] = pos[v as usize];
        }
        lex_rank(&s[..q.len()])
    }

    /// Exact α_B(π,π′) for π, π′ ∈ Γ_B.
    pub fn alpha(&self, b: &ItemSubset, pi: &InjectiveWord, pi2: &InjectiveWord) -> Result<Ratio<i64>> {
        if b.is_empty() {
            return Ok(Ratio::from_integer(1));
        }
        self.check(b.len())?;
        let p = local(b, pi)?;
        let q = local(b, pi2)?;
        Ok(self.exact[b.len()][Self::row_index(&p, &q)])
    }

    pub fn alpha_f64(&self, b: &ItemSubset, pi: &InjectiveWord, pi2: &InjectiveWord) -> Result<f64> {
        let r = self.alpha(b, pi, pi2)?;
        Ok(*r.numer() as f64 / *r.denom() as f64)
    }

    /// Adds `scale · α(·, π′)` to `out`, where π′ is the local permutation of rank `col`
    /// and `out` is indexed by the lexicographic rank of π.
    pub(crate) fn add_column(&self, k: usize, col: usize, scale: f64, out: &mut [f64]) {
        let nk = fact_usize(k);
        if k <= DENSE_MAX {
            let dense = self.dense[k].get_or_init(|| self.dense_columns(k));
            for (o, a) in out.iter_mut().zip(&dense[col * nk..(col + 1) * nk]) {
                *o += scale * a;
            }
        } else {
            let mut q = [0u8; HARD_K_MAX];
            lex_unrank(col, &mut q[..k]);
            self.walk_column(k, &q[..k], |i, a| out[i] += scale * a);
        }
    }

    /// Visits (rank of π, α(π, π′)) for all π, given local π′ = `q`.
    /// The canonical entry of rank r sits at the π with π[σ_t] = q_t, σ the permutation of rank r.
    fn walk_column(&self, k: usize, q: &[u8], mut f: impl FnMut(usize, f64)) {
        let row = &self.rows[k];
        let mut sigma: Vec<u8> = (0..k as u8).collect();
        let mut pi = [0u8; HARD_K_MAX];
        let mut r = 0;
        loop {
            for t in 0..k {
                pi[sigma[t] as usize] = q[t];
            }
            f(lex_rank(&pi[..k]), row[r]);
            r += 1;
            if !next_permutation(&mut sigma) {
                break;
            }
        }
    }

    fn dense_columns(&self, k: usize) -> Vec<f64> {
        let nk = fact_usize(k);
        let mut m = vec![0.0; nk * nk];
        let mut q = vec![0u8; k];
        for col in 0..nk {
            lex_unrank(col, &mut q);
            let dst = &mut m[col * nk..(col + 1) * nk];
            self.walk_column(k, &q, |i, a| dst[i] = a);
        }
        m
    }

    /// Full exact matrix [α_⟦k⟧(π,π′)] with rows and columns in lexicographic order.
    pub fn exact_matrix(&self, k: usize) -> Result<Vec<Vec<Ratio<i64>>>> {
        self.check(k)?;
        let nk = fact_usize(k);
        let mut p = vec![0u8; k];
        let mut q = vec![0u8; k];
        let mut out = vec![vec![Ratio::from_integer(0); nk]; nk];
        for (i, row) in out.iter_mut().enumerate() {
            lex_unrank(i, &mut p);
            for (j, cell) in row.iter_mut().enumerate() {
                lex_unrank(j, &mut q);
                *cell = self.exact[k][Self::row_index(&p, &q)];
            }
        }
        Ok(out)
    }
}

/// Upper bound ½k²k! on the table construction cost.
pub fn alpha_table_bound(k: usize) -> f64 {
    0.5 * (k * k) as f64 * factorial(k) as f64
}
