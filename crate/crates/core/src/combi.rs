//! Small combinatorial helpers: factorials, binomials, derangement numbers and
//! lexicographic ranking of permutations of `0..k`.

/// Largest size for which `k!` is tabulated (fits comfortably in `u64`).
pub const MAX_FACT: usize = 20;

const FACT: [u64; MAX_FACT + 1] = {
    let mut t = [1u64; MAX_FACT + 1];
    let mut i = 1;
    while i <= MAX_FACT {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
};

/// `k!`, panics for `k > 20`.
pub fn factorial(k: usize) -> u64 {
    FACT[k]
}

/// `k!` as `usize`, for indexing dense blocks.
pub fn fact_usize(k: usize) -> usize {
    FACT[k] as usize
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Number of fixed-point-free permutations of `k` elements: 1, 0, 1, 2, 9, 44, 265, ...
pub fn derangements(k: usize) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    if k == 0 {
        return a;
    }
    for i in 2..=k {
        let c = (i as u64 - 1) * (a + b);
        a = b;
        b = c;
    }
    b
}

/// Lexicographic rank of a permutation of `0..perm.len()`.
pub fn lex_rank(perm: &[u8]) -> usize {
    let k = perm.len();
    let mut used: u32 = 0;
    let mut r = 0usize;
    for (i, &v) in perm.iter().enumerate() {
        let below = (used & ((1u32 << v) - 1)).count_ones() as usize;
        r += (v as usize - below) * FACT[k - 1 - i] as usize;
        used |= 1 << v;
    }
    r
}

/// Inverse of [`lex_rank`]: writes the permutation of rank `r` into `out`.
pub fn lex_unrank(mut r: usize, out: &mut [u8]) {
    let k = out.len();
    let mut free: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    for (i, slot) in out.iter_mut().enumerate() {
        let f = FACT[k - 1 - i] as usize;
        let mut q = r / f;
        r %= f;
        let mut bits = free;
        while q > 0 {
            bits &= bits - 1;
            q -= 1;
        }
        let v = bits.trailing_zeros();
        *slot = v as u8;
        free &= !(1 << v);
    }
}

/// Relative-order pattern of a sequence of distinct values: `out[i]` is the
/// number of entries smaller than `w[i]`.
pub fn pattern<T: Ord>(w: &[T], out: &mut [u8]) {
    for (i, x) in w.iter().enumerate() {
        out[i] = w.iter().filter(|y| *y < x).count() as u8;
    }
}

/// Lexicographic rank of a word of distinct values among all orderings of its content.
pub fn pattern_rank<T: Ord>(w: &[T]) -> usize {
    let mut buf = [0u8; 32];
    let p = &mut buf[..w.len()];
    pattern(w, p);
    lex_rank(p)
}

/// Advances `perm` to the next permutation in lexicographic order.
/// Returns `false` (leaving `perm` sorted descending) when it was the last one.
pub fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derangement_table() {
        let d: Vec<u64> = (0..=8).map(derangements).collect();
        assert_eq!(d, vec![1, 0, 1, 2, 9, 44, 265, 1854, 14833]);
    }

    #[test]
    fn binomial_derangement_identity() {
        for n in 0..=10 {
            let s: u64 = (0..=n).map(|k| binomial(n, k) * derangements(k)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for k in 1..=6 {
            let mut p: Vec<u8> = (0..k as u8).collect();
            let mut r = 0;
            loop {
                assert_eq!(lex_rank(&p), r);
                let mut q = vec![0u8; k];
                lex_unrank(r, &mut q);
                assert_eq!(q, p);
                r += 1;
                if !next_permutation(&mut p) {
                    break;
                }
            }
            assert_eq!(r, fact_usize(k));
        }
    }

    #[test]
    fn pattern_rank_of_sparse_labels() {
        assert_eq!(pattern_rank(&[20u32, 5, 9]), 4);
        assert_eq!(pattern_rank::<u32>(&[]), 0);
    }
}
