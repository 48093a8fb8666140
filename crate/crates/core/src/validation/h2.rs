//! Pairwise scale H²: the canonical basis x_{a≻b}, the gradient family e_a, the curl
//! family f_(a,b), and the orthogonal split H² = H²₁ ⊕ H²₂.
//!
//! Integer identities are checked in pair coordinates, where the x_{a≻b} with a < b form
//! an orthonormal basis. The ℓ² inner product on blocks is twice the coordinate one,
//! because ‖x_{a≻b}‖² = ‖δ_ab − δ_ba‖² = 2.

use super::{cap, AuditReport};
use crate::coeffs::WaveletCoefficients;
use crate::combi::binomial;
use crate::error::{MraError, Result};
use crate::linalg::Matrix;
use crate::word::{Item, ItemSubset};

pub const H2_MAX_N: usize = 12;

/// x_{a≻b} = δ_{ab} − δ_{ba}.
pub fn x_pair(a: Item, b: Item) -> Result<WaveletCoefficients> {
    if a == b {
        return Err(MraError::domain("x_(a≻b) needs a ≠ b"));
    }
    let mut x = WaveletCoefficients::new();
    let v = if a < b { vec![1.0, -1.0] } else { vec![-1.0, 1.0] };
    x.insert_block(ItemSubset::new(vec![a, b]), v)?;
    Ok(x)
}

/// e_a = Σ_{b≠a} x_{a≻b}.
pub fn e_vector(a: Item, universe: &ItemSubset) -> Result<WaveletCoefficients> {
    let mut x = WaveletCoefficients::new();
    for &b in universe.items().iter().filter(|&&b| b != a) {
        x.axpy(1.0, &x_pair(a, b)?);
    }
    Ok(x)
}

/// f_(a,b) = Σ_{c∉{a,b}} (x_{a≻b} + x_{b≻c} + x_{c≻a}).
pub fn f_vector(a: Item, b: Item, universe: &ItemSubset) -> Result<WaveletCoefficients> {
    let mut x = WaveletCoefficients::new();
    for &c in universe.items().iter().filter(|&&c| c != a && c != b) {
        x.axpy(1.0, &x_pair(a, b)?);
        x.axpy(1.0, &x_pair(b, c)?);
        x.axpy(1.0, &x_pair(c, a)?);
    }
    Ok(x)
}

/// The three families of H² on ⟦n⟧.
#[derive(Clone, Debug)]
pub struct H2Basis {
    pub universe: ItemSubset,
    /// x_{a≻b} for every ordered pair a ≠ b.
    pub x: Vec<((Item, Item), WaveletCoefficients)>,
    pub e: Vec<(Item, WaveletCoefficients)>,
    /// f_(a,b) for every ordered pair a ≠ b.
    pub f: Vec<((Item, Item), WaveletCoefficients)>,
}

pub fn h2_basis(n: usize) -> Result<H2Basis> {
    if n < 3 {
        return Err(MraError::domain("the H² families need n ≥ 3"));
    }
    cap(n, H2_MAX_N, "h2_basis")?;
    let universe = ItemSubset::range(n);
    let items = universe.items().to_vec();
    let mut x = Vec::new();
    let mut f = Vec::new();
    for &a in &items {
        for &b in items.iter().filter(|&&b| b != a) {
            x.push(((a, b), x_pair(a, b)?));
            f.push(((a, b), f_vector(a, b, &universe)?));
        }
    }
    let e = items.iter().map(|&a| Ok((a, e_vector(a, &universe)?))).collect::<Result<_>>()?;
    Ok(H2Basis { universe, x, e, f })
}

/// Pairs a < b of the universe in lexicographic order.
fn pairs(universe: &ItemSubset) -> Vec<(Item, Item)> {
    let it = universe.items();
    it.iter().enumerate().flat_map(|(i, &a)| it[i + 1..].iter().map(move |&b| (a, b))).collect()
}

/// Coordinates of a scale-2 element on the basis x_{a≻b}, a < b. The coordinate on
/// {a,b} is (X(a≻b) − X(b≻a))/2, which is exact for elements of H².
pub fn pair_coordinates(x: &WaveletCoefficients, universe: &ItemSubset) -> Result<Vec<f64>> {
    for (b, v) in x.iter() {
        if b.len() != 2 {
            if b.is_empty() && v[0] == 0.0 {
                continue;
            }
            return Err(MraError::domain(format!("block {b} is not a pair")));
        }
        if !b.is_subset_of(universe) {
            return Err(MraError::domain(format!("pair {b} leaves the universe {universe}")));
        }
    }
    Ok(pairs(universe)
        .into_iter()
        .map(|(a, b)| x.block(&ItemSubset::new(vec![a, b])).map_or(0.0, |v| (v[0] - v[1]) / 2.0))
        .collect())
}

fn from_coordinates(c: &[f64], universe: &ItemSubset) -> WaveletCoefficients {
    let mut x = WaveletCoefficients::new();
    for (&v, (a, b)) in c.iter().zip(pairs(universe)) {
        x.insert_block(ItemSubset::new(vec![a, b]), vec![v, -v]).expect("pair block");
    }
    x
}

/// ℓ² inner product of two coefficient sets, blocks absent from either counting as zero.
pub fn block_inner(x: &WaveletCoefficients, y: &WaveletCoefficients) -> f64 {
    x.iter()
        .filter_map(|(b, v)| y.block(b).map(|w| v.iter().zip(w).map(|(p, q)| p * q).sum::<f64>()))
        .sum()
}

/// Orthogonal projection of a pairwise element onto H²₁ = span{e_a} (the gradient part)
/// and its complement H²₂ (the curl part). Pairs missing from `x2` count as zero.
pub fn hodge_decompose(
    x2: &WaveletCoefficients,
    universe: &ItemSubset,
) -> Result<(WaveletCoefficients, WaveletCoefficients)> {
    let n = universe.len();
    if n < 3 {
        return Err(MraError::domain("Hodge decomposition needs at least three items"));
    }
    let c = pair_coordinates(x2, universe)?;
    let ps = pairs(universe);
    // s_a = ⟨e_a, c⟩ / n; the coordinate of e_a on {p,q}, p<q, is +1 at a = p and −1 at a = q.
    let mut s = vec![0.0; n];
    for (&v, &(p, q)) in c.iter().zip(&ps) {
        s[universe.index_of(p).expect("member")] += v / n as f64;
        s[universe.index_of(q).expect("member")] -= v / n as f64;
    }
    let grad: Vec<f64> = ps
        .iter()
        .map(|&(p, q)| s[universe.index_of(p).expect("member")] - s[universe.index_of(q).expect("member")])
        .collect();
    let curl: Vec<f64> = c.iter().zip(&grad).map(|(x, g)| x - g).collect();
    Ok((from_coordinates(&grad, universe), from_coordinates(&curl, universe)))
}

/// Integer coordinate vectors: x_{a≻b}, e_a and f_(a,b) over the pairs of ⟦n⟧.
struct IntFamilies {
    n: usize,
    index: Vec<Vec<usize>>,
}

impl IntFamilies {
    fn new(n: usize) -> Self {
        let mut index = vec![vec![usize::MAX; n + 1]; n + 1];
        let mut t = 0;
        for a in 1..=n {
            for b in a + 1..=n {
                index[a][b] = t;
                index[b][a] = t;
                t += 1;
            }
        }
        IntFamilies { n, index }
    }

    fn dim(&self) -> usize {
        binomial(self.n, 2) as usize
    }

    fn x(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[self.index[a][b]] = if a < b { 1 } else { -1 };
        v
    }

    fn e(&self, a: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for b in (1..=self.n).filter(|&b| b != a) {
            add(&mut v, &self.x(a, b), 1);
        }
        v
    }

    fn f(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for c in (1..=self.n).filter(|&c| c != a && c != b) {
            add(&mut v, &self.x(a, b), 1);
            add(&mut v, &self.x(b, c), 1);
            add(&mut v, &self.x(c, a), 1);
        }
        v
    }
}

fn add(v: &mut [i64], w: &[i64], c: i64) {
    v.iter_mut().zip(w).for_each(|(x, y)| *x += c * y);
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact inner-product table, the f_(a,b) identity, H²₁ ⊥ H²₂, the dimensions of both
/// parts, and agreement between coordinate and block inner products.
pub fn h2_audit(n: usize) -> Result<AuditReport> {
    let basis = h2_basis(n)?;
    let fam = IntFamilies::new(n);
    let ni = n as i64;
    let mut rep = AuditReport::new();
    let tag = format!("n={n}");

    let mut ee = true;
    let mut ex = true;
    for a in 1..=n {
        for b in 1..=n {
            let want = if a == b { ni - 1 } else { -1 };
            ee &= idot(&fam.e(a), &fam.e(b)) == want;
            for c in (1..=n).filter(|&c| c != b) {
                let want = if a == b { 1 } else if a == c { -1 } else { 0 };
                ex &= idot(&fam.e(a), &fam.x(b, c)) == want;
            }
        }
    }
    rep.check(format!("⟨e_a,e_b⟩ = n−1 if a=b, −1 otherwise [{tag}]"), ee, "exact, pair coordinates");
    rep.check(format!("⟨e_a,x_(b≻c)⟩ = 1, −1, 0 [{tag}]"), ex, "exact, pair coordinates");

    let mut fid = true;
    let mut grad_sum = true;
    let mut orth = true;
    for a in 1..=n {
        for b in (1..=n).filter(|&b| b != a) {
            let mut rhs = fam.x(a, b).iter().map(|v| ni * v).collect::<Vec<_>>();
            add(&mut rhs, &fam.e(b), 1);
            add(&mut rhs, &fam.e(a), -1);
            fid &= fam.f(a, b) == rhs;
            for c in 1..=n {
                orth &= idot(&fam.e(c), &fam.f(a, b)) == 0;
            }
        }
    }
    // Σ_{i<j}(s_i − s_j)x_{i≻j} = Σ_i s_i e_i, checked on the integer vector s_i = i².
    let mut lhs = vec![0; fam.dim()];
    let mut rhs = vec![0; fam.dim()];
    for i in 1..=n {
        for j in i + 1..=n {
            add(&mut lhs, &fam.x(i, j), (i * i) as i64 - (j * j) as i64);
        }
        add(&mut rhs, &fam.e(i), (i * i) as i64);
    }
    grad_sum &= lhs == rhs;
    rep.check(format!("f_(a,b) = n·x_(a≻b) + e_b − e_a [{tag}]"), fid, "exact, every ordered pair");
    rep.check(format!("Σ_(i<j)(s_i−s_j)x_(i≻j) = Σ_i s_i e_i [{tag}]"), grad_sum, "exact, s_i = i²");
    rep.check(format!("H²₁ ⊥ H²₂ [{tag}]"), orth, "⟨e_c, f_(a,b)⟩ = 0 exactly");

    let to_f = |v: &[i64]| v.iter().map(|&x| x as f64).collect::<Vec<f64>>();
    let e_rank = Matrix::from_columns(&(1..=n).map(|a| to_f(&fam.e(a))).collect::<Vec<_>>()).rank();
    let f_cols: Vec<Vec<f64>> =
        (1..=n).flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b))).map(|(a, b)| to_f(&fam.f(a, b))).collect();
    let f_rank = Matrix::from_columns(&f_cols).rank();
    let want_f = fam.dim() - (n - 1);
    rep.check(format!("dim H²₁ = n−1 [{tag}]"), e_rank == n - 1, format!("rank {e_rank}"));
    rep.check(format!("dim H²₂ = C(n,2)−n+1 [{tag}]"), f_rank == want_f, format!("rank {f_rank}, expected {want_f}"));

    // The coefficient-set families agree with the integer coordinates, and the block
    // inner product is twice the coordinate one.
    let mut consistent = true;
    let mut twice = true;
    for (a, ea) in &basis.e {
        let ca = pair_coordinates(ea, &basis.universe)?;
        consistent &= ca == to_f(&fam.e(*a as usize));
        for (b, eb) in &basis.e {
            twice &= block_inner(ea, eb) == 2.0 * idot(&fam.e(*a as usize), &fam.e(*b as usize)) as f64;
        }
    }
    for ((a, b), fab) in &basis.f {
        consistent &= pair_coordinates(fab, &basis.universe)? == to_f(&fam.f(*a as usize, *b as usize));
    }
    for ((a, b), xab) in &basis.x {
        let (_, neg) = basis.x.iter().find(|(p, _)| *p == (*b, *a)).expect("both orders present");
        consistent &= xab.scaled(-1.0) == *neg;
        consistent &= pair_coordinates(xab, &basis.universe)? == to_f(&fam.x(*a as usize, *b as usize));
    }
    rep.check(format!("coefficient families match coordinates, x_(b≻a) = −x_(a≻b) [{tag}]"), consistent, "exact");
    rep.check(format!("ℓ² block inner product = 2 × coordinate inner product [{tag}]"), twice, "exact");
    Ok(rep)
}
