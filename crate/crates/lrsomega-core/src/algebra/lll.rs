//! Exact-arithmetic LLL lattice basis reduction and integer row echelon.
//!
//! Dimensions here are tiny (the number of normalized roots plus one), so
//! everything is done with exact rational Gram-Schmidt data.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// LLL-reduces the rows of `basis` in place (Lovasz parameter 3/4) and
/// returns the reduced rows. Rows must be linearly independent.
pub fn lll(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let mut gs = GramSchmidt::compute(&basis);
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut k = 1;
    let mut guard: u64 = 0;
    while k < n {
        guard += 1;
        assert!(guard < 1 << 24, "LLL failed to terminate");
        size_reduce(&mut basis, &mut gs, k, k - 1, &half);
        let lhs = gs.norms[k].clone();
        let mu = gs.mu[k][k - 1].clone();
        let rhs = (&delta - &mu * &mu) * &gs.norms[k - 1];
        if lhs >= rhs {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut basis, &mut gs, k, l, &half);
            }
            k += 1;
        } else {
            basis.swap(k, k - 1);
            gs = GramSchmidt::compute(&basis);
            k = k.max(2) - 1;
        }
    }
    basis
}

struct GramSchmidt {
    /// mu[i][j] for j < i.
    mu: Vec<Vec<Rational>>,
    /// Squared norms of the orthogonalised rows.
    norms: Vec<Rational>,
}

impl GramSchmidt {
    fn compute(basis: &[Vec<BigInt>]) -> Self {
        let n = basis.len();
        let dim = basis[0].len();
        let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Rational> =
                basis[i].iter().map(|c| Rational::from_integer(c.clone())).collect();
            for j in 0..i {
                let dot = dot_qz(&star[j], &basis[i]);
                let m = dot / &norms[j];
                for t in 0..dim {
                    let sub = &m * &star[j][t];
                    v[t] -= sub;
                }
                mu[i][j] = m;
            }
            let norm = dot_qq(&v, &v);
            assert!(!norm.is_zero(), "LLL requires linearly independent rows");
            norms.push(norm);
            star.push(v);
        }
        GramSchmidt { mu, norms }
    }
}

fn dot_qz(a: &[Rational], b: &[BigInt]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Rational::from_integer(y.clone());
    }
    acc
}

fn dot_qq(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn size_reduce(
    basis: &mut [Vec<BigInt>],
    gs: &mut GramSchmidt,
    k: usize,
    l: usize,
    half: &Rational,
) {
    if gs.mu[k][l].abs() <= *half {
        return;
    }
    let q = round_rational(&gs.mu[k][l]);
    if q.is_zero() {
        return;
    }
    let (head, tail) = basis.split_at_mut(k);
    let bl = &head[l];
    for (t, c) in tail[0].iter_mut().enumerate() {
        *c -= &q * &bl[t];
    }
    let qr = Rational::from_integer(q);
    for j in 0..l {
        let sub = &qr * &gs.mu[l][j];
        gs.mu[k][j] -= sub;
    }
    gs.mu[k][l] -= qr;
}

fn round_rational(q: &Rational) -> BigInt {
    (q + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Integer row echelon form (Hermite-style): returns a basis of the row
/// span over the integers. Zero rows are dropped.
#[allow(clippy::needless_range_loop)]
pub fn row_echelon_z(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let dim = rows[0].len();
    let mut rank = 0;
    for col in 0..dim {
        // Use gcd row operations to put a single nonzero entry in this column.
        let mut pivot: Option<usize> = None;
        for r in rank..rows.len() {
            if !rows[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            while !rows[r][col].is_zero() {
                let a = rows[rank][col].clone();
                let b = rows[r][col].clone();
                if a.magnitude() > b.magnitude() {
                    rows.swap(rank, r);
                    continue;
                }
                let q = &b / &a;
                for t in 0..dim {
                    let sub = &q * &rows[rank][t];
                    rows[r][t] -= sub;
                }
            }
        }
        if rows[rank][col].is_negative() {
            for t in 0..dim {
                rows[rank][t] = -rows[rank][t].clone();
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    rows
}
