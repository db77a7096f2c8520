//! Reference implementations used as test oracles. Deliberately naive and
//! independent of the library's algorithms.
#![allow(dead_code)]

use chio_core::{Matrix, Poly};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Z = Matrix<BigInt>;
pub type Q = BigRational;

pub fn z(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn zs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_rows(m: &Z) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn cols_i64(m: &Z) -> Vec<Vec<i64>> {
    m.columns()
        .into_iter()
        .map(|c| c.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn det_of(m: &Z) -> BigInt {
    assert!(m.is_square());
    cofactor_det(&to_rows(m))
}

fn to_q(m: &[Vec<BigInt>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form over Q; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank_rows(rows: &[Vec<BigInt>]) -> usize {
    rref(&mut to_q(rows)).len()
}

pub fn rank(m: &Z) -> usize {
    rank_rows(&to_rows(m))
}

/// Rank of a set of vectors.
pub fn rank_of_vectors(v: &[Vec<BigInt>]) -> usize {
    rank_rows(v)
}

/// Kernel of `m` over Q, one vector per free column.
pub fn kernel_q(m: &Z) -> Vec<Vec<Q>> {
    let mut a = to_q(&to_rows(m));
    let pivots = rref(&mut a);
    let n = m.cols();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

/// Some rational `x` with `m·x = w`, or `None`.
pub fn solve_q(m: &Z, w: &[BigInt]) -> Option<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = to_q(&to_rows(m));
    for (row, wi) in a.iter_mut().zip(w) {
        row.push(Q::from_integer(wi.clone()));
    }
    let n = m.cols();
    let pivots = rref(&mut a);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][n].clone();
    }
    Some(x)
}

/// Do the columns of `a` and `b` span the same subspace of Q^n?
pub fn same_q_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let ra = rank_of_vectors(a);
    let rb = rank_of_vectors(b);
    let both: Vec<Vec<BigInt>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_vectors(&both) == ra
}

/// Integer row echelon basis of the lattice spanned by `gens`.
pub fn lattice_echelon(gens: &[Vec<BigInt>]) -> Vec<(usize, Vec<BigInt>)> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let n = gens.first().map_or(0, Vec::len);
    let mut basis = Vec::new();
    for c in 0..n {
        // fold every row with a nonzero entry in column c into one pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in rows.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            pivot = Some(match pivot {
                None => r,
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    let (pa, ra) = (p[c].clone() / &e.gcd, r[c].clone() / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(&r).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(&r).map(|(x, y)| &ra * x - &pa * y).collect();
                    debug_assert!(other[c].is_zero());
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    new_p
                }
            });
        }
        rows = rest;
        if let Some(p) = pivot {
            basis.push((c, p));
        }
    }
    basis
}

/// Is `v` an integer combination of `gens`?
pub fn in_z_span(v: &[BigInt], gens: &[Vec<BigInt>]) -> bool {
    let mut v = v.to_vec();
    for (c, row) in lattice_echelon(gens) {
        if v[c].is_zero() {
            continue;
        }
        let (q, r) = v[c].div_rem(&row[c]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(&row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

pub fn same_z_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    a.iter().all(|v| in_z_span(v, b)) && b.iter().all(|v| in_z_span(v, a))
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_all(v).is_one()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k×k` minors.
pub fn minor_gcd(m: &Z, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in combinations(m.rows(), k) {
        for cs in combinations(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect())
                .collect();
            g = g.gcd(&cofactor_det(&sub));
        }
    }
    g
}

/// Invariant factors from ratios of minor gcds.
pub fn invariant_factors_oracle(m: &Z) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let g = minor_gcd(m, k);
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// `A·v` with rational `v`.
pub fn apply_q(m: &Z, v: &[Q]) -> Vec<Q> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(Q::zero(), |acc, (a, x)| acc + Q::from_integer(a.clone()) * x)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Z {
    Z::from_fn(rows, cols, |_, _| BigInt::from(rng.random_range(-bound..=bound)))
}

/// Product of random `rows×r` and `r×cols` factors, so rank ≤ r.
pub fn random_low_rank(rng: &mut impl Rng, rows: usize, cols: usize, r: usize) -> Z {
    let a = random_matrix(rng, rows, r, 3);
    let b = random_matrix(rng, r, cols, 3);
    a.mul(&b).unwrap()
}

/// Mostly-zero nonnegative matrix, like an adjacency matrix.
pub fn random_sparse(rng: &mut impl Rng, rows: usize, cols: usize) -> Z {
    Z::from_fn(rows, cols, |_, _| {
        if rng.random_bool(0.35) {
            BigInt::from(rng.random_range(1..=4))
        } else {
            BigInt::zero()
        }
    })
}

pub fn poly(s: &str) -> Poly {
    use chio_core::Ring;
    Poly::parse(s, Some("n")).unwrap()
}

pub fn signed_eq(v: &[BigInt], expect: &[i64]) -> bool {
    let e = zs(expect);
    let neg: Vec<BigInt> = e.iter().map(|x| -x).collect();
    v == e.as_slice() || v == neg.as_slice()
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}
