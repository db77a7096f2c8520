//! Smith normal form over the integers and lattice saturation.

use num_bigint::BigInt;
use num_integer::Integer as _;

use crate::condense::inv_pc;
use crate::matrix::{AnyMatrix, Matrix};
use crate::ring::Ring;
use crate::{Error, Result};

type Z = Matrix<BigInt>;

/// `D = U·A·V` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Z,
    pub d: Z,
    pub v: Z,
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Nonzero entry of least absolute value in the block `[t.., t..]`,
/// ties broken by row then column.
fn smallest(d: &Z, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.magnitude() < d[(bi, bj)].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_nf(a: &Z) -> SmithDecomposition {
    let (n, m) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Z::identity(n);
    let mut v = Z::identity(m);
    let mut factors = Vec::new();

    for t in 0..n.min(m) {
        while let Some((i, j)) = smallest(&d, t) {
            d.swap_rows(t, i);
            u.swap_rows(t, i);
            d.swap_cols(t, j);
            v.swap_cols(t, j);
            let p = d[(t, t)].clone();

            let mut remainder = false;
            for i in t + 1..n {
                let q = &d[(i, t)] / &p;
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-q.clone());
                    u.add_row_multiple(i, t, &-q);
                }
                remainder |= !d[(i, t)].is_zero();
            }
            for j in t + 1..m {
                let q = &d[(t, j)] / &p;
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-q.clone());
                    v.add_col_multiple(j, t, &-q);
                }
                remainder |= !d[(t, j)].is_zero();
            }
            if remainder {
                continue;
            }
            let bad_row = (t + 1..n).find(|&i| (t + 1..m).any(|j| !d[(i, j)].is_multiple_of(&p)));
            if let Some(i) = bad_row {
                d.add_row_multiple(t, i, &BigInt::from(1));
                u.add_row_multiple(t, i, &BigInt::from(1));
                continue;
            }
            if p.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            factors.push(d[(t, t)].clone());
            break;
        }
        if factors.len() <= t {
            break;
        }
    }
    SmithDecomposition {
        u,
        d,
        v,
        invariant_factors: factors,
    }
}

/// [`smith_nf`] for parsed input; polynomial matrices are rejected.
pub fn smith_nf_any(a: &AnyMatrix) -> Result<SmithDecomposition> {
    match a {
        AnyMatrix::Integer(m) => Ok(smith_nf(m)),
        AnyMatrix::Poly { .. } => Err(Error::UnsupportedRing),
    }
}

/// Z-basis of `ker A`: the last `m − p` columns of `V`.
pub fn kernel_basis(dec: &SmithDecomposition) -> Z {
    let m = dec.v.cols();
    let cols: Vec<usize> = (dec.rank()..m).collect();
    dec.v.select(&(0..m).collect::<Vec<_>>(), &cols)
}

/// Z-basis of `im A`: the first `p` columns of `U⁻¹·D`.
pub fn image_basis(dec: &SmithDecomposition) -> Z {
    let n = dec.u.rows();
    let u_inv = inv_pc(&dec.u)
        .expect("U is unimodular")
        .to_ring()
        .expect("unimodular inverse is integral");
    let ud = u_inv.mul(&dec.d).expect("shapes agree");
    ud.select(&(0..n).collect::<Vec<_>>(), &(0..dec.rank()).collect::<Vec<_>>())
}

fn require_full_rank(x: &Z) -> Result<SmithDecomposition> {
    let dec = smith_nf(x);
    if dec.rank() < x.cols() {
        return Err(Error::RankDeficient {
            rank: dec.rank(),
            cols: x.cols(),
        });
    }
    Ok(dec)
}

/// Whether the columns of `X` span a saturated lattice, i.e. the gcd of the
/// maximal minors is a unit.
pub fn is_saturated(x: &Z) -> Result<bool> {
    let dec = require_full_rank(x)?;
    Ok(dec.invariant_factors.iter().all(|f| f.is_unit()))
}

/// Z-basis of the saturation of the lattice spanned by the columns of `X`.
pub fn saturate(x: &Z) -> Result<Z> {
    let (n, p) = (x.rows(), x.cols());
    let dec = require_full_rank(x)?;
    if p == n {
        return Ok(Z::identity(n));
    }
    let rows: Vec<usize> = (p..n).collect();
    let b = dec.u.select(&rows, &(0..n).collect::<Vec<_>>());
    Ok(kernel_basis(&smith_nf(&b)))
}
