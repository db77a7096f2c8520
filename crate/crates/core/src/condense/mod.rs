//! Pivotal condensation.
//!
//! All variants run the same engine ([`Condenser`]) on different starting
//! patterns:
//!
//! | operation    | top rows                 | rows below the bar     |
//! |--------------|--------------------------|------------------------|
//! | `det_pc`     | `Aᵀ`                     |                        |
//! | `ker_pc`     | `Aᵀ \| 1`                |                        |
//! | `solve_pc`   | `Aᵀ \| 1 \| 0`           | `wᵀ \| 0 \| -1`        |
//! | `inv_pc`     | `Aᵀ \| 1 \| 0`           | `1 \| 0 \| -1`         |
//! | `four_pc`    | `Aᵀ \| 1`                | `1 \| 0` (not cleaned) |
//!
//! Indices are 0-based throughout the API.

mod engine;
mod trace;

use std::any::Any;

use num_bigint::BigInt;

use crate::matrix::Matrix;
use crate::ring::{content_and_primitive, lcm, Fraction, Ring};
use crate::{Error, Result};

pub use engine::{CondensationTrace, Condenser, Step};
pub use trace::{render_trace, verify_checksums};

/// How the pivot row is picked inside the pivot column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest row index with a nonzero entry.
    #[default]
    FirstNonzero,
    /// Nonzero entry of least [`Ring::weight`], ties to the smaller row.
    SmallestEntry,
    /// Pseudo-random nonzero entry; used to test pivot independence.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CondenseOptions {
    pub pivot: PivotRule,
    /// Carry a row-sum column through the computation.
    pub checksums: bool,
    /// Record every pattern in the returned trace.
    pub trace: bool,
}

impl Default for CondenseOptions {
    fn default() -> Self {
        CondenseOptions {
            pivot: PivotRule::FirstNonzero,
            checksums: false,
            trace: true,
        }
    }
}

/// Generators of a kernel, one per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis<R: Ring> {
    pub generators: Matrix<R>,
    /// Known to generate the kernel over the ring itself, not only over its
    /// fraction field.
    pub saturated: bool,
}

impl<R: Ring> KernelBasis<R> {
    pub fn dim(&self) -> usize {
        self.generators.cols()
    }

    fn from_vectors(len: usize, vectors: Vec<Vec<R>>) -> Self {
        let vectors: Vec<Vec<R>> = vectors.into_iter().map(normalize).collect();
        let generators = Matrix::from_columns(len, &vectors).expect("equal lengths");
        let saturated = saturation_hint(&generators);
        KernelBasis {
            generators,
            saturated,
        }
    }
}

/// Primitive part, signed so the last nonzero entry is positive.
pub(crate) fn normalize<R: Ring>(v: Vec<R>) -> Vec<R> {
    let (_, mut v) = content_and_primitive(&v);
    if v.iter().rev().find(|x| !x.is_zero()).is_some_and(R::is_negative) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

fn saturation_hint<R: Ring>(g: &Matrix<R>) -> bool {
    if g.cols() <= 1 {
        return true;
    }
    if let Some(z) = (g as &dyn Any).downcast_ref::<Matrix<BigInt>>() {
        return crate::smith::is_saturated(z).unwrap_or(false);
    }
    has_unit_permutation_block(g)
}

/// True when some choice of rows forms a permutation matrix times units,
/// which makes a maximal minor a unit.
fn has_unit_permutation_block<R: Ring>(g: &Matrix<R>) -> bool {
    (0..g.cols()).all(|c| {
        (0..g.rows()).any(|r| {
            g[(r, c)].is_unit() && (0..g.cols()).all(|c2| c2 == c || g[(r, c2)].is_zero())
        })
    })
}

/// An affine solution set `particular + span(homogeneous)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<R: Ring> {
    /// Empty when infeasible.
    pub particular: Vec<Fraction<R>>,
    pub homogeneous: KernelBasis<R>,
    pub feasible: bool,
}

/// Bases of the four fundamental subspaces of an `n×m` matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourSubspaces<R: Ring> {
    pub ker_a: KernelBasis<R>,
    pub ker_at: KernelBasis<R>,
    /// Columns of `A` spanning its image, in pivot order.
    pub im_a_columns: Vec<usize>,
    /// Columns of `Aᵀ` (rows of `A`) spanning the image of `Aᵀ`, in pivot order.
    pub im_at_columns: Vec<usize>,
    /// Original column indices of `A` in pivot order, then the rest.
    pub sigma: Vec<usize>,
    pub rank: usize,
}

/// A matrix of fractions written as `numer / denom` with a common
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix<R: Ring> {
    pub numer: Matrix<R>,
    pub denom: R,
}

impl<R: Ring> RationalMatrix<R> {
    pub fn entry(&self, r: usize, c: usize) -> Fraction<R> {
        Fraction::new(self.numer[(r, c)].clone(), self.denom.clone()).expect("nonzero denominator")
    }

    /// The matrix itself when the denominator is a unit.
    pub fn to_ring(&self) -> Option<Matrix<R>> {
        if !self.denom.is_unit() {
            return None;
        }
        Some(self.numer.map(|x| x.exact_div(&self.denom).expect("unit divides")))
    }

    /// Common denominator of columns `numer[:, j] / denoms[j]`, reduced.
    fn from_columns(columns: Vec<(Vec<R>, R)>, rows: usize) -> Self {
        let denom = columns
            .iter()
            .fold(R::one(), |acc, (_, d)| lcm(&acc, d));
        let scaled: Vec<Vec<R>> = columns
            .into_iter()
            .map(|(v, d)| {
                let k = denom.exact_div(&d).expect("lcm is a multiple");
                v.into_iter().map(|x| x * &k).collect()
            })
            .collect();
        let mut numer = Matrix::from_columns(rows, &scaled).expect("equal lengths");
        let g = numer
            .entries()
            .iter()
            .fold(denom.clone(), |acc, x| acc.gcd(x));
        let mut denom = denom.exact_div(&g).expect("gcd divides");
        numer = numer.map(|x| x.exact_div(&g).expect("gcd divides"));
        if denom.is_negative() {
            denom = -denom;
            numer = numer.map(|x| -x.clone());
        }
        RationalMatrix { numer, denom }
    }
}

fn require_square<R: Ring>(a: &Matrix<R>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

fn kernel_from<R: Ring>(c: &Condenser<R>) -> KernelBasis<R> {
    let vectors = c.top_parts().map(|(_, y)| y.to_vec()).collect();
    KernelBasis::from_vectors(c.y_cols(), vectors)
}

fn final_det<R: Ring>(c: &Condenser<R>) -> R {
    match c.delta() {
        Some(d) if c.row_ids().is_empty() && c.x_cols() == 0 => {
            d.to_ring().expect("determinant lies in the ring")
        }
        _ => R::zero(),
    }
}

/// Determinant by Chiò condensation.
pub fn det_pc<R: Ring>(a: &Matrix<R>) -> Result<R> {
    require_square(a)?;
    let opts = CondenseOptions {
        trace: false,
        ..Default::default()
    };
    let mut c = Condenser::new(&a.transpose(), &Matrix::zeros(a.rows(), 0), &opts).track_delta();
    c.run();
    Ok(final_det(&c))
}

/// Determinant and kernel in one run, with the full trace.
pub fn detker_pc<R: Ring>(a: &Matrix<R>) -> Result<(R, KernelBasis<R>, CondensationTrace<R>)> {
    detker_pc_with(a, &CondenseOptions::default())
}

pub fn detker_pc_with<R: Ring>(
    a: &Matrix<R>,
    opts: &CondenseOptions,
) -> Result<(R, KernelBasis<R>, CondensationTrace<R>)> {
    require_square(a)?;
    let mut c = Condenser::ker(a, opts).track_delta();
    c.run();
    Ok((final_det(&c), kernel_from(&c), c.trace()))
}

/// Kernel of `A` from the pattern `Aᵀ | 1`.
pub fn ker_pc<R: Ring>(a: &Matrix<R>) -> (KernelBasis<R>, CondensationTrace<R>) {
    ker_pc_with(a, &CondenseOptions::default())
}

pub fn ker_pc_with<R: Ring>(
    a: &Matrix<R>,
    opts: &CondenseOptions,
) -> (KernelBasis<R>, CondensationTrace<R>) {
    let mut c = Condenser::ker(a, opts);
    c.run();
    (kernel_from(&c), c.trace())
}

/// Per right-hand side: `Some((p, λ))` with `A·p = λ·w`, or `None`.
type Solutions<R> = Vec<Option<(Vec<R>, R)>>;

fn solve_many<R: Ring>(
    a: &Matrix<R>,
    ws: &Matrix<R>,
    opts: &CondenseOptions,
) -> Result<(Solutions<R>, Condenser<R>)> {
    if ws.cols() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            ws.cols(),
            a.rows()
        )));
    }
    let m = a.cols();
    let y = Matrix::from_fn(m, m + 1, |i, j| if i == j { R::one() } else { R::zero() });
    let by = Matrix::from_fn(ws.rows(), m + 1, |_, j| {
        if j == m {
            -R::one()
        } else {
            R::zero()
        }
    });
    let mut c = Condenser::new(&a.transpose(), &y, opts).with_bottom(ws, &by);
    c.run();
    let mut blocked = vec![false; ws.rows()];
    for (_, col) in c.dropped() {
        for (b, x) in blocked.iter_mut().zip(col) {
            *b |= !x.is_zero();
        }
    }
    let out = c
        .bottom_parts()
        .zip(blocked)
        .map(|((x, y), blocked)| {
            if blocked || x.iter().any(|e| !e.is_zero()) {
                None
            } else {
                Some((y[..m].to_vec(), y[m].clone()))
            }
        })
        .collect();
    Ok((out, c))
}

/// Solves `A·v = w` over the fraction field.
pub fn solve_pc<R: Ring>(a: &Matrix<R>, w: &[R]) -> Result<AffineSolution<R>> {
    solve_pc_with(a, w, &CondenseOptions::default())
}

pub fn solve_pc_with<R: Ring>(
    a: &Matrix<R>,
    w: &[R],
    opts: &CondenseOptions,
) -> Result<AffineSolution<R>> {
    let ws = Matrix::from_rows(vec![w.to_vec()])?;
    let (mut sols, c) = solve_many(a, &ws, opts)?;
    let m = a.cols();
    let homogeneous = KernelBasis::from_vectors(
        m,
        c.top_parts().map(|(_, y)| y[..m].to_vec()).collect(),
    );
    Ok(match sols.remove(0) {
        Some((p, lambda)) => AffineSolution {
            particular: p
                .into_iter()
                .map(|x| Fraction::new(x, lambda.clone()).expect("λ is nonzero"))
                .collect(),
            homogeneous,
            feasible: true,
        },
        None => AffineSolution {
            particular: Vec::new(),
            homogeneous,
            feasible: false,
        },
    })
}

/// Inverse over the fraction field.
pub fn inv_pc<R: Ring>(a: &Matrix<R>) -> Result<RationalMatrix<R>> {
    require_square(a)?;
    let n = a.rows();
    let opts = CondenseOptions {
        trace: false,
        ..Default::default()
    };
    let (sols, c) = solve_many(a, &Matrix::identity(n), &opts)?;
    if c.rank() < n {
        return Err(Error::Singular);
    }
    let columns = sols
        .into_iter()
        .map(|s| s.ok_or(Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(columns, n))
}

/// Bases for `ker A`, `ker Aᵀ`, `im A` and `im Aᵀ` from a single run.
pub fn four_pc<R: Ring>(a: &Matrix<R>) -> FourSubspaces<R> {
    four_pc_with(a, &CondenseOptions::default()).0
}

pub fn four_pc_with<R: Ring>(
    a: &Matrix<R>,
    opts: &CondenseOptions,
) -> (FourSubspaces<R>, CondensationTrace<R>) {
    let (n, m) = (a.rows(), a.cols());
    let mut c = Condenser::ker(a, opts)
        .with_bottom(&Matrix::identity(n), &Matrix::zeros(n, m))
        .clean_bottom(false);
    c.run();
    let ker_a = kernel_from(&c);
    let mut ker_at: Vec<Vec<R>> = c.dropped().iter().map(|(_, v)| v.clone()).collect();
    let remaining: Vec<(&[R], &[R])> = c.bottom_parts().collect();
    for j in 0..c.x_cols() {
        ker_at.push(remaining.iter().map(|(x, _)| x[j].clone()).collect());
    }
    let trace = c.trace();
    let subspaces = FourSubspaces {
        ker_a,
        ker_at: KernelBasis::from_vectors(n, ker_at),
        im_a_columns: c.pivots().iter().map(|&(r, _)| r).collect(),
        im_at_columns: c.pivots().iter().map(|&(_, k)| k).collect(),
        sigma: trace.sigma_total.clone(),
        rank: c.rank(),
    };
    (subspaces, trace)
}
