//! Chemical formulas, reactions and balancing.
//!
//! Balancing computes the kernel of the atom-by-compound adjacency matrix.
//! Negative coefficients mark reactants, positive ones products.

mod formula;
mod reaction;

use std::any::Any;

use num_bigint::BigInt;

pub use formula::{parse_formula, Formula};
pub use reaction::{Reaction, CHARGE};

use crate::condense::{ker_pc_with, CondenseOptions};
use crate::matrix::{AnyMatrix, Matrix};
use crate::quiver::quivered_kernel;
use crate::ring::{Poly, Ring};
use crate::{smith, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalanceOptions {
    /// Preprocess with quivering.
    pub quiver: bool,
    /// Turn a multi-dimensional integer kernel into a Z-basis.
    pub saturate: bool,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        BalanceOptions {
            quiver: false,
            saturate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceResult {
    pub adjacency: AnyMatrix,
    /// One balanced reaction per column, `|J| × k`.
    pub coefficients: AnyMatrix,
    pub feasible: bool,
    /// Every column puts reactants on the left and products on the right.
    pub oriented: bool,
    pub diagnostics: Vec<String>,
    /// Pruning log, filled when quivering was requested.
    pub explain: Vec<String>,
}

pub const INFEASIBLE: &str = "no balanced reaction exists among these compounds";

/// Balances `r` over the integers, or over `Z[param]` when the reaction
/// declares a parameter.
pub fn balance(r: &Reaction, opts: &BalanceOptions) -> Result<BalanceResult> {
    match &r.parameter {
        None => balance_in::<BigInt>(r, opts).map(|(a, c, rest)| rest.finish(AnyMatrix::Integer(a), AnyMatrix::Integer(c))),
        Some(p) => balance_in::<Poly>(r, opts).map(|(a, c, rest)| {
            rest.finish(
                AnyMatrix::Poly {
                    matrix: a,
                    param: p.clone(),
                },
                AnyMatrix::Poly {
                    matrix: c,
                    param: p.clone(),
                },
            )
        }),
    }
}

struct Partial {
    feasible: bool,
    oriented: bool,
    diagnostics: Vec<String>,
    explain: Vec<String>,
}

impl Partial {
    fn finish(self, adjacency: AnyMatrix, coefficients: AnyMatrix) -> BalanceResult {
        BalanceResult {
            adjacency,
            coefficients,
            feasible: self.feasible,
            oriented: self.oriented,
            diagnostics: self.diagnostics,
            explain: self.explain,
        }
    }
}

fn balance_in<R: Ring>(r: &Reaction, opts: &BalanceOptions) -> Result<(Matrix<R>, Matrix<R>, Partial)> {
    let a: Matrix<R> = r.adjacency()?;
    let var = r.parameter.as_deref().unwrap_or("");
    let names: Vec<&str> = r.compounds().map(|f| f.source.as_str()).collect();
    let mut diagnostics = Vec::new();
    let mut explain = Vec::new();
    let plain = CondenseOptions {
        trace: false,
        ..Default::default()
    };

    let mut basis = if opts.quiver {
        match quivered_kernel(&a) {
            Ok(out) => {
                explain = explain_pruning(&out, &names, &r.atoms, var);
                out.kernel.generators
            }
            Err(Error::DeclineQuivering(why)) => {
                diagnostics.push(format!("quivering declined ({why}); used plain condensation"));
                explain.push(format!("quivering declined: {why}"));
                ker_pc_with(&a, &plain).0.generators
            }
            Err(e) => return Err(e),
        }
    } else {
        ker_pc_with(&a, &plain).0.generators
    };

    if basis.cols() > 1 && opts.saturate {
        if let Some(z) = (&basis as &dyn Any).downcast_ref::<Matrix<BigInt>>() {
            let s = smith::saturate(z)?;
            basis = (&s as &dyn Any)
                .downcast_ref::<Matrix<R>>()
                .expect("same ring")
                .clone();
        }
    }

    let feasible = basis.cols() > 0;
    if !feasible {
        diagnostics.push(INFEASIBLE.to_string());
    } else if basis.cols() > 1 {
        diagnostics.push(format!(
            "the balanced reactions form a {}-dimensional family; each line is one generator",
            basis.cols()
        ));
    }

    let left = if r.has_arrow { r.left.len() } else { 0 };
    let mut oriented = true;
    let mut columns = Vec::with_capacity(basis.cols());
    for (k, col) in basis.columns().into_iter().enumerate() {
        let (col, ok) = orient(col, left, r.has_arrow);
        if !ok {
            oriented = false;
            diagnostics.push(format!(
                "reaction {} has compounds on the opposite side from where they were written",
                k + 1
            ));
        }
        columns.push(col);
    }
    let basis = Matrix::from_columns(a.cols(), &columns)?;

    if basis.cols() == 1 && r.given.iter().any(Option::is_some) {
        let col = basis.column(0);
        let conflict = r.given.iter().zip(&col).any(|(g, v)| {
            g.as_ref().is_some_and(|g| {
                let g = R::from_integer(g.clone());
                *v != g && *v != -g
            })
        });
        if conflict {
            diagnostics.push("the coefficients written in the input differ from the balanced result".to_string());
        }
    }

    Ok((
        a,
        basis,
        Partial {
            feasible,
            oriented,
            diagnostics,
            explain,
        },
    ))
}

/// Chooses the sign of `col` so that left entries are ≤ 0 and right entries
/// ≥ 0. Without an arrow the first nonzero entry is made negative.
fn orient<R: Ring>(col: Vec<R>, left: usize, has_arrow: bool) -> (Vec<R>, bool) {
    let neg = |v: Vec<R>| v.into_iter().map(|x| -x).collect::<Vec<R>>();
    if !has_arrow {
        let flip = col.iter().find(|x| !x.is_zero()).is_some_and(|x| !x.is_negative());
        return (if flip { neg(col) } else { col }, true);
    }
    let fits = |v: &[R]| {
        v.iter().enumerate().all(|(j, x)| {
            x.is_zero() || (j < left) == x.is_negative()
        })
    };
    if fits(&col) {
        return (col, true);
    }
    let flipped = neg(col.clone());
    if fits(&flipped) {
        return (flipped, true);
    }
    let score = |v: &[R]| {
        v.iter()
            .enumerate()
            .filter(|(j, x)| !x.is_zero() && (*j < left) == x.is_negative())
            .count()
    };
    if score(&flipped) > score(&col) {
        (flipped, false)
    } else {
        (col, false)
    }
}

fn explain_pruning<R: Ring>(
    out: &crate::quiver::QuiverOutcome<R>,
    names: &[&str],
    atoms: &[String],
    var: &str,
) -> Vec<String> {
    let list = |ids: &[usize], labels: &[&str]| {
        if ids.is_empty() {
            "none".to_string()
        } else {
            ids.iter().map(|&i| labels[i]).collect::<Vec<_>>().join(", ")
        }
    };
    let atom_labels: Vec<&str> = atoms.iter().map(String::as_str).collect();
    let mut lines = vec![format!("pruning depth {}", out.state.depth)];
    for (d, step) in out.state.log.iter().enumerate() {
        lines.push(format!(
            "depth {}: forced to zero: {}; inconsistent atoms: {}; zeroed by inconsistency: {}",
            d + 1,
            list(&step.forced, names),
            list(&step.problematic, &atom_labels),
            list(&step.zeroed_by_conflict, names),
        ));
    }
    for e in &out.state.quiver {
        lines.push(format!(
            "edge {}: {} -> {} (ratio {})",
            atoms[e.atom],
            names[e.source],
            names[e.target],
            e.ratio().render(var)
        ));
    }
    lines.push(format!(
        "quivered system: atoms [{}], compounds [{}]",
        list(&out.system.i_hat, &atom_labels),
        list(&out.system.j_hat, names)
    ));
    lines
}

fn coefficient<R: Ring>(x: &R, var: &str) -> String {
    let abs = if x.is_negative() { -x.clone() } else { x.clone() };
    if abs.is_one() {
        return String::new();
    }
    let s = abs.render(var);
    if s.chars().skip(1).any(|c| c == '+' || c == '-') {
        format!("({s}) ")
    } else {
        format!("{s} ")
    }
}

fn render_column<R: Ring>(col: &[R], names: &[&str], var: &str) -> String {
    let side = |want_negative: bool| {
        col.iter()
            .zip(names)
            .filter(|(x, _)| !x.is_zero() && x.is_negative() == want_negative)
            .map(|(x, n)| format!("{}{}", coefficient(x, var), n))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!("{} -> {}", side(true), side(false))
}

/// One equation per basis column, e.g. `2 H2 + O2 -> 2 H2O`.
pub fn render(result: &BalanceResult, r: &Reaction) -> String {
    if !result.feasible {
        return INFEASIBLE.to_string();
    }
    equations(result, r).join("\n")
}

/// The rendered equations, one per basis column.
pub fn equations(result: &BalanceResult, r: &Reaction) -> Vec<String> {
    let names: Vec<&str> = r.compounds().map(|f| f.source.as_str()).collect();
    match &result.coefficients {
        AnyMatrix::Integer(m) => m
            .columns()
            .iter()
            .map(|c| render_column(c, &names, ""))
            .collect(),
        AnyMatrix::Poly { matrix, param } => matrix
            .columns()
            .iter()
            .map(|c| render_column(c, &names, param))
            .collect(),
    }
}
