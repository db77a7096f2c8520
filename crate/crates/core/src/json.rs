//! JSON documents for every result type. Ring elements are strings so that
//! arbitrary precision survives any consumer. Indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::chem::{equations, BalanceResult, Reaction};
use crate::condense::{AffineSolution, FourSubspaces, KernelBasis, RationalMatrix};
use crate::matrix::{AnyMatrix, Matrix};
use crate::ring::{Poly, Ring};
use crate::smith::SmithDecomposition;
use crate::{ParseError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
    pub param: Option<String>,
}

impl MatrixJson {
    pub fn from_matrix<R: Ring>(m: &Matrix<R>, param: Option<&str>) -> Self {
        let var = param.unwrap_or("");
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.render(var)).collect())
                .collect(),
            param: param.map(str::to_string),
        }
    }

    pub fn to_any(&self) -> Result<AnyMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(crate::Error::ShapeMismatch(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        fn build<R: Ring>(j: &MatrixJson, var: Option<&str>) -> Result<Matrix<R>> {
            let rows = j
                .entries
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .map(|s| R::parse(s, var).map_err(|e| ParseError::new(i + 1, e.column, e.message)))
                        .collect::<std::result::Result<Vec<R>, _>>()
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Matrix::from_fn(j.rows, j.cols, |a, b| rows[a][b].clone()))
        }
        Ok(match &self.param {
            None => AnyMatrix::Integer(build(self, None)?),
            Some(p) => AnyMatrix::Poly {
                matrix: build::<Poly>(self, Some(p))?,
                param: p.clone(),
            },
        })
    }
}

impl From<&AnyMatrix> for MatrixJson {
    fn from(m: &AnyMatrix) -> Self {
        match m {
            AnyMatrix::Integer(m) => MatrixJson::from_matrix(m, None),
            AnyMatrix::Poly { matrix, param } => MatrixJson::from_matrix(matrix, Some(param)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelJson {
    pub dimension: usize,
    /// One entry per generator.
    pub basis: Vec<Vec<String>>,
    pub saturated: bool,
    pub param: Option<String>,
}

fn columns<R: Ring>(m: &Matrix<R>, var: &str) -> Vec<Vec<String>> {
    m.columns()
        .iter()
        .map(|c| c.iter().map(|x| x.render(var)).collect())
        .collect()
}

impl KernelJson {
    pub fn new<R: Ring>(k: &KernelBasis<R>, param: Option<&str>) -> Self {
        KernelJson {
            dimension: k.dim(),
            basis: columns(&k.generators, param.unwrap_or("")),
            saturated: k.saturated,
            param: param.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetJson {
    pub determinant: String,
    pub param: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveJson {
    pub feasible: bool,
    /// Entries as `p` or `p/q`.
    pub particular: Vec<String>,
    pub homogeneous: Vec<Vec<String>>,
    pub param: Option<String>,
}

impl SolveJson {
    pub fn new<R: Ring>(s: &AffineSolution<R>, param: Option<&str>) -> Self {
        let var = param.unwrap_or("");
        SolveJson {
            feasible: s.feasible,
            particular: s.particular.iter().map(|f| f.render(var)).collect(),
            homogeneous: columns(&s.homogeneous.generators, var),
            param: param.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseJson {
    /// The inverse is `numerator / denominator`.
    pub denominator: String,
    pub numerator: MatrixJson,
}

impl InverseJson {
    pub fn new<R: Ring>(inv: &RationalMatrix<R>, param: Option<&str>) -> Self {
        InverseJson {
            denominator: inv.denom.render(param.unwrap_or("")),
            numerator: MatrixJson::from_matrix(&inv.numer, param),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspacesJson {
    pub rank: usize,
    pub ker_a: Vec<Vec<String>>,
    pub ker_at: Vec<Vec<String>>,
    /// Columns of A spanning im(A).
    pub im_a_columns: Vec<usize>,
    /// Columns of Aᵀ spanning im(Aᵀ).
    pub im_at_columns: Vec<usize>,
    pub sigma: Vec<usize>,
    pub param: Option<String>,
}

impl SubspacesJson {
    pub fn new<R: Ring>(f: &FourSubspaces<R>, param: Option<&str>) -> Self {
        let var = param.unwrap_or("");
        let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect();
        SubspacesJson {
            rank: f.rank,
            ker_a: columns(&f.ker_a.generators, var),
            ker_at: columns(&f.ker_at.generators, var),
            im_a_columns: one_based(&f.im_a_columns),
            im_at_columns: one_based(&f.im_at_columns),
            sigma: one_based(&f.sigma),
            param: param.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithJson {
    pub u: MatrixJson,
    pub d: MatrixJson,
    pub v: MatrixJson,
    pub invariant_factors: Vec<String>,
}

impl From<&SmithDecomposition> for SmithJson {
    fn from(s: &SmithDecomposition) -> Self {
        SmithJson {
            u: MatrixJson::from_matrix(&s.u, None),
            d: MatrixJson::from_matrix(&s.d, None),
            v: MatrixJson::from_matrix(&s.v, None),
            invariant_factors: s.invariant_factors.iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturateJson {
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceJson {
    pub compounds: Vec<String>,
    pub atoms: Vec<String>,
    pub adjacency: Vec<Vec<String>>,
    /// One coefficient vector per balanced reaction.
    pub basis: Vec<Vec<String>>,
    pub equations: Vec<String>,
    pub feasible: bool,
    pub oriented: bool,
    pub diagnostics: Vec<String>,
    pub param: Option<String>,
}

impl BalanceJson {
    pub fn new(res: &BalanceResult, r: &Reaction) -> Self {
        let basis = match &res.coefficients {
            AnyMatrix::Integer(m) => columns(m, ""),
            AnyMatrix::Poly { matrix, param } => columns(matrix, param),
        };
        BalanceJson {
            compounds: r.compounds().map(|f| f.source.clone()).collect(),
            atoms: r.atoms.clone(),
            adjacency: MatrixJson::from(&res.adjacency).entries,
            basis,
            equations: if res.feasible { equations(res, r) } else { Vec::new() },
            feasible: res.feasible,
            oriented: res.oriented,
            diagnostics: res.diagnostics.clone(),
            param: r.parameter.clone(),
        }
    }
}
