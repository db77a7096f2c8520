//! Exact linear algebra by pivotal condensation.
//!
//! The crate computes determinants, kernels, inverses, solutions of
//! inhomogeneous systems and the four fundamental subspaces of matrices over
//! a GCD domain without ever leaving the ring: every intermediate entry is a
//! 2×2 minor against a pivot, and rows are divided by their content after each
//! condensation. Two rings are supported: arbitrary-precision integers and
//! univariate polynomials with integer coefficients.
//!
//! On top of the condensation engine sit a Smith normal form module (integer
//! matrices only) used to turn a rational kernel basis into a saturated
//! integer basis, and a chemical equation balancer with an optional
//! "balancing by inspection" preprocessor ([`quiver`]).

#![forbid(unsafe_code)]

pub mod chem;
pub mod condense;
pub mod json;
pub mod matrix;
pub mod quiver;
pub mod ring;
pub mod smith;

use std::fmt;

pub use chem::{balance, parse_formula, render, BalanceOptions, BalanceResult, Formula, Reaction};
pub use condense::{
    det_pc, detker_pc, four_pc, inv_pc, ker_pc, solve_pc, verify_checksums, AffineSolution,
    CondensationTrace, CondenseOptions, FourSubspaces, KernelBasis, PivotRule,
};
pub use matrix::{AnyMatrix, Matrix};
pub use ring::{Fraction, Integer, Poly, Ring};
pub use smith::{image_basis, is_saturated, kernel_basis, saturate, smith_nf, SmithDecomposition};

/// A parse failure with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Shifts the position by a line/column offset, used when a sub-parser
    /// works on a slice of a larger input.
    pub(crate) fn offset(mut self, line: usize, column: usize) -> Self {
        if self.line <= 1 {
            self.column += column;
        }
        self.line += line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Errors reported by the library.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division is not exact in the ring")]
    DivisionNotExact,
    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("operation requires integer entries")]
    UnsupportedRing,
    #[error("columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("inconsistent parameter: {0}")]
    InconsistentParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quivering declined: {0}")]
    DeclineQuivering(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
