//! Dense row-major matrices over a [`Ring`].

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;

use crate::ring::{Poly, Ring};
use crate::{Error, ParseError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row {} has {} entries, expected {}",
                bad + 1,
                rows[bad].len(),
                cols
            )));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<R>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch(format!(
                "column {} has {} entries, expected {}",
                bad + 1,
                columns[bad].len(),
                rows
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Convenience constructor for small integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| R::from_i64(x)).collect())
                .collect(),
        )
        .expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Result<&R> {
        self.check(r, c)?;
        Ok(&self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, value: R) -> Result<()> {
        self.check(r, c)?;
        self.data[r * self.cols + c] = value;
        Ok(())
    }

    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut R {
        &mut self.data[r * self.cols + c]
    }

    fn check(&self, r: usize, c: usize) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<R>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self[(i, k)].clone() * &other[(k, j)]
            })
        }))
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    /// `M[r1,c1]·M[r2,c2] − M[r1,c2]·M[r2,c1]`.
    pub fn minor2(&self, r1: usize, c1: usize, r2: usize, c2: usize) -> Result<R> {
        self.check(r1, c1)?;
        self.check(r2, c2)?;
        Ok(self[(r1, c1)].clone() * &self[(r2, c2)] - self[(r1, c2)].clone() * &self[(r2, c1)])
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Row `dst += k · row src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &R) {
        for c in 0..self.cols {
            let v = self[(src, c)].clone() * k;
            let d = self.at_mut(dst, c);
            *d = std::mem::replace(d, R::zero()) + v;
        }
    }

    /// Column `dst += k · column src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &R) {
        for r in 0..self.rows {
            let v = self[(r, src)].clone() * k;
            let d = self.at_mut(r, dst);
            *d = std::mem::replace(d, R::zero()) + v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let d = self.at_mut(r, c);
            *d = -std::mem::replace(d, R::zero());
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let d = self.at_mut(r, c);
            *d = -std::mem::replace(d, R::zero());
        }
    }

    /// Submatrix keeping the listed rows and columns in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix<R>) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Parses whitespace-separated entries, one row per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, var: Option<&str>) -> Result<Self, ParseError> {
        let mut rows: Vec<Vec<R>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for (col, token) in tokens(line) {
                let value =
                    R::parse(token, var).map_err(|e| e.offset(ln, col.saturating_sub(1)))?;
                row.push(value);
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(ParseError::new(
                        ln + 1,
                        1,
                        format!("expected {} entries, found {}", first.len(), row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        Ok(Self::from_rows(rows).expect("row lengths checked"))
    }

    /// Right-aligned text, one row per line; inverse of [`Matrix::parse`].
    pub fn format(&self, var: &str) -> String {
        let cells: Vec<String> = self.data.iter().map(|x| x.render(var)).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Whitespace tokens with their 1-based character column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut pos = 0;
    line.split_whitespace().map(move |tok| {
        let start = pos + line[pos..].find(tok).expect("token present");
        pos = start + tok.len();
        (line[..start].chars().count() + 1, tok)
    })
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (r, c): (usize, usize)) -> &R {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows)
            .map(|r| &self.data[r * self.cols..(r + 1) * self.cols])
            .collect();
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

/// A matrix over either supported ring, as read from user input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Integer(Matrix<BigInt>),
    Poly { matrix: Matrix<Poly>, param: String },
}

impl AnyMatrix {
    /// Integer entries without a parameter, polynomial entries with one.
    pub fn parse(text: &str, param: Option<&str>) -> Result<Self, ParseError> {
        match param {
            None => Matrix::parse(text, None).map(AnyMatrix::Integer),
            Some(p) => Ok(AnyMatrix::Poly {
                matrix: Matrix::parse(text, Some(p))?,
                param: p.to_string(),
            }),
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            AnyMatrix::Integer(m) => m.rows(),
            AnyMatrix::Poly { matrix, .. } => matrix.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            AnyMatrix::Integer(m) => m.cols(),
            AnyMatrix::Poly { matrix, .. } => matrix.cols(),
        }
    }

    pub fn param(&self) -> Option<&str> {
        match self {
            AnyMatrix::Integer(_) => None,
            AnyMatrix::Poly { param, .. } => Some(param),
        }
    }

    pub fn format(&self) -> String {
        match self {
            AnyMatrix::Integer(m) => m.format(""),
            AnyMatrix::Poly { matrix, param } => matrix.format(param),
        }
    }

    /// The integer matrix, if every entry is a constant.
    pub fn to_integer(&self) -> Result<Matrix<BigInt>> {
        match self {
            AnyMatrix::Integer(m) => Ok(m.clone()),
            AnyMatrix::Poly { matrix, .. } => {
                let entries: Option<Vec<BigInt>> =
                    matrix.entries().iter().map(BigInt::from_poly).collect();
                let entries = entries.ok_or(Error::UnsupportedRing)?;
                Ok(Matrix {
                    rows: matrix.rows(),
                    cols: matrix.cols(),
                    data: entries,
                })
            }
        }
    }
}
