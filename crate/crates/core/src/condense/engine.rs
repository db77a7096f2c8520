use crate::matrix::Matrix;
use crate::ring::{content_and_primitive, Fraction, Ring};

use super::{CondenseOptions, PivotRule};

/// One recorded pattern `Δ | X | Y (|| check)`, with an optional lower block
/// below the bar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<R: Ring> {
    /// `None` once the pattern is no longer square (the determinant is 0),
    /// or when Δ is not tracked.
    pub delta: Option<Fraction<R>>,
    pub x: Matrix<R>,
    pub y: Matrix<R>,
    pub check: Option<Vec<R>>,
    pub bottom_x: Matrix<R>,
    pub bottom_y: Matrix<R>,
    pub bottom_check: Option<Vec<R>>,
    /// Original index of each row of `x`.
    pub row_ids: Vec<usize>,
    /// Original index of each column of `x`.
    pub col_ids: Vec<usize>,
    /// Pivot position in this pattern, before the row swap.
    pub pivot: Option<(usize, usize)>,
    /// Transposition that moves the pivot row to the top.
    pub swap: Option<(usize, usize)>,
    /// Leading zero columns of `x` dropped at this step.
    pub dropped: usize,
}

/// Record of a condensation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationTrace<R: Ring> {
    pub steps: Vec<Step<R>>,
    /// Original row indices in the order they became pivot rows, followed by
    /// the rows left at the end.
    pub sigma_total: Vec<usize>,
    /// `Some` when a check-sum column was carried.
    pub checksum_ok: Option<bool>,
}

/// The condensation state machine.
///
/// Every row is stored as `[X | Y | check]`. Top rows take part in pivoting
/// and are divided by their content after each step; bottom rows are
/// condensed against the pivot row but never chosen as pivots.
#[derive(Clone, Debug)]
pub struct Condenser<R: Ring> {
    top: Vec<Vec<R>>,
    bottom: Vec<Vec<R>>,
    xc: usize,
    yc: usize,
    check: bool,
    row_ids: Vec<usize>,
    col_ids: Vec<usize>,
    rule: PivotRule,
    clean_bottom: bool,
    track_delta: bool,
    delta: Option<Fraction<R>>,
    pivots: Vec<(usize, usize)>,
    dropped: Vec<(usize, Vec<R>)>,
    steps: Option<Vec<Step<R>>>,
    finished: bool,
}

impl<R: Ring> Condenser<R> {
    /// Pattern `X | Y` with no lower block. `x` and `y` must have the same
    /// number of rows.
    pub fn new(x: &Matrix<R>, y: &Matrix<R>, opts: &CondenseOptions) -> Self {
        assert_eq!(x.rows(), y.rows(), "X and Y must have equal row counts");
        let top = (0..x.rows())
            .map(|i| {
                let mut row: Vec<R> = x.row(i).iter().chain(y.row(i)).cloned().collect();
                if opts.checksums {
                    let s = row_sum(&row);
                    row.push(s);
                }
                row
            })
            .collect();
        Condenser {
            top,
            bottom: Vec::new(),
            xc: x.cols(),
            yc: y.cols(),
            check: opts.checksums,
            row_ids: (0..x.rows()).collect(),
            col_ids: (0..x.cols()).collect(),
            rule: opts.pivot,
            clean_bottom: true,
            track_delta: false,
            delta: None,
            pivots: Vec::new(),
            dropped: Vec::new(),
            steps: opts.trace.then(Vec::new),
            finished: false,
        }
    }

    /// The standard kernel pattern `Aᵀ | 1`.
    pub fn ker(a: &Matrix<R>, opts: &CondenseOptions) -> Self {
        Self::new(&a.transpose(), &Matrix::identity(a.cols()), opts)
    }

    /// Adds a lower block `BX | BY` below the bar.
    pub fn with_bottom(mut self, bx: &Matrix<R>, by: &Matrix<R>) -> Self {
        assert_eq!(bx.cols(), self.xc);
        assert_eq!(by.cols(), self.yc);
        for i in 0..bx.rows() {
            let mut row: Vec<R> = bx.row(i).iter().chain(by.row(i)).cloned().collect();
            if self.check {
                let s = row_sum(&row);
                row.push(s);
            }
            self.bottom.push(row);
        }
        self
    }

    /// Whether bottom rows are divided by their content (default `true`).
    pub fn clean_bottom(mut self, yes: bool) -> Self {
        self.clean_bottom = yes;
        self
    }

    /// Tracks Δ; requires a square `X`.
    pub fn track_delta(mut self) -> Self {
        self.track_delta = true;
        self.delta = (self.top.len() == self.xc).then(Fraction::one);
        self
    }

    pub fn x_cols(&self) -> usize {
        self.xc
    }

    pub fn y_cols(&self) -> usize {
        self.yc
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Mutable access to the top rows, laid out as `[X | Y | check]`.
    pub fn rows_mut(&mut self) -> &mut [Vec<R>] {
        &mut self.top
    }

    pub fn bottom_rows_mut(&mut self) -> &mut [Vec<R>] {
        &mut self.bottom
    }

    fn x_is_zero(&self) -> bool {
        self.top.iter().all(|r| r[..self.xc].iter().all(R::is_zero))
    }

    fn snapshot(&mut self, pivot: Option<(usize, usize)>, swap: Option<(usize, usize)>, dropped: usize) {
        let Some(steps) = self.steps.as_mut() else { return };
        let (xc, yc) = (self.xc, self.yc);
        let block = |rows: &[Vec<R>], from: usize, n: usize| {
            Matrix::from_fn(rows.len(), n, |i, j| rows[i][from + j].clone())
        };
        let check = |rows: &[Vec<R>]| {
            self.check
                .then(|| rows.iter().map(|r| r[xc + yc].clone()).collect())
        };
        steps.push(Step {
            delta: self.delta.clone(),
            x: block(&self.top, 0, xc),
            y: block(&self.top, xc, yc),
            check: check(&self.top),
            bottom_x: block(&self.bottom, 0, xc),
            bottom_y: block(&self.bottom, xc, yc),
            bottom_check: check(&self.bottom),
            row_ids: self.row_ids.clone(),
            col_ids: self.col_ids.clone(),
            pivot,
            swap,
            dropped,
        });
    }

    fn choose_pivot(&self, k: usize) -> usize {
        let candidates: Vec<usize> = (0..self.top.len())
            .filter(|&i| !self.top[i][k].is_zero())
            .collect();
        match self.rule {
            PivotRule::FirstNonzero => candidates[0],
            PivotRule::SmallestEntry => *candidates
                .iter()
                .min_by_key(|&&i| self.top[i][k].weight())
                .expect("nonzero column"),
            PivotRule::Seeded(seed) => {
                let h = mix(seed ^ (self.pivots.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                candidates[(h % candidates.len() as u64) as usize]
            }
        }
    }

    /// Performs one condensation. Returns `false` once the stopping rule
    /// applies (X zero or empty), after recording the final pattern.
    pub fn step(&mut self) -> bool {
        if self.finished {
            return false;
        }
        if self.top.is_empty() || self.xc == 0 || self.x_is_zero() {
            self.snapshot(None, None, 0);
            self.finished = true;
            return false;
        }
        let k = (0..self.xc)
            .find(|&c| self.top.iter().any(|r| !r[c].is_zero()))
            .expect("X is nonzero");
        let r = self.choose_pivot(k);
        let swap = (r != 0).then_some((0, r));
        self.snapshot(Some((r, k)), swap, k);

        for c in 0..k {
            let col = self.bottom.iter().map(|row| row[c].clone()).collect();
            self.dropped.push((self.col_ids[c], col));
        }
        if k > 0 {
            self.delta = None;
        }
        self.top.swap(0, r);
        self.row_ids.swap(0, r);
        let s = self.top.len();
        if let Some(d) = self.delta.take() {
            let d = if r != 0 { -d } else { d };
            let p = Fraction::from_ring(self.top[0][k].clone());
            let scaled = match s {
                1 => d * p,
                2 => d,
                _ => (0..s - 2).fold(d, |acc, _| acc / p.clone()),
            };
            self.delta = Some(scaled);
        }

        let pivot_row = self.top.remove(0);
        let pivot_id = self.row_ids.remove(0);
        self.pivots.push((pivot_id, self.col_ids[k]));
        let p = &pivot_row[k];
        let condense = |row: &[R]| -> Vec<R> {
            let f = &row[k];
            row[k + 1..]
                .iter()
                .zip(&pivot_row[k + 1..])
                .map(|(z, z1)| p.clone() * z - f.clone() * z1)
                .collect()
        };
        let new_top: Vec<Vec<R>> = self.top.iter().map(|row| condense(row)).collect();
        let new_bottom: Vec<Vec<R>> = self.bottom.iter().map(|row| condense(row)).collect();
        self.top = new_top;
        self.bottom = new_bottom;
        self.col_ids.drain(..=k);
        self.xc -= k + 1;

        let width = self.xc + self.yc;
        let check = self.check;
        let mut product = R::one();
        for row in &mut self.top {
            product = product * clean(row, width, check);
        }
        if self.clean_bottom {
            for row in &mut self.bottom {
                clean(row, width, check);
            }
        }
        if self.track_delta {
            if let Some(d) = self.delta.take() {
                self.delta = Some(d * Fraction::from_ring(product));
            }
        }
        true
    }

    /// Runs to completion.
    pub fn run(&mut self) {
        while self.step() {}
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `(original row, original column)` of every pivot, in order.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// `(original column, bottom column)` for every dropped zero column.
    pub fn dropped(&self) -> &[(usize, Vec<R>)] {
        &self.dropped
    }

    pub fn delta(&self) -> Option<&Fraction<R>> {
        self.delta.as_ref()
    }

    /// Remaining top rows split into `(X, Y)` parts.
    pub fn top_parts(&self) -> impl Iterator<Item = (&[R], &[R])> {
        self.top
            .iter()
            .map(|r| (&r[..self.xc], &r[self.xc..self.xc + self.yc]))
    }

    pub fn bottom_parts(&self) -> impl Iterator<Item = (&[R], &[R])> {
        self.bottom
            .iter()
            .map(|r| (&r[..self.xc], &r[self.xc..self.xc + self.yc]))
    }

    /// Remaining original column ids of X.
    pub fn col_ids(&self) -> &[usize] {
        &self.col_ids
    }

    pub fn row_ids(&self) -> &[usize] {
        &self.row_ids
    }

    pub fn trace(&self) -> CondensationTrace<R> {
        let steps = self.steps.clone().unwrap_or_default();
        let sigma_total = self
            .pivots
            .iter()
            .map(|&(r, _)| r)
            .chain(self.row_ids.iter().copied())
            .collect();
        let mut trace = CondensationTrace {
            steps,
            sigma_total,
            checksum_ok: None,
        };
        if self.check {
            trace.checksum_ok = Some(super::verify_checksums(&trace));
        }
        trace
    }
}

fn row_sum<R: Ring>(row: &[R]) -> R {
    row.iter().fold(R::zero(), |acc, x| acc + x)
}

/// Divides `row[..width]` by its content and returns the content. A trailing
/// check entry is divided too when the division is exact.
fn clean<R: Ring>(row: &mut Vec<R>, width: usize, check: bool) -> R {
    let (c, prim) = content_and_primitive(&row[..width]);
    if c.is_one() {
        return c;
    }
    let tail = if check {
        let chk = &row[width];
        Some(chk.exact_div(&c).unwrap_or_else(|_| chk.clone()))
    } else {
        None
    };
    *row = prim;
    row.extend(tail);
    c
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
