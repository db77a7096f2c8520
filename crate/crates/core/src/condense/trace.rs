use std::fmt::Write as _;

use crate::ring::Ring;

use super::{CondensationTrace, Step};

/// True iff every recorded row `X | Y` sums to its check entry. Traces
/// recorded without a check column never verify.
pub fn verify_checksums<R: Ring>(trace: &CondensationTrace<R>) -> bool {
    trace.steps.iter().all(|s| {
        let Some(check) = &s.check else { return false };
        let rows_ok = |x: &crate::Matrix<R>, y: &crate::Matrix<R>, chk: &[R]| {
            (0..x.rows()).all(|i| {
                let sum = x.row(i).iter().chain(y.row(i)).fold(R::zero(), |a, v| a + v);
                sum == chk[i]
            })
        };
        rows_ok(&s.x, &s.y, check)
            && s
                .bottom_check
                .as_ref()
                .is_some_and(|bc| rows_ok(&s.bottom_x, &s.bottom_y, bc))
    })
}

/// Renders the trace as `X | Y || check` tables, one per step, with the
/// pivot in brackets.
pub fn render_trace<R: Ring>(trace: &CondensationTrace<R>, var: &str) -> String {
    let mut out = String::new();
    for (l, step) in trace.steps.iter().enumerate() {
        let _ = write!(out, "step {l}");
        if let Some(d) = &step.delta {
            let _ = write!(out, "  delta = {}", d.render(var));
        }
        if let Some((r, c)) = step.pivot {
            let _ = write!(out, "  pivot ({}, {})", r + 1, c + 1);
        }
        if let Some((a, b)) = step.swap {
            let _ = write!(out, "  swap rows {} and {}", a + 1, b + 1);
        }
        out.push('\n');
        render_step(&mut out, step, var);
        out.push('\n');
    }
    out
}

fn render_step<R: Ring>(out: &mut String, s: &Step<R>, var: &str) {
    let cell = |x: &R, boxed: bool| {
        let t = x.render(var);
        if boxed {
            format!("[{t}]")
        } else {
            t
        }
    };
    let mut table: Vec<(Vec<String>, Vec<String>, Option<String>)> = Vec::new();
    for i in 0..s.x.rows() {
        let xs = (0..s.x.cols())
            .map(|j| cell(&s.x[(i, j)], s.pivot == Some((i, j))))
            .collect();
        let ys = (0..s.y.cols()).map(|j| cell(&s.y[(i, j)], false)).collect();
        let chk = s.check.as_ref().map(|c| c[i].render(var));
        table.push((xs, ys, chk));
    }
    let split = table.len();
    for i in 0..s.bottom_x.rows() {
        let xs = (0..s.bottom_x.cols())
            .map(|j| cell(&s.bottom_x[(i, j)], false))
            .collect();
        let ys = (0..s.bottom_y.cols())
            .map(|j| cell(&s.bottom_y[(i, j)], false))
            .collect();
        let chk = s.bottom_check.as_ref().map(|c| c[i].render(var));
        table.push((xs, ys, chk));
    }
    let width = table
        .iter()
        .flat_map(|(x, y, c)| x.iter().chain(y).chain(c))
        .map(String::len)
        .max()
        .unwrap_or(1);
    let pad = |v: &[String]| {
        v.iter()
            .map(|t| format!("{t:>width$}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let xw = s.x.cols() * (width + 1);
    for (i, (xs, ys, chk)) in table.iter().enumerate() {
        if i == split && split > 0 {
            let _ = writeln!(out, "{}", "-".repeat(xw + ys.len() * (width + 1) + 2));
        }
        let mut line = format!("{:>w$} | {}", pad(xs), pad(ys), w = xw.saturating_sub(1));
        if let Some(c) = chk {
            let _ = write!(line, " || {c:>width$}");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}
