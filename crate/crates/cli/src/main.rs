use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use chio_core::chem::{equations, INFEASIBLE};
use chio_core::condense::{
    detker_pc_with, four_pc_with, inv_pc, ker_pc_with, render_trace, solve_pc_with, CondensationTrace,
    CondenseOptions, PivotRule,
};
use chio_core::json::{
    BalanceJson, DetJson, InverseJson, KernelJson, MatrixJson, SaturateJson, SmithJson, SolveJson, SubspacesJson,
};
use chio_core::smith::smith_nf_any;
use chio_core::{
    balance, det_pc, saturate, AnyMatrix, BalanceOptions, Error, Fraction, Matrix, ParseError, Reaction, Ring,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "chio", version, about = "Exact linear algebra by pivotal condensation")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Balance a chemical reaction, e.g. "H2 + O2 -> H2O".
    Balance(BalanceArgs),
    /// Kernel basis of a matrix.
    Kernel(MatrixArgs),
    /// Determinant of a square matrix.
    Det(MatrixArgs),
    /// Solve A·v = w over the fractions.
    Solve(SolveArgs),
    /// Inverse of a square matrix.
    Inv(PlainArgs),
    /// Bases of the four fundamental subspaces.
    Subspaces(MatrixArgs),
    /// Smith normal form of an integer matrix.
    Smith(PlainArgs),
    /// Z-basis of the saturation of the lattice spanned by the columns.
    Saturate(PlainArgs),
}

#[derive(Args)]
struct Input {
    /// A file, `-` for standard input, or a literal with `;` between rows.
    #[arg(allow_hyphen_values = true)]
    input: String,
}

#[derive(Args)]
struct PlainArgs {
    #[command(flatten)]
    input: Input,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pivot {
    First,
    Smallest,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    input: Input,
    /// Variable name for polynomial entries.
    #[arg(long)]
    param: Option<String>,
    /// Print every condensation step.
    #[arg(long)]
    trace: bool,
    /// Carry a row-sum column and verify it.
    #[arg(long)]
    checksums: bool,
    #[arg(long, value_enum, default_value = "first")]
    pivot: Pivot,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Right-hand side; without it the last input column is used.
    #[arg(long, allow_hyphen_values = true)]
    rhs: Option<String>,
}

#[derive(Args)]
struct BalanceArgs {
    /// A reaction, a file with one reaction per line, or `-`.
    input: String,
    /// Preprocess by quivering.
    #[arg(long)]
    quiver: bool,
    /// Print the pruning log (implies --quiver).
    #[arg(long)]
    explain: bool,
    /// Keep the rational kernel basis as computed.
    #[arg(long)]
    no_saturate: bool,
    /// Parameter used in counts such as CnH2n+2.
    #[arg(long)]
    param: Option<String>,
    /// Atoms to list first, comma separated.
    #[arg(long, value_delimiter = ',')]
    atom_order: Vec<String>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular | Error::RankDeficient { .. } | Error::DivisionNotExact | Error::DeclineQuivering(_) => {
                Failure::Compute(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error at {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = match cli.command {
        Command::Balance(a) => run_balance(&a, json),
        Command::Kernel(a) => run_kernel(&a, json),
        Command::Det(a) => run_det(&a, json),
        Command::Solve(a) => run_solve(&a, json),
        Command::Inv(a) => run_inv(&a, json),
        Command::Subspaces(a) => run_subspaces(&a, json),
        Command::Smith(a) => run_smith(&a, json),
        Command::Saturate(a) => run_saturate(&a, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")));
    }
    Ok(arg.replace(';', "\n"))
}

fn read_matrix(arg: &str, param: Option<&str>) -> Result<AnyMatrix, Failure> {
    let text = read_source(arg)?;
    if text.trim_start().starts_with('{') {
        let j: MatrixJson =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid matrix JSON: {e}")))?;
        return Ok(j.to_any()?);
    }
    Ok(AnyMatrix::parse(&text, param)?)
}

fn options(a: &MatrixArgs) -> CondenseOptions {
    CondenseOptions {
        pivot: match a.pivot {
            Pivot::First => PivotRule::FirstNonzero,
            Pivot::Smallest => PivotRule::SmallestEntry,
        },
        checksums: a.checksums,
        trace: a.trace || a.checksums,
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn vector<T>(v: &[T], render: impl Fn(&T) -> String) -> String {
    format!("({})", v.iter().map(render).collect::<Vec<_>>().join(", "))
}

fn print_columns<R: Ring>(m: &Matrix<R>, var: &str, empty: &str) {
    if m.cols() == 0 {
        println!("{empty}");
    }
    for c in m.columns() {
        println!("{}", vector(&c, |x| x.render(var)));
    }
}

/// Trace text goes to stderr when stdout carries JSON.
fn show_trace<R: Ring>(trace: &CondensationTrace<R>, a: &MatrixArgs, var: &str, json: bool) {
    let mut text = String::new();
    if a.trace {
        text.push_str(&render_trace(trace, var));
    }
    if let Some(ok) = trace.checksum_ok {
        text.push_str(if ok { "check sums: ok\n" } else { "check sums: MISMATCH\n" });
    }
    if text.is_empty() {
        return;
    }
    if json {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
}

macro_rules! dispatch {
    ($m:expr, |$mat:ident, $var:ident| $body:expr) => {
        match &$m {
            AnyMatrix::Integer($mat) => {
                let $var: Option<&str> = None;
                $body
            }
            AnyMatrix::Poly { matrix: $mat, param } => {
                let $var: Option<&str> = Some(param.as_str());
                $body
            }
        }
    };
}

fn run_kernel(a: &MatrixArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, a.param.as_deref())?;
    dispatch!(m, |mat, var| {
        let (k, trace) = ker_pc_with(mat, &options(a));
        show_trace(&trace, a, var.unwrap_or(""), json);
        if json {
            print_json(&KernelJson::new(&k, var));
        } else {
            print_columns(&k.generators, var.unwrap_or(""), "trivial kernel");
        }
    });
    Ok(())
}

fn run_det(a: &MatrixArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, a.param.as_deref())?;
    dispatch!(m, |mat, var| {
        let d = if a.trace || a.checksums {
            let (d, _, trace) = detker_pc_with(mat, &options(a))?;
            show_trace(&trace, a, var.unwrap_or(""), json);
            d
        } else {
            det_pc(mat)?
        };
        let text = d.render(var.unwrap_or(""));
        if json {
            print_json(&DetJson {
                determinant: text,
                param: var.map(str::to_string),
            });
        } else {
            println!("{text}");
        }
    });
    Ok(())
}

fn parse_rhs<R: Ring>(text: &str, var: Option<&str>) -> Result<Vec<R>, Failure> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| R::parse(t, var).map_err(Failure::from))
        .collect()
}

fn run_solve(a: &SolveArgs, json: bool) -> Outcome {
    let args = &a.matrix;
    let m = read_matrix(&args.input.input, args.param.as_deref())?;
    dispatch!(m, |mat, var| {
        let (lhs, w) = match &a.rhs {
            Some(text) => (mat.clone(), parse_rhs(text, var)?),
            None => {
                if mat.cols() == 0 {
                    return Err(Failure::Usage("augmented input needs at least one column".into()));
                }
                let k = mat.cols() - 1;
                let rows: Vec<usize> = (0..mat.rows()).collect();
                let cols: Vec<usize> = (0..k).collect();
                (mat.select(&rows, &cols), mat.column(k))
            }
        };
        let s = solve_pc_with(&lhs, &w, &options(args))?;
        let v = var.unwrap_or("");
        if json {
            print_json(&SolveJson::new(&s, var));
        } else if !s.feasible {
            println!("no solution");
        } else {
            println!("particular {}", vector(&s.particular, |f: &Fraction<_>| f.render(v)));
            if s.homogeneous.dim() > 0 {
                println!("homogeneous");
                print_columns(&s.homogeneous.generators, v, "");
            }
        }
    });
    Ok(())
}

fn run_inv(a: &PlainArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, None)?;
    dispatch!(m, |mat, var| {
        let inv = inv_pc(mat)?;
        let v = var.unwrap_or("");
        if json {
            print_json(&InverseJson::new(&inv, var));
        } else {
            if !inv.denom.is_one() {
                println!("(1/{}) *", inv.denom.render(v));
            }
            print!("{}", inv.numer.format(v));
        }
    });
    Ok(())
}

fn run_subspaces(a: &MatrixArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, a.param.as_deref())?;
    dispatch!(m, |mat, var| {
        let (f, trace) = four_pc_with(mat, &options(a));
        let v = var.unwrap_or("");
        show_trace(&trace, a, v, json);
        if json {
            print_json(&SubspacesJson::new(&f, var));
        } else {
            let one_based = |ids: &[usize]| vector(ids, |i| (i + 1).to_string());
            println!("rank {}", f.rank);
            println!("ker A");
            print_columns(&f.ker_a.generators, v, "  trivial");
            println!("ker A^T");
            print_columns(&f.ker_at.generators, v, "  trivial");
            println!("im A: columns {} of A", one_based(&f.im_a_columns));
            println!("im A^T: columns {} of A^T", one_based(&f.im_at_columns));
            println!("sigma {}", one_based(&f.sigma));
        }
    });
    Ok(())
}

fn run_smith(a: &PlainArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, None)?;
    let s = smith_nf_any(&m)?;
    if json {
        print_json(&SmithJson::from(&s));
    } else {
        println!("invariant factors {}", vector(&s.invariant_factors, |x| x.to_string()));
        for (name, mat) in [("D", &s.d), ("U", &s.u), ("V", &s.v)] {
            println!("{name}");
            print!("{}", mat.format(""));
        }
    }
    Ok(())
}

fn run_saturate(a: &PlainArgs, json: bool) -> Outcome {
    let m = read_matrix(&a.input.input, None)?.to_integer()?;
    let s = saturate(&m)?;
    if json {
        print_json(&SaturateJson {
            basis: s
                .columns()
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect(),
        });
    } else {
        print_columns(&s, "", "empty basis");
    }
    Ok(())
}

fn run_balance(a: &BalanceArgs, json: bool) -> Outcome {
    let text = read_source(&a.input)?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return Err(Failure::Usage("no reaction given".into()));
    }
    let opts = BalanceOptions {
        quiver: a.quiver || a.explain,
        saturate: !a.no_saturate,
    };
    let mut docs = Vec::new();
    for (n, line) in lines.iter().enumerate() {
        let mut r = Reaction::parse(line, a.param.as_deref()).map_err(|e| {
            let e = if lines.len() > 1 { ParseError::new(n + 1, e.column, e.message) } else { e };
            Failure::from(e)
        })?;
        if !a.atom_order.is_empty() {
            r.set_atom_order(&a.atom_order)?;
        }
        let res = balance(&r, &opts)?;
        for d in &res.diagnostics {
            if d != INFEASIBLE {
                eprintln!("note: {d}");
            }
        }
        if a.explain {
            for l in &res.explain {
                if json {
                    eprintln!("{l}");
                } else {
                    println!("{l}");
                }
            }
        }
        if json {
            docs.push(BalanceJson::new(&res, &r));
        } else if res.feasible {
            for e in equations(&res, &r) {
                println!("{e}");
            }
        } else {
            println!("{INFEASIBLE}");
        }
    }
    if json {
        if docs.len() == 1 {
            print_json(&docs[0]);
        } else {
            print_json(&docs);
        }
    }
    Ok(())
}
