//! Balancing by inspection.
//!
//! Atoms that occur in a single remaining compound force that compound to
//! zero. Atoms that occur in exactly two compounds give substitutions
//! `v_t = −(a_is / a_it)·v_s`, which form an acyclic quiver on the compounds
//! (edges point from the smaller to the larger compound index). Two paths
//! with the same ends but different products of ratios contradict each other;
//! every compound they touch must vanish. Iterating this to a fixpoint leaves
//! a smaller system on the sources of the quiver, whose kernel lifts back to
//! the kernel of the full matrix.
//!
//! Rows of the matrix are atoms (`I`), columns are compounds (`J`).

use std::collections::{BTreeMap, BTreeSet};

use crate::condense::{ker_pc_with, normalize, CondenseOptions, KernelBasis};
use crate::matrix::Matrix;
use crate::ring::{lcm, Fraction, Ring};
use crate::{Error, Result};

/// A two-compound atom, read as an edge `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge<R: Ring> {
    pub atom: usize,
    pub source: usize,
    pub target: usize,
    pub a_source: R,
    pub a_target: R,
}

impl<R: Ring> Edge<R> {
    /// Factor `f` with `v_target = f · v_source`.
    pub fn ratio(&self) -> Fraction<R> {
        Fraction::new(-self.a_source.clone(), self.a_target.clone()).expect("edge entries are nonzero")
    }
}

/// What one pruning pass found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneStep<R: Ring> {
    /// Atoms with no remaining compound.
    pub dropped_atoms: Vec<usize>,
    /// Compounds forced to zero by single-compound atoms.
    pub forced: Vec<usize>,
    pub edges: Vec<Edge<R>>,
    /// Atoms whose edges lie on inconsistent path pairs.
    pub problematic: Vec<usize>,
    /// Compounds at the ends of problematic edges.
    pub zeroed_by_conflict: Vec<usize>,
    pub i_next: Vec<usize>,
    pub j_next: Vec<usize>,
}

impl<R: Ring> PruneStep<R> {
    pub fn zeroed(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .forced
            .iter()
            .chain(&self.zeroed_by_conflict)
            .copied()
            .collect();
        set.into_iter().collect()
    }
}

/// Result of iterated pruning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneState<R: Ring> {
    pub i_active: Vec<usize>,
    pub j_active: Vec<usize>,
    /// Compounds forced to zero, sorted.
    pub zeroed: Vec<usize>,
    /// Number of passes that changed the active sets.
    pub depth: usize,
    /// Quiver on the final active sets.
    pub quiver: Vec<Edge<R>>,
    /// One entry per changing pass.
    pub log: Vec<PruneStep<R>>,
}

/// The reduced system on the sources of the quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiveredSystem<R: Ring> {
    pub i_hat: Vec<usize>,
    pub j_hat: Vec<usize>,
    /// `|i_hat| × |j_hat|`, rows scaled into the ring.
    pub a_hat: Matrix<R>,
    /// For every active compound, its value relative to its source.
    pub vertex_ratio: BTreeMap<usize, Fraction<R>>,
    pub source_of: BTreeMap<usize, usize>,
}

fn support<R: Ring>(a: &Matrix<R>, i: usize, js: &[usize]) -> Vec<usize> {
    js.iter().copied().filter(|&j| !a[(i, j)].is_zero()).collect()
}

fn edges_of<R: Ring>(a: &Matrix<R>, is: &[usize], js: &[usize]) -> Vec<Edge<R>> {
    is.iter()
        .filter_map(|&i| {
            let s = support(a, i, js);
            (s.len() == 2).then(|| {
                let (source, target) = (s[0].min(s[1]), s[0].max(s[1]));
                Edge {
                    atom: i,
                    source,
                    target,
                    a_source: a[(i, source)].clone(),
                    a_target: a[(i, target)].clone(),
                }
            })
        })
        .collect()
}

#[derive(Clone)]
enum Ratio<R: Ring> {
    Single(Fraction<R>),
    Multiple,
}

/// Atoms lying on some pair of inconsistent paths.
fn problematic_edges<R: Ring>(edges: &[Edge<R>], vertices: &[usize]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut by_source: BTreeMap<usize, Vec<&Edge<R>>> = BTreeMap::new();
    for e in edges {
        by_source.entry(e.source).or_default().push(e);
    }
    for &u in vertices {
        let mut state: BTreeMap<usize, Ratio<R>> = BTreeMap::new();
        state.insert(u, Ratio::Single(Fraction::one()));
        // vertex order is a topological order
        for &v in vertices.iter().filter(|&&v| v >= u) {
            let Some(sv) = state.get(&v).cloned() else { continue };
            for e in by_source.get(&v).into_iter().flatten() {
                let next = match &sv {
                    Ratio::Multiple => Ratio::Multiple,
                    Ratio::Single(r) => {
                        let cand = r.clone() * e.ratio();
                        match state.get(&e.target) {
                            None => Ratio::Single(cand),
                            Some(Ratio::Single(old)) if *old == cand => Ratio::Single(cand),
                            _ => Ratio::Multiple,
                        }
                    }
                };
                state.insert(e.target, next);
            }
        }
        let conflicted: Vec<usize> = state
            .iter()
            .filter(|(_, s)| matches!(s, Ratio::Multiple))
            .map(|(&x, _)| x)
            .collect();
        if conflicted.is_empty() {
            continue;
        }
        let reached: BTreeSet<usize> = state.keys().copied().collect();
        for &x in &conflicted {
            let reaches_x = ancestors(edges, x);
            for e in edges {
                if reached.contains(&e.source) && (e.target == x || reaches_x.contains(&e.target)) {
                    out.insert(e.atom);
                }
            }
        }
    }
    out
}

/// Vertices with a path to `x` (excluding `x`).
fn ancestors<R: Ring>(edges: &[Edge<R>], x: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for e in edges.iter().filter(|e| e.target == v) {
            if seen.insert(e.source) {
                stack.push(e.source);
            }
        }
    }
    seen
}

/// One pruning pass on the active sets `I'`, `J'`.
pub fn prune_step<R: Ring>(a: &Matrix<R>, i_active: &[usize], j_active: &[usize]) -> PruneStep<R> {
    let mut dropped_atoms = Vec::new();
    let mut forced = BTreeSet::new();
    let mut i2 = Vec::new();
    for &i in i_active {
        let s = support(a, i, j_active);
        match s.len() {
            0 => dropped_atoms.push(i),
            1 => {
                forced.insert(s[0]);
            }
            _ => i2.push(i),
        }
    }
    let j2: Vec<usize> = j_active
        .iter()
        .copied()
        .filter(|j| !forced.contains(j))
        .collect();
    let edges = edges_of(a, &i2, &j2);
    let problematic = problematic_edges(&edges, &j2);
    let zeroed_by_conflict: BTreeSet<usize> = edges
        .iter()
        .filter(|e| problematic.contains(&e.atom))
        .flat_map(|e| [e.source, e.target])
        .collect();
    PruneStep {
        dropped_atoms,
        forced: forced.into_iter().collect(),
        edges,
        i_next: i2
            .into_iter()
            .filter(|i| !problematic.contains(i))
            .collect(),
        j_next: j2
            .into_iter()
            .filter(|j| !zeroed_by_conflict.contains(j))
            .collect(),
        problematic: problematic.into_iter().collect(),
        zeroed_by_conflict: zeroed_by_conflict.into_iter().collect(),
    }
}

/// Prunes until the active sets stop changing.
pub fn prune_fixpoint<R: Ring>(a: &Matrix<R>) -> PruneState<R> {
    let mut i_active: Vec<usize> = (0..a.rows()).collect();
    let mut j_active: Vec<usize> = (0..a.cols()).collect();
    let mut zeroed = BTreeSet::new();
    let mut log = Vec::new();
    loop {
        let step = prune_step(a, &i_active, &j_active);
        if step.i_next == i_active && step.j_next == j_active {
            break;
        }
        zeroed.extend(step.zeroed());
        i_active = step.i_next.clone();
        j_active = step.j_next.clone();
        log.push(step);
    }
    PruneState {
        quiver: edges_of(a, &i_active, &j_active),
        i_active,
        j_active,
        zeroed: zeroed.into_iter().collect(),
        depth: log.len(),
        log,
    }
}

/// Builds the system on the quiver's sources.
pub fn quivered_system<R: Ring>(a: &Matrix<R>, state: &PruneState<R>) -> Result<QuiveredSystem<R>> {
    let edge_atoms: BTreeSet<usize> = state.quiver.iter().map(|e| e.atom).collect();
    let has_incoming: BTreeSet<usize> = state.quiver.iter().map(|e| e.target).collect();
    let j_hat: Vec<usize> = state
        .j_active
        .iter()
        .copied()
        .filter(|j| !has_incoming.contains(j))
        .collect();
    let i_hat: Vec<usize> = state
        .i_active
        .iter()
        .copied()
        .filter(|i| !edge_atoms.contains(i))
        .collect();

    let mut vertex_ratio = BTreeMap::new();
    let mut source_of = BTreeMap::new();
    for &j in &j_hat {
        vertex_ratio.insert(j, Fraction::one());
        source_of.insert(j, j);
    }
    for &v in &state.j_active {
        for e in state.quiver.iter().filter(|e| e.source == v) {
            let r = vertex_ratio[&v].clone() * e.ratio();
            let src = source_of[&v];
            match source_of.get(&e.target) {
                Some(&other) if other != src => {
                    return Err(Error::DeclineQuivering(format!(
                        "compound {} is reachable from compounds {} and {}",
                        e.target + 1,
                        other + 1,
                        src + 1
                    )));
                }
                _ => {
                    source_of.insert(e.target, src);
                    vertex_ratio.insert(e.target, r);
                }
            }
        }
    }

    let mut rows = Vec::with_capacity(i_hat.len());
    for &i in &i_hat {
        let b: Vec<Fraction<R>> = j_hat
            .iter()
            .map(|&j| {
                state
                    .j_active
                    .iter()
                    .filter(|x| source_of[*x] == j)
                    .fold(Fraction::zero(), |acc, x| {
                        acc + Fraction::from_ring(a[(i, *x)].clone()) * vertex_ratio[x].clone()
                    })
            })
            .collect();
        rows.push(clear_denominators(&b));
    }
    let a_hat = Matrix::from_fn(i_hat.len(), j_hat.len(), |r, c| rows[r][c].clone());
    Ok(QuiveredSystem {
        i_hat,
        j_hat,
        a_hat,
        vertex_ratio,
        source_of,
    })
}

/// Scales by the lcm of the denominators and divides by the content.
fn clear_denominators<R: Ring>(v: &[Fraction<R>]) -> Vec<R> {
    let l = v.iter().fold(R::one(), |acc, f| lcm(&acc, f.denom()));
    let scaled: Vec<R> = v
        .iter()
        .map(|f| {
            f.numer().clone() * &l.exact_div(f.denom()).expect("lcm is a multiple")
        })
        .collect();
    crate::ring::content_and_primitive(&scaled).1
}

/// Lifts solutions of the quivered system (columns of `w_hat`, indexed by
/// `j_hat`) to primitive kernel vectors of the full matrix.
pub fn reconstruct<R: Ring>(
    w_hat: &Matrix<R>,
    state: &PruneState<R>,
    system: &QuiveredSystem<R>,
    compounds: usize,
) -> Matrix<R> {
    let pos: BTreeMap<usize, usize> = system
        .j_hat
        .iter()
        .enumerate()
        .map(|(k, &j)| (j, k))
        .collect();
    let columns: Vec<Vec<R>> = (0..w_hat.cols())
        .map(|mu| {
            let w: Vec<Fraction<R>> = (0..compounds)
                .map(|x| match system.source_of.get(&x) {
                    Some(src) if state.j_active.contains(&x) => {
                        Fraction::from_ring(w_hat[(pos[src], mu)].clone())
                            * system.vertex_ratio[&x].clone()
                    }
                    _ => Fraction::zero(),
                })
                .collect();
            normalize(clear_denominators(&w))
        })
        .collect();
    Matrix::from_columns(compounds, &columns).expect("equal lengths")
}

/// Everything the quivered computation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverOutcome<R: Ring> {
    pub state: PruneState<R>,
    pub system: QuiveredSystem<R>,
    pub kernel: KernelBasis<R>,
}

/// Kernel of `A` through the quivered system.
pub fn quivered_kernel<R: Ring>(a: &Matrix<R>) -> Result<QuiverOutcome<R>> {
    let state = prune_fixpoint(a);
    let system = quivered_system(a, &state)?;
    let opts = CondenseOptions {
        trace: false,
        ..Default::default()
    };
    let (k_hat, _) = ker_pc_with(&system.a_hat, &opts);
    let generators = reconstruct(&k_hat.generators, &state, &system, a.cols());
    let saturated = generators.cols() <= 1;
    Ok(QuiverOutcome {
        state,
        system,
        kernel: KernelBasis {
            generators,
            saturated,
        },
    })
}
