mod common;

use chio_core::chem::INFEASIBLE;
use chio_core::condense::{detker_pc, four_pc, inv_pc, ker_pc, solve_pc};
use chio_core::quiver::{prune_fixpoint, quivered_kernel, quivered_system};
use chio_core::{
    balance, det_pc, image_basis, is_saturated, kernel_basis, parse_formula, render, saturate, smith_nf,
    AnyMatrix, BalanceOptions, Error, Matrix, Poly, Reaction, Ring,
};
use common::*;
use num_bigint::BigInt;

fn cayley_menger() -> Z {
    Z::from_i64(&[&[0, 1, 1, 1], &[1, 0, 4, 9], &[1, 4, 0, 16], &[1, 9, 16, 0]])
}

#[test]
fn cayley_menger_determinant() {
    assert_eq!(det_pc(&cayley_menger()).unwrap(), z(-135));
    assert_eq!(det_of(&cayley_menger()), z(-135));
    assert_eq!(det_pc(&Z::identity(5)).unwrap(), z(1));
}

#[test]
fn detker_on_singular_four_by_four() {
    let a = Z::from_i64(&[&[1, 5, 9, 13], &[2, 6, 10, 14], &[3, 7, 11, 15], &[4, 8, 12, 16]]);
    let (d, k, trace) = detker_pc(&a).unwrap();
    assert_eq!(d, z(0));
    assert_eq!(k.dim(), 2);
    assert!(same_q_span(&k.generators.columns(), &[zs(&[-1, 2, -1, 0]), zs(&[-2, 3, 0, -1])]));
    assert!(k.saturated);
    assert!(!trace.steps.is_empty());

    let (d, k, _) = detker_pc(&Z::identity(3)).unwrap();
    assert_eq!(d, z(1));
    assert_eq!(k.dim(), 0);
}

#[test]
fn binomial_kernel() {
    let a = Z::from_i64(&[&[1, 1, 1, 1], &[1, 2, 3, 4], &[1, 3, 6, 10]]);
    let (k, _) = ker_pc(&a);
    assert_eq!(cols_i64(&k.generators), vec![vec![-1, 3, -3, 1]]);
}

#[test]
fn fischer_tropsch_kernel_over_polynomials() {
    let a = Matrix::from_rows(vec![
        vec![poly("1"), poly("0"), poly("n"), poly("0")],
        vec![poly("0"), poly("2"), poly("2n+2"), poly("2")],
        vec![poly("1"), poly("0"), poly("0"), poly("1")],
    ])
    .unwrap();
    let (k, _) = ker_pc(&a);
    assert_eq!(k.dim(), 1);
    let col: Vec<String> = k.generators.column(0).iter().map(|x| x.render("n")).collect();
    assert!(col == ["-n", "-2n-1", "1", "n"] || col == ["n", "2n+1", "-1", "-n"], "{col:?}");
}

#[test]
fn affine_system() {
    let a = Z::from_i64(&[&[1, 2, 3, 4], &[1, 3, 5, 7], &[1, 4, 7, 10], &[1, 5, 9, 13]]);
    let s = solve_pc(&a, &zs(&[10, 16, 22, 28])).unwrap();
    assert!(s.feasible);
    let p: Vec<String> = s.particular.iter().map(|f| f.render("")).collect();
    assert_eq!(p, ["-2", "6", "0", "0"]);
    assert!(same_q_span(&s.homogeneous.generators.columns(), &[zs(&[1, -2, 1, 0]), zs(&[2, -3, 0, 1])]));
}

#[test]
fn prime_matrix_inverse() {
    let a = Z::from_i64(&[&[1, 2, 3, 5], &[2, 3, 5, 7], &[3, 5, 7, 11], &[5, 7, 11, 13]]);
    let inv = inv_pc(&a).unwrap();
    assert_eq!(inv.denom, z(2));
    assert_eq!(
        inv.numer,
        Z::from_i64(&[&[-12, 6, 4, -2], &[6, -8, 0, 2], &[4, 0, -3, 1], &[-2, 2, 1, -1]])
    );
    assert!(matches!(inv_pc(&Z::from_i64(&[&[1, 2], &[2, 4]])), Err(Error::Singular)));
}

#[test]
fn four_subspaces_of_a_zero_one_matrix() {
    let a = Z::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 1], &[0, 0, 1, 1], &[1, 0, 1, 1]]);
    let f = four_pc(&a);
    assert_eq!(f.rank, 3);
    assert_eq!(cols_i64(&f.ker_a.generators), vec![vec![0, 1, 0, 0]]);
    let kt = &f.ker_at.generators;
    assert_eq!(kt.cols(), 1);
    assert!(signed_eq(&kt.column(0), &[0, -1, 1, 0]));
    // image of A: columns 4, 3, 1
    let mut im: Vec<usize> = f.im_a_columns.clone();
    im.sort();
    assert_eq!(im, vec![0, 2, 3]);
    // image of Aᵀ: the paper's u1, u2, u4 span the same space as the chosen rows
    let chosen: Vec<Vec<BigInt>> = f.im_at_columns.iter().map(|&i| a.row(i).to_vec()).collect();
    let stated: Vec<Vec<BigInt>> = [0, 1, 3].iter().map(|&i| a.row(i).to_vec()).collect();
    assert_eq!(rank_of_vectors(&chosen), 3);
    assert!(same_q_span(&chosen, &stated));
}

#[test]
fn four_subspaces_of_tribonacci_hankel() {
    let a = Z::from_i64(&[
        &[0, 1, 1, 2],
        &[1, 1, 2, 4],
        &[1, 2, 4, 7],
        &[2, 4, 7, 13],
        &[4, 7, 13, 24],
    ]);
    let f = four_pc(&a);
    assert_eq!(f.rank, 3);
    assert_eq!(cols_i64(&f.ker_a.generators), vec![vec![-1, -1, -1, 1]]);
    assert!(same_q_span(
        &f.ker_at.generators.columns(),
        &[zs(&[-1, -1, -1, 1, 0]), zs(&[-1, -2, -2, 0, 1])]
    ));
    assert_eq!(f.im_a_columns, vec![1, 0, 2]);
    assert_eq!(f.sigma[..2], [1, 0]);
    // the displayed image matrix is u1, u2, u3
    assert_eq!(f.im_at_columns, vec![0, 1, 2]);
    let stated: Vec<Vec<BigInt>> = [0, 1, 3].iter().map(|&i| a.row(i).to_vec()).collect();
    let chosen: Vec<Vec<BigInt>> = f.im_at_columns.iter().map(|&i| a.row(i).to_vec()).collect();
    assert!(same_q_span(&chosen, &stated));
}

#[test]
fn smith_first_example() {
    let a = Z::from_i64(&[&[3, 4, 5, 6], &[7, 8, 9, 10], &[11, 12, 13, 14], &[15, 16, 17, 18]]);
    let s = smith_nf(&a);
    assert_eq!(s.invariant_factors, zs(&[1, 4]));
    assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    assert!(same_z_span(&kernel_basis(&s).columns(), &[zs(&[1, -2, 1, 0]), zs(&[2, -3, 0, 1])]));
    assert!(same_z_span(&image_basis(&s).columns(), &[zs(&[1, 1, 1, 1]), zs(&[0, 4, 8, 12])]));
}

#[test]
fn smith_second_example() {
    let a = Z::from_i64(&[&[0, 0, 10, 0], &[-2, 2, -6, -4], &[2, 2, 6, 8]]);
    let s = smith_nf(&a);
    assert_eq!(s.invariant_factors, zs(&[2, 2, 20]));
    assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    let k = kernel_basis(&s);
    assert_eq!(k.cols(), 1);
    assert!(signed_eq(&k.column(0), &[-3, -1, 0, 1]));
    assert!(same_z_span(
        &image_basis(&s).columns(),
        &[zs(&[0, -2, 2]), zs(&[10, -8, 0]), zs(&[-20, 20, 0])]
    ));
}

#[test]
fn smith_trivial_and_polynomial() {
    let s = smith_nf(&Z::identity(2));
    assert_eq!(s.invariant_factors, zs(&[1, 1]));
    assert_eq!(kernel_basis(&s).cols(), 0);
    assert_eq!(image_basis(&smith_nf(&Z::zeros(2, 3))).cols(), 0);
    let p = AnyMatrix::parse("n 1\n1 n", Some("n")).unwrap();
    assert_eq!(chio_core::smith::smith_nf_any(&p), Err(Error::UnsupportedRing));
}

#[test]
fn saturation() {
    let x = Z::from_i64(&[&[-2, -4], &[-1, -3], &[2, 0], &[0, 2]]);
    assert_eq!(is_saturated(&x), Ok(false));
    assert_eq!(minor_gcd(&x, 2), z(2));
    let s = saturate(&x).unwrap();
    assert!(same_z_span(&s.columns(), &[zs(&[2, 1, -2, 0]), zs(&[1, 0, -3, 1])]));
    assert_eq!(is_saturated(&s), Ok(true));

    let y = Z::from_i64(&[&[-1, -2], &[2, 3], &[-1, 0], &[0, -1]]);
    assert_eq!(is_saturated(&y), Ok(true));
    assert!(same_z_span(&saturate(&y).unwrap().columns(), &y.columns()));
    assert_eq!(is_saturated(&Z::identity(3)), Ok(true));
    assert!(matches!(
        is_saturated(&Z::from_i64(&[&[1, 2], &[2, 4]])),
        Err(Error::RankDeficient { .. })
    ));
}

fn betelgeuse() -> Z {
    // atoms A..H, compounds ACD, ABDE, B2C3DE, DEFGH, E2H, E6F, FG3, GH
    Z::from_i64(&[
        &[1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 2, 0, 0, 0, 0, 0],
        &[1, 0, 3, 0, 0, 0, 0, 0],
        &[1, 1, 1, 1, 0, 0, 0, 0],
        &[0, 1, 1, 1, 2, 6, 0, 0],
        &[0, 0, 0, 1, 0, 1, 1, 0],
        &[0, 0, 0, 1, 0, 0, 3, 1],
        &[0, 0, 0, 1, 1, 0, 0, 1],
    ])
}

#[test]
fn betelgeuse_quivering() {
    let a = betelgeuse();
    let state = prune_fixpoint(&a);
    assert_eq!(state.depth, 2);
    assert_eq!(state.log[0].zeroed(), vec![0, 1, 2]);
    assert_eq!(state.log[1].zeroed(), vec![3]);
    assert_eq!(state.zeroed, vec![0, 1, 2, 3]);
    assert!(state.quiver.iter().all(|e| e.source < e.target));
    let sys = quivered_system(&a, &state).unwrap();
    assert!(sys.i_hat.is_empty());
    assert_eq!(sys.j_hat, vec![4]);
    let out = quivered_kernel(&a).unwrap();
    assert!(signed_eq(&out.kernel.generators.column(0), &[0, 0, 0, 0, -3, 1, -1, 3]));
    assert!(same_q_span(&out.kernel.generators.columns(), &ker_pc(&a).0.generators.columns()));
}

#[test]
fn betelgeuse_reaction_renders() {
    let r = Reaction::parse("E2H + FG3 -> E6F + GH + ACD + ABDE + B2C3DE + DEFGH", None).unwrap();
    let res = balance(
        &r,
        &BalanceOptions {
            quiver: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(render(&res, &r), "3 E2H + FG3 -> E6F + 3 GH");
}

fn balanced(text: &str, param: Option<&str>) -> (chio_core::BalanceResult, Reaction) {
    let r = Reaction::parse(text, param).unwrap();
    let res = balance(&r, &BalanceOptions::default()).unwrap();
    (res, r)
}

fn integer_columns(res: &chio_core::BalanceResult) -> Vec<Vec<BigInt>> {
    match &res.coefficients {
        AnyMatrix::Integer(m) => m.columns(),
        AnyMatrix::Poly { .. } => panic!("expected integer coefficients"),
    }
}

#[test]
fn balancing_corpus() {
    let (res, r) = balanced("FeS + H2SO4 + FeSO4 + H2O", None);
    assert!(!res.feasible);
    assert_eq!(render(&res, &r), INFEASIBLE);

    let (res, _) = balanced("Fe + O2 -> FeO + Fe2O3", None);
    let cols = integer_columns(&res);
    assert_eq!(cols.len(), 2);
    assert!(same_z_span(&cols, &[zs(&[-2, -1, 2, 0]), zs(&[1, 0, -3, 1])]));

    let (res, r) = balanced("H2O + MnO4^- + SO3^2- -> OH^- + MnO2 + SO4^2-", None);
    assert_eq!(integer_columns(&res), vec![zs(&[-1, -2, -3, 2, 2, 3])]);
    assert_eq!(render(&res, &r), "H2O + 2 MnO4^- + 3 SO3^2- -> 2 OH^- + 2 MnO2 + 3 SO4^2-");

    let (res, r) = balanced("CO + H2 -> CnH2n+2 + H2O", Some("n"));
    assert_eq!(render(&res, &r), "n CO + (2n+1) H2 -> CnH2n+2 + n H2O");

    let (res, r) = balanced(
        "[Cr(N2H4CO)6]4[Cr(CN)6]3 + KMnO4 + H2SO4 -> CO2 + MnSO4 + K2Cr2O7 + KNO3 + K2SO4 + H2O",
        None,
    );
    assert!(res.oriented);
    assert_eq!(
        integer_columns(&res),
        vec![zs(&[-10, -1176, -1399, 420, 1176, 35, 660, 223, 1879])]
    );
    assert_eq!(
        render(&res, &r),
        "10 [Cr(N2H4CO)6]4[Cr(CN)6]3 + 1176 KMnO4 + 1399 H2SO4 -> 420 CO2 + 1176 MnSO4 + 35 K2Cr2O7 + 660 KNO3 + 223 K2SO4 + 1879 H2O"
    );
}

#[test]
fn reynolds_kernel() {
    let a = Z::from_i64(&[&[1, 1, 0, 0], &[-1, -3, 1, 1], &[-1, 0, -1, 0]]);
    assert_eq!(cols_i64(&ker_pc(&a).0.generators), vec![vec![-1, 1, 1, 1]]);
}

#[test]
fn formula_examples() {
    let f = parse_formula("[Cr(N2H4CO)6]4[Cr(CN)6]3", None).unwrap();
    let get = |e: &str| f.count(e).render("");
    assert_eq!(
        [get("Cr"), get("N"), get("H"), get("C"), get("O")],
        ["7", "66", "96", "42", "24"]
    );
    let f = parse_formula("CnH2n+2", Some("n")).unwrap();
    assert_eq!(f.count("H"), Poly::parse("2n+2", Some("n")).unwrap());
}

#[test]
fn adjacency_examples() {
    let r = Reaction::parse("Fe + O2 -> FeO + Fe2O3", None).unwrap();
    assert_eq!(r.adjacency::<BigInt>().unwrap(), Z::from_i64(&[&[1, 0, 1, 2], &[0, 2, 1, 3]]));
}
