//! Seeded inputs shared by the benchmarks.

use chio_core::Matrix;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A `rows × cols` integer matrix with entries drawn uniformly from `-bound..=bound`.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, bound: i64) -> Matrix<BigInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect())
        .collect();
    Matrix::from_rows(data).expect("rectangular")
}

/// A `rows × cols` matrix of rank at most `rank`, built as a product of two random factors.
pub fn random_low_rank(seed: u64, rows: usize, cols: usize, rank: usize, bound: i64) -> Matrix<BigInt> {
    let l = random_matrix(seed, rows, rank, bound);
    let r = random_matrix(seed.wrapping_add(1), rank, cols, bound);
    let data = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..rank).map(|k| &l[(i, k)] * &r[(k, j)]).sum())
                .collect()
        })
        .collect();
    Matrix::from_rows(data).expect("rectangular")
}

/// Reactions used to time balancing.
pub const REACTIONS: &[&str] = &[
    "H2 + O2 -> H2O",
    "K4Fe(CN)6 + KMnO4 + H2SO4 -> KHSO4 + Fe2(SO4)3 + MnSO4 + HNO3 + CO2 + H2O",
    "Cu + HNO3 -> Cu(NO3)2 + NO + NO2 + H2O",
    "C6H12O6 + O2 -> CO2 + H2O",
];
