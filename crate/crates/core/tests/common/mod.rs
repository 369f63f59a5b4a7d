//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use systole_core::exact::{is_semisimple, IntegerMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random walk of row transvections `r_i += c r_j` from the identity that
/// never leaves `[-bound, bound]`, followed by a random sign pattern of even
/// weight. Every result has determinant 1.
pub fn random_sl<R: Rng>(rng: &mut R, n: usize, bound: i64, max_step: i64) -> IntegerMatrix {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    let steps = rng.gen_range(1..=4 * n * n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(1..=max_step) * if rng.gen() { 1 } else { -1 };
        let new_row: Vec<i64> = (0..n).map(|k| a[i][k] + c * a[j][k]).collect();
        if new_row.iter().all(|v| v.abs() <= bound) {
            a[i] = new_row;
        }
    }
    let flips = rng.gen_range(0..=n / 2);
    for _ in 0..flips {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        for k in 0..n {
            a[i][k] = -a[i][k];
            a[j][k] = -a[j][k];
        }
    }
    IntegerMatrix::from_i64_rows(&a)
}

pub fn random_semisimple<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntegerMatrix {
    loop {
        let m = random_sl(rng, n, bound, 3);
        if is_semisimple(&m) {
            return m;
        }
    }
}

/// Hyperbolic elements of `SL_2(Z)`: `|tr| > 2`, entries at most `bound`.
pub fn random_hyperbolic_sl2<R: Rng>(rng: &mut R, bound: i64) -> IntegerMatrix {
    loop {
        let m = random_sl(rng, 2, bound, 9);
        let tr = m.trace();
        if tr > BigInt::from(2) || tr < BigInt::from(-2) {
            return m;
        }
    }
}

/// Unconstrained integer matrix with entries in `[-bound, bound]`.
pub fn random_integer_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntegerMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntegerMatrix::from_i64_rows(&rows)
}

/// Applies row transvections `(i, j, c)` (indices taken mod `n`, skipped when
/// `i == j` or when an entry would leave `[-bound, bound]`) to the identity,
/// then negates the row pairs `(k, k + 1)` listed in `flips`.
pub fn sl_from_ops(n: usize, ops: &[(usize, usize, i64)], flips: &[usize], bound: i64) -> IntegerMatrix {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j || c == 0 {
            continue;
        }
        let new_row: Vec<i64> = (0..n).map(|k| a[i][k] + c * a[j][k]).collect();
        if new_row.iter().all(|v| v.abs() <= bound) {
            a[i] = new_row;
        }
    }
    for &k in flips {
        let (i, j) = (k % n, (k + 1) % n);
        for col in 0..n {
            a[i][col] = -a[i][col];
            a[j][col] = -a[j][col];
        }
    }
    IntegerMatrix::from_i64_rows(&a)
}

/// Determinant-one matrices of size in `sizes` with entries in `[-bound, bound]`.
pub fn sl_matrix(
    sizes: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> impl proptest::strategy::Strategy<Value = IntegerMatrix> {
    use proptest::prelude::*;
    (sizes, prop::collection::vec((0usize..8, 0usize..8, -3i64..=3), 1..80), prop::collection::vec(0usize..8, 0..3))
        .prop_map(move |(n, ops, flips)| sl_from_ops(n, &ops, &flips, bound))
}

/// As [`sl_matrix`], restricted to semisimple matrices.
pub fn semisimple_matrix(
    sizes: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> impl proptest::strategy::Strategy<Value = IntegerMatrix> {
    use proptest::prelude::*;
    sl_matrix(sizes, bound).prop_filter("semisimple", is_semisimple)
}
