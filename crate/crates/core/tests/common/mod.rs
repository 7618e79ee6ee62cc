#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use venkov_core::{QuadraticForm, RationalMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn form(rows: &[Vec<i64>]) -> QuadraticForm {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QuadraticForm::new(RationalMatrix::from_i64_rows(&refs)).unwrap()
}

/// A random symmetric integral positive-definite form with entries in
/// `[-bound, bound]` (diagonal in `[1, bound]`), by rejection.
pub fn random_form(rng: &mut impl Rng, d: usize, bound: i64) -> (Vec<Vec<i64>>, QuadraticForm) {
    loop {
        let mut g = vec![vec![0i64; d]; d];
        for i in 0..d {
            g[i][i] = rng.gen_range(1..=bound);
            for j in 0..i {
                let x = rng.gen_range(-bound..=bound);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let refs: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
        if let Ok(q) = QuadraticForm::new(RationalMatrix::from_i64_rows(&refs)) {
            return (g, q);
        }
    }
}

/// Block-diagonal sum of integral Gram matrices.
pub fn block_sum(blocks: &[&[&[i64]]]) -> Vec<Vec<i64>> {
    let d: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![0i64; d]; d];
    let mut at = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                g[at + i][at + j] = *x;
            }
        }
        at += b.len();
    }
    g
}
