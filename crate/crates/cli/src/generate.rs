//! Form generators: the named lattices and random integral forms.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use venkov_core::forms::NamedLattice;
use venkov_core::{QuadraticForm, RationalMatrix};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn to_form(g: &[Vec<i64>]) -> Option<QuadraticForm> {
    let refs: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    QuadraticForm::new(RationalMatrix::from_i64_rows(&refs)).ok()
}

/// A random symmetric positive-definite integral form with off-diagonal
/// entries in `[-bound, bound]` and diagonal in `[1, bound]`.
pub fn random_form(rng: &mut impl Rng, d: usize, bound: i64) -> QuadraticForm {
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
        if let Some(q) = to_form(&g) {
            return q;
        }
    }
}

/// `scale * Q + E` for a named lattice `Q` and a random symmetric `E` with
/// entries in `{-1, 0, 1}`, retried until positive definite. For a large
/// enough scale this is a small perturbation, which typically makes the
/// tiling primitive.
pub fn perturbed_form(rng: &mut impl Rng, base: NamedLattice, scale: i64) -> QuadraticForm {
    let g0 = base.gram_i64();
    let d = base.dim;
    loop {
        let mut g = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in 0..=i {
                let x = scale * g0[i][j] + rng.gen_range(-1..=1);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        if let Some(q) = to_form(&g) {
            return q;
        }
    }
}
