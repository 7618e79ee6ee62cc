//! Randomised invariants of the exact kernels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use venkov_core::dual::classify_points;
use venkov_core::lattice::{closest_lattice_points, relevant_vectors, shortest_vectors_in_coset};
use venkov_core::linalg::{ldl_decompose, rank};
use venkov_core::venkov::triangles_of_dual3_cell;
use venkov_core::{LatticeVector, ParityClass, QuadraticForm, Rational, RationalMatrix};

fn matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_i64_rows(&refs)
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
    })
}

/// `A A^T + I` for a random integer `A` is positive definite.
fn pd_form(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, d), d).prop_map(move |a| {
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum::<i64>() + i64::from(i == j))
                    .collect()
            })
            .collect()
    })
}

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector(v.to_vec())
}

fn shapes() -> Vec<Vec<LatticeVector>> {
    let e = |v: [i64; 3]| lv(&v);
    vec![
        vec![e([0, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1])],
        vec![e([0, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([1, 1, 1])],
        vec![e([0, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([1, 1, 0]), e([0, 0, 1])],
        vec![e([0, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]), e([1, 1, 0]), e([1, 1, -1])],
        vec![e([0, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]), e([1, 0, 1]), e([0, 1, 1])],
        (0..8)
            .map(|m| e([m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(rows in int_matrix(5, 5)) {
        let m = matrix(&rows);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_ignores_row_order_and_scaling(
        rows in int_matrix(5, 4),
        seed in any::<u64>(),
        num in prop_oneof![-7i64..=-1, 1i64..=7],
        den in 1i64..=5,
    ) {
        let m = matrix(&rows);
        let mut permuted = rows.clone();
        let n = permuted.len();
        permuted.rotate_left((seed as usize) % n);
        permuted.swap(0, (seed as usize / 7) % n);
        prop_assert_eq!(rank(&matrix(&permuted)), rank(&m));

        let mut scaled = m.clone();
        let row = (seed as usize) % n;
        let s = Rational::new(BigInt::from(num), BigInt::from(den));
        for c in 0..scaled.cols() {
            let x = scaled.get(row, c) * &s;
            scaled.set(row, c, x);
        }
        prop_assert_eq!(rank(&scaled), rank(&m));
    }

    #[test]
    fn ldl_reconstructs_the_form(g in (2usize..=5).prop_flat_map(pd_form)) {
        let m = matrix(&g);
        let ldl = ldl_decompose(&m).unwrap();
        prop_assert_eq!(ldl.reconstruct(), m);
        prop_assert!(ldl.d.iter().all(|x| *x > Rational::from_integer(0.into())));
    }

    #[test]
    fn classification_ignores_translation_and_order(
        which in 0usize..6,
        shift in prop::collection::vec(-5i64..=5, 3),
        seed in any::<u64>(),
    ) {
        let base = &shapes()[which];
        let reference = classify_points(base).unwrap();
        let shift = LatticeVector(shift);
        let mut moved: Vec<LatticeVector> = base.iter().map(|p| p + &shift).collect();
        let n = moved.len();
        let mut s = seed;
        for i in (1..n).rev() {
            moved.swap(i, (s % (i as u64 + 1)) as usize);
            s /= 7;
        }
        let t = classify_points(&moved).unwrap();
        prop_assert_eq!(t.kind(), reference.kind());
        prop_assert!(t.witness_holds());
        let a: BTreeSet<_> = triangles_of_dual3_cell(&t).unwrap().into_iter().collect();
        let b: BTreeSet<_> = triangles_of_dual3_cell(&reference).unwrap().into_iter().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lattice_search_invariants(g in (2usize..=4).prop_flat_map(pd_form), x in prop::collection::vec(-4i64..=4, 4)) {
        let q = QuadraticForm::new(matrix(&g)).unwrap();
        let d = q.dim();

        let t = LatticeVector(x[..d].to_vec());
        let m = closest_lattice_points(&q, &t.to_rational()).unwrap();
        prop_assert_eq!(m.points, vec![t]);

        let relevant = relevant_vectors(&q);
        let parities: BTreeSet<ParityClass> = relevant.iter().map(LatticeVector::parity).collect();
        prop_assert_eq!(parities.len(), relevant.len());
        prop_assert!(relevant.len() >= d && relevant.len() < (1 << d));

        for c in ParityClass::nonzero(d) {
            let m = shortest_vectors_in_coset(&q, c);
            let negated: BTreeSet<LatticeVector> = m.points.iter().map(|v| -v).collect();
            prop_assert_eq!(negated, m.points.iter().cloned().collect::<BTreeSet<_>>());
            prop_assert!(m.points.iter().all(|v| v.parity() == c));
        }
    }
}
