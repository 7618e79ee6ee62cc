//! The cohomology and cycle-space checks on hand-built complexes.

use proptest::prelude::*;
use venkov_core::dual::Dual3Type;
use venkov_core::venkov::{
    cohomology_check, edge, triangle_span_check, triangles_of_dual3_cell, CycleVector, EdgeIndex,
    VenkovComplex, VenkovTriangle,
};
use venkov_core::{LatticeVector, ParityClass};

fn pc(bits: u8) -> ParityClass {
    ParityClass::new(4, bits)
}

/// Surface of the octahedron with antipodal pairs `(l[i], l[i + 3])`.
fn octahedron(l: [u8; 6]) -> VenkovComplex {
    let mut tri = Vec::new();
    for x in [l[0], l[3]] {
        for y in [l[1], l[4]] {
            for z in [l[2], l[5]] {
                tri.push(VenkovTriangle::new(pc(x), pc(y), pc(z)).unwrap());
            }
        }
    }
    VenkovComplex::from_triangles(tri)
}

#[test]
fn empty_complex_is_trivial() {
    let r = cohomology_check(&VenkovComplex::default());
    assert_eq!((r.f1, r.rank_delta0, r.rank_delta1, r.h1_trivial), (0, 0, 0, true));
}

#[test]
fn octahedron_surface() {
    let r = cohomology_check(&octahedron([1, 2, 3, 4, 5, 6]));
    assert_eq!((r.f1, r.rank_delta0, r.rank_delta1), (12, 5, 7));
    assert!(r.h1_trivial);
}

#[test]
fn hollow_triangle_is_not_trivial() {
    let c = VenkovComplex::from_parts([], [edge(pc(1), pc(2)), edge(pc(2), pc(3)), edge(pc(1), pc(3))], []);
    assert_eq!(c.f_vector(), [3, 3, 0]);
    let r = cohomology_check(&c);
    assert_eq!((r.rank_delta0, r.rank_delta1), (2, 0));
    assert!(!r.h1_trivial);
}

#[test]
fn octahedra_glued_along_an_edge() {
    // Both contain the edge 1-2; the second has antipodal pairs (1,7), (2,8), (9,10).
    let a = octahedron([1, 2, 3, 4, 5, 6]);
    let b = octahedron([1, 2, 9, 7, 8, 10]);
    let glued = VenkovComplex::from_triangles(a.triangles().iter().chain(b.triangles()).copied());
    assert_eq!(glued.f_vector(), [10, 23, 16]);
    let r = cohomology_check(&glued);
    assert_eq!((r.rank_delta0, r.rank_delta1), (9, 14));
    assert!(r.h1_trivial);
}

#[test]
fn tetrahedron_cycle_is_a_triangle_boundary() {
    let p = |v: &[i64]| LatticeVector(v.to_vec());
    let tet = Dual3Type::Tetrahedron {
        points: [p(&[0, 0, 0, 0]), p(&[1, 0, 0, 0]), p(&[0, 1, 0, 0]), p(&[0, 0, 1, 0])],
    };
    let complex = VenkovComplex::from_triangles(triangles_of_dual3_cell(&tet).unwrap());
    let index = EdgeIndex::new(complex.edges());
    let walk = [p(&[1, 0, 0, 0]).parity(), p(&[0, 1, 0, 0]).parity(), p(&[0, 0, 1, 0]).parity()];
    let cycle = CycleVector::from_closed_walk(&walk, &index).unwrap();
    assert!(triangle_span_check(&complex, &index, &[cycle]));
    assert!(triangle_span_check(&VenkovComplex::default(), &EdgeIndex::new(&[]), &[]));
}

fn random_complex(labels: std::ops::Range<u8>) -> impl Strategy<Value = VenkovComplex> {
    let n = labels.len();
    let start = labels.start;
    prop::collection::vec((0..n, 0..n, 0..n), 0..10).prop_map(move |triples| {
        VenkovComplex::from_triangles(
            triples
                .into_iter()
                .filter_map(|(a, b, c)| {
                    VenkovTriangle::new(pc(start + a as u8), pc(start + b as u8), pc(start + c as u8)).ok()
                }),
        )
    })
}

proptest! {
    #[test]
    fn ranks_add_over_disjoint_unions(a in random_complex(1..8), b in random_complex(8..16)) {
        let (ra, rb) = (cohomology_check(&a), cohomology_check(&b));
        let r = cohomology_check(&a.union(&b));
        prop_assert_eq!(r.f1, ra.f1 + rb.f1);
        prop_assert_eq!(r.rank_delta0, ra.rank_delta0 + rb.rank_delta0);
        prop_assert_eq!(r.rank_delta1, ra.rank_delta1 + rb.rank_delta1);
        prop_assert_eq!(r.h1_trivial, ra.h1_trivial && rb.h1_trivial);
    }
}
