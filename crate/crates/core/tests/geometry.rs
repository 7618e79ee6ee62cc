//! Voronoi cells, face lattices and dual cells of concrete forms.

mod common;

use num_bigint::BigInt;
use venkov_core::dual::{classify_dual3_cell, dual_cell_of_face, ridge_type, Dual3Kind, RidgeType};
use venkov_core::forms::{all_named, NamedLattice};
use venkov_core::linalg::affine_dimension;
use venkov_core::voronoi::VoronoiCell;
use venkov_core::{QuadraticForm, Rational, RationalVector};

fn named(s: &str) -> QuadraticForm {
    NamedLattice::parse(s).unwrap().form()
}

fn half(n: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(2))
}

#[test]
fn unit_square() {
    let cell = VoronoiCell::build(&named("Z2")).unwrap();
    assert_eq!(cell.hrep.len(), 4);
    let expected: Vec<RationalVector> = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
        .iter()
        .map(|&(a, b)| RationalVector(vec![half(a), half(b)]))
        .collect();
    assert_eq!(cell.vertices, expected);
    let lattice = cell.face_lattice(0).unwrap();
    assert_eq!(lattice.counts(), vec![(0, 4), (1, 4)]);
    assert_eq!(cell.volume(&lattice).unwrap(), Rational::from_integer(1.into()));
}

#[test]
fn unit_cube() {
    let cell = VoronoiCell::build(&named("Z3")).unwrap();
    let lattice = cell.face_lattice(0).unwrap();
    assert_eq!(lattice.counts(), vec![(0, 8), (1, 12), (2, 6)]);
}

#[test]
fn hexagon() {
    let q = common::form(&[vec![2, 1], vec![1, 2]]);
    let cell = VoronoiCell::build(&q).unwrap();
    assert_eq!(cell.hrep.len(), 6);
    assert_eq!(cell.vertices.len(), 6);
    let lattice = cell.face_lattice(0).unwrap();
    assert_eq!(lattice.counts(), vec![(0, 6), (1, 6)]);
    for (i, v) in lattice.ridges().iter().enumerate() {
        let dual = dual_cell_of_face(&q, v, i).unwrap();
        assert_eq!(dual.points.len(), 3);
        assert_eq!(ridge_type(&dual).unwrap(), RidgeType::Primitive);
    }
}

#[test]
fn permutohedron() {
    let cell = VoronoiCell::build(&named("Astar5")).unwrap();
    assert_eq!(cell.relevant.len(), 31);
    assert_eq!(cell.vertices.len(), 720);
}

/// Checks every structural property of the cell and its dual cells that
/// holds for all forms.
fn check_structure(q: &QuadraticForm, with_volume: bool) {
    let d = q.dim();
    let cell = VoronoiCell::build(q).unwrap();

    let mut neg: Vec<RationalVector> = cell
        .vertices
        .iter()
        .map(|v| RationalVector(v.iter().map(|x| -x).collect()))
        .collect();
    neg.sort();
    assert_eq!(neg, cell.vertices, "vertex set is centrally symmetric");
    for h in &cell.hrep {
        assert!(cell.hrep.iter().any(|g| g.normal == -&h.normal));
        assert!(h.rhs > Rational::from_integer(0.into()));
    }
    assert!((d..(1 << d)).contains(&cell.relevant.len()));

    let lowest = if with_volume { 0 } else { d.saturating_sub(3) };
    let lattice = cell.face_lattice(lowest).unwrap();
    for k in lattice.lowest()..d {
        for face in lattice.faces(k) {
            let pts: Vec<&RationalVector> = face.vertices.iter().map(|&v| &cell.vertices[v]).collect();
            assert_eq!(affine_dimension(&pts).unwrap(), k);
            let n = Rational::from_integer(BigInt::from(pts.len()));
            let mut sum = RationalVector::zeros(d);
            for p in &pts {
                sum = sum.add(p);
            }
            assert_eq!(sum.scale(&(Rational::from_integer(1.into()) / n)), face.barycenter);
        }
    }
    for ridge in lattice.ridges() {
        assert_eq!(ridge.facets.len(), 2, "a ridge lies in exactly two facets");
    }
    if d >= 3 {
        for face in lattice.faces(d - 3) {
            assert!(face.facets.len() >= 3);
        }
    }

    // Ridge and 3-cell duals, with inclusion reversal along the face links.
    let facet_duals: Vec<_> = lattice
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| dual_cell_of_face(q, f, i).unwrap())
        .collect();
    let ridge_duals: Vec<_> = lattice
        .ridges()
        .iter()
        .enumerate()
        .map(|(i, f)| dual_cell_of_face(q, f, i).unwrap())
        .collect();
    for (i, ridge) in lattice.ridges().iter().enumerate() {
        let dual = &ridge_duals[i];
        assert!([3, 4].contains(&dual.points.len()));
        ridge_type(dual).unwrap();
        for &s in &ridge.superfaces {
            assert!(facet_duals[s].points.iter().all(|p| dual.points.contains(p)));
        }
    }
    if d >= 3 {
        for (i, face) in lattice.faces(d - 3).iter().enumerate() {
            let dual = dual_cell_of_face(q, face, i).unwrap();
            assert!([4, 5, 6, 8].contains(&dual.points.len()));
            let t = classify_dual3_cell(&dual).unwrap();
            assert!(t.witness_holds(), "quadrilateral faces are parallelograms");
            let mut pts = t.points();
            pts.sort();
            assert_eq!(pts, dual.points);
            for &s in &face.superfaces {
                assert!(ridge_duals[s].points.iter().all(|p| dual.points.contains(p)));
            }
        }
    }

    if with_volume {
        assert_eq!(cell.volume(&lattice).unwrap(), Rational::from_integer(1.into()));
    }
}

#[test]
fn named_forms_up_to_dimension_four() {
    for n in all_named(2..=4) {
        check_structure(&n.form(), true);
    }
}

#[test]
fn five_dimensional_named_forms() {
    for s in ["Z5", "A5", "D5", "Dstar5", "Astar5"] {
        check_structure(&named(s), true);
    }
}

#[test]
fn random_forms() {
    let mut rng = common::rng(0x6e0_0002);
    for n in 0..24 {
        let d = 2 + n % 3;
        let (_, q) = common::random_form(&mut rng, d, 5);
        check_structure(&q, true);
    }
}

#[test]
fn product_form_has_only_prisms_and_cubes() {
    // Z^2 + hexagon + Z^1 in dimension 5.
    let g = common::block_sum(&[&[&[1, 0], &[0, 1]], &[&[2, 1], &[1, 2]], &[&[1]]]);
    let q = common::form(&g);
    let cell = VoronoiCell::build(&q).unwrap();
    let lattice = cell.face_lattice(2).unwrap();
    let mut kinds = std::collections::BTreeSet::new();
    for (i, face) in lattice.faces(2).iter().enumerate() {
        let dual = dual_cell_of_face(&q, face, i).unwrap();
        kinds.insert(classify_dual3_cell(&dual).unwrap().kind());
    }
    assert_eq!(kinds.into_iter().collect::<Vec<_>>(), vec![Dual3Kind::Prism, Dual3Kind::Cube]);
}
