//! Dual cells of faces of the Voronoi cell.
//!
//! The tiles containing a face are the lattice points nearest to any point of
//! its relative interior, in particular to its barycenter. Ridges have 3 or 4
//! such tiles; (d-3)-faces have one of Delaunay's five dual 3-cells.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::lattice::closest_lattice_points;
use crate::linalg::affine_dimension;
use crate::voronoi::{FaceLattice, FaceRecord};
use crate::{Error, LatticeVector, QuadraticForm, Rational, Result};

/// Tile centres around one face of the cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCell {
    /// Dimension of the source face.
    pub face_dim: usize,
    /// Index of the source face within its level of the face lattice.
    pub face_index: usize,
    /// Sorted tile centres; always contains the origin.
    pub points: Vec<LatticeVector>,
    pub dual_dim: usize,
}

impl DualCell {
    /// The cell translated so its lexicographically smallest point is the
    /// origin. Two dual cells are lattice translates iff these agree.
    pub fn canonical_points(&self) -> Vec<LatticeVector> {
        canonical_translate(&self.points)
    }
}

pub fn canonical_translate(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let min = points.iter().min().expect("dual cell is nonempty");
    let mut out: Vec<LatticeVector> = points.iter().map(|p| p - min).collect();
    out.sort();
    out
}

fn lattice_affine_dim(points: &[LatticeVector]) -> Result<usize> {
    let pts: Vec<_> = points.iter().map(LatticeVector::to_rational).collect();
    affine_dimension(&pts)
}

/// Tile centres of every tile containing `face`, located as the lattice
/// points nearest to its barycenter.
pub fn dual_cell_of_face(
    q: &QuadraticForm,
    face: &FaceRecord,
    face_index: usize,
) -> Result<DualCell> {
    let d = q.dim();
    let near = closest_lattice_points(q, &face.barycenter)?;
    let expected = d - face.dim;
    let found = lattice_affine_dim(&near.points)?;
    if found != expected || !near.points.iter().any(LatticeVector::is_zero) {
        return Err(Error::DualDimensionMismatch {
            face_dim: face.dim,
            expected,
            found,
        });
    }
    Ok(DualCell {
        face_dim: face.dim,
        face_index,
        points: near.points,
        dual_dim: expected,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RidgeType {
    Primitive,
    NonPrimitive,
}

/// Primitive ridges meet three tiles, non-primitive ones four (in a
/// parallelogram).
pub fn ridge_type(cell: &DualCell) -> Result<RidgeType> {
    debug_assert_eq!(cell.dual_dim, 2);
    match cell.points.len() {
        3 => Ok(RidgeType::Primitive),
        4 => {
            let p = &cell.points;
            let parallelogram = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
                .iter()
                .any(|&(a, b, c, e)| &p[a] + &p[b] == &p[c] + &p[e]);
            if parallelogram {
                Ok(RidgeType::NonPrimitive)
            } else {
                Err(Error::MinkowskiVenkovViolation { tiles: 4 })
            }
        }
        n => Err(Error::MinkowskiVenkovViolation { tiles: n }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dual3Kind {
    Tetrahedron,
    Pyramid,
    Octahedron,
    Prism,
    Cube,
}

impl Dual3Kind {
    pub const ALL: [Dual3Kind; 5] = [
        Dual3Kind::Tetrahedron,
        Dual3Kind::Pyramid,
        Dual3Kind::Octahedron,
        Dual3Kind::Prism,
        Dual3Kind::Cube,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dual3Kind::Tetrahedron => "tetrahedron",
            Dual3Kind::Pyramid => "pyramid",
            Dual3Kind::Octahedron => "octahedron",
            Dual3Kind::Prism => "prism",
            Dual3Kind::Cube => "cube",
        }
    }
}

/// A classified dual 3-cell together with the labelling that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dual3Type {
    Tetrahedron {
        points: [LatticeVector; 4],
    },
    /// Base 4-cycle `(a, b, c, d)` with `a + c = b + d`.
    Pyramid {
        apex: LatticeVector,
        base: [LatticeVector; 4],
    },
    /// Antipodal pairs with a common sum.
    Octahedron {
        pairs: [(LatticeVector, LatticeVector); 3],
    },
    /// `bottom[i] - top[i]` is the same vector for all `i`.
    Prism {
        bottom: [LatticeVector; 3],
        top: [LatticeVector; 3],
    },
    /// `origin + e_0 x + e_1 y + e_2 z` for `x, y, z` in `{0, 1}`.
    Cube {
        origin: LatticeVector,
        edges: [LatticeVector; 3],
    },
}

impl Dual3Type {
    pub fn kind(&self) -> Dual3Kind {
        match self {
            Dual3Type::Tetrahedron { .. } => Dual3Kind::Tetrahedron,
            Dual3Type::Pyramid { .. } => Dual3Kind::Pyramid,
            Dual3Type::Octahedron { .. } => Dual3Kind::Octahedron,
            Dual3Type::Prism { .. } => Dual3Kind::Prism,
            Dual3Type::Cube { .. } => Dual3Kind::Cube,
        }
    }

    /// Checks the integer identities carried by the witness, including the
    /// parallelogram property of every quadrilateral face.
    pub fn witness_holds(&self) -> bool {
        match self {
            Dual3Type::Tetrahedron { .. } => true,
            Dual3Type::Pyramid { base: [a, b, c, d], .. } => a + c == b + d,
            Dual3Type::Octahedron { pairs } => {
                let s = &pairs[0].0 + &pairs[0].1;
                pairs.iter().all(|(x, y)| (x + y) == s)
            }
            Dual3Type::Prism { bottom, top } => {
                let v = &bottom[0] - &top[0];
                bottom.iter().zip(top).all(|(b, t)| (b - t) == v)
            }
            Dual3Type::Cube { .. } => true,
        }
    }

    pub fn points(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = match self {
            Dual3Type::Tetrahedron { points } => points.to_vec(),
            Dual3Type::Pyramid { apex, base } => {
                let mut v = base.to_vec();
                v.push(apex.clone());
                v
            }
            Dual3Type::Octahedron { pairs } => pairs
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .collect(),
            Dual3Type::Prism { bottom, top } => bottom.iter().chain(top).cloned().collect(),
            Dual3Type::Cube { origin, edges } => (0..8u8)
                .map(|mask| {
                    (0..3).fold(origin.clone(), |acc, i| {
                        if mask & (1 << i) != 0 {
                            &acc + &edges[i]
                        } else {
                            acc
                        }
                    })
                })
                .collect(),
        };
        out.sort();
        out
    }
}

fn unclassifiable(points: usize, reason: &str) -> Error {
    Error::UnclassifiableDual3Cell {
        points,
        reason: reason.into(),
    }
}

fn as_set(points: &[LatticeVector]) -> BTreeSet<LatticeVector> {
    points.iter().cloned().collect()
}

fn classify_pyramid(p: &[LatticeVector]) -> Result<Dual3Type> {
    let mut found = None;
    for s in 0..5 {
        let rest: Vec<LatticeVector> = (0..5).filter(|&i| i != s).map(|i| p[i].clone()).collect();
        if lattice_affine_dim(&rest)? != 2 {
            continue;
        }
        // Three ways to split four points into two diagonals.
        for (a, c, b, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            if &rest[a] + &rest[c] == &rest[b] + &rest[d] {
                if found.is_some() {
                    return Err(unclassifiable(5, "apex is not unique"));
                }
                found = Some(Dual3Type::Pyramid {
                    apex: p[s].clone(),
                    base: [
                        rest[a].clone(),
                        rest[b].clone(),
                        rest[c].clone(),
                        rest[d].clone(),
                    ],
                });
            }
        }
    }
    found.ok_or_else(|| unclassifiable(5, "no planar parallelogram base"))
}

fn octahedron_pairs(p: &[LatticeVector]) -> Option<[(LatticeVector, LatticeVector); 3]> {
    // p[0] is matched with each j; the remaining four split in three ways.
    for j in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&i| i != j).collect();
        let sum = &p[0] + &p[j];
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let (a, b, c, d) = (rest[a], rest[b], rest[c], rest[d]);
            if &p[a] + &p[b] == sum && &p[c] + &p[d] == sum {
                return Some([
                    (p[0].clone(), p[j].clone()),
                    (p[a].clone(), p[b].clone()),
                    (p[c].clone(), p[d].clone()),
                ]);
            }
        }
    }
    None
}

fn prism_split(p: &[LatticeVector]) -> Option<([LatticeVector; 3], [LatticeVector; 3])> {
    let set = as_set(p);
    for i in 0..6 {
        for j in 0..6 {
            if i == j {
                continue;
            }
            let shift = &p[j] - &p[i];
            let bottom: Vec<&LatticeVector> =
                p.iter().filter(|x| set.contains(&(*x + &shift))).collect();
            if bottom.len() != 3 {
                continue;
            }
            let top: Vec<LatticeVector> = bottom.iter().map(|x| *x + &shift).collect();
            let mut all: Vec<LatticeVector> = bottom.iter().map(|x| (*x).clone()).collect();
            all.extend(top.iter().cloned());
            if as_set(&all) != set {
                continue;
            }
            if lattice_affine_dim(&top).ok() != Some(2) {
                continue;
            }
            return Some((
                [bottom[0].clone(), bottom[1].clone(), bottom[2].clone()],
                [top[0].clone(), top[1].clone(), top[2].clone()],
            ));
        }
    }
    None
}

fn cube_frame(p: &[LatticeVector]) -> Option<(LatticeVector, [LatticeVector; 3])> {
    let origin = p.iter().min()?.clone();
    let set = as_set(p);
    let offsets: Vec<LatticeVector> = p
        .iter()
        .filter(|x| **x != origin)
        .map(|x| x - &origin)
        .collect();
    for a in 0..offsets.len() {
        for b in (a + 1)..offsets.len() {
            for c in (b + 1)..offsets.len() {
                let edges = [offsets[a].clone(), offsets[b].clone(), offsets[c].clone()];
                let candidate = Dual3Type::Cube {
                    origin: origin.clone(),
                    edges: edges.clone(),
                };
                if as_set(&candidate.points()) == set {
                    return Some((origin, edges));
                }
            }
        }
    }
    None
}

/// Classifies a 3-dimensional dual cell into one of Delaunay's five types.
pub fn classify_points(points: &[LatticeVector]) -> Result<Dual3Type> {
    let n = points.len();
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() != n {
        return Err(unclassifiable(n, "repeated points"));
    }
    if lattice_affine_dim(&p)? != 3 {
        return Err(unclassifiable(n, "points do not span three dimensions"));
    }
    match n {
        4 => Ok(Dual3Type::Tetrahedron {
            points: [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()],
        }),
        5 => classify_pyramid(&p),
        6 => {
            let oct = octahedron_pairs(&p);
            let prism = prism_split(&p);
            match (oct, prism) {
                (Some(_), Some(_)) => Err(unclassifiable(6, "both octahedron and prism")),
                (Some(pairs), None) => Ok(Dual3Type::Octahedron { pairs }),
                (None, Some((bottom, top))) => Ok(Dual3Type::Prism { bottom, top }),
                (None, None) => Err(unclassifiable(6, "neither octahedron nor prism")),
            }
        }
        8 => cube_frame(&p)
            .map(|(origin, edges)| Dual3Type::Cube { origin, edges })
            .ok_or_else(|| unclassifiable(8, "not a parallelepiped")),
        _ => Err(unclassifiable(n, &format!("unexpected size {n}"))),
    }
}

pub fn classify_dual3_cell(cell: &DualCell) -> Result<Dual3Type> {
    debug_assert_eq!(cell.dual_dim, 3);
    classify_points(&cell.points)
}

/// Dual 3-cells of every (d-3)-face of the cell, in face order.
pub fn dual3_cells_of_faces(
    q: &QuadraticForm,
    lattice: &FaceLattice,
) -> Result<Vec<(DualCell, Dual3Type)>> {
    let d = q.dim();
    if d < 3 {
        return Ok(Vec::new());
    }
    lattice
        .faces(d - 3)
        .iter()
        .enumerate()
        .map(|(i, face)| {
            let cell = dual_cell_of_face(q, face, i)?;
            let kind = classify_dual3_cell(&cell)?;
            Ok((cell, kind))
        })
        .collect()
}

/// One representative per lattice-translation class of dual 3-cells, sorted
/// by canonical point set. The representative's points are translated so the
/// smallest point is the origin.
pub fn dual3_representatives(
    q: &QuadraticForm,
    lattice: &FaceLattice,
) -> Result<Vec<(DualCell, Dual3Type)>> {
    Ok(dedup_by_translation(&dual3_cells_of_faces(q, lattice)?))
}

pub fn dedup_by_translation(cells: &[(DualCell, Dual3Type)]) -> Vec<(DualCell, Dual3Type)> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<(Vec<LatticeVector>, DualCell)> = Vec::new();
    for (cell, _) in cells {
        let canon = cell.canonical_points();
        if seen.insert(canon.clone()) {
            out.push((
                canon.clone(),
                DualCell {
                    points: canon,
                    ..cell.clone()
                },
            ));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter()
        .map(|(_, cell)| {
            let kind = classify_points(&cell.points).expect("translate of a classified cell");
            (cell, kind)
        })
        .collect()
}

/// Counts per dual 3-cell type, in the order of [`Dual3Kind::ALL`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dual3Census {
    pub tetrahedron: usize,
    pub pyramid: usize,
    pub octahedron: usize,
    pub prism: usize,
    pub cube: usize,
}

impl Dual3Census {
    pub fn of(cells: &[(DualCell, Dual3Type)]) -> Self {
        let mut c = Dual3Census::default();
        for (_, t) in cells {
            match t.kind() {
                Dual3Kind::Tetrahedron => c.tetrahedron += 1,
                Dual3Kind::Pyramid => c.pyramid += 1,
                Dual3Kind::Octahedron => c.octahedron += 1,
                Dual3Kind::Prism => c.prism += 1,
                Dual3Kind::Cube => c.cube += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tetrahedron + self.pyramid + self.octahedron + self.prism + self.cube
    }
}

/// Barycentre helper for callers working directly with point sets.
pub fn lattice_barycenter(points: &[LatticeVector]) -> Vec<Rational> {
    let d = points[0].dim();
    let n = Rational::from_integer(points.len().into());
    (0..d)
        .map(|i| {
            let s: i64 = points.iter().map(|p| p.0[i]).sum();
            Rational::from_integer(s.into()) / &n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lv(x: &[i64]) -> LatticeVector {
        LatticeVector(x.to_vec())
    }

    #[test]
    fn tetrahedron() {
        let t = classify_points(&[lv(&[0, 0, 0]), lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[0, 0, 1])])
            .unwrap();
        assert_eq!(t.kind(), Dual3Kind::Tetrahedron);
    }

    #[test]
    fn pyramid_apex_and_base() {
        let pts = [
            lv(&[0, 0, 0]),
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[1, 1, 0]),
            lv(&[0, 0, 1]),
        ];
        let t = classify_points(&pts).unwrap();
        let Dual3Type::Pyramid { apex, base } = &t else {
            panic!("expected pyramid, got {t:?}");
        };
        assert_eq!(*apex, lv(&[0, 0, 1]));
        assert_eq!(&base[0] + &base[2], &base[1] + &base[3]);
        assert!(t.witness_holds());
    }

    #[test]
    fn octahedron_pairs_share_sum() {
        let pts = [
            lv(&[0, 0, 0]),
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[0, 0, 1]),
            lv(&[1, 1, 0]),
            lv(&[1, 1, -1]),
        ];
        let t = classify_points(&pts).unwrap();
        let Dual3Type::Octahedron { pairs } = &t else {
            panic!("expected octahedron, got {t:?}");
        };
        for (a, b) in pairs {
            assert_eq!(a + b, lv(&[1, 1, 0]));
        }
        let mut got: Vec<_> = pairs
            .iter()
            .map(|(a, b)| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (lv(&[0, 0, 0]), lv(&[1, 1, 0])),
                (lv(&[0, 0, 1]), lv(&[1, 1, -1])),
                (lv(&[0, 1, 0]), lv(&[1, 0, 0])),
            ]
        );
    }

    #[test]
    fn prism_triangles() {
        let pts = [
            lv(&[0, 0, 0]),
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[0, 0, 1]),
            lv(&[1, 0, 1]),
            lv(&[0, 1, 1]),
        ];
        let t = classify_points(&pts).unwrap();
        let Dual3Type::Prism { bottom, top } = &t else {
            panic!("expected prism, got {t:?}");
        };
        assert!(t.witness_holds());
        let d = &bottom[0] - &top[0];
        assert!(d == lv(&[0, 0, 1]) || d == lv(&[0, 0, -1]));
    }

    #[test]
    fn cube() {
        let pts: Vec<_> = (0..8)
            .map(|m: i64| lv(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        assert_eq!(classify_points(&pts).unwrap().kind(), Dual3Kind::Cube);
        let sheared: Vec<_> = pts.iter().map(|p| lv(&[p.0[0] + p.0[2], p.0[1], p.0[2]])).collect();
        assert_eq!(classify_points(&sheared).unwrap().kind(), Dual3Kind::Cube);
    }

    #[test]
    fn unclassifiable_inputs() {
        let seven: Vec<_> = (0..7)
            .map(|m: i64| lv(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        assert!(matches!(
            classify_points(&seven),
            Err(Error::UnclassifiableDual3Cell { points: 7, .. })
        ));
        // Five points in general position: no planar quadrilateral.
        let five = [
            lv(&[0, 0, 0]),
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[0, 0, 1]),
            lv(&[1, 1, 1]),
        ];
        assert!(classify_points(&five).is_err());
    }

    #[test]
    fn ridge_types() {
        let prim = DualCell {
            face_dim: 0,
            face_index: 0,
            points: vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0])],
            dual_dim: 2,
        };
        assert_eq!(ridge_type(&prim).unwrap(), RidgeType::Primitive);
        let square = DualCell {
            points: vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0]), lv(&[1, 1])],
            ..prim.clone()
        };
        assert_eq!(ridge_type(&square).unwrap(), RidgeType::NonPrimitive);
        let five = DualCell {
            points: vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0]), lv(&[1, 1]), lv(&[2, 1])],
            ..prim
        };
        assert_eq!(
            ridge_type(&five),
            Err(Error::MinkowskiVenkovViolation { tiles: 5 })
        );
    }
}
