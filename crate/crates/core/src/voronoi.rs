//! The Voronoi cell of the origin as an exact polytope.
//!
//! The cell is cut out by one bisector inequality `2 t^T Q x <= t^T Q t` per
//! signed relevant vector `t`. Vertices come from a double-description pass
//! over the homogenised cone; faces are then generated top-down by
//! intersecting each face with the facets that do not contain it.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::relevant_vectors;
use crate::linalg::{affine_dimension, determinant, rank_of_rows, solve_linear};
use crate::{Error, LatticeVector, QuadraticForm, Rational, RationalMatrix, RationalVector, Result};

/// Largest number of half-spaces the `u128` incidence masks can hold.
pub const MAX_HALFSPACES: usize = 127;

/// The bisector inequality `normal_coeffs . x <= rhs`, i.e. `2 t^T Q x <= t^T Q t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub rhs: Rational,
    coeffs: RationalVector,
}

impl HalfSpace {
    pub fn new(q: &QuadraticForm, t: LatticeVector) -> Self {
        let rt = t.to_rational();
        let qt = q.gram().mul_vec(&rt).expect("dimension of t matches the form");
        let two = Rational::from_integer(BigInt::from(2));
        HalfSpace {
            rhs: q.norm_int(&t),
            coeffs: qt.scale(&two),
            normal: t,
        }
    }

    pub fn coeffs(&self) -> &RationalVector {
        &self.coeffs
    }

    /// `rhs - coeffs . x`; nonnegative inside the cell, zero on the facet.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        &self.rhs - lhs
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }
}

/// One half-space per signed relevant vector, ordered lexicographically by
/// normal.
pub fn build_hrep(q: &QuadraticForm, relevant: &[LatticeVector]) -> Vec<HalfSpace> {
    let mut normals: Vec<LatticeVector> = relevant
        .iter()
        .flat_map(|t| [t.clone(), -t])
        .collect();
    normals.sort();
    normals.into_iter().map(|t| HalfSpace::new(q, t)).collect()
}

fn primitive(v: &mut [BigInt]) {
    let g = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: u128,
}

/// Exact vertices of the bounded polytope `{x : a_i . x <= b_i}`, sorted
/// lexicographically.
pub fn enumerate_vertices(hrep: &[HalfSpace]) -> Result<Vec<RationalVector>> {
    let d = hrep.first().ok_or(Error::UnboundedPolytope)?.coeffs.dim();
    if hrep.len() > MAX_HALFSPACES {
        return Err(Error::DimensionMismatch {
            expected: MAX_HALFSPACES,
            found: hrep.len(),
        });
    }
    // Homogenised cone {(x, s) : b_i s - a_i . x >= 0, s >= 0}; row 0 is s >= 0.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(hrep.len() + 1);
    let mut s_row = vec![BigInt::zero(); d + 1];
    s_row[d] = BigInt::one();
    rows.push(s_row);
    for h in hrep {
        let lcm = h
            .coeffs
            .iter()
            .chain(core::iter::once(&h.rhs))
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut row: Vec<BigInt> = h
            .coeffs
            .iter()
            .map(|a| -(a.numer() * (&lcm / a.denom())))
            .collect();
        row.push(h.rhs.numer() * (&lcm / h.rhs.denom()));
        primitive(&mut row);
        rows.push(row);
    }
    let cone_dim = d + 1;

    // Greedy basis of cone_dim independent rows for the initial simplicial cone.
    let mut basis: Vec<usize> = Vec::with_capacity(cone_dim);
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&j| rows[j].iter().cloned().map(Rational::from_integer).collect())
            .collect();
        trial.push(rows[i].iter().cloned().map(Rational::from_integer).collect());
        if rank_of_rows(&trial, cone_dim) == trial.len() {
            basis.push(i);
            if basis.len() == cone_dim {
                break;
            }
        }
    }
    if basis.len() < cone_dim {
        return Err(Error::UnboundedPolytope);
    }
    let m = RationalMatrix::from_rows(
        basis
            .iter()
            .map(|&j| rows[j].iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )?;
    let mut rays: Vec<Ray> = Vec::with_capacity(cone_dim);
    for k in 0..cone_dim {
        let mut e = vec![Rational::zero(); cone_dim];
        e[k] = Rational::one();
        let col = solve_linear(&m, &e)?.ok_or(Error::UnboundedPolytope)?;
        let lcm = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut coords: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        primitive(&mut coords);
        let zeros = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .fold(0u128, |acc, (_, &j)| acc | (1u128 << j));
        rays.push(Ray { coords, zeros });
    }
    let mut processed = basis.iter().fold(0u128, |acc, &j| acc | (1u128 << j));

    for (h, row) in rows.iter().enumerate() {
        if processed & (1u128 << h) != 0 {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros & rays[n].zeros;
                if (common.count_ones() as usize) < cone_dim - 2 {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| {
                    i != p && i != n && r.zeros & common == common
                });
                if blocked {
                    continue;
                }
                let (vp, vn) = (&values[p], -&values[n]);
                let mut coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[n].coords)
                    .map(|(a, b)| a * &vn + b * vp)
                    .collect();
                primitive(&mut coords);
                next.push(Ray {
                    coords,
                    zeros: common | (1u128 << h),
                });
            }
        }
        for (i, ray) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                next.push(Ray {
                    coords: ray.coords,
                    zeros: ray.zeros | (1u128 << h),
                });
            } else if values[i].is_positive() {
                next.push(ray);
            }
        }
        rays = next;
        processed |= 1u128 << h;
    }

    let mut vertices = Vec::with_capacity(rays.len());
    for r in rays {
        let s = &r.coords[d];
        if !s.is_positive() {
            return Err(Error::UnboundedPolytope);
        }
        vertices.push(RationalVector(
            r.coords[..d]
                .iter()
                .map(|x| Rational::new(x.clone(), s.clone()))
                .collect(),
        ));
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

/// A face of the cell, identified by its sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub dim: usize,
    /// Indices into the cell's vertex list.
    pub vertices: Vec<usize>,
    /// Indices of the facets (equivalently, half-spaces) containing the face.
    pub facets: Vec<usize>,
    pub barycenter: RationalVector,
    /// Indices of the faces one dimension lower that lie in this face.
    pub subfaces: Vec<usize>,
    /// Indices of the faces one dimension higher that contain this face.
    pub superfaces: Vec<usize>,
}

/// Faces of a `d`-polytope for dimensions `d-1` down to `lowest`.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    lowest: usize,
    levels: Vec<Vec<FaceRecord>>,
}

impl FaceLattice {
    /// Ambient dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lowest face dimension that was computed.
    pub fn lowest(&self) -> usize {
        self.lowest
    }

    /// Faces of dimension `k` (empty if `k` is outside the computed range).
    pub fn faces(&self, k: usize) -> &[FaceRecord] {
        if k < self.lowest || k >= self.dim {
            return &[];
        }
        &self.levels[k]
    }

    pub fn facets(&self) -> &[FaceRecord] {
        self.faces(self.dim - 1)
    }

    /// Faces of codimension 2, or nothing if `d < 2`.
    pub fn ridges(&self) -> &[FaceRecord] {
        match self.dim.checked_sub(2) {
            Some(k) => self.faces(k),
            None => &[],
        }
    }

    /// f-vector entries for the computed dimensions, lowest first.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        (self.lowest..self.dim).map(|k| (k, self.levels[k].len())).collect()
    }
}

fn barycenter(vertices: &[RationalVector], ids: &[usize]) -> RationalVector {
    let d = vertices[ids[0]].dim();
    let mut sum = RationalVector::zeros(d);
    for &i in ids {
        sum = sum.add(&vertices[i]);
    }
    sum.scale(&Rational::new(BigInt::one(), BigInt::from(ids.len())))
}

/// Vertex-facet incidence masks: bit `i` of `masks[v]` is set iff vertex `v`
/// lies on half-space `i`.
pub fn incidence(vertices: &[RationalVector], hrep: &[HalfSpace]) -> Vec<u128> {
    vertices
        .iter()
        .map(|v| {
            hrep.iter()
                .enumerate()
                .filter(|(_, h)| h.is_tight(v))
                .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
        })
        .collect()
}

fn facets_of(masks: &[u128], ids: &[usize]) -> Vec<usize> {
    let all = ids.iter().fold(u128::MAX, |acc, &v| acc & masks[v]);
    (0..128).filter(|&i| all & (1u128 << i) != 0).collect()
}

/// Faces of dimensions `d-1, d-2, ..., down_to_dim`.
///
/// Facets keep the order of `hrep`; every lower level is sorted by vertex set.
pub fn face_lattice(
    vertices: &[RationalVector],
    hrep: &[HalfSpace],
    down_to_dim: usize,
) -> Result<FaceLattice> {
    let d = vertices.first().ok_or(Error::EmptyInput)?.dim();
    let lowest = down_to_dim.min(d - 1);
    let masks = incidence(vertices, hrep);
    let mut levels: Vec<Vec<FaceRecord>> = vec![Vec::new(); d];

    let facet_level: Vec<FaceRecord> = (0..hrep.len())
        .map(|i| {
            let ids: Vec<usize> = (0..vertices.len())
                .filter(|&v| masks[v] & (1u128 << i) != 0)
                .collect();
            FaceRecord {
                dim: d - 1,
                barycenter: barycenter(vertices, &ids),
                facets: facets_of(&masks, &ids),
                vertices: ids,
                subfaces: Vec::new(),
                superfaces: Vec::new(),
            }
        })
        .collect();
    levels[d - 1] = facet_level;

    for k in (lowest..d - 1).rev() {
        // Faces of dimension k are the k-dimensional intersections of a
        // (k+1)-face with a facet not containing it.
        let mut seen: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
        for g in &levels[k + 1] {
            for f in 0..hrep.len() {
                if g.facets.binary_search(&f).is_ok() {
                    continue;
                }
                let inter: Vec<usize> = g
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| masks[v] & (1u128 << f) != 0)
                    .collect();
                if inter.len() < k + 1 {
                    continue;
                }
                if seen.contains_key(&inter) {
                    continue;
                }
                let pts: Vec<&[Rational]> =
                    inter.iter().map(|&v| vertices[v].0.as_slice()).collect();
                let ok = affine_dimension(&pts)? == k;
                seen.insert(inter, ok);
            }
        }
        let ordered: Vec<Vec<usize>> = seen
            .into_iter()
            .filter_map(|(key, ok)| ok.then_some(key))
            .collect();
        let mut level: Vec<FaceRecord> = ordered
            .iter()
            .map(|ids| FaceRecord {
                dim: k,
                barycenter: barycenter(vertices, ids),
                facets: facets_of(&masks, ids),
                vertices: ids.clone(),
                subfaces: Vec::new(),
                superfaces: Vec::new(),
            })
            .collect();
        // Incidence: child lies in parent iff the child's vertex set is a
        // subset; equivalently the parent's facets are a subset of the child's.
        let parents = &mut levels[k + 1];
        for (ci, child) in level.iter_mut().enumerate() {
            for (pi, parent) in parents.iter_mut().enumerate() {
                if is_subset(&parent.facets, &child.facets) {
                    child.superfaces.push(pi);
                    parent.subfaces.push(ci);
                }
            }
        }
        levels[k] = level;
    }
    Ok(FaceLattice {
        dim: d,
        lowest,
        levels,
    })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Exact volume of the cell, by coning every facet from the origin over a
/// pulling triangulation of the facet. Recomputes the lattice down to
/// vertices if `lattice` stops higher.
pub fn cell_volume(
    vertices: &[RationalVector],
    hrep: &[HalfSpace],
    lattice: &FaceLattice,
) -> Result<Rational> {
    let owned;
    let lattice = if lattice.lowest() == 0 {
        lattice
    } else {
        owned = face_lattice(vertices, hrep, 0)?;
        &owned
    };
    let d = lattice.dim();
    // Triangulations of every face, level by level from the vertices up.
    let mut below: Vec<Vec<Vec<usize>>> = lattice
        .faces(0)
        .iter()
        .map(|f| vec![f.vertices.clone()])
        .collect();
    for k in 1..d {
        let current: Vec<Vec<Vec<usize>>> = lattice
            .faces(k)
            .iter()
            .map(|face| {
                let apex = face.vertices[0];
                let mut simplices = Vec::new();
                for &s in &face.subfaces {
                    let sub = &lattice.faces(k - 1)[s];
                    if sub.vertices.binary_search(&apex).is_ok() {
                        continue;
                    }
                    for simplex in &below[s] {
                        let mut full = Vec::with_capacity(k + 1);
                        full.push(apex);
                        full.extend_from_slice(simplex);
                        simplices.push(full);
                    }
                }
                simplices
            })
            .collect();
        below = current;
    }
    let mut total = Rational::zero();
    for facet in &below {
        for simplex in facet {
            let rows = simplex.iter().map(|&v| vertices[v].0.clone()).collect();
            total += determinant(&RationalMatrix::from_rows(rows)?)?.abs();
        }
    }
    let factorial: BigInt = (1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    Ok(total / Rational::from_integer(factorial))
}

/// The Voronoi cell of the origin with everything the later stages need.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub relevant: Vec<LatticeVector>,
    pub hrep: Vec<HalfSpace>,
    pub vertices: Vec<RationalVector>,
}

impl VoronoiCell {
    pub fn build(q: &QuadraticForm) -> Result<Self> {
        let relevant = relevant_vectors(q);
        let hrep = build_hrep(q, &relevant);
        let vertices = enumerate_vertices(&hrep)?;
        Ok(VoronoiCell {
            relevant,
            hrep,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn face_lattice(&self, down_to_dim: usize) -> Result<FaceLattice> {
        face_lattice(&self.vertices, &self.hrep, down_to_dim)
    }

    pub fn volume(&self, lattice: &FaceLattice) -> Result<Rational> {
        cell_volume(&self.vertices, &self.hrep, lattice)
    }
}
